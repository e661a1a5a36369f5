//! Numerics shared across the workspace: linear fits with slope errors,
//! adaptive Gauss-Kronrod panels, composite Simpson, symmetric-tridiagonal
//! eigensolves, complex Thomas solves, Lanczos bilinear forms, and a
//! Gragg-midpoint extrapolation ODE stepper.

pub mod fit;
pub mod ode;
pub mod quad;
pub mod special;
pub mod tridiag;

pub use fit::{linear_fit, LinearFit};
pub use quad::{adaptive_complex, simpson_uniform, QuadResult};
