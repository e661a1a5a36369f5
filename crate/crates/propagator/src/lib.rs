//! Schrodinger kernels on the 2- and 3-dimensional hyperbolic spaces, their
//! group-averaged counterparts on cyclic and Schottky quotients, decay-rate
//! scans, and admissible-exponent arithmetic.

pub mod admissible;
pub mod automorphic;
pub mod error;
pub mod kernel;
pub mod oscillatory;
pub mod scan;

pub use admissible::{admissible, AdmissibleFamily};
pub use automorphic::{automorphic_kernel, AutomorphicEngine, AutomorphicSample};
pub use error::{PropError, Result};
pub use kernel::{bound_envelope, kernel_h2, kernel_h3, KernelSample};
pub use scan::{default_sample_pairs, dispersive_scan, DecayFit, DispersiveRow, DispersiveScan, Regime};
