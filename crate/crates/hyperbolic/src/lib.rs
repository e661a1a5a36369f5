//! Exact hyperbolic geometry of H^2 and H^3 in the upper half-space model:
//! Mobius isometries, cyclic and Schottky groups, orbit enumeration,
//! truncated Poincare sums, and orbit-growth exponents.

pub mod error;
pub mod group;
pub mod isometry;
pub mod point;
pub mod poincare;

pub use error::{HypError, Result};
pub use group::{enumerate_orbit, GroupKind, GroupSpec, OrbitElement, DEFAULT_ORBIT_CAP};
pub use isometry::{group_op, GroupOp, Isometry};
pub use point::{hyp_distance, HPoint};
pub use poincare::{estimate_delta, poincare_partial_sum, PartialSum};
