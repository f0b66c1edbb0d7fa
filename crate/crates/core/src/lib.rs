//! Exact enumeration and asymptotic estimation of linear and plane
//! partitions.
//!
//! The crate has four layers:
//!
//! - [`counting`]: exact big-integer counts — p(n), plane p2d(n), and both
//!   restricted to at most N parts.
//! - [`plane`]: the exhaustive plane-partition generator behind the exact
//!   restricted counts, with a deterministic streaming order and an
//!   optional parallel counting pass.
//! - [`bose`]: the canonical partition function Z_N(x) of N bosonic
//!   oscillators (recurrence, 1D closed form, infinite-system limit) and
//!   the finite-N correction factor y_N = Z_N / Z_inf.
//! - [`asymptotics`]: stationary points, steepest-descent counting, the
//!   Erdos-Lehner linear estimate, Wright-type plane asymptotics, and the
//!   restricted-plane-partition estimate they combine into.

pub mod asymptotics;
pub mod bose;
pub mod counting;
pub mod error;
pub mod plane;

pub use counting::BigCount;
pub use error::{Error, Result};
