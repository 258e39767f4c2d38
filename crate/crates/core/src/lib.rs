//! Heaps of polymers and animals on the directed lattice N.
//!
//! The lattice N has vertex set Z² and arcs (−1,0), (−1,1), (0,1), (1,1),
//! (1,0). Projecting the horizontal segments of an animal onto the x-axis
//! turns it into a heap of polymers (closed integer intervals); directed
//! animals correspond to pyramids and multi-directed animals to connected
//! heaps. The crate provides:
//!
//! * [`heap`]: polymers, heaps in canonical leveled form, product and pushing.
//! * [`animal`]: animals, bottom profile, sources and keystones, directedness
//!   predicates and exhaustive enumeration.
//! * [`bijection`]: the projection, its inverses, the Nordic decomposition and
//!   heap enumeration / counting oracles.
//! * [`series`]: exact truncated power series and the generating functions
//!   S, R, Q, D, D_j, B, M.
//! * [`asymptotics`]: floating-point evaluation on the real axis and the
//!   singularity constants.
//! * [`verify`]: exhaustive cross-checks between all of the above.

pub mod animal;
pub mod asymptotics;
pub mod bijection;
mod error;
pub mod heap;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
