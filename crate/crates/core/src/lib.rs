//! Surface codes on cellulations with open and closed boundaries.
//!
//! The crate builds combinatorial surfaces, computes their homology relative
//! to the open boundary, dualizes them, and derives the associated CSS codes
//! together with exact minimum distances and logical operators. The `arch`
//! module generates planar hole layouts and compares their qubit overhead.

pub mod arch;
pub mod code;
pub mod dual;
pub mod error;
pub mod f2linalg;
pub mod homology;
pub mod surface;

pub use error::{Error, Result};
pub use f2linalg::{BinaryMatrix, BitVector};
pub use surface::{Edge, Strictness, Surface};
