//! Combinatorial designs, mutually unbiased bases, and quantum retrodiction games.
//!
//! The library builds the discrete objects (resolvable block designs, affine
//! planes, Hadamard designs, collision functions, MUB families), maps them into
//! Hilbert space (realizations and reconstruction bases), and simulates the
//! retrodiction game in which a guesser must name the outcome of a measurement
//! whose basis is revealed only after the system has been handed back. Every
//! configuration in scope can be verified exhaustively: the guesser never fails.

pub mod algebra;
pub mod designs;
pub mod error;
pub mod functions;
pub mod json;
pub mod mub;
pub mod protocol;
pub mod realization;
pub mod reconstruction;

pub use algebra::{ComplexVec, FieldElement, FiniteField};
pub use designs::{IncidenceDesign, Resolution};
pub use error::{Error, Result};
pub use functions::CollisionFunction;
pub use mub::MubFamily;
pub use protocol::{KingMeasurement, KingModelKind, Transcript};
pub use realization::Realization;
pub use reconstruction::ReconstructionBasis;

/// Absolute tolerance for all floating-point comparisons.
///
/// Every dimension in scope is at most 81, so accumulated rounding error
/// stays orders of magnitude below this bound.
pub const TOL: f64 = 1e-9;
