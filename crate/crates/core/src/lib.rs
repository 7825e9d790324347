//! Measure-free conditional objects over finite Boolean algebras.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`]: atom spaces and events, with ring and lattice operations
//!   and material implication.
//! - [`conditional`]: conditional objects `(a|b)` and their compact calculus.
//! - [`coset`]: the literal coset representation used as an oracle.
//! - [`higher_order`]: iterated conditionals and the reduction operator.
//! - [`calculus`]: identity suites for the conditional calculus.
//! - [`semantics`]: classical, fuzzy, probabilistic and conditional
//!   probabilistic evaluation.
//! - [`inference`]: knowledge bases of implication rules and the
//!   evidence-combination pipeline.
//!
//! Numeric code is generic over [`Scalar`]; the aliases below fix the two
//! scalar types used in practice.

pub mod algebra;
pub mod calculus;
pub mod conditional;
pub mod coset;
pub mod error;
pub mod golden;
pub mod higher_order;
pub mod inference;
pub mod report;
pub mod scalar;
pub mod semantics;
pub mod verify;

pub use algebra::{AtomSpace, Event};
pub use conditional::ConditionalObject;
pub use coset::Coset;
pub use error::{AlgebraError, InferenceError, SemanticsError};
pub use higher_order::IteratedConditional;
pub use report::{Report, Sweep};
pub use scalar::Scalar;

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

/// Probability measure with `f64` weights.
pub type Measure = semantics::ProbabilityMeasure<f64>;
/// Probability measure with exact rational weights.
pub type ExactMeasure = semantics::ProbabilityMeasure<Exact>;
/// Possibility assignment with `f64` grades.
pub type Possibility = semantics::PossibilityAssignment<f64>;
/// Possibility assignment with exact rational grades.
pub type ExactPossibility = semantics::PossibilityAssignment<Exact>;
