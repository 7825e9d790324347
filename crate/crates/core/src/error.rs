use thiserror::Error;

/// Structural errors raised by the event algebra and the coset machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("events belong to different atom spaces ({left} vs {right} atoms)")]
    SpaceMismatch { left: usize, right: usize },
    #[error("atom index {index} out of range for a space of {atoms} atoms")]
    AtomOutOfRange { index: usize, atoms: usize },
    #[error("an atom space needs at least one atom")]
    EmptySpace,
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown atom label `{0}`")]
    UnknownLabel(String),
    #[error("space of {atoms} atoms exceeds the enumeration bound of {limit}")]
    TooLarge { atoms: usize, limit: usize },
    #[error("operation needs at least one operand")]
    NoOperands,
    #[error("events are not a partition of unity: {0}")]
    NotAPartition(String),
    #[error("set of events is not a principal-ideal coset")]
    NotACoset,
    #[error("literal reduction {literal} disagrees with the closed form {closed}")]
    ReductionMismatch { literal: String, closed: String },
}

/// Errors raised by the semantic evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("conditional is undefined: the antecedent has probability zero")]
    UndefinedConditional,
    #[error("invalid probability measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid possibility grade for {var}[{value}]: {reason}")]
    InvalidGrade {
        var: String,
        value: String,
        reason: String,
    },
    #[error("no possibility grade bound for {var}[{value}]")]
    UnboundLeaf { var: String, value: String },
    #[error("identity check failed: {0}")]
    IdentityViolated(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised while loading or evaluating a knowledge base.
#[derive(Debug, Error)]
pub enum InferenceError {
    #[error("invalid knowledge base: {0}")]
    InvalidKb(String),
    #[error("invalid observation: {0}")]
    InvalidObservation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value `{value}` is not in the domain of `{var}`")]
    UnknownValue { var: String, value: String },
    #[error("assignment does not bind `{0}`")]
    IncompleteAssignment(String),
    #[error("`{0}` is not a diagnosis variable")]
    NotADiagnosis(String),
    #[error("joint space of {atoms} atoms exceeds the bound of {limit}")]
    SpaceTooLarge { atoms: u128, limit: u128 },
    #[error("semantic input does not match the chosen logic: {0}")]
    SemanticsMismatch(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}
