use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Validators never return these; law violations are reported as data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("source and target do not match")]
    SourceTargetMismatch,
    #[error("label sets differ")]
    LabelSetMismatch,
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("label `{0}` has no image")]
    MissingLabelImage(String),
    #[error("graph is not left modular (edge {0} starts at the basepoint)")]
    NotLeftModular(usize),
    #[error("graph is not right modular (edge {0} ends at the basepoint)")]
    NotRightModular(usize),
    #[error("morphism is not inert")]
    NotInert,
    #[error("morphism is not active")]
    NotActive,
    #[error("morphism is invalid: {0}")]
    InvalidMorphism(String),
    #[error("enumeration bound exceeded: {size} > {bound}")]
    SizeBoundExceeded { size: u128, bound: u128 },
    #[error("quantale bases differ")]
    BaseMismatch,
    #[error("object sets differ")]
    ObjectMismatch,
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("graph labels do not match the category's objects")]
    LabelMismatch,
    #[error("{law} fails: {witness}")]
    LawViolated { law: String, witness: String },
    #[error("invalid structure: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
