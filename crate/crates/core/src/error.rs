use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("not admissible within length cap {cap}: some path of length {cap} survives the relations")]
    NotAdmissibleWithinCap { cap: usize },

    #[error("relation `{relation}` does not vanish on the module")]
    RelationViolated { relation: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("not a submodule: {0}")]
    NotSubmodule(String),

    #[error("ill-formed functor expression: {0}")]
    IllFormedExpr(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),

    #[error("malformed claim: {0}")]
    MalformedClaim(String),

    #[error("invalid field: {0}")]
    InvalidField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
