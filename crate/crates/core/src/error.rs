use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("operation `{op}` has arity {expected}, got {found} arguments")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("variable x{index} out of range for {len} arguments")]
    VariableOutOfRange { index: usize, len: usize },
    #[error("element {element} is outside the carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("coordinate {0} is not part of the cube shape")]
    UnknownCoordinate(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("commutators need at least 2 arguments, got {0}")]
    ArityTooSmall(usize),
    #[error("the polynomial route needs a nonempty generator set")]
    EmptyGenerators,
    #[error("cube space of {cubes} cubes exceeds the limit of {limit} (pass --force or set MALCEV_MAX_CUBES)")]
    CubeSpaceTooLarge { cubes: u128, limit: u64 },
    #[error("search budget exceeded: {0}")]
    SearchBudget(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
