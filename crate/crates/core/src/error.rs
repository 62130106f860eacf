use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the kernel.
///
/// Variants carrying a `witness` name the basis element (or row) at which a
/// check failed so that callers can report it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate basis id `{0}`")]
    DuplicateId(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasisElement(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("differential is not square-zero at `{witness}`")]
    DifferentialNotSquareZero { witness: String },
    #[error("augmentation does not annihilate the boundary of `{witness}`")]
    AugmentationNotAnnihilating { witness: String },
    #[error("morphism sends `{witness}` to a non-positive chain")]
    NotPositive { witness: String },
    #[error("morphism does not commute with the differential at `{witness}`")]
    NotChainMap { witness: String },
    #[error("morphism does not preserve the augmentation at `{witness}`")]
    NotAugmented { witness: String },
    #[error("source/target mismatch in composition")]
    SourceTargetMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("cells are not composable: {0}")]
    NotComposable(String),
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("not a cell: {0}")]
    NotACell(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("bad indices: {0}")]
    BadIndices(String),
    #[error("relation is not a partial order (cycle through `{0}`)")]
    NotPartialOrder(String),
    #[error("cell is not decomposable: {0}")]
    NotDecomposable(String),
    #[error("morphism is not quasi-rigid at `{witness}`")]
    NotQuasiRigid { witness: String },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("colimit has torsion in degree {deg}")]
    TorsionInColimit { deg: usize },
    #[error("no basis found for the colimit in degree {deg}: {msg}")]
    NoBasisFound { deg: usize, msg: String },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("malformed input: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
