use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),

    #[error("vertex index {0} is out of range")]
    VertexOutOfRange(usize),

    #[error("{0} vertices exceeds the supported maximum of {max}", max = crate::simplicial::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("vertex sets of the join factors overlap at `{0}`")]
    OverlappingLabels(String),

    #[error("subset is not contained in the vertex set")]
    NotASubset,

    #[error("complex has a face with {0} vertices; a graph is required")]
    NotAGraph(usize),

    #[error("complex is not flag")]
    NotFlag,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid JSON complex: {0}")]
    Json(String),

    #[error("cochain is not admissible: {0}")]
    Inadmissible(String),

    #[error("cochains belong to different algebras")]
    AmbientMismatch,

    #[error("cochain is not homogeneous")]
    NotHomogeneous,

    #[error("cochain is not a cocycle")]
    NotCocycle,

    #[error("degree {degree} exceeds the truncation {truncation}")]
    DegreeOverflow { degree: usize, truncation: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
