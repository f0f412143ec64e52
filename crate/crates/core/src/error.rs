use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("asymmetric multiplicity between vertices {0} and {1}")]
    Asymmetric(usize, usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("point does not lie in the zero-sum hyperplane")]
    NotInH0,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration limit: {what} is {value}, limit is {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("not a Delaunay polytope of a connected multigraph: {0}")]
    NotDelaunayPolytope(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable tag, used in the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::SelfLoop(_) => "self_loop",
            Error::Asymmetric(..) => "asymmetric",
            Error::Disconnected => "disconnected",
            Error::NotInH0 => "not_in_h0",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::GuardExceeded { .. } => "enumeration_limit",
            Error::NotDelaunayPolytope(_) => "not_delaunay_polytope",
            Error::Numeric(_) => "numeric",
            Error::Overflow(_) => "overflow",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Json(_) => "invalid_json",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
