use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices or no edges")]
    EmptyGraph,
    #[error("graph is not connected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("more than {limit} spanning trees")]
    EnumerationLimitExceeded { limit: usize },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("non-finite input: {0}")]
    NonFiniteInput(String),
    #[error("non-finite sample of the potential at x = {x}")]
    NonFiniteSample { x: f64 },
    #[error("position x = {0} outside [0, 1]")]
    XOutOfRange(f64),
    #[error("non-finite entry in the spectral matrix at lambda = {lambda}")]
    NonFiniteEntry { lambda: f64 },
    #[error("empty search interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("grid too coarse near lambda = {lambda}: roots could not be separated")]
    GridTooCoarse { lambda: f64 },
    #[error("lambda = {0} is not an eigenvalue")]
    NotAnEigenvalue(f64),
    #[error("cluster window {window} around {center} reaches the neighbouring cluster")]
    WindowCollision { center: f64, window: f64 },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
}
