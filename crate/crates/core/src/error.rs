use crate::graph::GraphError;
use crate::weight::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrechetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("this engine needs an exact oracle (stretch 1), got {0}")]
    InexactOracle(String),
    #[error("oracle stretch {stretch} exceeds the allowed 1+alpha = {allowed}")]
    StretchTooLarge { stretch: Scalar, allowed: Scalar },
    #[error("instance has {cells} cells, brute force is limited to {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("walk endpoints lie in different components")]
    Disconnected,
    #[error("Voronoi diagram does not match the vertex set of P")]
    VoronoiMismatch,
}

pub type Result<T, E = FrechetError> = std::result::Result<T, E>;
