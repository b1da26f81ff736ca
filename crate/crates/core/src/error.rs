use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no edges left after removing self-loops and duplicates")]
    NoEdges,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),

    #[error("layout has no coordinates for vertex {0}")]
    MissingVertex(usize),

    #[error("non-finite coordinate for vertex {0}")]
    NonFinite(usize),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("exact effective resistance on a component of {n} vertices exceeds the dense cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("Laplacian solve did not converge after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("no effective resistance for edge {0}")]
    MissingResistance(usize),

    #[error("degenerate drawing: {0}")]
    Degenerate(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("original raster has no lit pixels")]
    EmptyRaster,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
