use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown scheme \"{0}\"")]
    UnknownScheme(String),

    #[error("shape violation at entry ({row}, {col}): {reason}")]
    ShapeViolation {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("structure constants are not classifiable: {0}")]
    Unclassifiable(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("point ({q}, {p}) lies outside the grid")]
    PointOutsideGrid { q: f64, p: f64 },

    #[error("singular frame (mu = {mu}, nu = {nu}): {reason}")]
    SingularFrame { mu: f64, nu: f64, reason: String },

    #[error("input does not decay at the grid boundary (boundary mass {boundary_mass:e})")]
    NonDecaying { boundary_mass: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<V> = std::result::Result<V, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
