use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid {name} = {value:e}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{what} index {index} outside {range}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        range: &'static str,
    },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("velocity undefined at ({x:e}, {y:e}): charge density vanishes")]
    UndefinedVelocity { x: f64, y: f64 },

    #[error("convergence fit needs at least 3 reports, got {0}")]
    TooFewReports(usize),

    #[error("grid spacings must be strictly decreasing")]
    SpacingNotDecreasing,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unknown column `{0}`")]
    UnknownColumn(String),

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("stride {stride} larger than grid ({nx}x{ny})")]
    StrideTooLarge { stride: usize, nx: usize, ny: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
