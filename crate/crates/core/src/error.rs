use crate::rat::{ParseRatError, Rat};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("region must contain at least one triangle")]
    EmptyRegion,
    #[error("covering must contain at least one piece")]
    EmptyCovering,
    #[error("generator position {0} outside [0, 1)")]
    PositionOutOfRange(Rat),
    #[error("invalid domain: {0}")]
    InvalidInput(String),
    #[error("{construction}: eps = {eps} is inadmissible, the layout covers only for eps in (0, {bound}]")]
    InadmissibleEps {
        construction: &'static str,
        eps: Box<Rat>,
        bound: Box<Rat>,
    },
    #[error("unsupported extra piece count k = {0}; only k = 2 and k = 3 are decided")]
    UnsupportedExtra(i64),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    ParseRat(#[from] ParseRatError),
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
