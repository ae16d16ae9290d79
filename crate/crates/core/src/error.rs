use crate::hexgrid::HexCoord;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A map document could not be parsed. Line and column are 1-based.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid map: {0}")]
    InvalidMap(String),

    /// A caller broke an operation's precondition.
    #[error("contract violated: {0}")]
    Contract(String),

    #[error("goal unreachable by wall-following: {0}")]
    WallFollowUnreachable(String),

    #[error("start enclosed: no free neighbor at {0}")]
    StartEnclosed(HexCoord),

    #[error("enclosed: no passable direction at {0}")]
    Enclosed(HexCoord),

    #[error("no path constructed after {iterations} iterations")]
    NoPathConstructed { iterations: usize },

    #[error("map is unsolvable: no path from {start} to {goal}")]
    Unsolvable { start: HexCoord, goal: HexCoord },

    #[error("config: {0}")]
    Config(String),

    #[error("run {run} (seed {seed}) failed: {source}")]
    RunFailed {
        run: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
