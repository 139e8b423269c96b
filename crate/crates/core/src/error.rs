use thiserror::Error;

use crate::run::RunOutput;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinates must be strictly increasing (violated at index {0})")]
    NonIncreasingCoords(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("time stamp mismatch: {0} vs {1}")]
    TimeMismatch(f64, f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Newton iteration failed at t = {t}: {iterations} iterations, last increment {increment:e}")]
    NewtonFailure { t: f64, iterations: usize, increment: f64 },

    #[error("quantity undefined: {0}")]
    Undefined(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("run aborted: {reason}")]
    RunAborted { reason: String, partial: Box<RunOutput> },

    #[error("malformed data: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command-line tool: 2 for configuration
    /// problems, 4 for I/O, 3 for everything that goes wrong while solving.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::InvalidParameter(_) => 2,
            Self::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
