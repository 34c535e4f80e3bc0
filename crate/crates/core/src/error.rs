use thiserror::Error;

/// Errors raised by the model, solvers and run front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("amplitude |xi| = {0} exceeds 1")]
    InvalidAmplitude(f64),

    #[error("Bloch vector norm {0} exceeds 1")]
    InvalidBlochVector(f64),

    #[error("state vector is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("inconsistent probability distribution: {0}")]
    InconsistentDistribution(String),

    #[error("{what}: accuracy estimate {estimate:.3e} exceeds tolerance {tolerance:.1e}{}",
        suggested_step.map(|h| format!(" (try a step of at most {h:.3e})")).unwrap_or_default())]
    Accuracy { what: &'static str, estimate: f64, tolerance: f64, suggested_step: Option<f64> },

    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { key: key.into(), message: message.into() }
    }

    /// Process exit code used by the command-line front end.
    ///
    /// `2` for configuration/input errors, `3` for numerical accuracy
    /// failures, `4` for I/O and `5` for invalid physical states.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter { .. } | Error::InvalidGrid(_) | Error::Config { .. } => 2,
            Error::Accuracy { .. } => 3,
            Error::Io(_) => 4,
            Error::InvalidAmplitude(_)
            | Error::InvalidBlochVector(_)
            | Error::NotNormalized(_)
            | Error::InconsistentDistribution(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
