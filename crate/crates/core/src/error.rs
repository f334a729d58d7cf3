use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Spectral data whose inverse transform is not real.
    #[error("conjugate symmetry violated: imaginary residue {residue:e} exceeds {tolerance:e}")]
    SymmetryViolation { residue: f64, tolerance: f64 },

    /// A nodal field contains NaN or infinite values.
    #[error("non-finite value in state at t = {time}")]
    InvalidState { time: f64 },

    /// An RK4 stage (1..=4) produced non-finite values; stage 5 is the final update.
    #[error("non-finite values in RK4 stage {stage}")]
    NonFiniteStage { stage: u8 },

    #[error("slope law is singular at t = {t} for m0 = {m0}")]
    SingularTime { m0: f64, t: f64 },

    /// Characteristics requested at or past the shock time.
    #[error("t = {t} is not below the shock time {shock_time}")]
    ShockDomain { t: f64, shock_time: f64 },

    #[error(
        "characteristics iteration failed to converge at x = {x}, t = {t} (residual {residual:e})"
    )]
    Convergence { x: f64, t: f64, residual: f64 },

    /// Bad configuration value; `key` names the offending option.
    #[error("invalid value for `{key}`: {message}")]
    Usage { key: String, message: String },

    /// `--help` or `--version` output requested on the command line.
    #[error("{0}")]
    Help(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(key: &str, message: impl Into<String>) -> Self {
        Error::Usage {
            key: key.to_string(),
            message: message.into(),
        }
    }
}
