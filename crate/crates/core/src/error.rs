use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |A - A^H| = {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("correlation matrix eigenvalue {value:.6e} lies outside [0, 1]")]
    EigenvalueOutOfRange { value: f64 },

    #[error("{modes} modes exceed the Fock-space limit of {limit} modes")]
    TooManyModes { modes: usize, limit: usize },

    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },

    #[error("mode index {0} listed more than once")]
    DuplicateMode(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cutoff M = {cutoff} is invalid: {reason}")]
    InvalidCutoff { cutoff: usize, reason: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sweep point #{index} ({variable} = {value}): {source}")]
    SweepPoint {
        index: usize,
        variable: String,
        value: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
