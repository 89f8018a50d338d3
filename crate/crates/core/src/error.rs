use thiserror::Error;

/// Failure classes shared by every operation in the crate.
///
/// The three variants map onto distinct CLI exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The instance is larger than the desk-scale limits of the operation.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A structural guarantee did not hold; the input violated a
    /// precondition that could not be checked up front, or there is a bug.
    #[error("integrity error: {0}")]
    Integrity(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Capacity(_) => "capacity",
            Error::Integrity(_) => "integrity",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! param_err {
    ($($arg:tt)*) => { $crate::error::Error::Parameter(format!($($arg)*)) };
}

macro_rules! integrity_err {
    ($($arg:tt)*) => { $crate::error::Error::Integrity(format!($($arg)*)) };
}

pub(crate) use integrity_err;
pub(crate) use param_err;
