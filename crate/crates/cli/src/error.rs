use std::fmt;

/// Anything that stops a run before a report exists; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HarnessError {
    Input(String),
    Io(String),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Input(m) => write!(f, "input error: {m}"),
            HarnessError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<hecke_core::Error> for HarnessError {
    fn from(e: hecke_core::Error) -> Self {
        HarnessError::Input(e.to_string())
    }
}

pub type HResult<T> = Result<T, HarnessError>;

pub(crate) fn input(msg: impl Into<String>) -> HarnessError {
    HarnessError::Input(msg.into())
}
