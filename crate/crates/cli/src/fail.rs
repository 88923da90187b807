use std::fmt;

pub const USAGE: i32 = 1;
pub const DATA: i32 = 2;
pub const NO_RESULT: i32 = 3;

/// A message paired with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: USAGE, message: message.into() }
    }

    pub fn data(message: impl Into<String>) -> Failure {
        Failure { code: DATA, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERROR:{}: {}", self.code, self.message)
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::data(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Failure>;
