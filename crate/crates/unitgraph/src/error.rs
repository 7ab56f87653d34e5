use std::fmt;

/// Errors produced by this crate.
#[derive(Debug)]
pub enum Error {
    /// An argument is outside the operation's domain (bad modulus, shape
    /// mismatch, non-prime field, ...).
    Domain(String),
    /// A configured budget would be exceeded (vertex budget, ...).
    Resource(String),
    /// Underlying I/O failure.
    Io(std::io::Error),
    /// Malformed textual input (matrix / edge-list files).
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Resource(msg) => write!(f, "resource error: {msg}"),
            Error::Io(err) => write!(f, "i/o error: {err}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
