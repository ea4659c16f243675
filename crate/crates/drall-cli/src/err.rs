//! CLI error type and exit-code policy: 0 success, 2 parse/usage,
//! 3 geometric precondition or I/O, 4 verification failure.

use std::fmt;

use drall::GeomError;

use crate::expr::ParseError;

/// Anything that can abort a CLI run.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag combinations or values.
    Usage(String),
    /// Expression or config text failed to parse.
    Parse {
        /// Which input was being parsed.
        what: String,
        /// The underlying position-carrying failure.
        err: ParseError,
    },
    /// A curve expression produced a non-finite value.
    Evaluation {
        /// Which curve failed ("base" or "ruling").
        curve: &'static str,
        /// Parameter value at the failure.
        s: f64,
    },
    /// Geometric precondition violated.
    Geom(GeomError),
    /// File output failed.
    Io(std::io::Error),
    /// An enforced verification row exceeded its tolerance.
    VerificationFailed,
}

impl CliError {
    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Evaluation { .. } | CliError::Geom(_) | CliError::Io(_) => 3,
            CliError::VerificationFailed => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Parse { what, err } => write!(f, "cannot parse {what}: {err}"),
            CliError::Evaluation { curve, s } => {
                write!(f, "evaluation error: {curve} curve is non-finite at s = {s}")
            }
            CliError::Geom(e) => write!(f, "geometry error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::VerificationFailed => write!(f, "enforced verification rows failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Geom(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
