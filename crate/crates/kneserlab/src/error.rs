//! Crate-wide error type.

use std::fmt;

/// Errors surfaced by the library.
///
/// The variants map onto the CLI exit-code contract: `Domain` and `Parse`
/// are caller mistakes (exit 2), `Budget` is a refused oversized enumeration
/// (exit 3), and `Exhaustion` is the proof-violation diagnostic raised when a
/// candidate pool that the counting arguments promise nonempty turns out to
/// be exhausted (exit 4).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    Domain(String),
    /// A family file or set literal failed to parse; `line` is 1-based.
    Parse { line: usize, msg: String },
    /// An enumeration would exceed the configured budget.
    Budget { required: u64, budget: u64 },
    /// A candidate pool guaranteed nonempty by counting was exhausted.
    Exhaustion {
        context: String,
        pool_candidates: u64,
        forbidden_len: u64,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Budget { required, budget } => write!(
                f,
                "enumeration budget exceeded: needs {required} sets, budget is {budget}"
            ),
            Error::Exhaustion {
                context,
                pool_candidates,
                forbidden_len,
            } => write!(
                f,
                "candidate pool exhausted in {context}: {pool_candidates} candidates, \
                 {forbidden_len} forbidden sets (counting guarantee violated)"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
