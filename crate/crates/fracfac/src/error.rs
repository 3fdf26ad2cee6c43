//! Crate-wide error type.
//!
//! Variants are grouped by how the command-line tool reports them: input
//! problems (bad arguments, unparsable files), violated design invariants,
//! exceeded size caps, and exceeded search budgets. [`Error::exit_code`]
//! returns the process exit code used for each group.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside its documented domain (bad index, bad width, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Design file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A column is the zero vector; the design would not even have
    /// resolution II.
    #[error("column {index} is the zero vector")]
    ZeroColumn { index: usize },

    /// Two columns coincide; the design would not have resolution III.
    #[error("columns {first} and {second} are identical")]
    DuplicateColumn { first: usize, second: usize },

    /// More columns than distinct nonzero vectors of the given width.
    #[error("{n} columns exceed the 2^{k} - 1 = {max} distinct nonzero vectors of width {k}")]
    Capacity { n: usize, k: u32, max: u64 },

    /// Operation needs a full-rank design.
    #[error("design has rank {rank} < k = {k}; re-embed it first")]
    ReducedRank { rank: u32, k: u32 },

    /// Operation needs a minimum resolution the design does not reach.
    #[error("operation requires resolution at least {required}")]
    ResolutionTooLow { required: u32 },

    /// Input data contradicts itself (e.g. a weight distribution whose
    /// transform is not integral).
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// A documented size cap was exceeded.
    #[error("{what} = {actual} exceeds the supported limit {cap}")]
    SizeLimit {
        what: &'static str,
        cap: u64,
        actual: u64,
    },

    /// A search would visit more states than the configured budget allows.
    #[error("search would visit {needed} states, over the budget of {budget}{hint}")]
    Budget {
        needed: u64,
        budget: u64,
        hint: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }

    /// Process exit code for the command-line tool: 2 for unusable input,
    /// 3 for violated design invariants, 4 for exceeded caps, 5 for
    /// exceeded budgets.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } => 2,
            Error::ZeroColumn { .. }
            | Error::DuplicateColumn { .. }
            | Error::ReducedRank { .. }
            | Error::ResolutionTooLow { .. }
            | Error::Inconsistent(_) => 3,
            Error::Capacity { .. } | Error::SizeLimit { .. } => 4,
            Error::Budget { .. } => 5,
            Error::Io(_) => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
