use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Operand shapes do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix does not have the rank an operation needs.
    #[error("rank deficiency: {0}")]
    Rank(String),

    /// An iterative kernel did not converge, or produced non-finite output.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The barrier sparsifier found no admissible index at some step.
    #[error("barrier infeasible at step {step}: best margin L - U = {margin:e}")]
    Infeasible { step: usize, margin: f64 },

    /// An internal iteration cap was exceeded where the algorithm guarantees termination.
    #[error("internal error: {0}")]
    Internal(String),

    /// A computed size exceeds what the input can supply.
    #[error("{what}: requested {requested}, available {available}")]
    Oversized {
        what: &'static str,
        requested: usize,
        available: usize,
    },

    /// A brute-force enumeration would exceed its combinatorial guard.
    #[error("enumeration refused: {count} candidates exceed the guard of {limit}")]
    Guard { count: u128, limit: u128 },

    /// Malformed input data.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Well-formed input whose field type is not supported.
    #[error("unsupported field type: {0}")]
    Type(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Argument(_)
            | Error::Dimension(_)
            | Error::Rank(_)
            | Error::Oversized { .. }
            | Error::Guard { .. } => 2,
            Error::Numeric(_) | Error::Infeasible { .. } | Error::Internal(_) => 3,
            Error::Parse { .. } | Error::Type(_) | Error::Io(_) => 4,
        }
    }

    /// Short stable tag used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Argument(_) => "argument",
            Error::Dimension(_) => "dimension",
            Error::Rank(_) => "rank",
            Error::Numeric(_) => "numeric",
            Error::Infeasible { .. } => "infeasible",
            Error::Internal(_) => "internal",
            Error::Oversized { .. } => "oversized",
            Error::Guard { .. } => "guard",
            Error::Parse { .. } => "parse",
            Error::Type(_) => "type",
            Error::Io(_) => "io",
        }
    }
}
