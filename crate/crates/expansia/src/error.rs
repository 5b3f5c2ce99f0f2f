use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed; positions are 1-based.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Integer matrix arithmetic left the `i64` range.
    #[error("integer overflow in exact matrix arithmetic")]
    Overflow,

    /// A value failed a structural validation.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested operation is not defined for these arguments.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A family of sets does not cover its space.
    #[error("not a cover: {0}")]
    NotACover(String),

    /// A ball cover at this grid resolution cannot cover the torus.
    #[error("grid too coarse to cover: need q >= {required}")]
    GridTooCoarse { required: u64 },

    /// A subset is not invariant under the action.
    #[error("subset not invariant: {0}")]
    NotInvariant(String),

    /// The fixed-point set is not finite (or not provably finite).
    #[error("fixed-point set is not a finite set computable by this solver: {0}")]
    FixedSetNotFinite(String),

    /// A report was produced by an incompatible tool version.
    #[error("version mismatch: report from {report}, tool is {tool}")]
    VersionMismatch { report: String, tool: String },

    #[error("replay mismatch at field {field}: report has {expected}, recomputed {actual}")]
    ReplayMismatch {
        field: String,
        expected: String,
        actual: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
