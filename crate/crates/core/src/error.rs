use thiserror::Error;

pub type Result<T, E = NearnessError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum NearnessError {
    #[error("unknown object id `{0}`")]
    UnknownObject(String),

    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),

    #[error("unknown probe `{0}`")]
    UnknownProbe(String),

    #[error("unknown subset `{0}`")]
    UnknownSubset(String),

    #[error("unknown map `{0}`")]
    UnknownMap(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A semantic violation located at a JSON path inside a document.
    #[error("{path}: {message}")]
    Document { path: String, message: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("refusing to enumerate the powerset of {size} objects (bound is {bound})")]
    PowersetTooLarge { size: usize, bound: usize },

    #[error("search size {size} exceeds the bound {bound} for {mode} mode")]
    SearchTooLarge { size: usize, bound: usize, mode: &'static str },

    /// `x op y` left the upper approximation of the ambient carrier.
    #[error("closure error: {x} {op} {y} = {result} escapes the upper approximation")]
    Closure { op: &'static str, x: String, y: String, result: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("structural error: {0}")]
    Structural(String),
}

impl NearnessError {
    /// Process exit code used by the CLI. Verification failures are not errors
    /// and exit with 1 elsewhere.
    pub fn exit_code(&self) -> i32 {
        2
    }

    pub fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        NearnessError::Document { path: path.into(), message: message.into() }
    }
}
