use std::fmt;

/// Diagnostic codes for scene files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Syntax,
    UnknownReference,
    DuplicateName,
    WrongKind,
    DimensionMismatch,
    Degenerate,
    MissingDimension,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "E001",
            Code::UnknownReference => "E002",
            Code::DuplicateName => "E003",
            Code::WrongKind => "E004",
            Code::DimensionMismatch => "E005",
            Code::Degenerate => "E006",
            Code::MissingDimension => "E007",
        }
    }
}

/// A located scene-file error.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    pub code: Code,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line,
            self.column,
            self.code.as_str(),
            self.message
        )
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Parse(#[from] Diagnostic),

    #[error("query `{query}`: {message}")]
    Query { query: String, message: String },

    #[error("query `{query}`: {source}")]
    Geometry {
        query: String,
        #[source]
        source: cga::Error,
    },

    #[error("bench: {0}")]
    Bench(String),
}

impl CliError {
    /// 0 success, 1 usage, 2 parse, 3 geometric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Query { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Geometry { .. } | CliError::Bench(_) => 3,
        }
    }
}
