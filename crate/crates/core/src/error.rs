use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot access {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input; `locator` names the line or record that failed.
    #[error("parse error at {locator}: {message}")]
    Parse { locator: String, message: String },

    /// Structurally invalid input that cannot be analysed.
    #[error("invalid corpus: {message} (records: {})", ids.join(", "))]
    Invalid { message: String, ids: Vec<String> },

    #[error("corpus has no focal publications")]
    EmptyCorpus,

    #[error("edge references unknown publication id `{0}`")]
    DanglingEdge(String),

    #[error("invalid table {table}: {message}")]
    InvalidTable { table: String, message: String },

    #[error("missing table `{0}` required by an enabled section")]
    MissingTable(String),

    #[error("missing baseline row for category `{category}`, year {year}, doc type {doc_type}")]
    MissingBaseline {
        category: String,
        year: i32,
        doc_type: String,
    },

    #[error("no categories given")]
    NoCategories,

    #[error("journal `{journal}` is not listed in category `{category}`")]
    JournalNotInCategory { journal: String, category: String },

    #[error("journal `{0}` is unknown")]
    UnknownJournal(String),

    #[error("no {metric} data for edition {edition}")]
    UnknownEdition { metric: String, edition: i32 },

    #[error("empty window {start}..={end}")]
    EmptyWindow { start: i32, end: i32 },

    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(locator: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            locator: locator.into(),
            message: message.to_string(),
        }
    }

    /// Whether the error stems from missing tables or configuration rather
    /// than from bad corpus data.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::MissingTable(_) | Error::Config(_) | Error::InvalidTable { .. }
        )
    }
}
