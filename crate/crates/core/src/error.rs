use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left} vs {right}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generator has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("generator column {0} is all-zero")]
    ZeroColumn(usize),

    #[error("dimension {k} exceeds the enumeration guard {max}")]
    EnumerationGuard { k: usize, max: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("code is not LCD")]
    NotLcd,

    #[error("code is LCD: hull is trivial")]
    TrivialHull,

    #[error("code is self-orthogonal: no LCD complement to the hull")]
    SelfOrthogonal,

    #[error("column type {0} does not occur in the generator")]
    ColumnAbsent(usize),

    #[error("no appended column yields an LCD code")]
    NoLcdExtension,

    #[error("database record for n={n} k={k} is missing")]
    RecordMissing { n: usize, k: usize },

    #[error("record {name} failed re-verification: {detail}")]
    VerificationMismatch { name: String, detail: String },

    #[error("unknown theorem id {0}")]
    UnknownTheorem(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
