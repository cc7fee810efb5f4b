use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("undecided at {prec} bits: {what}")]
    Undecided { what: String, prec: u32 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("field table rejected: {0}")]
    InvalidRecord(String),

    #[error("field table is complete for degree {degree} only up to {complete_to}, requested {requested}")]
    Incomplete {
        degree: u32,
        complete_to: u64,
        requested: u64,
    },

    #[error("no data: {0}")]
    MissingData(String),
}

impl Error {
    pub fn is_undecided(&self) -> bool {
        matches!(self, Error::Undecided { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
