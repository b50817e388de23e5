use std::path::PathBuf;

/// Everything that can go wrong while loading data or computing scores.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: column '{column}': {message}")]
    Parse {
        file: String,
        line: u64,
        column: String,
        message: String,
    },

    #[error("{file}:{line}: duplicate {what} '{id}'")]
    Duplicate {
        file: String,
        line: u64,
        what: &'static str,
        id: String,
    },

    #[error("{file}:{line}: unknown {what} '{id}'")]
    DanglingReference {
        file: String,
        line: u64,
        what: &'static str,
        id: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no citation baseline for year {year}, category '{category}'")]
    MissingBaseline { year: i32, category: String },

    #[error("no salary for rank '{rank}'")]
    MissingSalary { rank: String },

    #[error("no national {indicator} reference for SDS '{sds}'")]
    UndefinedReference {
        indicator: &'static str,
        sds: String,
    },

    #[error("{university}/{entity}: staff count {got} below required {needed}")]
    ThresholdNotMet {
        university: String,
        entity: String,
        needed: usize,
        got: usize,
    },

    #[error("rankings cover different entity sets ({left} vs {right} entities)")]
    PopulationMismatch { left: usize, right: usize },

    #[error("population of {got} too small: need at least {needed}")]
    PopulationTooSmall { needed: usize, got: usize },

    #[error("non-finite score for entity '{0}'")]
    NonFiniteScore(String),

    #[error("rank variance is zero, correlation undefined")]
    ZeroRankVariance,
}

impl Error {
    /// Exit code the CLI maps this error to: 1 for data or configuration
    /// problems, 2 for computation problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. }
            | Error::Parse { .. }
            | Error::Duplicate { .. }
            | Error::DanglingReference { .. }
            | Error::InvalidConfig(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
