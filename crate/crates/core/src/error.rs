use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("duplicate tweet id `{0}`")]
    DuplicateTweetId(String),

    #[error("gold summary references unknown tweet `{0}`")]
    UnknownGoldTweet(String),

    #[error("duplicate category id `{0}`")]
    DuplicateCategory(String),

    #[error("category `{0}` has no keywords")]
    EmptyCategory(String),

    #[error("unknown category `{0}`")]
    UnknownCategory(String),

    #[error("invalid merge: {0}")]
    InvalidMerge(String),

    #[error("approval ({category}, {word}) does not match any harvested candidate")]
    UnknownApproval { category: String, word: String },

    #[error("invalid weights w1={w1}, w2={w2}: both must lie in (0, 1) and sum to 1")]
    InvalidWeights { w1: f64, w2: f64 },

    #[error("partition has no classified tweets")]
    EmptyPartition,

    #[error("no candidate disasters to compare against{0}")]
    NoCandidates(&'static str),

    #[error("dataset `{0}` has no gold summary")]
    MissingGold(String),

    #[error("need {required} tweets but only {available} are available (short by {})", required - available)]
    InsufficientTweets { required: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(origin: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            origin: origin.into(),
            line,
            message: message.into(),
        }
    }
}
