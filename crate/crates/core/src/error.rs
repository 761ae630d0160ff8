use thiserror::Error;

use crate::arima::ArimaError;
use crate::dataset::DatasetError;
use crate::eval::EvalError;
use crate::ingest::IngestError;
use crate::lstm::LstmError;
use crate::sentiment::SentimentError;

pub type Result<T> = std::result::Result<T, Error>;

/// Any error raised by the pipeline, tagged by the stage that produced it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ingest: {0}")]
    Ingest(#[from] IngestError),
    #[error("sentiment: {0}")]
    Sentiment(#[from] SentimentError),
    #[error("dataset: {0}")]
    Dataset(#[from] DatasetError),
    #[error("lstm: {0}")]
    Lstm(#[from] LstmError),
    #[error("arima: {0}")]
    Arima(#[from] ArimaError),
    #[error("eval: {0}")]
    Eval(#[from] EvalError),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<std::path::PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
