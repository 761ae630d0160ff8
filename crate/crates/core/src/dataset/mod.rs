//! From raw streams to model-ready samples: merge prices with sentiment,
//! fill gaps, min-max scale, window into supervised pairs and split.

mod io;
mod merge;
mod scaler;
mod supervised;

use thiserror::Error;

pub use self::io::{read_merged, write_merged};
pub use self::merge::{fill_missing, merge, MergedRow, MergedSeries, DEFAULT_BUCKET_SECS};
pub use self::scaler::{ScaledSeries, ScalerParams, SERIES_COLUMNS};
pub use self::supervised::{
    split, to_supervised, train_len, FeatureMode, SupervisedDataset, DEFAULT_TRAIN_FRACTION,
};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("no price observations to build a series from")]
    NoPrices,
    #[error("every price in the series is missing")]
    AllPricesMissing,
    #[error("input is not time-ordered at t={0}")]
    Unordered(i64),
    #[error("bucket width must be positive, got {0}")]
    BadBucket(i64),
    #[error("series of length {len} is too short for lag {lag}")]
    TooShort { len: usize, lag: usize },
    #[error("lag must be positive")]
    ZeroLag,
    #[error("need at least 2 samples to split, got {0}")]
    TooFewSamples(usize),
    #[error("train fraction {0} outside (0, 1)")]
    BadFraction(f64),
    #[error("expected {expected} columns, got {got}")]
    ColumnMismatch { expected: usize, got: usize },
    #[error("scaler needs at least one row")]
    EmptyScaler,
    #[error("{0}")]
    Format(String),
}
