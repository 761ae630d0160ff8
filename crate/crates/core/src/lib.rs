//! Bitcoin price forecasting from market data and public sentiment.
//!
//! The crate covers the whole pipeline:
//!
//! - [`ingest`]: poll exchange-style ticker APIs on a fixed cadence into
//!   append-only CSV record logs, plus a replay server for offline tests.
//! - [`sentiment`]: tweet normalization, tokenization, stopword removal and
//!   lexicon polarity scoring.
//! - [`dataset`]: merge prices with sentiment into a `time,price,sentiment`
//!   series, fill gaps, min-max scale, window into supervised samples, split.
//! - [`lstm`]: a single-layer LSTM with a dense head, trained with
//!   backpropagation through time and Adam on mean absolute error.
//! - [`arima`]: ARIMA(p,d,q) estimation and rolling one-step forecasts.
//! - [`eval`]: RMSE/MSE, timings, model comparison and plot data files.
//! - [`cli`]: the `btc-forecast` command line.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod arima;
pub mod cli;
pub mod dataset;
pub mod eval;
pub mod ingest;
pub mod lstm;
pub mod sentiment;
pub mod synthetic;

mod error;

pub use error::{Error, Result};

/// Environment variable that overrides the bundled fixtures directory.
pub const FIXTURES_ENV: &str = "BTC_FORECAST_FIXTURES";

/// Directory holding the bundled fixtures (sine series, replay payloads,
/// sample posts), honouring [`FIXTURES_ENV`].
pub fn fixtures_dir() -> std::path::PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(dir) => dir.into(),
        None => std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}
