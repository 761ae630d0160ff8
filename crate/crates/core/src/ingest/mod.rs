//! Market-data ingestion: fetch exchange-style payloads on a fixed cadence
//! and append them to durable CSV record logs.

mod config;
mod fetch;
mod log;
mod record;
mod replay;

use std::path::PathBuf;

use thiserror::Error;

pub use self::config::{load_sources, parse_sources, SourceConfig, DEFAULT_POLL_INTERVAL};
pub use self::fetch::{fetch_once, poll, Clock, Fetcher, PollSummary, StopSignal, SystemClock};
pub use self::log::{read_log, RecordLog};
pub use self::record::{
    parse_payload, BlockchainQuote, MarketSnapshot, PriceTick, Record, Schema,
};
pub use self::replay::ReplayServer;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("request to {url} failed: {message}")]
    Network { url: String, message: String },
    #[error("malformed payload: {0}")]
    Malformed(String),
    #[error("field {field:?}: {reason}")]
    Schema { field: String, reason: String },
    #[error("record timestamp {got} does not follow last logged timestamp {last}")]
    OutOfOrder { last: i64, got: i64 },
    #[error("record of schema {got} cannot go into a {expected} log")]
    SchemaMismatch { expected: Schema, got: Schema },
    #[error("record log {}: {}", .0.display(), .1)]
    Sink(PathBuf, #[source] std::io::Error),
    #[error("record log {}: {}", .0.display(), .1)]
    Decode(PathBuf, String),
    #[error("encoding record: {0}")]
    Encode(String),
    #[error("config: {0}")]
    Config(String),
}

impl IngestError {
    pub(crate) fn missing(field: &str) -> Self {
        IngestError::Schema {
            field: field.into(),
            reason: "missing".into(),
        }
    }

    /// Whether the next scheduled poll may succeed where this one failed.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            IngestError::Network { .. } | IngestError::Malformed(_) | IngestError::Schema { .. }
        )
    }

    /// The offending payload field, for schema errors.
    pub fn field(&self) -> Option<&str> {
        match self {
            IngestError::Schema { field, .. } => Some(field),
            _ => None,
        }
    }
}
