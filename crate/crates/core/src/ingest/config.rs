use std::path::Path;
use std::time::Duration;

use serde::Deserialize;

use super::record::Schema;
use super::IngestError;

pub const DEFAULT_POLL_INTERVAL: Duration = Duration::from_secs(60);

/// One polled source.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceConfig {
    pub name: String,
    pub base_url: String,
    pub poll_interval: Duration,
    pub schema: Schema,
}

impl SourceConfig {
    pub fn new(
        name: impl Into<String>,
        base_url: impl Into<String>,
        schema: Schema,
    ) -> Result<Self, IngestError> {
        let config = Self {
            name: name.into(),
            base_url: base_url.into(),
            poll_interval: DEFAULT_POLL_INTERVAL,
            schema,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_poll_interval(mut self, interval: Duration) -> Result<Self, IngestError> {
        self.poll_interval = interval;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        if self.name.trim().is_empty() {
            return Err(IngestError::Config("source name is empty".into()));
        }
        if self.poll_interval.is_zero() {
            return Err(IngestError::Config(format!(
                "{}: poll interval must be positive",
                self.name
            )));
        }
        let url = url::Url::parse(&self.base_url)
            .map_err(|e| IngestError::Config(format!("{}: base_url: {e}", self.name)))?;
        if !matches!(url.scheme(), "http" | "https") || url.host().is_none() {
            return Err(IngestError::Config(format!(
                "{}: base_url must be an absolute http(s) URL",
                self.name
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceEntry {
    name: String,
    base_url: String,
    #[serde(default = "default_interval_secs")]
    poll_interval_s: f64,
    schema: Schema,
}

fn default_interval_secs() -> f64 {
    DEFAULT_POLL_INTERVAL.as_secs_f64()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourcesFile {
    #[serde(default)]
    source: Vec<SourceEntry>,
}

/// Parse a TOML sources file made of `[[source]]` tables.
pub fn parse_sources(text: &str) -> Result<Vec<SourceConfig>, IngestError> {
    let file: SourcesFile =
        toml::from_str(text).map_err(|e| IngestError::Config(e.to_string()))?;
    file.source
        .into_iter()
        .map(|entry| {
            if !(entry.poll_interval_s.is_finite() && entry.poll_interval_s > 0.0) {
                return Err(IngestError::Config(format!(
                    "{}: poll_interval_s must be positive",
                    entry.name
                )));
            }
            SourceConfig::new(entry.name, entry.base_url, entry.schema)?
                .with_poll_interval(Duration::from_secs_f64(entry.poll_interval_s))
        })
        .collect()
}

pub fn load_sources(path: impl AsRef<Path>) -> Result<Vec<SourceConfig>, IngestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| IngestError::Config(format!("{}: {e}", path.display())))?;
    parse_sources(&text)
}
