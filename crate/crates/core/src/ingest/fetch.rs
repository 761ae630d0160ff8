use std::sync::{Arc, Condvar, Mutex};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use super::config::SourceConfig;
use super::log::RecordLog;
use super::record::{parse_payload, Record};
use super::IngestError;

/// Source of "now" in UTC seconds, for payloads that carry no timestamp.
pub trait Clock: Send + Sync {
    fn now(&self) -> i64;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now(&self) -> i64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs() as i64)
            .unwrap_or(0)
    }
}

/// HTTP client bound to one source.
pub struct Fetcher {
    config: SourceConfig,
    agent: ureq::Agent,
    clock: Arc<dyn Clock>,
}

impl Fetcher {
    pub fn new(config: SourceConfig) -> Result<Self, IngestError> {
        Self::with_clock(config, Arc::new(SystemClock))
    }

    pub fn with_clock(config: SourceConfig, clock: Arc<dyn Clock>) -> Result<Self, IngestError> {
        config.validate()?;
        let agent = ureq::AgentBuilder::new()
            .timeout(Duration::from_secs(10))
            .build();
        Ok(Self {
            config,
            agent,
            clock,
        })
    }

    pub fn config(&self) -> &SourceConfig {
        &self.config
    }

    /// One GET against the source, parsed into a complete record.
    pub fn fetch(&self) -> Result<Record, IngestError> {
        let url = &self.config.base_url;
        let body = match self.agent.get(url).call() {
            Ok(resp) => resp.into_string().map_err(|e| IngestError::Network {
                url: url.clone(),
                message: e.to_string(),
            })?,
            Err(ureq::Error::Status(code, _)) => {
                return Err(IngestError::Network {
                    url: url.clone(),
                    message: format!("HTTP status {code}"),
                })
            }
            Err(e) => {
                return Err(IngestError::Network {
                    url: url.clone(),
                    message: e.to_string(),
                })
            }
        };
        parse_payload(self.config.schema, &body, self.clock.now())
    }
}

/// Fetch a single record from `config` using the system clock.
pub fn fetch_once(config: &SourceConfig) -> Result<Record, IngestError> {
    Fetcher::new(config.clone())?.fetch()
}

/// Cancellation signal shared between a poll loop and its controller.
#[derive(Debug, Clone, Default)]
pub struct StopSignal {
    inner: Arc<(Mutex<bool>, Condvar)>,
}

impl StopSignal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stop(&self) {
        let (flag, cvar) = &*self.inner;
        *flag.lock().unwrap_or_else(|e| e.into_inner()) = true;
        cvar.notify_all();
    }

    pub fn is_stopped(&self) -> bool {
        *self.inner.0.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Sleep until `deadline` or until stopped. Returns `true` if stopped.
    pub fn wait_until(&self, deadline: Instant) -> bool {
        let (flag, cvar) = &*self.inner;
        let mut stopped = flag.lock().unwrap_or_else(|e| e.into_inner());
        loop {
            if *stopped {
                return true;
            }
            let now = Instant::now();
            if now >= deadline {
                return false;
            }
            stopped = cvar
                .wait_timeout(stopped, deadline - now)
                .unwrap_or_else(|e| e.into_inner())
                .0;
        }
    }
}

/// Outcome of a poll loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PollSummary {
    pub attempts: usize,
    pub appended: usize,
    pub failed: usize,
    pub rejected: usize,
}

/// Poll a source on its fixed interval, appending each fetched record to
/// `log` until `stop` fires or `max_attempts` fetches have been made.
///
/// Fetch failures and out-of-order records are logged and skipped; only a
/// failure to write the log ends the loop with an error.
pub fn poll(
    fetcher: &Fetcher,
    log: &mut RecordLog,
    stop: &StopSignal,
    max_attempts: Option<usize>,
) -> Result<PollSummary, IngestError> {
    let name = &fetcher.config().name;
    let interval = fetcher.config().poll_interval;
    let mut summary = PollSummary::default();
    let mut next = Instant::now();

    loop {
        if stop.is_stopped() || max_attempts.is_some_and(|m| summary.attempts >= m) {
            break;
        }
        summary.attempts += 1;
        match fetcher.fetch() {
            Ok(record) => match log.append(&record) {
                Ok(()) => summary.appended += 1,
                Err(e @ IngestError::OutOfOrder { .. }) => {
                    log::warn!("{name}: record dropped: {e}");
                    summary.rejected += 1;
                }
                Err(e) => return Err(e),
            },
            Err(e) => {
                log::warn!("{name}: fetch failed: {e}");
                summary.failed += 1;
            }
        }
        if max_attempts.is_some_and(|m| summary.attempts >= m) {
            break;
        }
        next += interval;
        if stop.wait_until(next) {
            break;
        }
    }
    log::info!(
        "{name}: {} attempts, {} appended, {} failed, {} rejected",
        summary.attempts,
        summary.appended,
        summary.failed,
        summary.rejected
    );
    Ok(summary)
}
