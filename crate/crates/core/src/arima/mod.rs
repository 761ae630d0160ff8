//! ARIMA(p,d,q) estimation and rolling one-step static forecasts.
//!
//! The series is differenced `d` times; on the differenced series `w`
//!
//! ```text
//! w_t = c + Σ φ_i w_{t-i} + Σ θ_j ε_{t-j} + ε_t
//! ```
//!
//! Pure AR models are estimated by least squares. Models with MA terms
//! minimize the conditional sum of squared innovations by Gauss–Newton.

mod diff;
mod fit;
mod rolling;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use self::diff::{difference, difference_with_seeds, undifference};
pub use self::fit::{fit, fit_with, min_series_len, ArimaModel, FitOptions};
pub use self::rolling::{rolling_forecast, rolling_forecast_from, rolling_start, Refit, RollingConfig};

#[derive(Debug, Error)]
pub enum ArimaError {
    #[error("series of length {len} too short, need at least {needed}")]
    TooShort { len: usize, needed: usize },
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("Gauss-Newton did not converge after {iterations} iterations (objective {objective})")]
    NotConverged { iterations: usize, objective: f64 },
    #[error("forecast at index {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<ArimaError>,
    },
    #[error("forecast start {start} outside 1..{len}")]
    BadStart { start: usize, len: usize },
    #[error("train fraction {0} outside (0, 1)")]
    BadFraction(f64),
}

/// Model order `(p, d, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
}

impl ArimaOrder {
    pub fn new(p: usize, d: usize, q: usize) -> Result<Self, ArimaError> {
        if p + q + d == 0 {
            return Err(ArimaError::InvalidOrder("(0,0,0) has nothing to fit".into()));
        }
        Ok(Self { p, d, q })
    }
}

impl Default for ArimaOrder {
    fn default() -> Self {
        Self { p: 10, d: 1, q: 0 }
    }
}

impl fmt::Display for ArimaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.d, self.q)
    }
}

impl FromStr for ArimaOrder {
    type Err = ArimaError;

    /// Parses `p,d,q`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || ArimaError::InvalidOrder(format!("expected p,d,q, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut nums = [0usize; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| bad())?;
        }
        Self::new(nums[0], nums[1], nums[2])
    }
}
