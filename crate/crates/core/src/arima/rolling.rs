use super::{fit_with, min_series_len, ArimaError, ArimaModel, ArimaOrder, FitOptions};
use crate::dataset::train_len;

/// Whether coefficients are re-estimated before every forecast.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Refit {
    /// Full refit on all data seen so far before each forecast.
    #[default]
    Always,
    /// Fit once on the training prefix, then only absorb new observations.
    Once,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RollingConfig {
    pub order: ArimaOrder,
    pub fit: FitOptions,
    pub refit: Refit,
}

impl RollingConfig {
    pub fn new(order: ArimaOrder) -> Self {
        Self {
            order,
            ..Self::default()
        }
    }
}

/// Index of the first forecast when the series is split chronologically at
/// `train_fraction`.
pub fn rolling_start(len: usize, train_fraction: f64) -> Result<usize, ArimaError> {
    train_len(len, train_fraction).map_err(|_| {
        if len < 2 {
            ArimaError::TooShort { len, needed: 2 }
        } else {
            ArimaError::BadFraction(train_fraction)
        }
    })
}

/// Static one-step forecasts over the test part of `series`, refitting with
/// each new true observation.
pub fn rolling_forecast(
    series: &[f64],
    order: ArimaOrder,
    train_fraction: f64,
) -> Result<Vec<f64>, ArimaError> {
    let start = rolling_start(series.len(), train_fraction)?;
    rolling_forecast_from(series, start, &RollingConfig::new(order))
}

/// Forecasts for `series[start..]`. The forecast for index `i` only sees
/// `series[..i]`.
pub fn rolling_forecast_from(
    series: &[f64],
    start: usize,
    config: &RollingConfig,
) -> Result<Vec<f64>, ArimaError> {
    if start == 0 || start >= series.len() {
        return Err(ArimaError::BadStart {
            start,
            len: series.len(),
        });
    }
    let at = |index: usize| move |source: ArimaError| ArimaError::AtIndex {
        index,
        source: Box::new(source),
    };
    if start < min_series_len(config.order) {
        return Err(at(start)(ArimaError::TooShort {
            len: start,
            needed: min_series_len(config.order),
        }));
    }

    let mut out = Vec::with_capacity(series.len() - start);
    match config.refit {
        Refit::Always => {
            for i in start..series.len() {
                let model = fit_with(&series[..i], config.order, &config.fit).map_err(at(i))?;
                log_warnings(&model, i);
                out.push(model.forecast_one());
            }
        }
        Refit::Once => {
            let mut model =
                fit_with(&series[..start], config.order, &config.fit).map_err(at(start))?;
            log_warnings(&model, start);
            for &y in &series[start..] {
                out.push(model.forecast_one());
                model.append(y);
            }
        }
    }
    Ok(out)
}

fn log_warnings(model: &ArimaModel, index: usize) {
    for w in &model.warnings {
        log::warn!("index {index}: {w}");
    }
}
