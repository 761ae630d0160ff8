//! The end-to-end model comparison behind `btc-forecast evaluate`.

use super::{compare, naive_from, time_call, ComparisonTable, ForecastReport};
use crate::arima::{fit_with, rolling_forecast_from, ArimaOrder, RollingConfig};
use crate::dataset::{
    fill_missing, split, to_supervised, train_len, FeatureMode, MergedSeries, ScaledSeries,
    DEFAULT_TRAIN_FRACTION,
};
use crate::lstm::{predict_series, train, LstmConfig, LstmModel, TrainHistory};
use crate::Result;

/// Settings shared by every model in a comparison run.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluateOptions {
    /// LSTM hyperparameters; `n_features` is set per feature mode.
    pub lstm: LstmConfig,
    pub arima: RollingConfig,
    pub train_fraction: f64,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        Self {
            lstm: LstmConfig::default(),
            arima: RollingConfig::default(),
            train_fraction: DEFAULT_TRAIN_FRACTION,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LstmRun {
    pub model: LstmModel,
    pub history: TrainHistory,
    pub report: ForecastReport,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub scaled: ScaledSeries,
    pub single: LstmRun,
    pub multi: LstmRun,
    pub arima: ForecastReport,
    pub naive: ForecastReport,
    pub table: ComparisonTable,
}

impl Evaluation {
    pub fn reports(&self) -> [&ForecastReport; 4] {
        [&self.single.report, &self.multi.report, &self.arima, &self.naive]
    }
}

pub fn lstm_name(mode: FeatureMode) -> &'static str {
    match mode {
        FeatureMode::PriceOnly => "lstm-single",
        FeatureMode::PriceAndSentiment => "lstm-multi",
    }
}

pub fn arima_name(order: ArimaOrder) -> String {
    format!("arima{order}")
}

/// Series index of the first test target for a lagged chronological split.
pub fn test_start(len: usize, lag: usize, train_fraction: f64) -> Result<usize> {
    let samples = len.saturating_sub(lag);
    Ok(lag + train_len(samples, train_fraction)?)
}

/// Train on the first part of the supervised samples, score on the rest in
/// USD.
pub fn run_lstm(
    series: &MergedSeries,
    scaled: &ScaledSeries,
    mode: FeatureMode,
    config: &LstmConfig,
    train_fraction: f64,
) -> Result<LstmRun> {
    let config = LstmConfig {
        n_features: mode.n_features(),
        ..config.clone()
    };
    let dataset = to_supervised(scaled, config.lag, mode)?;
    let (train_set, test_set) = split(&dataset, train_fraction)?;
    let (model, history) = train(&config, &train_set)?;
    let predicted = predict_series(&model, &test_set)?;
    let start = series.len() - test_set.len();
    let report = ForecastReport::from_parts(
        lstm_name(mode),
        &test_set.target_times,
        &series.prices()[start..],
        &predicted,
        history.build_time_ms,
        history.total_train_time_ms(),
    )?;
    Ok(LstmRun {
        model,
        history,
        report,
    })
}

/// Rolling ARIMA forecasts over `prices[start..]`. The build time is the
/// initial fit on the training prefix.
pub fn run_arima(series: &MergedSeries, start: usize, config: &RollingConfig) -> Result<ForecastReport> {
    let prices = series.prices();
    let (initial, build_ms) = time_call(|| fit_with(&prices[..start], config.order, &config.fit));
    initial?;
    let (predicted, fit_ms) = time_call(|| rolling_forecast_from(&prices, start, config));
    Ok(ForecastReport::from_parts(
        arima_name(config.order),
        &series.times()[start..],
        &prices[start..],
        &predicted?,
        build_ms,
        fit_ms,
    )?)
}

/// Single- and multi-feature LSTM, ARIMA and the naive baseline over the
/// same test targets, ranked by RMSE.
pub fn evaluate(series: &MergedSeries, options: &EvaluateOptions) -> Result<Evaluation> {
    let series = if series.has_missing() {
        fill_missing(series)?
    } else {
        series.clone()
    };
    let scaled = ScaledSeries::fit(&series)?;
    let frac = options.train_fraction;
    let single = run_lstm(&series, &scaled, FeatureMode::PriceOnly, &options.lstm, frac)?;
    let multi = run_lstm(&series, &scaled, FeatureMode::PriceAndSentiment, &options.lstm, frac)?;
    let start = test_start(series.len(), options.lstm.lag, frac)?;
    let arima = run_arima(&series, start, &options.arima)?;
    let naive = naive_from(&series.times(), &series.prices(), start)?;
    let table = compare(&[
        single.report.clone(),
        multi.report.clone(),
        arima.clone(),
        naive.clone(),
    ])?;
    Ok(Evaluation {
        scaled,
        single,
        multi,
        arima,
        naive,
        table,
    })
}
