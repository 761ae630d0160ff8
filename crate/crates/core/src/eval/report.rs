use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{mse, time_call, EvalError};
use crate::arima::rolling_start;

pub const FORECAST_HEADER: [&str; 3] = ["time", "actual", "predicted"];

/// One scored prediction, in USD.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForecastPoint {
    pub time: i64,
    pub actual: f64,
    pub predicted: f64,
}

/// Scored predictions of one model plus its timings.
#[derive(Debug, Clone, PartialEq)]
pub struct ForecastReport {
    pub model_name: String,
    pub predictions: Vec<ForecastPoint>,
    pub mse: f64,
    pub rmse: f64,
    pub build_time_ms: f64,
    pub train_time_ms: f64,
}

impl ForecastReport {
    pub fn new(
        model_name: impl Into<String>,
        predictions: Vec<ForecastPoint>,
        build_time_ms: f64,
        train_time_ms: f64,
    ) -> Result<Self, EvalError> {
        let actual: Vec<f64> = predictions.iter().map(|p| p.actual).collect();
        let predicted: Vec<f64> = predictions.iter().map(|p| p.predicted).collect();
        let mse = mse(&actual, &predicted)?;
        Ok(Self {
            model_name: model_name.into(),
            predictions,
            mse,
            rmse: mse.sqrt(),
            build_time_ms,
            train_time_ms,
        })
    }

    /// Zip times, actuals and predictions into a report.
    pub fn from_parts(
        model_name: impl Into<String>,
        times: &[i64],
        actual: &[f64],
        predicted: &[f64],
        build_time_ms: f64,
        train_time_ms: f64,
    ) -> Result<Self, EvalError> {
        if times.len() != actual.len() || actual.len() != predicted.len() {
            return Err(EvalError::LengthMismatch {
                actual: actual.len(),
                predicted: predicted.len(),
            });
        }
        let points = times
            .iter()
            .zip(actual)
            .zip(predicted)
            .map(|((&time, &actual), &predicted)| ForecastPoint {
                time,
                actual,
                predicted,
            })
            .collect();
        Self::new(model_name, points, build_time_ms, train_time_ms)
    }
}

/// Last-value forecaster over `values[start..]`.
pub fn naive_from(times: &[i64], values: &[f64], start: usize) -> Result<ForecastReport, EvalError> {
    if times.len() != values.len() {
        return Err(EvalError::LengthMismatch {
            actual: values.len(),
            predicted: times.len(),
        });
    }
    if start == 0 || start >= values.len() {
        return Err(EvalError::TooShort(format!(
            "start {start} with {} values",
            values.len()
        )));
    }
    let (predicted, elapsed) = time_call(|| values[start - 1..values.len() - 1].to_vec());
    ForecastReport::from_parts(
        "naive",
        &times[start..],
        &values[start..],
        &predicted,
        0.0,
        elapsed,
    )
}

/// Predict every test value as the previous true value, over the
/// chronological test split at `train_fraction`.
pub fn naive_baseline(
    times: &[i64],
    values: &[f64],
    train_fraction: f64,
) -> Result<ForecastReport, EvalError> {
    let start = rolling_start(values.len(), train_fraction)
        .map_err(|e| EvalError::TooShort(e.to_string()))?;
    naive_from(times, values, start)
}

/// Write `time,actual,predicted` rows.
pub fn write_forecasts<W: Write>(writer: W, points: &[ForecastPoint]) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(FORECAST_HEADER)?;
    for p in points {
        w.write_record([p.time.to_string(), p.actual.to_string(), p.predicted.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_forecasts<R: Read>(reader: R) -> Result<Vec<ForecastPoint>, EvalError> {
    let mut r = csv::Reader::from_reader(reader);
    if r.headers()?.iter().ne(FORECAST_HEADER) {
        return Err(EvalError::Format(format!(
            "expected header {}",
            FORECAST_HEADER.join(",")
        )));
    }
    r.deserialize().map(|row| Ok(row?)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    fn times(n: usize) -> Vec<i64> {
        (0..n as i64).collect()
    }

    #[test]
    fn report_invariants() {
        let r = ForecastReport::from_parts("m", &[1, 2, 3], &[2.0, 2.0, 4.0], &[1.0, 2.0, 3.0], 1.5, 2.5)
            .unwrap();
        assert!((r.rmse * r.rmse - r.mse).abs() < 1e-15);
        assert_eq!(r.build_time_ms, 1.5);
        assert!(ForecastReport::new("m", vec![], 0.0, 0.0).is_err());
    }

    #[test]
    fn naive_on_constant_and_linear() {
        let c = vec![7.0; 20];
        assert_eq!(naive_baseline(&times(20), &c, 0.7).unwrap().rmse, 0.0);
        let lin: Vec<f64> = (0..20).map(f64::from).collect();
        let r = naive_baseline(&times(20), &lin, 0.7).unwrap();
        assert_eq!(r.rmse, 1.0);
        assert_eq!(r.predictions.len(), 6);
        assert_eq!(r.predictions[0].time, 14);
    }

    #[test]
    fn naive_on_random_walk_tracks_sigma() {
        let sigma = 3.0;
        let y = synthetic::random_walk(2000, sigma, 17);
        let r = naive_baseline(&times(2000), &y, 0.5).unwrap();
        assert!((r.rmse / sigma - 1.0).abs() < 0.05, "{}", r.rmse);
    }

    #[test]
    fn forecast_file_round_trip() {
        let pts = vec![
            ForecastPoint { time: 1, actual: 0.1, predicted: 1.0 / 3.0 },
            ForecastPoint { time: 2, actual: 1e-300, predicted: -5.5 },
        ];
        let mut buf = Vec::new();
        write_forecasts(&mut buf, &pts).unwrap();
        assert!(buf.starts_with(b"time,actual,predicted\n"));
        assert_eq!(read_forecasts(buf.as_slice()).unwrap(), pts);
        assert!(read_forecasts("a,b,c\n".as_bytes()).is_err());
    }
}
