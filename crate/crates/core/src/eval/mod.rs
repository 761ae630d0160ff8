//! Error metrics, timings, model comparison and plot-ready data files.

mod compare;
mod metrics;
pub mod pipeline;
mod plot;
mod report;

use thiserror::Error;

pub use self::compare::{compare, ComparisonRow, ComparisonTable, COMPARISON_HEADER};
pub use self::metrics::{mse, rmse, time_call};
pub use self::pipeline::{evaluate, EvaluateOptions, Evaluation, LstmRun};
pub use self::plot::{emit_plot_data, read_plot_data, PlotData, PlotInput, PlotKind};
pub use self::report::{
    naive_baseline, naive_from, read_forecasts, write_forecasts, ForecastPoint, ForecastReport,
    FORECAST_HEADER,
};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {actual} actual vs {predicted} predicted")]
    LengthMismatch { actual: usize, predicted: usize },
    #[error("no values to score")]
    Empty,
    #[error("need at least 2 reports to compare, got {0}")]
    TooFewReports(usize),
    #[error("unknown plot kind `{0}` (expected normalized_series, train_loss or forecast_overlay)")]
    UnknownPlotKind(String),
    #[error("plot kind {kind} does not accept {input} input")]
    PlotInputMismatch { kind: String, input: String },
    #[error("series too short for a baseline: {0}")]
    TooShort(String),
    #[error("malformed file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<csv::Error> for EvalError {
    fn from(e: csv::Error) -> Self {
        EvalError::Format(e.to_string())
    }
}
