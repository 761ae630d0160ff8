use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use super::{EvalError, ForecastPoint, FORECAST_HEADER};
use crate::dataset::ScaledSeries;

/// Which figure a plot file feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Scaled price and sentiment over time.
    NormalizedSeries,
    /// Training loss per epoch.
    TrainLoss,
    /// Actual against predicted price over the test range.
    ForecastOverlay,
}

impl PlotKind {
    pub const ALL: [PlotKind; 3] = [
        PlotKind::NormalizedSeries,
        PlotKind::TrainLoss,
        PlotKind::ForecastOverlay,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PlotKind::NormalizedSeries => "normalized_series",
            PlotKind::TrainLoss => "train_loss",
            PlotKind::ForecastOverlay => "forecast_overlay",
        }
    }

    pub fn header(self) -> &'static [&'static str] {
        match self {
            PlotKind::NormalizedSeries => &["time", "price", "sentiment"],
            PlotKind::TrainLoss => &["epoch", "loss"],
            PlotKind::ForecastOverlay => &FORECAST_HEADER,
        }
    }
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PlotKind {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PlotKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| EvalError::UnknownPlotKind(s.to_string()))
    }
}

/// Data handed to [`emit_plot_data`].
#[derive(Debug, Clone, Copy)]
pub enum PlotInput<'a> {
    Normalized(&'a ScaledSeries),
    Losses(&'a [f64]),
    Forecasts(&'a [ForecastPoint]),
}

impl PlotInput<'_> {
    fn name(&self) -> &'static str {
        match self {
            PlotInput::Normalized(_) => "normalized series",
            PlotInput::Losses(_) => "loss",
            PlotInput::Forecasts(_) => "forecast",
        }
    }
}

/// Write a columnar CSV for `kind`. The first column is the x axis.
pub fn emit_plot_data<W: Write>(
    writer: W,
    kind: PlotKind,
    input: PlotInput<'_>,
) -> Result<(), EvalError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(kind.header())?;
    match (kind, input) {
        (PlotKind::NormalizedSeries, PlotInput::Normalized(series)) => {
            for (t, row) in series.times.iter().zip(&series.rows) {
                w.write_record([t.to_string(), row[0].to_string(), row[1].to_string()])?;
            }
        }
        (PlotKind::TrainLoss, PlotInput::Losses(losses)) => {
            for (epoch, loss) in losses.iter().enumerate() {
                w.write_record([(epoch + 1).to_string(), loss.to_string()])?;
            }
        }
        (PlotKind::ForecastOverlay, PlotInput::Forecasts(points)) => {
            for p in points {
                w.write_record([p.time.to_string(), p.actual.to_string(), p.predicted.to_string()])?;
            }
        }
        (kind, input) => {
            return Err(EvalError::PlotInputMismatch {
                kind: kind.to_string(),
                input: input.name().to_string(),
            })
        }
    }
    w.flush()?;
    Ok(())
}

/// A parsed plot file: header plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotData {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_plot_data<R: Read>(reader: R) -> Result<PlotData, EvalError> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| EvalError::Format(format!("row {}: `{cell}` is not a number", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(PlotData { header, rows })
}
