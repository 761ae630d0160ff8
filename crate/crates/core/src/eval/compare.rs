use std::fmt;
use std::io::Write;

use super::{EvalError, ForecastReport};

pub const COMPARISON_HEADER: [&str; 7] = [
    "rank",
    "model",
    "rmse",
    "mse",
    "build_time_ms",
    "train_time_ms",
    "winner",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub model: String,
    pub rmse: f64,
    pub mse: f64,
    pub build_time_ms: f64,
    pub train_time_ms: f64,
    pub winner: bool,
}

/// Reports ranked by ascending RMSE (ties by model name).
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    pub notes: Vec<String>,
}

pub fn compare(reports: &[ForecastReport]) -> Result<ComparisonTable, EvalError> {
    if reports.len() < 2 {
        return Err(EvalError::TooFewReports(reports.len()));
    }
    let mut rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|r| ComparisonRow {
            model: r.model_name.clone(),
            rmse: r.rmse,
            mse: r.mse,
            build_time_ms: r.build_time_ms,
            train_time_ms: r.train_time_ms,
            winner: false,
        })
        .collect();
    rows.sort_by(|a, b| a.rmse.total_cmp(&b.rmse).then_with(|| a.model.cmp(&b.model)));
    let best = rows[0].rmse;
    for row in &mut rows {
        row.winner = row.rmse == best;
    }
    Ok(ComparisonTable {
        rows,
        notes: vec![
            "RMSE in USD over the chronological test split.".into(),
            "The min-max scaler is fitted on the full series, so test extremes inform scaling."
                .into(),
        ],
    })
}

impl ComparisonTable {
    pub fn winner(&self) -> &ComparisonRow {
        &self.rows[0]
    }

    /// Machine-readable form; numbers use the shortest exact representation.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), EvalError> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(COMPARISON_HEADER)?;
        for (i, r) in self.rows.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                r.model.clone(),
                r.rmse.to_string(),
                r.mse.to_string(),
                r.build_time_ms.to_string(),
                r.train_time_ms.to_string(),
                r.winner.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.model.len()).max().unwrap_or(5).max(5);
        writeln!(
            f,
            "{:<4} {:<width$} {:>14} {:>18} {:>14} {:>14}",
            "rank", "model", "rmse", "mse", "build_ms", "train_ms"
        )?;
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(
                f,
                "{:<4} {:<width$} {:>14.4} {:>18.4} {:>14.3} {:>14.3}{}",
                i + 1,
                r.model,
                r.rmse,
                r.mse,
                r.build_time_ms,
                r.train_time_ms,
                if r.winner { "  *" } else { "" }
            )?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        Ok(())
    }
}
