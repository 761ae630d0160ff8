use super::{DatasetError, MergedSeries};

/// Column names of a merged series' value columns, in scaler order.
pub const SERIES_COLUMNS: [&str; 2] = ["price", "sentiment"];

/// Per-column min-max scaling onto [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalerParams {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl ScalerParams {
    /// Fit column ranges over `rows` (each row one observation).
    pub fn fit<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, DatasetError> {
        let width = rows.first().ok_or(DatasetError::EmptyScaler)?.as_ref().len();
        let mut min = vec![f64::INFINITY; width];
        let mut max = vec![f64::NEG_INFINITY; width];
        for row in rows {
            let row = row.as_ref();
            if row.len() != width {
                return Err(DatasetError::ColumnMismatch {
                    expected: width,
                    got: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                min[j] = min[j].min(x);
                max[j] = max[j].max(x);
            }
        }
        Ok(Self { min, max })
    }

    /// Fit on the `price, sentiment` columns of a merged series.
    pub fn fit_series(series: &MergedSeries) -> Result<Self, DatasetError> {
        let rows: Vec<[f64; 2]> = series
            .rows()
            .iter()
            .map(|r| [r.price, r.sentiment])
            .collect();
        Self::fit(&rows)
    }

    pub fn columns(&self) -> usize {
        self.min.len()
    }

    fn check_width(&self, got: usize) -> Result<(), DatasetError> {
        if got == self.columns() {
            Ok(())
        } else {
            Err(DatasetError::ColumnMismatch {
                expected: self.columns(),
                got,
            })
        }
    }

    /// `(x - min) / (max - min)`, or 0 for a constant column.
    pub fn scale_value(&self, column: usize, x: f64) -> f64 {
        let span = self.max[column] - self.min[column];
        if span > 0.0 {
            (x - self.min[column]) / span
        } else {
            0.0
        }
    }

    pub fn unscale_value(&self, column: usize, v: f64) -> f64 {
        v * (self.max[column] - self.min[column]) + self.min[column]
    }

    pub fn scale<R: AsRef<[f64]>>(&self, rows: &[R]) -> Result<Vec<Vec<f64>>, DatasetError> {
        rows.iter()
            .map(|row| {
                let row = row.as_ref();
                self.check_width(row.len())?;
                Ok(row
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| self.scale_value(j, x))
                    .collect())
            })
            .collect()
    }

    pub fn unscale<R: AsRef<[f64]>>(&self, rows: &[R]) -> Result<Vec<Vec<f64>>, DatasetError> {
        rows.iter()
            .map(|row| {
                let row = row.as_ref();
                self.check_width(row.len())?;
                Ok(row
                    .iter()
                    .enumerate()
                    .map(|(j, &v)| self.unscale_value(j, v))
                    .collect())
            })
            .collect()
    }

    /// Scale a merged series into its [0, 1] representation.
    pub fn scale_series(&self, series: &MergedSeries) -> Result<ScaledSeries, DatasetError> {
        self.check_width(SERIES_COLUMNS.len())?;
        Ok(ScaledSeries {
            times: series.times(),
            rows: series
                .rows()
                .iter()
                .map(|r| [self.scale_value(0, r.price), self.scale_value(1, r.sentiment)])
                .collect(),
            scaler: self.clone(),
        })
    }
}

/// A merged series after min-max scaling, with the scaler that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledSeries {
    pub times: Vec<i64>,
    /// `[price, sentiment]` per row, each in [0, 1].
    pub rows: Vec<[f64; 2]>,
    pub scaler: ScalerParams,
}

impl ScaledSeries {
    /// Fit a scaler on the whole series and apply it.
    pub fn fit(series: &MergedSeries) -> Result<Self, DatasetError> {
        ScalerParams::fit_series(series)?.scale_series(series)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn column(values: &[f64]) -> Vec<[f64; 1]> {
        values.iter().map(|&v| [v]).collect()
    }

    #[test]
    fn endpoints_map_to_unit_interval() {
        let rows = column(&[2.0, 4.0, 6.0]);
        let p = ScalerParams::fit(&rows).unwrap();
        let scaled: Vec<f64> = p.scale(&rows).unwrap().into_iter().map(|r| r[0]).collect();
        assert_eq!(scaled, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn constant_column_maps_to_zero() {
        let rows = column(&[5.0, 5.0]);
        let p = ScalerParams::fit(&rows).unwrap();
        assert_eq!(p.scale(&rows).unwrap(), vec![vec![0.0], vec![0.0]]);
        assert_eq!(p.unscale(&[[0.0]]).unwrap(), vec![vec![5.0]]);
    }

    #[test]
    fn column_mismatch_is_an_error() {
        let p = ScalerParams::fit(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert!(matches!(
            p.unscale(&[[0.5]]),
            Err(DatasetError::ColumnMismatch { expected: 2, got: 1 })
        ));
        assert!(p.scale(&[[0.5, 1.0, 2.0]]).is_err());
        assert!(ScalerParams::fit::<[f64; 1]>(&[]).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(values in proptest::collection::vec(-1e6f64..1e6, 2..50)) {
            let rows = column(&values);
            let p = ScalerParams::fit(&rows).unwrap();
            prop_assume!(p.max[0] > p.min[0]);
            let scaled = p.scale(&rows).unwrap();
            prop_assert!(scaled.iter().all(|r| (0.0..=1.0).contains(&r[0])));
            let back = p.unscale(&scaled).unwrap();
            for (x, y) in values.iter().zip(&back) {
                let tol = 1e-12 * x.abs().max(p.max[0] - p.min[0]);
                prop_assert!((x - y[0]).abs() <= tol, "{} vs {}", x, y[0]);
            }
        }
    }
}
