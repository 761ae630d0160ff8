use super::{DatasetError, ScaledSeries, ScalerParams};

pub const DEFAULT_TRAIN_FRACTION: f64 = 0.7;

/// Which columns feed the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeatureMode {
    PriceOnly,
    PriceAndSentiment,
}

impl FeatureMode {
    pub fn n_features(self) -> usize {
        match self {
            FeatureMode::PriceOnly => 1,
            FeatureMode::PriceAndSentiment => 2,
        }
    }

    pub fn feature_names(self) -> Vec<String> {
        let names: &[&str] = match self {
            FeatureMode::PriceOnly => &["price"],
            FeatureMode::PriceAndSentiment => &["price", "sentiment"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }
}

/// Lag windows paired with the next scaled price.
#[derive(Debug, Clone, PartialEq)]
pub struct SupervisedDataset {
    /// One `lag × n_features` window per sample, oldest row first.
    pub inputs: Vec<Vec<Vec<f64>>>,
    /// Scaled price following each window.
    pub targets: Vec<f64>,
    /// Timestamp of each target row.
    pub target_times: Vec<i64>,
    pub lag: usize,
    pub scaler: ScalerParams,
    pub feature_names: Vec<String>,
}

impl SupervisedDataset {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Map a scaled price back to USD.
    pub fn unscale_price(&self, v: f64) -> f64 {
        self.scaler.unscale_value(0, v)
    }

    /// Targets in USD.
    pub fn actual_prices(&self) -> Vec<f64> {
        self.targets.iter().map(|&v| self.unscale_price(v)).collect()
    }

    fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self {
            inputs: self.inputs[range.clone()].to_vec(),
            targets: self.targets[range.clone()].to_vec(),
            target_times: self.target_times[range].to_vec(),
            lag: self.lag,
            scaler: self.scaler.clone(),
            feature_names: self.feature_names.clone(),
        }
    }
}

/// Frame a scaled series as supervised learning: sample `i` takes rows
/// `i..i+lag` as input and the price at row `i+lag` as target.
pub fn to_supervised(
    series: &ScaledSeries,
    lag: usize,
    mode: FeatureMode,
) -> Result<SupervisedDataset, DatasetError> {
    if lag == 0 {
        return Err(DatasetError::ZeroLag);
    }
    let n = series.len();
    if n <= lag {
        return Err(DatasetError::TooShort { len: n, lag });
    }
    let width = mode.n_features();
    let inputs = (0..n - lag)
        .map(|i| {
            series.rows[i..i + lag]
                .iter()
                .map(|row| row[..width].to_vec())
                .collect()
        })
        .collect();
    Ok(SupervisedDataset {
        inputs,
        targets: series.rows[lag..].iter().map(|r| r[0]).collect(),
        target_times: series.times[lag..].to_vec(),
        lag,
        scaler: series.scaler.clone(),
        feature_names: mode.feature_names(),
    })
}

/// Number of training samples for a chronological split of `n` samples.
pub fn train_len(n: usize, train_fraction: f64) -> Result<usize, DatasetError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DatasetError::BadFraction(train_fraction));
    }
    if n < 2 {
        return Err(DatasetError::TooFewSamples(n));
    }
    // The epsilon absorbs representation error such as 0.7 * 10 = 6.999...
    let k = (train_fraction * n as f64 + 1e-9).floor() as usize;
    Ok(k.clamp(1, n - 1))
}

/// Chronological split: the first `floor(train_fraction * n)` samples train,
/// the rest test. No shuffling.
pub fn split(
    dataset: &SupervisedDataset,
    train_fraction: f64,
) -> Result<(SupervisedDataset, SupervisedDataset), DatasetError> {
    let n = dataset.len();
    let k = train_len(n, train_fraction)?;
    Ok((dataset.slice(0..k), dataset.slice(k..n)))
}
