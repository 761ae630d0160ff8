use std::time::Instant;

use super::{adam_step, AdamState, LstmConfig, LstmError, LstmModel};
use crate::dataset::SupervisedDataset;

/// Per-epoch training record.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainHistory {
    /// Mean absolute error on the training set, in scaled units, measured
    /// before each epoch's update.
    pub losses: Vec<f64>,
    /// Wall-clock time to build (initialize) the model.
    pub build_time_ms: f64,
    pub epoch_times_ms: Vec<f64>,
}

impl TrainHistory {
    pub fn total_train_time_ms(&self) -> f64 {
        self.epoch_times_ms.iter().sum()
    }
}

fn check_dataset(config: &LstmConfig, dataset: &SupervisedDataset) -> Result<(), LstmError> {
    if dataset.is_empty() {
        return Err(LstmError::EmptyDataset);
    }
    if dataset.n_features() != config.n_features {
        return Err(LstmError::Config(format!(
            "dataset has {} features, config expects {}",
            dataset.n_features(),
            config.n_features
        )));
    }
    if dataset.lag != config.lag {
        return Err(LstmError::Config(format!(
            "dataset lag {} differs from config lag {}",
            dataset.lag, config.lag
        )));
    }
    Ok(())
}

/// Full-batch training on mean absolute error: each epoch runs every sample
/// forward and backward, then takes a single Adam step.
pub fn train(
    config: &LstmConfig,
    dataset: &SupervisedDataset,
) -> Result<(LstmModel, TrainHistory), LstmError> {
    config.validate()?;
    check_dataset(config, dataset)?;

    let start = Instant::now();
    let mut model = LstmModel::init(config)?;
    let mut history = TrainHistory {
        build_time_ms: start.elapsed().as_secs_f64() * 1e3,
        ..TrainHistory::default()
    };
    let mut adam = AdamState::for_model(&model);
    let n = dataset.len() as f64;

    for epoch in 0..config.epochs {
        let t0 = Instant::now();
        let mut grads = model.zeros_like();
        let mut loss = 0.0;
        for (window, &target) in dataset.inputs.iter().zip(&dataset.targets) {
            let (pred, cache) = model.forward(window)?;
            let residual = pred - target;
            loss += residual.abs();
            // Subgradient of |r| is taken as 0 at r = 0.
            let d = if residual > 0.0 {
                1.0
            } else if residual < 0.0 {
                -1.0
            } else {
                0.0
            };
            if d != 0.0 {
                model.backward_into(&cache, d / n, &mut grads);
            }
        }
        loss /= n;
        if !loss.is_finite() {
            return Err(LstmError::Diverged { epoch, loss });
        }
        adam_step(&mut model, &grads, &mut adam, config.learning_rate);
        history.losses.push(loss);
        history.epoch_times_ms.push(t0.elapsed().as_secs_f64() * 1e3);
        log::debug!("epoch {epoch}: mae {loss:.6}");
    }
    Ok((model, history))
}

/// Predictions in scaled units, one per sample.
pub fn predict_scaled(
    model: &LstmModel,
    dataset: &SupervisedDataset,
) -> Result<Vec<f64>, LstmError> {
    dataset.inputs.iter().map(|w| model.predict(w)).collect()
}

/// Predictions mapped back to USD through the dataset's scaler.
pub fn predict_series(
    model: &LstmModel,
    dataset: &SupervisedDataset,
) -> Result<Vec<f64>, LstmError> {
    Ok(predict_scaled(model, dataset)?
        .into_iter()
        .map(|v| dataset.unscale_price(v))
        .collect())
}
