//! Single-layer LSTM forecaster with a dense output head, trained from
//! scratch by backpropagation through time and Adam.
//!
//! Per time step, with `z = [h_{t-1}; x_t]`:
//!
//! ```text
//! f = σ(W_f z + b_f)   i = σ(W_i z + b_i)   o = σ(W_o z + b_o)
//! g = tanh(W_g z + b_g)
//! c_t = f ⊙ c_{t-1} + i ⊙ g
//! h_t = o ⊙ tanh(c_t)
//! ```
//!
//! and the prediction is `w_d · h_last + b_d`.

mod adam;
mod io;
mod model;
mod train;

use thiserror::Error;

pub use self::adam::{adam_step, AdamState, BETA1, BETA2, EPSILON};
pub use self::io::{load_model, read_model, save_model, write_model};
pub use self::model::{ForwardCache, Gate, LstmModel, TENSOR_NAMES};
pub use self::train::{predict_scaled, predict_series, train, TrainHistory};

#[derive(Debug, Error)]
pub enum LstmError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("non-finite value in input window row {0}")]
    NonFiniteInput(usize),
    #[error("training diverged at epoch {epoch}: loss {loss}")]
    Diverged { epoch: usize, loss: f64 },
    #[error("empty dataset")]
    EmptyDataset,
    #[error("model file line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Hyperparameters. Defaults: 32 hidden units, lag 1, 200 full-batch
/// epochs, Adam at learning rate 0.01.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmConfig {
    /// 1 (price) or 2 (price and sentiment).
    pub n_features: usize,
    pub hidden_size: usize,
    pub lag: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for LstmConfig {
    fn default() -> Self {
        Self {
            n_features: 1,
            hidden_size: 32,
            lag: 1,
            epochs: 200,
            learning_rate: 0.01,
            seed: 0,
        }
    }
}

impl LstmConfig {
    pub fn validate(&self) -> Result<(), LstmError> {
        if !(1..=2).contains(&self.n_features) {
            return Err(LstmError::Config(format!(
                "n_features must be 1 or 2, got {}",
                self.n_features
            )));
        }
        if self.hidden_size == 0 {
            return Err(LstmError::Config("hidden_size must be positive".into()));
        }
        if self.lag == 0 {
            return Err(LstmError::Config("lag must be positive".into()));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(LstmError::Config(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            )));
        }
        Ok(())
    }
}
