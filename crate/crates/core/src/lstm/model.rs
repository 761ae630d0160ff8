use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LstmConfig, LstmError};

/// Weights and bias of one gate acting on the concatenation `[h; x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    /// `hidden × (hidden + n_features)`
    pub w: DMatrix<f64>,
    pub b: DVector<f64>,
}

impl Gate {
    fn zeros(hidden: usize, n_features: usize) -> Self {
        Self {
            w: DMatrix::zeros(hidden, hidden + n_features),
            b: DVector::zeros(hidden),
        }
    }

    fn preactivation(&self, hx: &DVector<f64>) -> DVector<f64> {
        let mut z = self.b.clone();
        z.gemv(1.0, &self.w, hx, 1.0);
        z
    }
}

/// Single-layer LSTM cell followed by a dense unit on the last hidden state.
///
/// Also used as the gradient container: a gradient has the same shape as
/// the model it differentiates.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmModel {
    pub n_features: usize,
    pub hidden: usize,
    pub forget: Gate,
    pub input: Gate,
    pub output: Gate,
    /// Candidate (`g`) gate.
    pub cell: Gate,
    /// Dense weight, one per hidden unit.
    pub w_d: DVector<f64>,
    pub b_d: f64,
}

/// Tensor names in serialization and optimizer order.
pub const TENSOR_NAMES: [&str; 10] = [
    "w_f", "b_f", "w_i", "b_i", "w_o", "b_o", "w_g", "b_g", "w_d", "b_d",
];

/// Intermediates of one time step, kept for the backward pass.
#[derive(Debug, Clone)]
struct Step {
    hx: DVector<f64>,
    f: DVector<f64>,
    i: DVector<f64>,
    o: DVector<f64>,
    g: DVector<f64>,
    c_prev: DVector<f64>,
    tanh_c: DVector<f64>,
}

/// Everything [`LstmModel::backward`] needs from a forward call.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    steps: Vec<Step>,
    h_last: DVector<f64>,
}

impl ForwardCache {
    pub fn lag(&self) -> usize {
        self.steps.len()
    }

    /// Forget, input and output gate activations of every step.
    pub fn gate_activations(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps
            .iter()
            .flat_map(|s| s.f.iter().chain(s.i.iter()).chain(s.o.iter()).copied())
    }

    /// Hidden states `h_t = o ⊙ tanh(c_t)` of every step.
    pub fn hidden_states(&self) -> Vec<DVector<f64>> {
        self.steps
            .iter()
            .map(|s| s.o.component_mul(&s.tanh_c))
            .collect()
    }
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

impl LstmModel {
    /// All-zero parameters.
    pub fn zeros(n_features: usize, hidden: usize) -> Self {
        Self {
            n_features,
            hidden,
            forget: Gate::zeros(hidden, n_features),
            input: Gate::zeros(hidden, n_features),
            output: Gate::zeros(hidden, n_features),
            cell: Gate::zeros(hidden, n_features),
            w_d: DVector::zeros(hidden),
            b_d: 0.0,
        }
    }

    /// Seeded initialization: weights uniform on `[-k, k]` with
    /// `k = 1/sqrt(hidden)`, biases zero.
    pub fn init(config: &LstmConfig) -> Result<Self, LstmError> {
        config.validate()?;
        let mut model = Self::zeros(config.n_features, config.hidden_size);
        let k = 1.0 / (config.hidden_size as f64).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        for gate in [
            &mut model.forget,
            &mut model.input,
            &mut model.output,
            &mut model.cell,
        ] {
            // Row-major draw order keeps the stream independent of storage layout.
            for r in 0..gate.w.nrows() {
                for c in 0..gate.w.ncols() {
                    gate.w[(r, c)] = rng.random_range(-k..=k);
                }
            }
        }
        for w in model.w_d.iter_mut() {
            *w = rng.random_range(-k..=k);
        }
        Ok(model)
    }

    pub fn zeros_like(&self) -> Self {
        Self::zeros(self.n_features, self.hidden)
    }

    fn gates(&self) -> [&Gate; 4] {
        [&self.forget, &self.input, &self.output, &self.cell]
    }

    /// Parameter tensors as flat slices, in [`TENSOR_NAMES`] order.
    /// Matrices are exposed in nalgebra's column-major storage order.
    pub fn tensors(&self) -> [&[f64]; 10] {
        [
            self.forget.w.as_slice(),
            self.forget.b.as_slice(),
            self.input.w.as_slice(),
            self.input.b.as_slice(),
            self.output.w.as_slice(),
            self.output.b.as_slice(),
            self.cell.w.as_slice(),
            self.cell.b.as_slice(),
            self.w_d.as_slice(),
            std::slice::from_ref(&self.b_d),
        ]
    }

    pub fn tensors_mut(&mut self) -> [&mut [f64]; 10] {
        [
            self.forget.w.as_mut_slice(),
            self.forget.b.as_mut_slice(),
            self.input.w.as_mut_slice(),
            self.input.b.as_mut_slice(),
            self.output.w.as_mut_slice(),
            self.output.b.as_mut_slice(),
            self.cell.w.as_mut_slice(),
            self.cell.b.as_mut_slice(),
            self.w_d.as_mut_slice(),
            std::slice::from_mut(&mut self.b_d),
        ]
    }

    /// `(rows, cols)` of each tensor in [`TENSOR_NAMES`] order.
    pub fn tensor_shapes(&self) -> [(usize, usize); 10] {
        let h = self.hidden;
        let w = (h, h + self.n_features);
        [w, (h, 1), w, (h, 1), w, (h, 1), w, (h, 1), (1, h), (1, 1)]
    }

    pub fn parameter_count(&self) -> usize {
        self.tensors().iter().map(|t| t.len()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.iter().all(|v| v.is_finite()))
    }

    fn check_window(&self, window: &[Vec<f64>]) -> Result<(), LstmError> {
        if window.is_empty() {
            return Err(LstmError::Shape("empty input window".into()));
        }
        for (t, row) in window.iter().enumerate() {
            if row.len() != self.n_features {
                return Err(LstmError::Shape(format!(
                    "window row {t} has {} features, model expects {}",
                    row.len(),
                    self.n_features
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(LstmError::NonFiniteInput(t));
            }
        }
        Ok(())
    }

    /// Run the cell over `window` (oldest row first) from zero state and
    /// return the dense output on the last hidden state.
    pub fn forward(&self, window: &[Vec<f64>]) -> Result<(f64, ForwardCache), LstmError> {
        self.check_window(window)?;
        let h_dim = self.hidden;
        let mut h = DVector::zeros(h_dim);
        let mut c = DVector::zeros(h_dim);
        let mut steps = Vec::with_capacity(window.len());

        for row in window {
            let hx = DVector::from_iterator(
                h_dim + self.n_features,
                h.iter().chain(row.iter()).copied(),
            );
            let f = self.forget.preactivation(&hx).map(sigmoid);
            let i = self.input.preactivation(&hx).map(sigmoid);
            let o = self.output.preactivation(&hx).map(sigmoid);
            let g = self.cell.preactivation(&hx).map(f64::tanh);
            let c_prev = c;
            c = f.component_mul(&c_prev) + i.component_mul(&g);
            let tanh_c = c.map(f64::tanh);
            h = o.component_mul(&tanh_c);
            steps.push(Step {
                hx,
                f,
                i,
                o,
                g,
                c_prev,
                tanh_c,
            });
        }

        let prediction = self.w_d.dot(&h) + self.b_d;
        Ok((prediction, ForwardCache { steps, h_last: h }))
    }

    pub fn predict(&self, window: &[Vec<f64>]) -> Result<f64, LstmError> {
        self.forward(window).map(|(p, _)| p)
    }

    /// Gradient of `d_prediction * prediction` with respect to every
    /// parameter, by backpropagation through the cached time steps.
    pub fn backward(&self, cache: &ForwardCache, d_prediction: f64) -> LstmModel {
        let mut grads = self.zeros_like();
        self.backward_into(cache, d_prediction, &mut grads);
        grads
    }

    /// Like [`backward`](Self::backward) but adds into `grads`.
    pub fn backward_into(&self, cache: &ForwardCache, d_prediction: f64, grads: &mut LstmModel) {
        let h_dim = self.hidden;
        grads.w_d.axpy(d_prediction, &cache.h_last, 1.0);
        grads.b_d += d_prediction;

        let mut dh = &self.w_d * d_prediction;
        let mut dc_next: DVector<f64> = DVector::zeros(h_dim);
        let mut dhx = DVector::zeros(h_dim + self.n_features);

        for step in cache.steps.iter().rev() {
            let d_o = dh.component_mul(&step.tanh_c);
            let dc = &dc_next
                + dh.component_mul(&step.o)
                    .component_mul(&step.tanh_c.map(|t| 1.0 - t * t));
            let d_f = dc.component_mul(&step.c_prev);
            let d_i = dc.component_mul(&step.g);
            let d_g = dc.component_mul(&step.i);
            dc_next = dc.component_mul(&step.f);

            let dz_f = d_f.zip_map(&step.f, |d, s| d * s * (1.0 - s));
            let dz_i = d_i.zip_map(&step.i, |d, s| d * s * (1.0 - s));
            let dz_o = d_o.zip_map(&step.o, |d, s| d * s * (1.0 - s));
            let dz_g = d_g.zip_map(&step.g, |d, t| d * (1.0 - t * t));

            dhx.fill(0.0);
            let grad_gates = [
                &mut grads.forget,
                &mut grads.input,
                &mut grads.output,
                &mut grads.cell,
            ];
            for ((gate, grad), dz) in self
                .gates()
                .into_iter()
                .zip(grad_gates)
                .zip([&dz_f, &dz_i, &dz_o, &dz_g])
            {
                grad.w.ger(1.0, dz, &step.hx, 1.0);
                grad.b += dz;
                dhx.gemv_tr(1.0, &gate.w, dz, 1.0);
            }
            dh = dhx.rows(0, h_dim).into_owned();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_features: usize, hidden: usize, seed: u64) -> LstmConfig {
        LstmConfig {
            n_features,
            hidden_size: hidden,
            seed,
            ..LstmConfig::default()
        }
    }

    #[test]
    fn init_is_deterministic() {
        let a = LstmModel::init(&config(2, 8, 3)).unwrap();
        let b = LstmModel::init(&config(2, 8, 3)).unwrap();
        let c = LstmModel::init(&config(2, 8, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn init_shapes_and_range() {
        let m = LstmModel::init(&config(2, 32, 0)).unwrap();
        assert_eq!(m.forget.w.shape(), (32, 34));
        assert_eq!(m.cell.b.len(), 32);
        let k = 1.0 / 32f64.sqrt();
        for gate in m.gates() {
            assert!(gate.w.iter().all(|w| w.abs() <= k));
            assert!(gate.b.iter().all(|&b| b == 0.0));
        }
        assert!(m.w_d.iter().all(|w| w.abs() <= k));
        assert_eq!(m.b_d, 0.0);
        assert_eq!(m.parameter_count(), 4 * (32 * 34 + 32) + 32 + 1);
    }

    #[test]
    fn zero_model_predicts_zero() {
        let m = LstmModel::zeros(2, 4);
        let (p, cache) = m.forward(&[vec![0.3, 0.9], vec![1.0, 0.0]]).unwrap();
        assert_eq!(p, 0.0);
        assert!(cache.gate_activations().all(|g| g == 0.5));
        assert!(cache.hidden_states().iter().flatten().all(|&h| h == 0.0));
    }

    #[test]
    fn zero_upstream_gradient_gives_zero_gradients() {
        let m = LstmModel::init(&config(2, 3, 1)).unwrap();
        let (_, cache) = m.forward(&[vec![0.2, 0.4], vec![0.6, 0.1]]).unwrap();
        let g = m.backward(&cache, 0.0);
        assert!(g.tensors().iter().all(|t| t.iter().all(|&v| v == 0.0)));
    }

    #[test]
    fn rejects_bad_windows() {
        let m = LstmModel::zeros(1, 2);
        assert!(matches!(m.forward(&[]), Err(LstmError::Shape(_))));
        assert!(matches!(m.forward(&[vec![0.1, 0.2]]), Err(LstmError::Shape(_))));
        assert!(matches!(
            m.forward(&[vec![0.1], vec![f64::NAN]]),
            Err(LstmError::NonFiniteInput(1))
        ));
    }
}
