use super::LstmModel;

pub const BETA1: f64 = 0.9;
pub const BETA2: f64 = 0.999;
pub const EPSILON: f64 = 1e-8;

/// Adam moment estimates, one buffer per parameter tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m: Vec<Vec<f64>>,
    pub v: Vec<Vec<f64>>,
    /// Number of updates applied so far.
    pub t: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl AdamState {
    /// Zeroed state for tensors of the given lengths.
    pub fn new(lengths: impl IntoIterator<Item = usize>) -> Self {
        let (m, v) = lengths
            .into_iter()
            .map(|n| (vec![0.0; n], vec![0.0; n]))
            .unzip();
        Self {
            m,
            v,
            t: 0,
            beta1: BETA1,
            beta2: BETA2,
            epsilon: EPSILON,
        }
    }

    pub fn for_model(model: &LstmModel) -> Self {
        Self::new(model.tensors().iter().map(|t| t.len()))
    }

    /// One bias-corrected Adam update of `params` against `grads`.
    ///
    /// # Panics
    ///
    /// If the tensor count or any tensor length differs from the state's.
    pub fn step(&mut self, params: &mut [&mut [f64]], grads: &[&[f64]], lr: f64) {
        assert_eq!(params.len(), self.m.len(), "tensor count mismatch");
        assert_eq!(grads.len(), self.m.len(), "tensor count mismatch");
        self.t += 1;
        let t = self.t as i32;
        let bc1 = 1.0 - self.beta1.powi(t);
        let bc2 = 1.0 - self.beta2.powi(t);
        for (k, (p, g)) in params.iter_mut().zip(grads).enumerate() {
            let (m, v) = (&mut self.m[k], &mut self.v[k]);
            assert_eq!(p.len(), m.len(), "tensor {k} length mismatch");
            assert_eq!(g.len(), m.len(), "tensor {k} length mismatch");
            for j in 0..m.len() {
                m[j] = self.beta1 * m[j] + (1.0 - self.beta1) * g[j];
                v[j] = self.beta2 * v[j] + (1.0 - self.beta2) * g[j] * g[j];
                let m_hat = m[j] / bc1;
                let v_hat = v[j] / bc2;
                p[j] -= lr * m_hat / (v_hat.sqrt() + self.epsilon);
            }
        }
    }
}

/// Apply one Adam update to every parameter of `model`.
pub fn adam_step(model: &mut LstmModel, grads: &LstmModel, state: &mut AdamState, lr: f64) {
    let grads = grads.tensors();
    state.step(&mut model.tensors_mut(), &grads, lr);
}
