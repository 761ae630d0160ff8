//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use btc_forecast::lstm::LstmModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Model with every parameter uniform in `[-scale, scale]`.
pub fn random_model(rng: &mut ChaCha8Rng, n_features: usize, hidden: usize, scale: f64) -> LstmModel {
    let mut model = LstmModel::zeros(n_features, hidden);
    for tensor in model.tensors_mut() {
        for v in tensor.iter_mut() {
            *v = rng.random_range(-scale..=scale);
        }
    }
    model
}

pub fn random_window(rng: &mut ChaCha8Rng, lag: usize, n_features: usize) -> Vec<Vec<f64>> {
    (0..lag)
        .map(|_| (0..n_features).map(|_| rng.random_range(0.0..=1.0)).collect())
        .collect()
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Scalar-loop recomputation of the cell recurrences, independent of the
/// library's matrix code.
pub fn reference_forward(m: &LstmModel, window: &[Vec<f64>]) -> f64 {
    let h_n = m.hidden;
    let mut h = vec![0.0; h_n];
    let mut c = vec![0.0; h_n];
    for x in window {
        let z: Vec<f64> = h.iter().chain(x.iter()).copied().collect();
        let pre = |gate: &btc_forecast::lstm::Gate, r: usize| {
            gate.b[r] + (0..z.len()).map(|k| gate.w[(r, k)] * z[k]).sum::<f64>()
        };
        let mut h_next = vec![0.0; h_n];
        for r in 0..h_n {
            let f = sigmoid(pre(&m.forget, r));
            let i = sigmoid(pre(&m.input, r));
            let o = sigmoid(pre(&m.output, r));
            let g = pre(&m.cell, r).tanh();
            c[r] = f * c[r] + i * g;
            h_next[r] = o * c[r].tanh();
        }
        h = h_next;
    }
    m.b_d + (0..h_n).map(|r| m.w_d[r] * h[r]).sum::<f64>()
}

/// `|a - b| / max(|a|, |b|, floor)`.
pub fn relative_error(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Gradient oracle outcome over many random models.
#[derive(Debug, Clone, Copy)]
pub struct GradientCheck {
    pub models: usize,
    pub parameters: usize,
    pub worst_relative_error: f64,
}

/// Compare analytic BPTT gradients with central differences (step `h`) on
/// `models` random small models (hidden ≤ 4, lag ≤ 3, 1 or 2 features).
pub fn gradient_check(models: usize, seed: u64, h: f64) -> GradientCheck {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut parameters = 0;
    for _ in 0..models {
        let hidden = rng.random_range(1..=4);
        let n_features = rng.random_range(1..=2);
        let lag = rng.random_range(1..=3);
        let model = random_model(&mut rng, n_features, hidden, 1.0);
        let window = random_window(&mut rng, lag, n_features);
        let (_, cache) = model.forward(&window).unwrap();
        let grads = model.backward(&cache, 1.0);
        let analytic: Vec<f64> = grads.tensors().iter().flat_map(|t| t.iter().copied()).collect();

        let mut probe = model.clone();
        let mut k = 0;
        for t in 0..10 {
            let len = probe.tensors()[t].len();
            for j in 0..len {
                let original = probe.tensors()[t][j];
                probe.tensors_mut()[t][j] = original + h;
                let up = probe.predict(&window).unwrap();
                probe.tensors_mut()[t][j] = original - h;
                let down = probe.predict(&window).unwrap();
                probe.tensors_mut()[t][j] = original;
                let numeric = (up - down) / (2.0 * h);
                // The floor keeps exact zeros (e.g. forget-gate weights at
                // the first step, where c_{t-1} = 0) from dividing by zero.
                worst = worst.max(relative_error(analytic[k], numeric, 1e-6));
                k += 1;
            }
        }
        parameters += k;
    }
    GradientCheck {
        models,
        parameters,
        worst_relative_error: worst,
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (x, &y) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *x -= factor * y;
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// OLS of `w_t` on `[1, w_{t-1}, ..., w_{t-p}]` through the normal
/// equations. Returns `[c, φ_1, ..., φ_p]`.
pub fn ar_normal_equations(w: &[f64], p: usize) -> Vec<f64> {
    let k = p + 1;
    let mut xtx = vec![vec![0.0; k]; k];
    let mut xty = vec![0.0; k];
    for t in p..w.len() {
        let row: Vec<f64> = std::iter::once(1.0).chain((1..=p).map(|i| w[t - i])).collect();
        for a in 0..k {
            xty[a] += row[a] * w[t];
            for b in 0..k {
                xtx[a][b] += row[a] * row[b];
            }
        }
    }
    gauss_solve(xtx, xty)
}
