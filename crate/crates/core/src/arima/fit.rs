use nalgebra::{DMatrix, DVector};

use super::diff::{difference, last_levels};
use super::{ArimaError, ArimaOrder};

/// Estimation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct FitOptions {
    /// Estimate a constant (drift, after differencing). When false the
    /// constant is fixed at zero.
    pub intercept: bool,
    /// Gauss–Newton iteration cap for models with MA terms.
    pub max_iter: usize,
    /// Relative objective decrease below which Gauss–Newton stops.
    pub tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            intercept: true,
            max_iter: 200,
            tol: 1e-10,
        }
    }
}

/// A fitted ARIMA(p,d,q) model together with the history tail it needs to
/// forecast the next value.
#[derive(Debug, Clone, PartialEq)]
pub struct ArimaModel {
    pub order: ArimaOrder,
    pub intercept: f64,
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    /// Mean squared in-sample innovation.
    pub sigma2: f64,
    /// Gauss–Newton iterations used (0 for pure AR fits).
    pub iterations: usize,
    pub warnings: Vec<String>,
    /// Last `p` differenced values, oldest first.
    diff_tail: Vec<f64>,
    /// Last `q` innovations, oldest first.
    resid_tail: Vec<f64>,
    /// Last value of each difference order `0..d`.
    levels: Vec<f64>,
    n_obs: usize,
}

/// Shortest series `fit` accepts for `order`.
pub fn min_series_len(order: ArimaOrder) -> usize {
    order.d + order.p + order.q + 2
}

/// Fit with default options (intercept included).
pub fn fit(series: &[f64], order: ArimaOrder) -> Result<ArimaModel, ArimaError> {
    fit_with(series, order, &FitOptions::default())
}

/// Estimate an ARIMA model.
///
/// The series is differenced `d` times. Without MA terms the constant and
/// AR coefficients come from ordinary least squares on lagged values. With
/// MA terms the conditional sum of squared innovations (pre-sample
/// innovations set to zero) is minimized by Gauss–Newton, starting from the
/// AR-only solution.
pub fn fit_with(
    series: &[f64],
    order: ArimaOrder,
    options: &FitOptions,
) -> Result<ArimaModel, ArimaError> {
    if let Some(i) = series.iter().position(|v| !v.is_finite()) {
        return Err(ArimaError::NonFinite(i));
    }
    let needed = min_series_len(order);
    if series.len() < needed {
        return Err(ArimaError::TooShort {
            len: series.len(),
            needed,
        });
    }
    let w = difference(series, order.d)?;
    let (p, q) = (order.p, order.q);
    let mut warnings = Vec::new();

    let scale = w.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let constant = w.iter().all(|v| (v - w[0]).abs() <= 1e-12 * scale);
    let layout = Layout {
        intercept: options.intercept,
        p,
        q,
    };

    let (params, iterations) = if constant && (p > 0 || q > 0) {
        warnings.push(format!(
            "differenced series is constant; ARIMA{order} reduced to intercept only"
        ));
        let mut params = vec![0.0; layout.len()];
        if options.intercept {
            params[0] = w[0];
        }
        (params, 0)
    } else {
        let start = ols_start(&w, layout);
        if q == 0 {
            (start, 0)
        } else {
            gauss_newton(&w, layout, start, options)?
        }
    };

    let (c, ar, ma) = layout.unpack(&params);
    let e = innovations(&w, p, c, &ar, &ma);
    let m = (w.len() - p) as f64;
    let sigma2 = e[p..].iter().map(|x| x * x).sum::<f64>() / m;

    Ok(ArimaModel {
        order,
        intercept: c,
        diff_tail: w[w.len() - p..].to_vec(),
        resid_tail: e[e.len() - q..].to_vec(),
        levels: last_levels(series, order.d),
        n_obs: series.len(),
        ar,
        ma,
        sigma2,
        iterations,
        warnings,
    })
}

#[derive(Debug, Clone, Copy)]
struct Layout {
    intercept: bool,
    p: usize,
    q: usize,
}

impl Layout {
    fn offset(&self) -> usize {
        usize::from(self.intercept)
    }

    fn len(&self) -> usize {
        self.offset() + self.p + self.q
    }

    fn unpack(&self, params: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
        let o = self.offset();
        let c = if self.intercept { params[0] } else { 0.0 };
        (
            c,
            params[o..o + self.p].to_vec(),
            params[o + self.p..].to_vec(),
        )
    }
}

/// Minimum-norm least squares; tolerates rank-deficient designs such as a
/// noiseless sinusoid regressed on many lags.
fn least_squares(x: DMatrix<f64>, y: DVector<f64>) -> DVector<f64> {
    let rows = x.nrows();
    let svd = x.svd(true, true);
    let eps = svd.singular_values.max() * rows as f64 * f64::EPSILON;
    svd.solve(&y, eps)
        .expect("SVD computed with both U and V^T")
}

/// Intercept and AR coefficients by OLS, MA coefficients zero.
fn ols_start(w: &[f64], layout: Layout) -> Vec<f64> {
    let Layout { p, .. } = layout;
    let o = layout.offset();
    let k = o + p;
    let mut params = vec![0.0; layout.len()];
    if k == 0 {
        return params;
    }
    let m = w.len() - p;
    let x = DMatrix::from_fn(m, k, |r, col| {
        let t = r + p;
        if col < o {
            1.0
        } else {
            w[t - (col - o + 1)]
        }
    });
    let y = DVector::from_iterator(m, w[p..].iter().copied());
    let beta = least_squares(x, y);
    params[..k].copy_from_slice(beta.as_slice());
    params
}

/// Conditional innovations: zero before index `p`, then
/// `e_t = w_t - c - Σ φ_i w_{t-i} - Σ θ_j e_{t-j}`.
fn innovations(w: &[f64], p: usize, c: f64, ar: &[f64], ma: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; w.len()];
    for t in p..w.len() {
        let mut pred = c;
        for (i, phi) in ar.iter().enumerate() {
            pred += phi * w[t - i - 1];
        }
        for (j, theta) in ma.iter().enumerate() {
            if t > j {
                pred += theta * e[t - j - 1];
            }
        }
        e[t] = w[t] - pred;
    }
    e
}

fn css(w: &[f64], layout: Layout, params: &[f64]) -> f64 {
    let (c, ar, ma) = layout.unpack(params);
    innovations(w, layout.p, c, &ar, &ma)[layout.p..]
        .iter()
        .map(|x| x * x)
        .sum()
}

/// Innovations for `t >= p` and their Jacobian with respect to the packed
/// parameters, by the recursion obtained from differentiating the
/// innovation equation.
fn innovations_and_jacobian(
    w: &[f64],
    layout: Layout,
    params: &[f64],
) -> (DVector<f64>, DMatrix<f64>) {
    let (c, ar, ma) = layout.unpack(params);
    let Layout { p, q, .. } = layout;
    let o = layout.offset();
    let k = layout.len();
    let n = w.len();
    let e = innovations(w, p, c, &ar, &ma);
    // de[t][col], zero for t < p.
    let mut de = vec![vec![0.0; k]; n];
    for t in p..n {
        let mut row = vec![0.0; k];
        if layout.intercept {
            row[0] = -1.0;
        }
        for i in 0..p {
            row[o + i] = -w[t - i - 1];
        }
        for j in 0..q {
            if t > j {
                row[o + p + j] = -e[t - j - 1];
            }
        }
        for (j, theta) in ma.iter().enumerate() {
            if t > j {
                let prev = &de[t - j - 1];
                for col in 0..k {
                    row[col] -= theta * prev[col];
                }
            }
        }
        de[t] = row;
    }
    let m = n - p;
    let residuals = DVector::from_iterator(m, e[p..].iter().copied());
    let jacobian = DMatrix::from_fn(m, k, |r, col| de[r + p][col]);
    (residuals, jacobian)
}

fn gauss_newton(
    w: &[f64],
    layout: Layout,
    mut params: Vec<f64>,
    options: &FitOptions,
) -> Result<(Vec<f64>, usize), ArimaError> {
    let mut objective = css(w, layout, &params);
    for iter in 1..=options.max_iter {
        let (e, jac) = innovations_and_jacobian(w, layout, &params);
        let step = least_squares(jac, -e);

        let mut accepted = None;
        let mut scale = 1.0;
        for _ in 0..40 {
            let candidate: Vec<f64> = params
                .iter()
                .zip(step.iter())
                .map(|(p, s)| p + scale * s)
                .collect();
            let value = css(w, layout, &candidate);
            if value.is_finite() && value <= objective {
                accepted = Some((candidate, value));
                break;
            }
            scale *= 0.5;
        }
        let Some((candidate, value)) = accepted else {
            // No descent along the Gauss–Newton direction: at a minimum.
            return Ok((params, iter));
        };
        let decrease = objective - value;
        let step_size = step.amax() * scale;
        params = candidate;
        objective = value;
        if decrease <= options.tol * objective.max(f64::MIN_POSITIVE) || step_size < 1e-12 {
            return Ok((params, iter));
        }
    }
    Err(ArimaError::NotConverged {
        iterations: options.max_iter,
        objective,
    })
}

/// Moduli of the eigenvalues of the companion matrix whose first row is
/// `first_row` (the inverse roots of `1 - Σ a_i B^i`).
fn companion_moduli(first_row: &[f64]) -> Vec<f64> {
    let k = first_row.len();
    if k == 0 {
        return Vec::new();
    }
    let companion = DMatrix::from_fn(k, k, |r, c| {
        if r == 0 {
            first_row[c]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut moduli: Vec<f64> = companion
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    moduli
}

impl ArimaModel {
    pub fn n_obs(&self) -> usize {
        self.n_obs
    }

    /// Forecast of the next differenced value.
    fn forecast_diff(&self) -> f64 {
        let p = self.ar.len();
        let q = self.ma.len();
        let ar: f64 = (1..=p).map(|i| self.ar[i - 1] * self.diff_tail[p - i]).sum();
        let ma: f64 = (1..=q).map(|j| self.ma[j - 1] * self.resid_tail[q - j]).sum();
        self.intercept + ar + ma
    }

    /// One-step-ahead forecast in the original units.
    pub fn forecast_one(&self) -> f64 {
        self.forecast_diff() + self.levels.iter().sum::<f64>()
    }

    /// Absorb a new observation without re-estimating coefficients.
    pub fn append(&mut self, y: f64) {
        let predicted = self.forecast_diff();
        let mut v = y;
        for level in self.levels.iter_mut() {
            let prev = *level;
            *level = v;
            v -= prev;
        }
        if !self.diff_tail.is_empty() {
            self.diff_tail.remove(0);
            self.diff_tail.push(v);
        }
        if !self.resid_tail.is_empty() {
            self.resid_tail.remove(0);
            self.resid_tail.push(v - predicted);
        }
        self.n_obs += 1;
    }

    /// Inverse AR root moduli, largest first; all below 1 means stationary.
    pub fn ar_inverse_root_moduli(&self) -> Vec<f64> {
        companion_moduli(&self.ar)
    }

    /// Inverse MA root moduli, largest first; all below 1 means invertible.
    pub fn ma_inverse_root_moduli(&self) -> Vec<f64> {
        let negated: Vec<f64> = self.ma.iter().map(|t| -t).collect();
        companion_moduli(&negated)
    }

    pub fn is_stationary(&self) -> bool {
        self.ar_inverse_root_moduli().iter().all(|&m| m < 1.0)
    }

    pub fn is_invertible(&self) -> bool {
        self.ma_inverse_root_moduli().iter().all(|&m| m < 1.0)
    }
}
