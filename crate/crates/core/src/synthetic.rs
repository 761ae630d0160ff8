//! Seeded synthetic series used by tests, examples and the bundled fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dataset::{MergedRow, MergedSeries};

/// First timestamp of generated daily series (2017-01-01T00:00:00Z).
pub const START_TIME: i64 = 1_483_228_800;
pub const DAY: i64 = 86_400;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// `offset + amplitude * sin(2π i / period)` for `i in 0..n`.
pub fn sine(n: usize, period: f64, amplitude: f64, offset: f64) -> Vec<f64> {
    (0..n)
        .map(|i| offset + amplitude * (std::f64::consts::TAU * i as f64 / period).sin())
        .collect()
}

/// Gaussian random walk starting at 0 with innovation standard deviation
/// `sigma`.
pub fn random_walk(n: usize, sigma: f64, seed: u64) -> Vec<f64> {
    let mut rng = rng(seed);
    let mut level = 0.0;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            level += sigma * normal(&mut rng);
        }
        out.push(level);
    }
    out
}

/// ARMA(p,q) sample path `y_t = c + Σ φ_i y_{t-i} + Σ θ_j e_{t-j} + e_t`
/// with Gaussian innovations, after a discarded burn-in.
pub fn simulate_arma(ar: &[f64], ma: &[f64], c: f64, sigma: f64, n: usize, seed: u64) -> Vec<f64> {
    const BURN_IN: usize = 500;
    let mut rng = rng(seed);
    let total = n + BURN_IN;
    let mut y = vec![0.0; total];
    let mut e = vec![0.0; total];
    for t in 0..total {
        e[t] = sigma * normal(&mut rng);
        let mut v = c + e[t];
        for (i, phi) in ar.iter().enumerate() {
            if t > i {
                v += phi * y[t - i - 1];
            }
        }
        for (j, theta) in ma.iter().enumerate() {
            if t > j {
                v += theta * e[t - j - 1];
            }
        }
        y[t] = v;
    }
    y.split_off(BURN_IN)
}

/// ARIMA(p,d,0) path: an AR(p) series integrated `d` times.
pub fn simulate_arima(ar: &[f64], d: usize, c: f64, sigma: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut y = simulate_arma(ar, &[], c, sigma, n, seed);
    for _ in 0..d {
        let mut acc = 0.0;
        for v in y.iter_mut() {
            acc += *v;
            *v = acc;
        }
    }
    y
}

/// Daily merged series from prices and sentiments of equal length.
pub fn daily_series(prices: &[f64], sentiments: &[f64]) -> MergedSeries {
    assert_eq!(prices.len(), sentiments.len());
    let rows = prices
        .iter()
        .zip(sentiments)
        .enumerate()
        .map(|(i, (&price, &sentiment))| MergedRow {
            time: START_TIME + i as i64 * DAY,
            price,
            sentiment,
        })
        .collect();
    MergedSeries::from_rows(rows).expect("daily timestamps are increasing")
}

/// Noiseless sine price series (period 40 days around 5000 USD) with a
/// neutral sentiment column.
pub fn sine_fixture(n: usize) -> MergedSeries {
    daily_series(&sine(n, 40.0, 3000.0, 5000.0), &vec![0.0; n])
}

/// Price series whose sentiment column carries next-step information:
/// `sentiment_t = 0.8 * sign(price_{t+1} - price_t) + noise`, clamped to
/// `[-1, 1]`. Prices follow a mean-reverting AR(1) around 1000 USD.
pub fn informed_sentiment(n: usize, noise: f64, seed: u64) -> MergedSeries {
    let mut rng = rng(seed);
    let deviations = simulate_arma(&[0.7], &[], 0.0, 20.0, n, seed.wrapping_add(1));
    let prices: Vec<f64> = deviations.iter().map(|d| 1000.0 + d).collect();
    let sentiments: Vec<f64> = (0..n)
        .map(|t| {
            let signal = match prices.get(t + 1) {
                Some(next) => 0.8 * (next - prices[t]).signum(),
                None => 0.0,
            };
            (signal + noise * normal(&mut rng)).clamp(-1.0, 1.0)
        })
        .collect();
    daily_series(&prices, &sentiments)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_paths_are_reproducible() {
        assert_eq!(random_walk(50, 1.0, 3), random_walk(50, 1.0, 3));
        assert_ne!(random_walk(50, 1.0, 3), random_walk(50, 1.0, 4));
        assert_eq!(random_walk(5, 1.0, 0)[0], 0.0);
    }

    #[test]
    fn sine_shape() {
        let s = sine(41, 40.0, 2.0, 1.0);
        assert_eq!(s[0], 1.0);
        assert!((s[10] - 3.0).abs() < 1e-12);
        assert!((s[40] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn integrated_path_differences_back() {
        let ar = simulate_arma(&[0.3], &[], 0.0, 1.0, 20, 9);
        let y = simulate_arima(&[0.3], 1, 0.0, 1.0, 20, 9);
        for t in 1..20 {
            assert!((y[t] - y[t - 1] - ar[t]).abs() < 1e-12);
        }
    }

    #[test]
    fn informed_sentiment_points_at_next_move() {
        let s = informed_sentiment(200, 0.0, 1);
        let p = s.prices();
        let q = s.sentiments();
        for t in 0..199 {
            assert_eq!(q[t].signum(), (p[t + 1] - p[t]).signum());
        }
        assert_eq!(q[199], 0.0);
    }
}
