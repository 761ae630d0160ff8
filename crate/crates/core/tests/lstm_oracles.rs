mod common;

use btc_forecast::dataset::{to_supervised, FeatureMode, ScaledSeries};
use btc_forecast::lstm::{predict_scaled, LstmModel};
use btc_forecast::synthetic;
use common::{random_model, random_window, reference_forward, rng};
use proptest::prelude::*;
use rand::RngCore;

#[test]
fn hand_sized_model_matches_reference_recurrence() {
    let mut r = rng(1);
    let model = random_model(&mut r, 2, 2, 0.8);
    let window = vec![vec![0.25, 0.75], vec![0.9, 0.1]];
    let (pred, cache) = model.forward(&window).unwrap();
    assert_eq!(cache.lag(), 2);
    assert!((pred - reference_forward(&model, &window)).abs() < 1e-14);
}

#[test]
fn many_random_models_match_reference_recurrence() {
    let mut r = rng(2);
    for _ in 0..200 {
        let hidden = 1 + (r.next_u32() % 6) as usize;
        let features = 1 + (r.next_u32() % 2) as usize;
        let lag = 1 + (r.next_u32() % 5) as usize;
        let model = random_model(&mut r, features, hidden, 1.0);
        let window = random_window(&mut r, lag, features);
        let a = model.predict(&window).unwrap();
        let b = reference_forward(&model, &window);
        assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{a} vs {b}");
    }
}

/// Closed-form derivatives of a one-step LSTM (h_0 = c_0 = 0):
/// c = i g, h = o tanh(c), y = w_d · h + b_d.
#[test]
fn lag_one_gradient_matches_closed_form() {
    let mut r = rng(3);
    for _ in 0..50 {
        let hidden = 1 + (r.next_u32() % 4) as usize;
        let features = 1 + (r.next_u32() % 2) as usize;
        let model = random_model(&mut r, features, hidden, 1.0);
        let window = random_window(&mut r, 1, features);
        let (_, cache) = model.forward(&window).unwrap();
        let g = model.backward(&cache, 1.0);

        let z: Vec<f64> = std::iter::repeat_n(0.0, hidden).chain(window[0].iter().copied()).collect();
        let sig = |x: f64| 1.0 / (1.0 + (-x).exp());
        let pre = |gate: &btc_forecast::lstm::Gate, row: usize| {
            gate.b[row] + z.iter().enumerate().map(|(k, zk)| gate.w[(row, k)] * zk).sum::<f64>()
        };
        for row in 0..hidden {
            let i = sig(pre(&model.input, row));
            let o = sig(pre(&model.output, row));
            let gg = pre(&model.cell, row).tanh();
            let c = i * gg;
            let tc = c.tanh();
            let wd = model.w_d[row];
            let d_o = wd * tc * o * (1.0 - o);
            let d_c = wd * o * (1.0 - tc * tc);
            let d_i = d_c * gg * i * (1.0 - i);
            let d_g = d_c * i * (1.0 - gg * gg);
            let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * b.abs().max(1e-3);
            assert!(close(g.w_d[row], o * tc));
            assert!(close(g.output.b[row], d_o));
            assert!(close(g.input.b[row], d_i));
            assert!(close(g.cell.b[row], d_g));
            assert_eq!(g.forget.b[row], 0.0);
            for (k, zk) in z.iter().enumerate() {
                assert!(close(g.output.w[(row, k)], d_o * zk));
                assert!(close(g.input.w[(row, k)], d_i * zk));
                assert!(close(g.cell.w[(row, k)], d_g * zk));
                assert_eq!(g.forget.w[(row, k)], 0.0);
            }
        }
        assert_eq!(g.b_d, 1.0);
    }
}

#[test]
fn gradients_match_finite_differences() {
    let check = common::gradient_check(120, 4, 1e-5);
    assert!(check.worst_relative_error < 1e-4, "{check:?}");
}

/// Embed a price-only model into a price+sentiment model with zero weights
/// on the sentiment column.
fn widen(single: &LstmModel) -> LstmModel {
    let h = single.hidden;
    let mut multi = LstmModel::zeros(2, h);
    for (dst, src) in [
        (&mut multi.forget, &single.forget),
        (&mut multi.input, &single.input),
        (&mut multi.output, &single.output),
        (&mut multi.cell, &single.cell),
    ] {
        for r in 0..h {
            for c in 0..=h {
                dst.w[(r, c)] = src.w[(r, c)];
            }
            dst.w[(r, h + 1)] = 0.0;
        }
        dst.b.copy_from(&src.b);
    }
    multi.w_d.copy_from(&single.w_d);
    multi.b_d = single.b_d;
    multi
}

#[test]
fn multi_feature_with_zero_sentiment_equals_single_feature() {
    let mut r = rng(5);
    let series = synthetic::daily_series(
        &synthetic::sine(80, 17.0, 100.0, 500.0),
        &vec![0.0; 80],
    );
    let scaled = ScaledSeries::fit(&series).unwrap();
    for lag in 1..=4 {
        let single_ds = to_supervised(&scaled, lag, FeatureMode::PriceOnly).unwrap();
        let multi_ds = to_supervised(&scaled, lag, FeatureMode::PriceAndSentiment).unwrap();
        let single = random_model(&mut r, 1, 6, 0.5);
        let multi = widen(&single);
        let a = predict_scaled(&single, &single_ds).unwrap();
        let b = predict_scaled(&multi, &multi_ds).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_and_hidden_states_stay_in_range(
        seed in any::<u64>(),
        hidden in 1usize..=4,
        features in 1usize..=2,
        lag in 1usize..=4,
    ) {
        let mut r = rng(seed);
        let model = random_model(&mut r, features, hidden, 2.0);
        let window = random_window(&mut r, lag, features);
        let (_, cache) = model.forward(&window).unwrap();
        for a in cache.gate_activations() {
            prop_assert!(a > 0.0 && a < 1.0);
        }
        for h in cache.hidden_states() {
            prop_assert!(h.iter().all(|v| v.abs() < 1.0));
        }
    }
}
