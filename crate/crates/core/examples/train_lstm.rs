//! Train the LSTM on the sine fixture, score it, save and reload it.
//!
//! ```text
//! cargo run --release --example train_lstm [-- epochs]
//! ```

use btc_forecast::dataset::{split, to_supervised, FeatureMode, ScaledSeries};
use btc_forecast::eval::rmse;
use btc_forecast::lstm::{load_model, predict_scaled, predict_series, save_model, train, LstmConfig};
use btc_forecast::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let epochs = match std::env::args().nth(1) {
        Some(arg) => arg.parse()?,
        None => 100,
    };
    let series = synthetic::sine_fixture(644);
    let scaled = ScaledSeries::fit(&series)?;
    let config = LstmConfig {
        lag: 10,
        hidden_size: 16,
        epochs,
        seed: 7,
        ..LstmConfig::default()
    };
    let dataset = to_supervised(&scaled, config.lag, FeatureMode::PriceOnly)?;
    let (train_set, test_set) = split(&dataset, 0.7)?;

    let (model, history) = train(&config, &train_set)?;
    for (epoch, loss) in history.losses.iter().enumerate() {
        if epoch % 20 == 0 || epoch + 1 == history.losses.len() {
            println!("epoch {:>4}  mae {loss:.5}", epoch + 1);
        }
    }
    println!("trained in {:.0} ms", history.total_train_time_ms());

    let scaled_rmse = rmse(&test_set.targets, &predict_scaled(&model, &test_set)?)?;
    let usd = predict_series(&model, &test_set)?;
    let usd_rmse = rmse(&test_set.actual_prices(), &usd)?;
    println!("test rmse: {scaled_rmse:.4} scaled, {usd_rmse:.2} USD");

    let path = std::env::temp_dir().join("btc-forecast-sine.params");
    save_model(&path, &model)?;
    assert_eq!(load_model(&path)?, model);
    println!("saved {}", path.display());
    Ok(())
}
