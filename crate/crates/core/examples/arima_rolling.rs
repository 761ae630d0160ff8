//! ARIMA estimation on a simulated series, then rolling one-step forecasts
//! against the naive baseline.
//!
//! ```text
//! cargo run --release --example arima_rolling
//! ```

use btc_forecast::arima::{fit, rolling_forecast_from, rolling_start, ArimaOrder, Refit, RollingConfig};
use btc_forecast::eval::rmse;
use btc_forecast::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let series = synthetic::simulate_arima(&[0.5, -0.2], 1, 0.0, 1.0, 3000, 3);
    let order: ArimaOrder = "2,1,0".parse()?;
    let model = fit(&series, order)?;
    println!("ARIMA{order}, true ar [0.5, -0.2]");
    println!("estimated ar {:.4?} c {:.4} sigma2 {:.4}", model.ar, model.intercept, model.sigma2);
    println!(
        "stationary {}, inverse AR root moduli {:.4?}",
        model.is_stationary(),
        model.ar_inverse_root_moduli()
    );

    let prices = synthetic::sine_fixture(300).prices();
    let start = rolling_start(prices.len(), 0.7)?;
    let actual = &prices[start..];
    let naive = &prices[start - 1..prices.len() - 1];
    println!("\nrolling over {} test points", actual.len());
    println!("naive           rmse {:.4}", rmse(actual, naive)?);
    for (label, refit) in [("refit always", Refit::Always), ("fit once", Refit::Once)] {
        let config = RollingConfig {
            refit,
            ..RollingConfig::new(ArimaOrder::new(4, 1, 0)?)
        };
        let predicted = rolling_forecast_from(&prices, start, &config)?;
        println!("{label:<15} rmse {:.4}", rmse(actual, &predicted)?);
    }
    Ok(())
}
