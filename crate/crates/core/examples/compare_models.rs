//! The full comparison: single- and multi-feature LSTMs, ARIMA and the naive
//! baseline on a series whose sentiment leads the price.
//!
//! ```text
//! cargo run --release --example compare_models [-- epochs]
//! ```

use btc_forecast::eval::{evaluate, EvaluateOptions};
use btc_forecast::lstm::LstmConfig;
use btc_forecast::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let epochs = match std::env::args().nth(1) {
        Some(arg) => arg.parse()?,
        None => 100,
    };
    let series = synthetic::informed_sentiment(400, 0.2, 42);
    let options = EvaluateOptions {
        lstm: LstmConfig {
            lag: 1,
            epochs,
            seed: 1,
            ..LstmConfig::default()
        },
        ..EvaluateOptions::default()
    };
    let ev = evaluate(&series, &options)?;
    print!("{}", ev.table);
    println!("winner: {}", ev.table.rows[0].model);
    Ok(())
}
