//! From a raw tick log and a posts file to scaled, windowed train/test sets.
//!
//! ```text
//! cargo run --example build_dataset
//! ```

use std::fs::File;

use btc_forecast::dataset::{fill_missing, merge, split, to_supervised, FeatureMode, ScaledSeries};
use btc_forecast::fixtures_dir;
use btc_forecast::ingest::{read_log, Schema};
use btc_forecast::sentiment::{process_post, read_posts, Lexicon};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = fixtures_dir();
    let ticks = read_log(dir.join("bitstamp_ticks.csv"), Schema::BitstampTicker)?;
    let prices: Vec<(i64, f64)> = ticks.iter().map(|r| (r.timestamp(), r.price())).collect();

    let lexicon = Lexicon::bundled();
    let sentiments: Vec<_> = read_posts(File::open(dir.join("posts.csv"))?)?
        .iter()
        .map(|p| process_post(p, &lexicon))
        .collect();

    // Daily buckets: last price, mean polarity.
    let merged = merge(&prices, &sentiments, 86_400)?;
    let series = fill_missing(&merged)?;
    println!("{} ticks + {} posts -> {} daily rows", prices.len(), sentiments.len(), series.len());
    for row in &series.rows()[..3] {
        println!("  {} {:.2} {:+.3}", row.time, row.price, row.sentiment);
    }

    let scaled = ScaledSeries::fit(&series)?;
    println!("price range {:.2}..{:.2}", scaled.scaler.min[0], scaled.scaler.max[0]);

    for mode in [FeatureMode::PriceOnly, FeatureMode::PriceAndSentiment] {
        let dataset = to_supervised(&scaled, 5, mode)?;
        let (train, test) = split(&dataset, 0.7)?;
        println!(
            "{:?}: {} samples of {}x{} -> {} train / {} test",
            dataset.feature_names,
            dataset.len(),
            dataset.lag,
            dataset.n_features(),
            train.len(),
            test.len()
        );
    }
    Ok(())
}
