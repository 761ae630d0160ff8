//! Regenerate the synthetic fixtures bundled under `fixtures/`.
//!
//! ```text
//! cargo run --example generate_fixtures [-- <dir>]
//! ```

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use btc_forecast::dataset::write_merged;
use btc_forecast::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(btc_forecast::fixtures_dir);
    std::fs::create_dir_all(&dir)?;

    // 644 daily points: with lag 10 this gives 634 samples, split 443 / 191.
    let sine = synthetic::sine_fixture(644);
    write_merged(BufWriter::new(File::create(dir.join("sine.csv"))?), &sine)?;

    let informed = synthetic::informed_sentiment(400, 0.2, 42);
    write_merged(BufWriter::new(File::create(dir.join("informed.csv"))?), &informed)?;

    println!("wrote sine.csv ({} rows) and informed.csv ({} rows) to {}", sine.len(), informed.len(), dir.display());
    Ok(())
}
