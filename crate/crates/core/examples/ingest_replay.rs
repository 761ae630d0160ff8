//! Poll the bundled replay server the way `btc-forecast ingest` polls a live
//! exchange, then read the record log back.
//!
//! ```text
//! cargo run --example ingest_replay
//! ```

use std::time::Duration;

use btc_forecast::fixtures_dir;
use btc_forecast::ingest::{poll, read_log, Fetcher, RecordLog, ReplayServer, Schema, SourceConfig, StopSignal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let server = ReplayServer::start(fixtures_dir().join("replay"))?;
    let out = std::env::temp_dir().join("btc-forecast-ingest-example");
    std::fs::create_dir_all(&out)?;
    let path = out.join("bitstamp.csv");
    let _ = std::fs::remove_file(&path);

    let mut source = SourceConfig::new(
        "bitstamp",
        server.url("/api/v2/ticker/btcusd/"),
        Schema::BitstampTicker,
    )?;
    source.poll_interval = Duration::from_millis(20);

    let fetcher = Fetcher::new(source)?;
    let mut log = RecordLog::open(&path, Schema::BitstampTicker)?;
    let summary = poll(&fetcher, &mut log, &StopSignal::new(), Some(4))?;
    println!("{summary:?}");

    // The server keeps serving its last payload, so the fourth fetch is a
    // duplicate timestamp and gets rejected.
    for record in read_log(&path, Schema::BitstampTicker)? {
        println!("{} {:.2}", record.timestamp(), record.price());
    }
    println!("log: {}", path.display());
    Ok(())
}
