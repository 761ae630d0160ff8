use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use btc_forecast::cli::EVALUATE_OUTPUTS;
use btc_forecast::ingest::{read_log, ReplayServer, Schema};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_btc-forecast"))
}

fn fixture(name: &str) -> PathBuf {
    btc_forecast::fixtures_dir().join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["evaluate", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["train-arima", "--order", "1,2", "--out", "x"]).status.code(), Some(2));
}

#[test]
fn help_lists_defaults() {
    let help = ok(&["evaluate", "--help"]);
    for needle in [
        "--hidden <HIDDEN>",
        "[default: 32]",
        "[default: 200]",
        "[default: 0.01]",
        "[default: 10,1,0]",
        "[default: always]",
        "[default: 0.7]",
        "[default: evaluation]",
    ] {
        assert!(help.contains(needle), "missing {needle}");
    }
    let merge = ok(&["merge", "--help"]);
    assert!(merge.contains("[default: 86400]"));
    assert!(merge.contains("[default: bitstamp_ticker]"));
}

#[test]
fn missing_input_names_the_path() {
    let out = run(&["evaluate", "--data", "/no/such/dir/prices.csv", "--out-dir", "/tmp/unused"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/no/such/dir/prices.csv"), "{err}");

    let empty = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["train-arima", "--out", "x.csv"])
        .env(btc_forecast::FIXTURES_ENV, empty.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sine.csv"));
}

#[test]
fn train_arima_reports_default_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("arima.csv");
    let stdout = ok(&["train-arima", "--out", s(&out)]);
    assert!(stdout.contains("arima(10,1,0)"), "{stdout}");
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("time,actual,predicted\n"));
    // 644 points split at 0.7 leaves 194 forecasts.
    assert_eq!(text.lines().count(), 1 + 194);
}

#[test]
fn train_lstm_writes_model_forecast_and_loss() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(&[
        "train-lstm", "--epochs", "5", "--hidden", "4", "--lag", "3", "--features", "multi",
        "--out-dir", s(dir.path()),
    ]);
    assert!(stdout.contains("lstm-multi"));
    for f in ["lstm_multi.params", "forecast_lstm_multi.csv", "train_loss_lstm_multi.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let model = btc_forecast::lstm::load_model(dir.path().join("lstm_multi.params")).unwrap();
    assert_eq!((model.n_features, model.hidden), (2, 4));
    let loss = fs::read_to_string(dir.path().join("train_loss_lstm_multi.csv")).unwrap();
    assert_eq!(loss.lines().count(), 6);
}

fn evaluate_into(dir: &Path) {
    ok(&[
        "evaluate", "--data", s(&fixture("sine.csv")), "--seed", "7", "--epochs", "30",
        "--hidden", "8", "--lag", "3", "--out-dir", s(dir),
    ]);
}

/// Comparison rows without the wall-clock columns.
fn strip_timings(csv_text: &str) -> Vec<Vec<String>> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert_eq!(&header[4], "build_time_ms");
    assert_eq!(&header[5], "train_time_ms");
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            [0, 1, 2, 3, 6].iter().map(|&i| r[i].to_string()).collect()
        })
        .collect()
}

#[test]
fn evaluate_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    evaluate_into(a.path());
    evaluate_into(b.path());
    for name in EVALUATE_OUTPUTS {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        if name.starts_with("comparison") {
            continue;
        }
        assert_eq!(x, y, "{name} differs between runs");
    }
    let ca = fs::read_to_string(a.path().join("comparison.csv")).unwrap();
    let cb = fs::read_to_string(b.path().join("comparison.csv")).unwrap();
    assert!(ca.starts_with("rank,model,rmse,mse,build_time_ms,train_time_ms,winner\n"));
    assert_eq!(strip_timings(&ca), strip_timings(&cb));
    // The noiseless sine is an exact AR recursion.
    assert!(ca.lines().nth(1).unwrap().contains("arima(10,1,0)"));
}

#[test]
fn evaluate_writes_only_into_out_dir() {
    let work = tempfile::tempdir().unwrap();
    let out = bin()
        .current_dir(work.path())
        .args(["evaluate", "--epochs", "2", "--hidden", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let entries: Vec<_> = fs::read_dir(work.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries, ["evaluation"]);
    let mut written: Vec<String> = fs::read_dir(work.path().join("evaluation"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    written.sort();
    let mut declared: Vec<String> = EVALUATE_OUTPUTS.iter().map(|s| s.to_string()).collect();
    declared.sort();
    assert_eq!(written, declared);
}

#[test]
fn plot_re_emits_saved_files() {
    let dir = tempfile::tempdir().unwrap();
    evaluate_into(dir.path());
    let overlay = dir.path().join("overlay.csv");
    ok(&[
        "plot", "--kind", "forecast_overlay", "--input", s(&dir.path().join("forecast_arima.csv")),
        "--out", s(&overlay),
    ]);
    assert_eq!(
        fs::read(&overlay).unwrap(),
        fs::read(dir.path().join("forecast_arima.csv")).unwrap()
    );
    let loss = dir.path().join("loss.csv");
    ok(&[
        "plot", "--kind", "train_loss", "--input", s(&dir.path().join("train_loss_lstm_single.csv")),
        "--out", s(&loss),
    ]);
    assert_eq!(
        fs::read(&loss).unwrap(),
        fs::read(dir.path().join("train_loss_lstm_single.csv")).unwrap()
    );
    let norm = dir.path().join("norm.csv");
    ok(&["plot", "--kind", "normalized_series", "--input", s(&fixture("sine.csv")), "--out", s(&norm)]);
    assert_eq!(
        fs::read(&norm).unwrap(),
        fs::read(dir.path().join("normalized_series.csv")).unwrap()
    );
    let bad = run(&["plot", "--kind", "pie", "--input", s(&norm), "--out", s(&norm)]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn raw_data_to_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let sentiment = dir.path().join("sentiment.csv");
    let merged = dir.path().join("merged.csv");
    ok(&["sentiment", "--input", s(&fixture("posts.csv")), "--out", s(&sentiment)]);
    let log = fs::read_to_string(&sentiment).unwrap();
    assert!(log.starts_with("timestamp,polarity,label\n"));
    ok(&[
        "merge", "--prices", s(&fixture("bitstamp_ticks.csv")), "--sentiment", s(&sentiment),
        "--out", s(&merged),
    ]);
    let series = btc_forecast::dataset::read_merged(fs::File::open(&merged).unwrap()).unwrap();
    assert_eq!(series.len(), 120);
    assert!(series.sentiments().iter().any(|&v| v != 0.0));
    let out = dir.path().join("eval");
    let table = ok(&[
        "evaluate", "--data", s(&merged), "--epochs", "20", "--hidden", "4", "--lag", "2",
        "--order", "2,1,0", "--out-dir", s(&out),
    ]);
    for model in ["lstm-single", "lstm-multi", "arima(2,1,0)", "naive"] {
        assert!(table.contains(model), "{table}");
    }
}

#[test]
fn sentiment_from_http_and_ingest_from_replay() {
    let server = ReplayServer::start(fixture("replay")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let sentiment = dir.path().join("s.csv");
    ok(&["sentiment", "--input", &server.url("/posts/recent.csv"), "--out", s(&sentiment)]);
    assert_eq!(fs::read_to_string(&sentiment).unwrap().lines().count(), 26);

    let config = dir.path().join("sources.toml");
    fs::write(
        &config,
        format!(
            "[[source]]\nname = \"bitstamp\"\nbase_url = \"{}\"\npoll_interval_s = 0.01\nschema = \"bitstamp_ticker\"\n\n\
             [[source]]\nname = \"cmc\"\nbase_url = \"{}\"\npoll_interval_s = 0.01\nschema = \"marketcap_snapshot\"\n",
            server.url("/api/v2/ticker/btcusd/"),
            server.url("/v1/ticker/bitcoin/"),
        ),
    )
    .unwrap();
    let logs = dir.path().join("logs");
    ok(&["ingest", "--config", s(&config), "--out-dir", s(&logs), "--attempts", "3"]);
    assert_eq!(read_log(logs.join("bitstamp.csv"), Schema::BitstampTicker).unwrap().len(), 3);
    assert_eq!(read_log(logs.join("cmc.csv"), Schema::MarketcapSnapshot).unwrap().len(), 2);
}

#[test]
fn run_config_file_feeds_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    let out = dir.path().join("f.csv");
    fs::write(&config, format!("[train-arima]\norder = \"2,1,0\"\nout = {:?}\n", s(&out))).unwrap();
    let stdout = ok(&["--run-config", s(&config), "train-arima"]);
    assert!(stdout.contains("arima(2,1,0)"), "{stdout}");
    assert!(out.exists());
    let stdout = ok(&["--run-config", s(&config), "train-arima", "--order", "1,1,0"]);
    assert!(stdout.contains("arima(1,1,0)"), "{stdout}");
}
