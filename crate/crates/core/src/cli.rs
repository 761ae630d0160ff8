//! The `btc-forecast` command line.
//!
//! Every subcommand is a thin wrapper over library calls; flag defaults are
//! taken from the owning module so `--help` documents them.
//!
//! `--run-config <FILE>` supplies flag values from a TOML file with one table
//! per subcommand; flags given on the command line take precedence:
//!
//! ```toml
//! [evaluate]
//! hidden = 16
//! order = "5,1,0"
//!
//! [merge]
//! bucket_secs = 3600
//! ```

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::thread;

use std::ffi::OsString;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use crate::arima::{ArimaOrder, FitOptions, Refit, RollingConfig};
use crate::dataset::{
    fill_missing, merge, read_merged, write_merged, FeatureMode, MergedSeries, ScaledSeries,
    DEFAULT_BUCKET_SECS, DEFAULT_TRAIN_FRACTION,
};
use crate::eval::pipeline::{run_arima, run_lstm, test_start, EvaluateOptions};
use crate::eval::{
    emit_plot_data, evaluate, read_forecasts, read_plot_data, write_forecasts,
    ForecastReport, PlotInput, PlotKind,
};
use crate::ingest::{load_sources, poll, read_log, Fetcher, RecordLog, Schema, StopSignal};
use crate::lstm::{save_model, LstmConfig};
use crate::sentiment::{process_post, read_posts, read_sentiment_log, write_sentiment_log, Lexicon};
use crate::{fixtures_dir, Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "btc-forecast",
    version,
    about = "Bitcoin price forecasting: ingest, sentiment, merge, LSTM and ARIMA, evaluation",
    args_override_self = true
)]
struct Cli {
    /// TOML file of per-subcommand flag values ([evaluate], [merge], ...).
    #[arg(long, value_name = "FILE")]
    run_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Poll configured ticker sources into CSV record logs.
    Ingest(IngestArgs),
    /// Score a posts file (or URL) into a sentiment log.
    Sentiment(SentimentArgs),
    /// Merge a price record log with a sentiment log into time,price,sentiment.
    Merge(MergeArgs),
    /// Train an LSTM on a merged dataset and score it on the test split.
    TrainLstm(TrainLstmArgs),
    /// Rolling one-step ARIMA forecasts over the test split.
    TrainArima(TrainArimaArgs),
    /// Run both LSTMs, ARIMA and the naive baseline; write the comparison and plot files.
    Evaluate(EvaluateArgs),
    /// Re-emit plot data from a saved file.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
struct IngestArgs {
    /// TOML file with [[source]] entries.
    #[arg(long)]
    config: PathBuf,
    /// Directory for the per-source logs (<name>.csv).
    #[arg(long)]
    out_dir: PathBuf,
    /// Stop each poller after this many fetches (runs until killed if absent).
    #[arg(long)]
    attempts: Option<usize>,
}

#[derive(Debug, Args)]
struct SentimentArgs {
    /// Posts CSV (timestamp,source,text): a path or an http(s) URL.
    #[arg(long)]
    input: String,
    /// Output sentiment log (timestamp,polarity,label).
    #[arg(long)]
    out: PathBuf,
    /// word,weight lexicon file [default: bundled lexicon]
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MergeArgs {
    /// Price record log written by `ingest`.
    #[arg(long)]
    prices: PathBuf,
    /// Schema of the price log.
    #[arg(long, default_value_t = Schema::BitstampTicker)]
    schema: Schema,
    /// Sentiment log written by `sentiment` (all sentiment 0 if absent).
    #[arg(long)]
    sentiment: Option<PathBuf>,
    /// Bucket width in seconds.
    #[arg(long, default_value_t = DEFAULT_BUCKET_SECS)]
    bucket_secs: i64,
    /// Output merged dataset.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Features {
    /// Price only.
    Single,
    /// Price and sentiment.
    Multi,
}

impl From<Features> for FeatureMode {
    fn from(f: Features) -> Self {
        match f {
            Features::Single => FeatureMode::PriceOnly,
            Features::Multi => FeatureMode::PriceAndSentiment,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RefitArg {
    Always,
    Once,
}

impl From<RefitArg> for Refit {
    fn from(r: RefitArg) -> Self {
        match r {
            RefitArg::Always => Refit::Always,
            RefitArg::Once => Refit::Once,
        }
    }
}

#[derive(Debug, Args)]
struct DataArgs {
    /// Merged dataset (time,price,sentiment) [default: <fixtures>/sine.csv]
    #[arg(long)]
    data: Option<PathBuf>,
    /// Fraction of samples used for training (chronological split).
    #[arg(long, default_value_t = DEFAULT_TRAIN_FRACTION)]
    train_fraction: f64,
}

#[derive(Debug, Args)]
struct LstmArgs {
    #[arg(long, default_value_t = LstmConfig::default().hidden_size)]
    hidden: usize,
    /// Window length in time steps.
    #[arg(long, default_value_t = LstmConfig::default().lag)]
    lag: usize,
    #[arg(long, default_value_t = LstmConfig::default().epochs)]
    epochs: usize,
    #[arg(long, default_value_t = LstmConfig::default().learning_rate)]
    learning_rate: f64,
    #[arg(long, default_value_t = LstmConfig::default().seed)]
    seed: u64,
}

impl LstmArgs {
    fn config(&self) -> LstmConfig {
        LstmConfig {
            n_features: 1,
            hidden_size: self.hidden,
            lag: self.lag,
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
struct ArimaArgs {
    /// ARIMA order p,d,q.
    #[arg(long, default_value = "10,1,0")]
    order: ArimaOrder,
    /// Re-estimate before every forecast, or fit once and only update state.
    #[arg(long, value_enum, default_value_t = RefitArg::Always)]
    refit: RefitArg,
}

impl ArimaArgs {
    fn config(&self) -> RollingConfig {
        RollingConfig {
            order: self.order,
            fit: FitOptions::default(),
            refit: self.refit.into(),
        }
    }
}

#[derive(Debug, Args)]
struct TrainLstmArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    lstm: LstmArgs,
    #[arg(long, value_enum, default_value_t = Features::Single)]
    features: Features,
    /// Output directory for the model, forecast and loss files.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct TrainArimaArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    arima: ArimaArgs,
    /// Output forecast file (time,actual,predicted).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    lstm: LstmArgs,
    #[command(flatten)]
    arima: ArimaArgs,
    /// Output directory for reports and plot files.
    #[arg(long, default_value = "evaluation")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// normalized_series (input: merged dataset), train_loss (input: loss
    /// file) or forecast_overlay (input: forecast file).
    #[arg(long)]
    kind: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

enum ParseFailure {
    Usage(clap::Error),
    Config(Error),
}

fn parse_from(argv: &[OsString]) -> std::result::Result<Cli, ParseFailure> {
    let parse = |argv: &[OsString]| {
        Cli::command()
            .try_get_matches_from(argv)
            .and_then(|m| Cli::from_arg_matches(&m))
            .map_err(ParseFailure::Usage)
    };
    // A lenient first pass finds the run config even when it is the source
    // of required flags.
    let probe = Cli::command().ignore_errors(true).try_get_matches_from(argv);
    let found = probe.ok().and_then(|m| {
        let path = m.get_one::<PathBuf>("run_config")?.clone();
        Some((path, m.subcommand_name()?.to_owned()))
    });
    let Some((path, name)) = found else {
        return parse(argv);
    };
    let Some(at) = subcommand_index(argv, &name) else {
        return parse(argv);
    };
    let injected = config_flags(&path, &name).map_err(ParseFailure::Config)?;
    let mut merged = argv[..=at].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&argv[at + 1..]);
    parse(&merged)
}

fn subcommand_index(argv: &[OsString], name: &str) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let arg = argv[i].to_string_lossy();
        if arg == "--run-config" {
            i += 2;
            continue;
        }
        if arg == name {
            return Some(i);
        }
        i += 1;
    }
    None
}

/// Flags for subcommand `name` from the `[name]` table of a run config.
fn config_flags(path: &Path, name: &str) -> Result<Vec<OsString>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: toml::Table = text
        .parse()
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let Some(section) = doc.get(name).or_else(|| doc.get(&name.replace('-', "_"))) else {
        return Ok(Vec::new());
    };
    let table = section
        .as_table()
        .ok_or_else(|| Error::Config(format!("{}: [{name}] must be a table", path.display())))?;
    let mut flags = Vec::new();
    for (key, value) in table {
        let flag = format!("--{}", key.replace('_', "-"));
        let text = match value {
            toml::Value::String(s) => s.clone(),
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) => f.to_string(),
            other => {
                return Err(Error::Config(format!(
                    "{}: [{name}] {key}: expected a string or number, got {}",
                    path.display(),
                    other.type_str()
                )))
            }
        };
        flags.push(flag.into());
        flags.push(text.into());
    }
    Ok(flags)
}

/// Parse `argv` (including the program name), run the subcommand and
/// return the process exit code: 0 on success, 2 on usage errors, 1 on any
/// other failure.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match parse_from(&argv) {
        Ok(cli) => cli,
        Err(ParseFailure::Usage(e)) => {
            let _ = e.print();
            return e.exit_code();
        }
        Err(ParseFailure::Config(e)) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Ingest(a) => ingest(a),
        Command::Sentiment(a) => sentiment(a),
        Command::Merge(a) => merge_cmd(a),
        Command::TrainLstm(a) => train_lstm(a),
        Command::TrainArima(a) => train_arima(a),
        Command::Evaluate(a) => evaluate_cmd(a),
        Command::Plot(a) => plot(a),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| Error::io(path, e))
}

/// Attach the file name to content errors from a reader.
fn in_file<T, E: Into<Error>>(path: &Path, r: std::result::Result<T, E>) -> Result<T> {
    r.map_err(|e| Error::Config(format!("{}: {}", path.display(), e.into())))
}

fn load_series(data: &DataArgs) -> Result<MergedSeries> {
    let path = data
        .data
        .clone()
        .unwrap_or_else(|| fixtures_dir().join("sine.csv"));
    let series = in_file(&path, read_merged(open(&path)?))?;
    if series.has_missing() {
        Ok(fill_missing(&series)?)
    } else {
        Ok(series)
    }
}

fn ingest(args: IngestArgs) -> Result<()> {
    let sources = in_file(&args.config, load_sources(&args.config))?;
    create_dir(&args.out_dir)?;
    let stop = StopSignal::new();
    let mut jobs = Vec::new();
    for source in sources {
        let path = args.out_dir.join(format!("{}.csv", source.name));
        let log = RecordLog::open(&path, source.schema)?;
        jobs.push((Fetcher::new(source)?, log));
    }
    thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter_mut()
            .map(|(fetcher, log)| {
                let stop = &stop;
                scope.spawn(move || poll(fetcher, log, stop, args.attempts))
            })
            .collect();
        for h in handles {
            let summary = h.join().expect("poller thread panicked")?;
            println!(
                "attempts={} appended={} failed={} rejected={}",
                summary.attempts, summary.appended, summary.failed, summary.rejected
            );
        }
        Ok(())
    })
}

fn fetch_text(url: &str) -> Result<String> {
    ureq::get(url)
        .call()
        .map_err(|e| Error::Config(format!("{url}: {e}")))?
        .into_string()
        .map_err(|e| Error::Config(format!("{url}: {e}")))
}

fn sentiment(args: SentimentArgs) -> Result<()> {
    let lexicon = match &args.lexicon {
        Some(path) => Lexicon::load(path)?,
        None => Lexicon::bundled(),
    };
    let posts = if args.input.starts_with("http://") || args.input.starts_with("https://") {
        let body = fetch_text(&args.input)?;
        in_file(Path::new(&args.input), read_posts(body.as_bytes()))?
    } else {
        let path = Path::new(&args.input);
        in_file(path, read_posts(open(path)?))?
    };
    let mut records: Vec<_> = posts.iter().map(|p| process_post(p, &lexicon)).collect();
    records.sort_by_key(|r| r.timestamp);
    write_sentiment_log(create(&args.out)?, &records)?;
    println!("scored {} posts -> {}", records.len(), args.out.display());
    Ok(())
}

fn merge_cmd(args: MergeArgs) -> Result<()> {
    let records = read_log(&args.prices, args.schema)?;
    let prices: Vec<(i64, f64)> = records.iter().map(|r| (r.timestamp(), r.price())).collect();
    let sentiments = match &args.sentiment {
        Some(path) => in_file(path, read_sentiment_log(open(path)?))?,
        None => Vec::new(),
    };
    let series = fill_missing(&merge(&prices, &sentiments, args.bucket_secs)?)?;
    write_merged(create(&args.out)?, &series).map_err(|e| Error::io(&args.out, e))?;
    println!("merged {} rows -> {}", series.len(), args.out.display());
    Ok(())
}

fn write_report_files(dir: &Path, stem: &str, report: &ForecastReport) -> Result<()> {
    write_forecasts(create(&dir.join(format!("forecast_{stem}.csv")))?, &report.predictions)?;
    Ok(())
}

fn print_report(report: &ForecastReport) {
    println!(
        "{}: rmse={} mse={} build_ms={:.3} train_ms={:.3}",
        report.model_name, report.rmse, report.mse, report.build_time_ms, report.train_time_ms
    );
}

fn train_lstm(args: TrainLstmArgs) -> Result<()> {
    let series = load_series(&args.data)?;
    let scaled = ScaledSeries::fit(&series)?;
    let mode = FeatureMode::from(args.features);
    let run = run_lstm(&series, &scaled, mode, &args.lstm.config(), args.data.train_fraction)?;
    create_dir(&args.out_dir)?;
    let stem = run.report.model_name.replace('-', "_");
    let model_path = args.out_dir.join(format!("{stem}.params"));
    save_model(&model_path, &run.model).map_err(|e| Error::io(&model_path, e))?;
    write_report_files(&args.out_dir, &stem, &run.report)?;
    emit_plot_data(
        create(&args.out_dir.join(format!("train_loss_{stem}.csv")))?,
        PlotKind::TrainLoss,
        PlotInput::Losses(&run.history.losses),
    )?;
    print_report(&run.report);
    Ok(())
}

fn train_arima(args: TrainArimaArgs) -> Result<()> {
    let series = load_series(&args.data)?;
    let start = test_start(series.len(), 0, args.data.train_fraction)?;
    let report = run_arima(&series, start, &args.arima.config())?;
    write_forecasts(create(&args.out)?, &report.predictions)?;
    print_report(&report);
    Ok(())
}

/// Files written by `evaluate`, relative to its output directory.
pub const EVALUATE_OUTPUTS: [&str; 10] = [
    "normalized_series.csv",
    "train_loss_lstm_single.csv",
    "train_loss_lstm_multi.csv",
    "forecast_lstm_single.csv",
    "forecast_lstm_multi.csv",
    "forecast_arima.csv",
    "forecast_naive.csv",
    "metrics.csv",
    "comparison.csv",
    "comparison.txt",
];

fn evaluate_cmd(args: EvaluateArgs) -> Result<()> {
    let series = load_series(&args.data)?;
    let options = EvaluateOptions {
        lstm: args.lstm.config(),
        arima: args.arima.config(),
        train_fraction: args.data.train_fraction,
    };
    let ev = evaluate(&series, &options)?;
    let dir = &args.out_dir;
    create_dir(dir)?;

    emit_plot_data(
        create(&dir.join("normalized_series.csv"))?,
        PlotKind::NormalizedSeries,
        PlotInput::Normalized(&ev.scaled),
    )?;
    for run in [&ev.single, &ev.multi] {
        let stem = run.report.model_name.replace('-', "_");
        emit_plot_data(
            create(&dir.join(format!("train_loss_{stem}.csv")))?,
            PlotKind::TrainLoss,
            PlotInput::Losses(&run.history.losses),
        )?;
        write_report_files(dir, &stem, &run.report)?;
    }
    write_report_files(dir, "arima", &ev.arima)?;
    write_report_files(dir, "naive", &ev.naive)?;

    // Timing-free metrics are reproducible byte for byte.
    let metrics_path = dir.join("metrics.csv");
    let mut metrics = create(&metrics_path)?;
    let io = |e| Error::io(&metrics_path, e);
    writeln!(metrics, "model,rmse,mse,test_points").map_err(io)?;
    for r in &ev.table.rows {
        let n = ev
            .reports()
            .iter()
            .find(|rep| rep.model_name == r.model)
            .map_or(0, |rep| rep.predictions.len());
        writeln!(metrics, "{},{},{},{}", r.model, r.rmse, r.mse, n).map_err(io)?;
    }
    metrics.flush().map_err(io)?;

    ev.table.write_csv(create(&dir.join("comparison.csv"))?)?;
    let text_path = dir.join("comparison.txt");
    fs::write(&text_path, ev.table.to_string()).map_err(|e| Error::io(&text_path, e))?;

    print!("{}", ev.table);
    println!("wrote {} files to {}", EVALUATE_OUTPUTS.len(), dir.display());
    Ok(())
}

fn plot(args: PlotArgs) -> Result<()> {
    let kind: PlotKind = args.kind.parse()?;
    let path = &args.input;
    match kind {
        PlotKind::NormalizedSeries => {
            let series = in_file(path, read_merged(open(path)?))?;
            let scaled = ScaledSeries::fit(&fill_missing(&series)?)?;
            emit_plot_data(create(&args.out)?, kind, PlotInput::Normalized(&scaled))?;
        }
        PlotKind::TrainLoss => {
            let data = in_file(path, read_plot_data(open(path)?))?;
            if data.header != ["epoch", "loss"] {
                return Err(Error::Config(format!(
                    "{}: expected header epoch,loss",
                    path.display()
                )));
            }
            let losses: Vec<f64> = data.rows.iter().map(|r| r[1]).collect();
            emit_plot_data(create(&args.out)?, kind, PlotInput::Losses(&losses))?;
        }
        PlotKind::ForecastOverlay => {
            let points = in_file(path, read_forecasts(open(path)?))?;
            emit_plot_data(create(&args.out)?, kind, PlotInput::Forecasts(&points))?;
        }
    }
    println!("{kind} -> {}", args.out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        let argv: Vec<OsString> = std::iter::once("btc-forecast").chain(args.iter().copied()).map(Into::into).collect();
        match parse_from(&argv) {
            Ok(cli) => cli,
            Err(ParseFailure::Usage(e)) => panic!("{e}"),
            Err(ParseFailure::Config(e)) => panic!("{e}"),
        }
    }

    #[test]
    fn run_config_supplies_flags_and_command_line_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(
            &path,
            "[train-arima]\norder = \"2,1,0\"\ntrain_fraction = 0.8\nrefit = \"once\"\n\n[evaluate]\nhidden = 3\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        match parse(&["--run-config", p, "train-arima", "--out", "x", "--train-fraction", "0.6"]).command {
            Command::TrainArima(a) => {
                assert_eq!(a.arima.order, ArimaOrder::new(2, 1, 0).unwrap());
                assert_eq!(a.arima.refit, RefitArg::Once);
                assert_eq!(a.data.train_fraction, 0.6);
            }
            other => panic!("{other:?}"),
        }
        match parse(&["--run-config", p, "evaluate", "--epochs", "4"]).command {
            Command::Evaluate(a) => assert_eq!((a.lstm.hidden, a.lstm.epochs), (3, 4)),
            other => panic!("{other:?}"),
        }
        fs::write(&path, "[train-arima]\nout = \"from-config.csv\"\n").unwrap();
        match parse(&["--run-config", p, "train-arima"]).command {
            Command::TrainArima(a) => assert_eq!(a.out, PathBuf::from("from-config.csv")),
            other => panic!("{other:?}"),
        }
        // No [plot] table: plain defaults.
        assert!(matches!(
            parse(&["--run-config", p, "plot", "--kind", "k", "--input", "i", "--out", "o"]).command,
            Command::Plot(_)
        ));
    }

    #[test]
    fn bad_run_config_is_a_runtime_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "[evaluate]\nhidden = [1, 2]\n").unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(run(["btc-forecast", "--run-config", p, "evaluate"]), 1);
        assert_eq!(run(["btc-forecast", "--run-config", "/no/such.toml", "evaluate"]), 1);
        fs::write(&path, "[evaluate]\nbogus = 1\n").unwrap();
        assert_eq!(run(["btc-forecast", "--run-config", p, "evaluate"]), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn order_flag_default_is_module_default() {
        let cli = Cli::try_parse_from(["btc-forecast", "train-arima", "--out", "x"]).unwrap();
        match cli.command {
            Command::TrainArima(a) => assert_eq!(a.arima.order, ArimaOrder::default()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["btc-forecast", "frobnicate"]), 2);
        assert_eq!(run(["btc-forecast", "train-arima", "--bogus"]), 2);
        assert_eq!(run(["btc-forecast", "train-arima", "--order", "0,0,0", "--out", "x"]), 2);
    }

    #[test]
    fn help_lists_module_defaults() {
        let help = Cli::command()
            .find_subcommand_mut("evaluate")
            .unwrap()
            .render_long_help()
            .to_string();
        for needle in [
            "[default: 32]",
            "[default: 1]",
            "[default: 200]",
            "[default: 0.01]",
            "[default: 0]",
            "[default: 10,1,0]",
            "[default: always]",
            "[default: 0.7]",
        ] {
            assert!(help.contains(needle), "missing {needle} in\n{help}");
        }
    }
}
