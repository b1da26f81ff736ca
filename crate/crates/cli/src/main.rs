mod commands;
mod compare;

use bundlekit::bundling::BundlerKind;
use bundlekit::config::Config;
use bundlekit::io::GraphFormat;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "bundlekit", version, about = "Edge bundling, spectral sparsification and bundling metrics")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Config file, JSON or `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one config key, e.g. `--set bundler.fdeb.cycles=4`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Seed for every random stage.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the resolved config and exit.
    #[arg(long)]
    dump_config: bool,
    #[arg(long, value_enum, default_value_t = DumpFormat::Json, requires = "dump_config")]
    dump_format: DumpFormat,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DumpFormat {
    Json,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral sparsifier of a graph, written as an edge list.
    Sparsify(SparsifyArgs),
    /// Straight-line drawing from imported coordinates or the force layout.
    Layout(LayoutArgs),
    /// Bundle a drawing.
    Bundle(BundleArgs),
    /// Ink, distortion and ambiguity of a bundled drawing.
    Metrics(MetricsArgs),
    /// Compare a sparsified bundling with the full one.
    Fbq(FbqArgs),
    /// Direct versus sparsified bundling over datasets, as CSV.
    Compare(CompareArgs),
    /// SVG (and optionally PNG) of a drawing.
    Render(RenderArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Edge list (`u v [w]`) or Matrix Market file.
    #[arg(long)]
    graph: PathBuf,
    /// Defaults to Matrix Market for `.mtx`, edge list otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

impl GraphInput {
    fn format(&self) -> GraphFormat {
        match self.format {
            Some(FormatArg::Edgelist) => GraphFormat::Edgelist,
            Some(FormatArg::Mtx) => GraphFormat::MatrixMarket,
            None => GraphFormat::from_path(&self.graph),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Edgelist,
    Mtx,
}

#[derive(Args, Debug)]
pub struct SparsifyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    out: PathBuf,
    /// Also write per-edge effective resistances as CSV.
    #[arg(long)]
    resistances: Option<PathBuf>,
    /// Budget factor `c` in `c·n·ln n`.
    #[arg(long)]
    factor: Option<f64>,
}

#[derive(Args, Debug)]
pub struct LayoutArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Imported coordinates, one `v x y` per line.
    #[arg(long)]
    layout: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    /// fdeb, seb1, seb2, epb or sepb.
    #[arg(long, value_parser = clap::value_parser!(BundlerKind))]
    alg: BundlerKind,
    #[command(flatten)]
    input: GraphInput,
    /// Imported coordinates.
    #[arg(long, conflicts_with = "drawing")]
    layout: Option<PathBuf>,
    /// Existing straight drawing (JSON) of the graph.
    #[arg(long)]
    drawing: Option<PathBuf>,
    /// Coordinates are fixed (e.g. geographic); a layout file is required.
    #[arg(long)]
    geographic: bool,
    /// Sparsify first and bundle the sparsifier.
    #[arg(long)]
    feb: bool,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    /// Unbundled drawing (JSON), the ink reference.
    #[arg(long)]
    original: PathBuf,
    /// Bundled drawing (JSON).
    #[arg(long)]
    bundled: PathBuf,
    /// Ambiguity hop thresholds, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    gamma: Option<Vec<usize>>,
    /// Bundling time to record in the report, in seconds.
    #[arg(long)]
    time: Option<f64>,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Save the bundled raster as PNG.
    #[arg(long)]
    png: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FbqArgs {
    /// Bundled drawing of the full graph.
    #[arg(long)]
    original: PathBuf,
    /// Bundled drawing of the sparsifier.
    #[arg(long)]
    sparsified: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Experiment file: `{"datasets": [{"name", "graph", "layout"?}], "bundlers": [..], "repeats"?}`.
    #[arg(long)]
    experiment: Option<PathBuf>,
    /// `NAME=GRAPH` or `NAME=GRAPH,LAYOUT`; repeatable.
    #[arg(long = "dataset")]
    datasets: Vec<String>,
    /// Bundlers, comma separated: fdeb, seb1, seb2, epb, sepb.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(BundlerKind))]
    alg: Vec<BundlerKind>,
    /// Timed runs per bundler; the median is reported. Default 3.
    #[arg(long)]
    repeats: Option<usize>,
    /// CSV output.
    #[arg(long)]
    out: PathBuf,
    /// Directory for bundled drawings and SVGs.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Also write the rows as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    #[arg(long)]
    drawing: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    png: Option<PathBuf>,
    /// Edge indices to emphasise.
    #[arg(long, value_delimiter = ',')]
    highlight: Vec<usize>,
}

/// A failure attributed to one pipeline stage.
#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub source: anyhow::Error,
}

impl std::fmt::Display for StageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} stage failed: {:#}", self.stage, self.source)
    }
}

pub type StageResult<T> = std::result::Result<T, StageError>;

pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> StageResult<T>;
}

impl<T, E: Into<anyhow::Error>> Stage<T> for std::result::Result<T, E> {
    fn stage(self, stage: &'static str) -> StageResult<T> {
        self.map_err(|e| StageError {
            stage,
            source: e.into(),
        })
    }
}

fn resolve_config(cli: &Cli) -> StageResult<Config> {
    let mut config = match &cli.config {
        Some(path) => Config::load(path).stage("config")?,
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.set_seed(seed);
    }
    for item in &cli.overrides {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("--set expects KEY=VALUE, got '{item}'"))
            .stage("config")?;
        config.set(k.trim(), v.trim()).stage("config")?;
    }
    Ok(config)
}

fn init_threads() {
    let Ok(raw) = std::env::var("BUNDLEKIT_THREADS") else {
        return;
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the worker pool: {e}");
            }
        }
        _ => log::warn!("ignoring BUNDLEKIT_THREADS={raw}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    init_threads();
    let config = match resolve_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if cli.dump_config {
        match cli.dump_format {
            DumpFormat::Json => println!("{}", config.to_json()),
            DumpFormat::Kv => print!("{}", config.to_key_values()),
        }
        if cli.command.is_none() {
            return ExitCode::SUCCESS;
        }
    }
    let Some(command) = cli.command else {
        eprintln!("error: no subcommand given; see --help");
        return ExitCode::from(2);
    };
    let result = match command {
        Command::Sparsify(a) => commands::sparsify(&config, a),
        Command::Layout(a) => commands::layout(&config, a),
        Command::Bundle(a) => commands::bundle(&config, a),
        Command::Metrics(a) => commands::metrics(&config, a),
        Command::Fbq(a) => commands::fbq(&config, a),
        Command::Render(a) => commands::render(&config, a),
        Command::Compare(a) => compare::run(&config, a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
