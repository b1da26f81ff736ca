//! Direct bundling `X` against its sparsified variant `FX` over datasets.

use crate::commands::{comment_header, load_graph, meta, straight_drawing, svg_with_meta};
use crate::{CompareArgs, GraphInput, Stage, StageError, StageResult};
use anyhow::anyhow;
use bundlekit::bundling::{feb_pipeline, median, runtime_improvement, timed_bundle, BundlerKind};
use bundlekit::config::Config;
use bundlekit::io::{save_drawing, write_atomic};
use bundlekit::metrics::{bundled_geometric_graph, evaluate, fbq_scores, FbqScores, MetricsReport};
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub const COLUMNS: [&str; 13] = [
    "dataset",
    "bundler",
    "t_orig_s",
    "t_feb_s",
    "improvement",
    "ink",
    "dist",
    "amb1",
    "amb2",
    "fbq_js",
    "fbq_sq_dg",
    "fbq_sq_cc",
    "status",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub name: String,
    pub graph: PathBuf,
    #[serde(default)]
    pub layout: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Experiment {
    #[serde(default)]
    pub datasets: Vec<DatasetEntry>,
    #[serde(default)]
    pub bundlers: Vec<BundlerKind>,
    #[serde(default)]
    pub repeats: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Row {
    pub dataset: String,
    pub bundler: String,
    pub t_orig_s: Option<f64>,
    pub t_feb_s: Option<f64>,
    pub improvement: Option<f64>,
    pub ink: Option<f64>,
    pub dist: Option<f64>,
    pub amb1: Option<f64>,
    pub amb2: Option<f64>,
    pub fbq_js: Option<f64>,
    pub fbq_sq_dg: Option<f64>,
    pub fbq_sq_cc: Option<f64>,
    pub status: String,
}

impl Row {
    fn fields(&self) -> Vec<String> {
        let f = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        vec![
            self.dataset.clone(),
            self.bundler.clone(),
            f(self.t_orig_s),
            f(self.t_feb_s),
            f(self.improvement),
            f(self.ink),
            f(self.dist),
            f(self.amb1),
            f(self.amb2),
            f(self.fbq_js),
            f(self.fbq_sq_dg),
            f(self.fbq_sq_cc),
            self.status.clone(),
        ]
    }
}

fn parse_dataset_flag(raw: &str) -> StageResult<DatasetEntry> {
    let (name, rest) = raw
        .split_once('=')
        .ok_or_else(|| anyhow!("--dataset expects NAME=GRAPH[,LAYOUT], got '{raw}'"))
        .stage("config")?;
    let mut parts = rest.splitn(2, ',');
    Ok(DatasetEntry {
        name: name.to_string(),
        graph: PathBuf::from(parts.next().unwrap_or_default()),
        layout: parts.next().map(PathBuf::from),
    })
}

fn load_experiment(args: &CompareArgs) -> StageResult<Experiment> {
    let mut exp = match &args.experiment {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow!("{}: {e}", path.display()))
                .stage("config")?;
            let mut exp: Experiment = serde_json::from_str(&text)
                .map_err(|e| anyhow!("{}: {e}", path.display()))
                .stage("config")?;
            let base = path.parent().unwrap_or(Path::new("."));
            for d in &mut exp.datasets {
                d.graph = base.join(&d.graph);
                d.layout = d.layout.as_ref().map(|l| base.join(l));
            }
            exp
        }
        None => Experiment::default(),
    };
    for raw in &args.datasets {
        exp.datasets.push(parse_dataset_flag(raw)?);
    }
    exp.bundlers.extend(args.alg.iter().copied());
    if let Some(r) = args.repeats {
        exp.repeats = Some(r);
    }
    if exp.datasets.is_empty() || exp.bundlers.is_empty() {
        return Err(anyhow!("compare needs at least one dataset and one bundler")).stage("config");
    }
    if exp.repeats == Some(0) {
        return Err(anyhow!("repeats must be at least 1")).stage("config");
    }
    Ok(exp)
}

struct Outcome {
    direct: Row,
    feb: Row,
}

fn metrics_row(dataset: &str, bundler: String, t: (f64, f64), report: &MetricsReport, fbq: Option<FbqScores>) -> Row {
    Row {
        dataset: dataset.to_string(),
        bundler,
        t_orig_s: Some(t.0),
        t_feb_s: Some(t.1),
        improvement: Some(runtime_improvement(t.0, t.1)),
        ink: Some(report.ink),
        dist: Some(report.distortion),
        amb1: report.amb1,
        amb2: report.amb2,
        fbq_js: fbq.map(|s| s.js),
        fbq_sq_dg: fbq.map(|s| s.sq_dg),
        fbq_sq_cc: fbq.map(|s| s.sq_cc),
        status: "ok".into(),
    }
}

fn run_one(
    config: &Config,
    entry: &DatasetEntry,
    kind: BundlerKind,
    repeats: usize,
    out_dir: Option<&Path>,
) -> StageResult<Outcome> {
    let graph = load_graph(&GraphInput {
        graph: entry.graph.clone(),
        format: None,
    })?;
    let straight = straight_drawing(config, &graph, entry.layout.as_deref())?;

    let mut direct_times = Vec::with_capacity(repeats);
    let mut direct = None;
    for _ in 0..repeats {
        let (d, t) = timed_bundle(kind, &graph, &straight, &config.bundler).stage("bundle")?;
        direct_times.push(t);
        direct = Some(d);
    }
    let direct = direct.expect("repeats >= 1");

    let feb = feb_pipeline(
        &graph,
        Some(&straight),
        None,
        kind,
        &config.sparsify,
        &config.layout,
        &config.bundler,
    )
    .stage("sparsify")?;
    let mut feb_times = vec![feb.bundle_seconds];
    for _ in 1..repeats {
        let (_, t) = timed_bundle(kind, &feb.sparsified, &feb.straight, &config.bundler).stage("bundle")?;
        feb_times.push(t);
    }
    let times = (median(&direct_times), median(&feb_times));

    let settings = &config.metrics;
    let direct_report = evaluate(&graph, &straight, &direct, settings, times.0).stage("metrics")?;
    let feb_report = evaluate(&feb.sparsified, &feb.straight, &feb.bundled, settings, times.1).stage("metrics")?;
    let gb = bundled_geometric_graph(&graph, &direct, &settings.bundles).stage("fbq")?;
    let gbp = bundled_geometric_graph(&feb.sparsified, &feb.bundled, &settings.bundles).stage("fbq")?;
    let scores = fbq_scores(&gb, &gbp).stage("fbq")?;

    if let Some(dir) = out_dir {
        let m = meta(config, "compare", json!({"dataset": entry.name, "bundler": kind.name()}));
        for (tag, d) in [(kind.name().to_string(), &direct), (format!("f{}", kind.name()), &feb.bundled)] {
            let stem = dir.join(format!("{}_{tag}", entry.name));
            save_drawing(d, &stem.with_extension("json"), Some(m.clone())).stage("write")?;
            let svg = svg_with_meta(d, config, &m).stage("render")?;
            write_atomic(&stem.with_extension("svg"), svg.as_bytes()).stage("write")?;
        }
    }

    Ok(Outcome {
        direct: metrics_row(&entry.name, kind.name().into(), times, &direct_report, None),
        feb: metrics_row(&entry.name, format!("f{}", kind.name()), times, &feb_report, Some(scores)),
    })
}

fn failed_row(dataset: &str, kind: BundlerKind, err: &StageError) -> Row {
    Row {
        dataset: dataset.to_string(),
        bundler: kind.name().into(),
        status: format!("failed: {err}"),
        ..Default::default()
    }
}

pub fn run(config: &Config, args: CompareArgs) -> StageResult<ExitCode> {
    let exp = load_experiment(&args)?;
    let repeats = exp.repeats.unwrap_or(3);
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).stage("write")?;
    }
    // Datasets run one after another so timings do not compete for cores.
    let mut rows = Vec::new();
    let mut failures = 0;
    for entry in &exp.datasets {
        for &kind in &exp.bundlers {
            match run_one(config, entry, kind, repeats, args.out_dir.as_deref()) {
                Ok(o) => {
                    eprintln!(
                        "{} {}: t={:.4}s f{}: t={:.4}s",
                        entry.name,
                        kind,
                        o.direct.t_orig_s.unwrap_or_default(),
                        kind,
                        o.feb.t_feb_s.unwrap_or_default()
                    );
                    rows.push(o.direct);
                    rows.push(o.feb);
                }
                Err(e) => {
                    eprintln!("{} {}: {e}", entry.name, kind);
                    failures += 1;
                    rows.push(failed_row(&entry.name, kind, &e));
                }
            }
        }
    }

    let m = meta(
        config,
        "compare",
        json!({"datasets": exp.datasets, "bundlers": exp.bundlers, "repeats": repeats}),
    );
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(COLUMNS).stage("write")?;
    for row in &rows {
        writer.write_record(row.fields()).stage("write")?;
    }
    let body = writer.into_inner().map_err(|e| anyhow!("{e}")).stage("write")?;
    let mut text = comment_header(&m).into_bytes();
    text.extend(body);
    write_atomic(&args.out, &text).stage("write")?;
    if let Some(path) = &args.json {
        let doc = json!({"meta": m, "rows": rows});
        write_atomic(path, serde_json::to_string_pretty(&doc).stage("write")?.as_bytes()).stage("write")?;
    }
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
