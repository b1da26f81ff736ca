use crate::{BundleArgs, FbqArgs, GraphInput, LayoutArgs, MetricsArgs, RenderArgs, SparsifyArgs, Stage, StageResult};
use anyhow::anyhow;
use bundlekit::bundling::{feb_pipeline, timed_bundle};
use bundlekit::config::Config;
use bundlekit::io::{self, write_atomic};
use bundlekit::layout::{compute_layout, LayoutAlgorithm};
use bundlekit::metrics::{bundled_geometric_graph, evaluate, fbq_scores, rasterize_in_frame, Frame, MetricsReport};
use bundlekit::render::to_svg;
use bundlekit::sparsify::{effective_resistances, spectral_sparsify};
use bundlekit::{Drawing, Graph};
use serde_json::{json, Value};
use std::path::Path;
use std::process::ExitCode;

/// Reproducibility header stored with every output.
pub fn meta(config: &Config, command: &str, extra: Value) -> Value {
    let mut m = json!({
        "tool": "bundlekit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seeds": {
            "sparsify": config.sparsify.seed,
            "layout": config.layout.seed,
            "resistance": config.bundler.resistance.seed,
        },
        "config": config,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

/// `# `-prefixed header lines for text outputs.
pub fn comment_header(meta: &Value) -> String {
    format!("# bundlekit {}\n", serde_json::to_string(meta).expect("json"))
}

pub fn svg_with_meta(drawing: &Drawing, config: &Config, meta: &Value) -> anyhow::Result<String> {
    let svg = to_svg(drawing, &config.render)?;
    // `--` may not appear inside an XML comment.
    let note = serde_json::to_string(meta)?.replace("--", "- -");
    let (decl, rest) = svg.split_once('\n').unwrap_or(("", &svg));
    Ok(format!("{decl}\n<!-- bundlekit {note} -->\n{rest}"))
}

pub fn load_graph(input: &GraphInput) -> StageResult<Graph> {
    let (graph, report) = io::load_graph(&input.graph, input.format())
        .map_err(|e| anyhow!("{}: {e}", input.graph.display()))
        .stage("load")?;
    if report.dropped() > 0 {
        log::warn!(
            "{}: dropped {} self-loops and {} duplicate edges",
            input.graph.display(),
            report.self_loops,
            report.duplicates
        );
    }
    Ok(graph)
}

pub fn load_drawing(path: &Path) -> StageResult<(Drawing, Option<Value>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
        .stage("load")?;
    let drawing = io::parse_drawing(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))
        .stage("load")?;
    let meta = io::drawing_meta(&text).ok().flatten();
    Ok((drawing, meta))
}

/// The graph a drawing shows, unweighted.
pub fn drawing_graph(drawing: &Drawing) -> StageResult<Graph> {
    Graph::unweighted(drawing.positions.len(), &drawing.edges).stage("load")
}

/// Straight drawing of `graph` from a coordinates file or the force layout.
pub fn straight_drawing(config: &Config, graph: &Graph, layout: Option<&Path>) -> StageResult<Drawing> {
    match layout {
        Some(path) => io::load_layout(path, graph)
            .map_err(|e| anyhow!("{}: {e}", path.display()))
            .stage("layout"),
        None if config.layout.algorithm == LayoutAlgorithm::Import => {
            Err(anyhow!("layout.algorithm is import but no coordinates were given")).stage("layout")
        }
        None => compute_layout(graph, &config.layout, None).stage("layout"),
    }
}

pub fn sparsify(config: &Config, args: SparsifyArgs) -> StageResult<ExitCode> {
    let graph = load_graph(&args.input)?;
    let mut params = config.sparsify.clone();
    if let Some(f) = args.factor {
        params.factor = f;
    }
    let er = effective_resistances(&graph, &config.bundler.resistance).stage("resistance")?;
    let sparse = spectral_sparsify(&graph, &er, &params).stage("sparsify")?;
    let header = meta(
        config,
        "sparsify",
        json!({"input": args.input.graph, "budget": params.budget(graph.vertex_count())}),
    );
    let mut text = comment_header(&header);
    text.push_str(&io::format_edgelist(&sparse.graph));
    write_atomic(&args.out, text.as_bytes()).stage("write")?;
    if let Some(path) = &args.resistances {
        let mut csv = comment_header(&header);
        csv.push_str(&er.to_csv(&graph));
        write_atomic(path, csv.as_bytes()).stage("write")?;
    }
    println!(
        "kept {} of {} edges (budget {})",
        sparse.graph.edge_count(),
        graph.edge_count(),
        params.budget(graph.vertex_count())
    );
    Ok(ExitCode::SUCCESS)
}

pub fn layout(config: &Config, args: LayoutArgs) -> StageResult<ExitCode> {
    let graph = load_graph(&args.input)?;
    let drawing = straight_drawing(config, &graph, args.layout.as_deref())?;
    let m = meta(config, "layout", json!({"input": args.input.graph}));
    io::save_drawing(&drawing, &args.out, Some(m.clone())).stage("write")?;
    if let Some(svg) = &args.svg {
        let text = svg_with_meta(&drawing, config, &m).stage("render")?;
        write_atomic(svg, text.as_bytes()).stage("write")?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn bundle(config: &Config, args: BundleArgs) -> StageResult<ExitCode> {
    let graph = load_graph(&args.input)?;
    if args.geographic && args.layout.is_none() && args.drawing.is_none() {
        return Err(anyhow!("geographic mode needs --layout with fixed coordinates")).stage("layout");
    }
    let straight = match &args.drawing {
        Some(path) => {
            let (d, _) = load_drawing(path)?;
            if !d.matches(&graph) {
                return Err(anyhow!("{} does not draw {}", path.display(), args.input.graph.display()))
                    .stage("layout");
            }
            d
        }
        None => straight_drawing(config, &graph, args.layout.as_deref())?,
    };
    let (bundled, seconds, kept) = if args.feb {
        let out = feb_pipeline(
            &graph,
            Some(&straight),
            None,
            args.alg,
            &config.sparsify,
            &config.layout,
            &config.bundler,
        )
        .stage("bundle")?;
        (out.bundled, out.bundle_seconds, Some(out.kept.len()))
    } else {
        let (d, t) = timed_bundle(args.alg, &graph, &straight, &config.bundler).stage("bundle")?;
        (d, t, None)
    };
    let m = meta(
        config,
        "bundle",
        json!({
            "input": args.input.graph,
            "bundler": args.alg.name(),
            "feb": args.feb,
            "kept_edges": kept,
        }),
    );
    io::save_drawing(&bundled, &args.out, Some(m.clone())).stage("write")?;
    if let Some(svg) = &args.svg {
        let text = svg_with_meta(&bundled, config, &m).stage("render")?;
        write_atomic(svg, text.as_bytes()).stage("write")?;
    }
    let label = if args.feb { format!("f{}", args.alg) } else { args.alg.to_string() };
    println!("{label} bundling time: {seconds:.6} s");
    Ok(ExitCode::SUCCESS)
}

pub fn metrics(config: &Config, args: MetricsArgs) -> StageResult<ExitCode> {
    let mut settings = config.metrics.clone();
    if let Some(g) = args.gamma {
        settings.gammas = g;
    }
    settings.validate().stage("config")?;
    let (original, _) = load_drawing(&args.original)?;
    let (bundled, _) = load_drawing(&args.bundled)?;
    if original.positions.len() != bundled.positions.len() {
        return Err(anyhow!(
            "drawings have {} and {} vertices",
            original.positions.len(),
            bundled.positions.len()
        ))
        .stage("metrics");
    }
    let graph = drawing_graph(&bundled)?;
    let seconds = args.time.unwrap_or(0.0);
    let report = evaluate(&graph, &original, &bundled, &settings, seconds).stage("metrics")?;
    if let Some(png) = &args.png {
        let frame = Frame::for_drawing(&original, settings.width, settings.line_width).stage("metrics")?;
        rasterize_in_frame(&bundled, &frame, settings.line_width, settings.threshold)
            .save_png(png)
            .stage("write")?;
    }
    let m = meta(
        config,
        "metrics",
        json!({"original": args.original, "bundled": args.bundled, "settings": settings}),
    );
    write_report(&report, m, args.out.as_deref(), args.csv.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn write_report(report: &MetricsReport, meta: Value, out: Option<&Path>, csv: Option<&Path>) -> StageResult<()> {
    let doc = json!({"meta": meta, "report": report});
    let text = serde_json::to_string_pretty(&doc).stage("write")?;
    match out {
        Some(path) => write_atomic(path, text.as_bytes()).stage("write")?,
        None => println!("{text}"),
    }
    if let Some(path) = csv {
        let body = format!(
            "{}{}\n{}\n",
            comment_header(&meta),
            MetricsReport::CSV_HEADER,
            report.csv_row()
        );
        write_atomic(path, body.as_bytes()).stage("write")?;
    }
    Ok(())
}

pub fn fbq(config: &Config, args: FbqArgs) -> StageResult<ExitCode> {
    let (full, _) = load_drawing(&args.original)?;
    let (sparse, _) = load_drawing(&args.sparsified)?;
    let gb = bundled_geometric_graph(&drawing_graph(&full)?, &full, &config.metrics.bundles).stage("fbq")?;
    let gbp = bundled_geometric_graph(&drawing_graph(&sparse)?, &sparse, &config.metrics.bundles).stage("fbq")?;
    let scores = fbq_scores(&gb, &gbp).stage("fbq")?;
    let m = meta(config, "fbq", json!({"original": args.original, "sparsified": args.sparsified}));
    let doc = json!({"meta": m, "fbq_js": scores.js, "fbq_sq_dg": scores.sq_dg, "fbq_sq_cc": scores.sq_cc});
    let text = serde_json::to_string_pretty(&doc).stage("write")?;
    match &args.out {
        Some(path) => write_atomic(path, text.as_bytes()).stage("write")?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn render(config: &Config, args: RenderArgs) -> StageResult<ExitCode> {
    let (drawing, _) = load_drawing(&args.drawing)?;
    let mut cfg = config.clone();
    cfg.render.highlight.extend(args.highlight.iter().copied());
    if let Some(&bad) = cfg.render.highlight.iter().find(|&&e| e >= drawing.edge_count()) {
        return Err(anyhow!("highlighted edge {bad} does not exist")).stage("render");
    }
    let m = meta(&cfg, "render", json!({"drawing": args.drawing}));
    let svg = svg_with_meta(&drawing, &cfg, &m).stage("render")?;
    write_atomic(&args.out, svg.as_bytes()).stage("write")?;
    if let Some(png) = &args.png {
        let frame = Frame::for_drawing(&drawing, cfg.metrics.width, cfg.metrics.line_width).stage("render")?;
        rasterize_in_frame(&drawing, &frame, cfg.metrics.line_width, cfg.metrics.threshold)
            .save_png(png)
            .stage("write")?;
    }
    Ok(ExitCode::SUCCESS)
}
