use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bundlekit"));
    c.env_remove("BUNDLEKIT_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn bundlekit")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// 3x3 grid with vertices 10 units apart.
fn write_inputs(dir: &Path) -> (PathBuf, PathBuf) {
    let graph = dir.join("grid.edges");
    let layout = dir.join("grid.layout");
    let mut edges = String::from("# 3x3 grid\n");
    let mut coords = String::new();
    for r in 0..3 {
        for c in 0..3 {
            let v = r * 3 + c;
            coords.push_str(&format!("{v} {} {}\n", c * 10, r * 10));
            if c < 2 {
                edges.push_str(&format!("{v} {}\n", v + 1));
            }
            if r < 2 {
                edges.push_str(&format!("{v} {}\n", v + 3));
            }
        }
    }
    std::fs::write(&graph, edges).unwrap();
    std::fs::write(&layout, coords).unwrap();
    (graph, layout)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn unknown_bundler_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let (graph, _) = write_inputs(dir.path());
    let out = dir.path().join("x.json");
    let o = run(&["bundle", "--alg", "nope", "--graph", s(&graph), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(!out.exists());
}

#[test]
fn geographic_without_layout_names_the_stage() {
    let dir = TempDir::new().unwrap();
    let (graph, _) = write_inputs(dir.path());
    let out = dir.path().join("x.json");
    let o = run(&["bundle", "--alg", "epb", "--graph", s(&graph), "--geographic", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("layout stage failed"), "{}", stderr(&o));
}

#[test]
fn missing_graph_fails_in_load() {
    let o = run(&["layout", "--graph", "/nonexistent/g.edges", "--out", "/tmp/never.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("load stage failed"));
}

#[test]
fn unbundled_metrics_are_neutral() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let drawing = dir.path().join("grid.json");
    let o = run(&["layout", "--graph", s(&graph), "--layout", s(&layout), "--out", s(&drawing)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report = dir.path().join("m.json");
    let csv = dir.path().join("m.csv");
    let o = run(&[
        "metrics",
        "--original",
        s(&drawing),
        "--bundled",
        s(&drawing),
        "--gamma",
        "1,2",
        "--out",
        s(&report),
        "--csv",
        s(&csv),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = &read_json(&report)["report"];
    assert_eq!(r["ink"], 1.0);
    assert_eq!(r["distortion"], 0.0);
    assert_eq!(r["amb1"], 0.0);
    assert_eq!(r["amb2"], 0.0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# bundlekit {"));
    assert!(text.lines().nth(1).unwrap().starts_with("ink,distortion_raw"));
}

#[test]
fn unsupported_gamma_is_rejected() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let drawing = dir.path().join("grid.json");
    run(&["layout", "--graph", s(&graph), "--layout", s(&layout), "--out", s(&drawing)]);
    let o = run(&["metrics", "--original", s(&drawing), "--bundled", s(&drawing), "--gamma", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("config stage failed"));
}

#[test]
fn outputs_carry_the_resolved_config() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let out = dir.path().join("b.json");
    let svg = dir.path().join("b.svg");
    let o = run(&[
        "--seed",
        "42",
        "--set",
        "bundler.fdeb.cycles=2",
        "bundle",
        "--alg",
        "fdeb",
        "--graph",
        s(&graph),
        "--layout",
        s(&layout),
        "--out",
        s(&out),
        "--svg",
        s(&svg),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("fdeb bundling time:"));
    let meta = &read_json(&out)["meta"];
    assert_eq!(meta["config"]["bundler"]["fdeb"]["cycles"], 2);
    assert_eq!(meta["seeds"]["layout"], 42);
    assert_eq!(meta["bundler"], "fdeb");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<!-- bundlekit {"));
}

#[test]
fn bundle_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let mut outputs = vec![];
    for (i, threads) in ["1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("b{i}.json"));
        let o = bin()
            .env("BUNDLEKIT_THREADS", threads)
            .args(["bundle", "--alg", "seb2", "--graph", s(&graph), "--layout", s(&layout), "--out", s(&out)])
            .output()
            .unwrap();
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn config_dump_round_trips() {
    let dir = TempDir::new().unwrap();
    let o = run(&["--set", "sparsify.factor=2.5", "--dump-config", "--dump-format", "kv"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let path = dir.path().join("run.conf");
    std::fs::write(&path, &o.stdout).unwrap();
    let again = run(&["--config", s(&path), "--dump-config"]);
    assert!(again.status.success(), "{}", stderr(&again));
    let v: Value = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(v["sparsify"]["factor"], 2.5);
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "bundler.fdeb.cycels = 3\n").unwrap();
    let o = run(&["--config", s(&bad), "--dump-config"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("config stage failed"));
}

#[test]
fn compare_with_identity_sparsification() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let csv = dir.path().join("cmp.csv");
    let json = dir.path().join("cmp.json");
    let dataset = format!("grid={},{}", s(&graph), s(&layout));
    let o = run(&[
        "--set",
        "sparsify.factor=1e6",
        "compare",
        "--dataset",
        &dataset,
        "--alg",
        "fdeb,epb",
        "--repeats",
        "1",
        "--out",
        s(&csv),
        "--json",
        s(&json),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# bundlekit {"));
    assert_eq!(
        lines.next().unwrap(),
        "dataset,bundler,t_orig_s,t_feb_s,improvement,ink,dist,amb1,amb2,fbq_js,fbq_sq_dg,fbq_sq_cc,status"
    );
    let rows = read_json(&json)["rows"].as_array().unwrap().clone();
    let names: Vec<_> = rows.iter().map(|r| r["bundler"].as_str().unwrap().to_string()).collect();
    assert_eq!(names, ["fdeb", "ffdeb", "epb", "fepb"]);
    for r in &rows {
        assert_eq!(r["status"], "ok");
        if r["bundler"] == "ffdeb" || r["bundler"] == "fepb" {
            assert_eq!(r["fbq_js"], 1.0);
            assert_eq!(r["fbq_sq_dg"], 0.0);
        }
    }
}

#[test]
fn compare_isolates_a_failing_dataset() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let csv = dir.path().join("cmp.csv");
    let good = format!("grid={},{}", s(&graph), s(&layout));
    let o = run(&[
        "compare",
        "--dataset",
        "ghost=/nonexistent.edges",
        "--dataset",
        &good,
        "--alg",
        "epb",
        "--repeats",
        "1",
        "--out",
        s(&csv),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().any(|l| l.starts_with("ghost,epb,") && l.contains("failed: load stage failed")));
    assert!(text.lines().any(|l| l.starts_with("grid,fepb,") && l.ends_with(",ok")));
}

#[test]
fn sparsify_and_render() {
    let dir = TempDir::new().unwrap();
    let (graph, layout) = write_inputs(dir.path());
    let sparse = dir.path().join("s.edges");
    let er = dir.path().join("er.csv");
    let o = run(&[
        "sparsify",
        "--graph",
        s(&graph),
        "--factor",
        "0.5",
        "--out",
        s(&sparse),
        "--resistances",
        s(&er),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&sparse).unwrap();
    assert!(text.starts_with("# bundlekit {"));
    assert!(std::fs::read_to_string(&er).unwrap().contains("u,v,raw,normalized"));

    let drawing = dir.path().join("d.json");
    run(&["layout", "--graph", s(&graph), "--layout", s(&layout), "--out", s(&drawing)]);
    let svg = dir.path().join("d.svg");
    let png = dir.path().join("d.png");
    let o = run(&["render", "--drawing", s(&drawing), "--out", s(&svg), "--png", s(&png), "--highlight", "0,1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<path").count(), 12);
    assert_eq!(&std::fs::read(&png).unwrap()[1..4], b"PNG");
    let o = run(&["render", "--drawing", s(&drawing), "--out", s(&svg), "--highlight", "99"]);
    assert_eq!(o.status.code(), Some(1));
}
