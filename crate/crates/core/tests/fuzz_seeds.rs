//! The checked-in fuzz corpus seeds must be accepted by the parsers they seed.

use bundlekit::config::Config;
use bundlekit::io;
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn edgelist_seeds_parse() {
    for (name, data) in seeds("edgelist") {
        let (g, _) = io::parse_edgelist(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(io::parse_edgelist(&io::format_edgelist(&g)).unwrap().0, g);
    }
}

#[test]
fn matrix_market_seeds_parse() {
    for (name, data) in seeds("matrix_market") {
        io::parse_matrix_market(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn layout_seeds_parse() {
    for (name, data) in seeds("layout") {
        let (n, rest) = data.split_first().unwrap();
        let (points, _) = io::parse_layout(text(rest), *n as usize).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(points.len(), *n as usize);
    }
}

#[test]
fn drawing_seeds_parse() {
    for (name, data) in seeds("drawing_json") {
        let d = io::parse_drawing(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(io::parse_drawing(&io::drawing_to_json(&d, None).unwrap()).unwrap(), d);
    }
}

#[test]
fn config_seeds_parse() {
    for (name, data) in seeds("config") {
        let c = Config::parse(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(Config::parse(&c.to_key_values()).unwrap(), c);
    }
}
