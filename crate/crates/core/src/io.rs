//! Text formats for graphs, layouts and drawings.
//!
//! Every parser has a `parse_*` entry point taking `&str` (used by the fuzz
//! targets) and a `load_*` wrapper reading a file.
//!
//! * Edge list: `u v [w]` per line, `#` comments, optional `%n <count>` header
//!   declaring the vertex count so isolated vertices survive.
//! * Matrix Market coordinate files (`pattern`, `integer` or `real`; `general`
//!   or `symmetric`), 1-based indices.
//! * Layout: `v x y` per line.
//! * Drawing: JSON `{positions: [[x,y],..], polylines: [{edge: [u,v], points: [[x,y],..]},..]}`.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{CleanReport, Drawing, Edge, Graph};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Edgelist,
    MatrixMarket,
}

impl GraphFormat {
    /// Guess from the file extension; `.mtx` is Matrix Market, everything else an edge list.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("mtx") => GraphFormat::MatrixMarket,
            _ => GraphFormat::Edgelist,
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

fn finish_graph(vertex_count: usize, raw: Vec<Edge>) -> Result<(Graph, CleanReport)> {
    let (g, report) = Graph::from_edges(vertex_count, raw)?;
    if report.dropped() > 0 {
        log::warn!(
            "dropped {} self-loops and {} duplicate edges",
            report.self_loops,
            report.duplicates
        );
    }
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok((g, report))
}

pub fn parse_edgelist(text: &str) -> Result<(Graph, CleanReport)> {
    let mut declared: Option<usize> = None;
    let mut raw = Vec::new();
    let mut max_id = None::<usize>;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("%n") {
            declared = Some(field(rest.split_whitespace().next(), lineno, "vertex count")?);
            continue;
        }
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let u: usize = field(toks.next(), lineno, "vertex id")?;
        let v: usize = field(toks.next(), lineno, "vertex id")?;
        let w: f64 = match toks.next() {
            Some(t) => field(Some(t), lineno, "weight")?,
            None => 1.0,
        };
        if toks.next().is_some() {
            return Err(parse_err(lineno, "expected 'u v [w]'"));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(parse_err(lineno, format!("weight must be positive, got {w}")));
        }
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(parse_err(
                    lineno,
                    format!("vertex id exceeds declared count {n}"),
                ));
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        raw.push(Edge::new(u, v, w));
    }
    let n = declared.unwrap_or(max_id.map_or(0, |m| m + 1));
    finish_graph(n, raw)
}

pub fn parse_matrix_market(text: &str) -> Result<(Graph, CleanReport)> {
    let mut lines = text.lines().enumerate();
    let (_, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let banner = banner.to_ascii_lowercase();
    let tokens: Vec<&str> = banner.split_whitespace().collect();
    if tokens.len() < 4 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, "missing %%MatrixMarket matrix banner"));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(1, "only coordinate format is supported"));
    }
    let pattern = match tokens[3] {
        "pattern" => true,
        "real" | "integer" | "double" => false,
        other => return Err(parse_err(1, format!("unsupported field type '{other}'"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut raw = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let mut toks = line.split_whitespace();
        match size {
            None => {
                let r: usize = field(toks.next(), lineno, "row count")?;
                let c: usize = field(toks.next(), lineno, "column count")?;
                let nnz: usize = field(toks.next(), lineno, "entry count")?;
                if r != c {
                    return Err(parse_err(lineno, "adjacency matrix must be square"));
                }
                size = Some((r, c, nnz));
            }
            Some((n, _, _)) => {
                let i: usize = field(toks.next(), lineno, "row index")?;
                let j: usize = field(toks.next(), lineno, "column index")?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(lineno, format!("index out of range 1..={n}")));
                }
                let w = if pattern {
                    1.0
                } else {
                    let w: f64 = field(toks.next(), lineno, "value")?;
                    if !(w.is_finite() && w > 0.0) {
                        return Err(parse_err(lineno, format!("weight must be positive, got {w}")));
                    }
                    w
                };
                raw.push(Edge::new(i - 1, j - 1, w));
            }
        }
    }
    let (n, _, _) = size.ok_or_else(|| parse_err(text.lines().count(), "missing size line"))?;
    finish_graph(n, raw)
}

pub fn load_graph(path: &Path, format: GraphFormat) -> Result<(Graph, CleanReport)> {
    let text = fs::read_to_string(path)?;
    match format {
        GraphFormat::Edgelist => parse_edgelist(&text),
        GraphFormat::MatrixMarket => parse_matrix_market(&text),
    }
}

/// Writes `graph` as an edge list with a `%n` header. Weights are written only
/// when some edge is not unit-weight.
pub fn format_edgelist(graph: &Graph) -> String {
    let weighted = graph.edges().iter().any(|e| e.w != 1.0);
    let mut out = format!("%n {}\n", graph.vertex_count());
    for e in graph.edges() {
        if weighted {
            out.push_str(&format!("{} {} {:?}\n", e.u, e.v, e.w));
        } else {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
    }
    out
}

/// Vertex coordinates for a graph, plus the number of duplicate rows seen.
pub fn parse_layout(text: &str, vertex_count: usize) -> Result<(Vec<Point>, usize)> {
    let mut slots: Vec<Option<Point>> = vec![None; vertex_count];
    let mut duplicates = 0;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let v: usize = field(toks.next(), lineno, "vertex id")?;
        let x: f64 = field(toks.next(), lineno, "x coordinate")?;
        let y: f64 = field(toks.next(), lineno, "y coordinate")?;
        if toks.next().is_some() {
            return Err(parse_err(lineno, "expected 'v x y'"));
        }
        if v >= vertex_count {
            return Err(parse_err(
                lineno,
                format!("vertex {v} not in graph of {vertex_count} vertices"),
            ));
        }
        let p = Point::new(x, y);
        if !p.is_finite() {
            return Err(Error::NonFinite(v));
        }
        if slots[v].replace(p).is_some() {
            duplicates += 1;
        }
    }
    if duplicates > 0 {
        log::warn!("{duplicates} duplicate layout rows; the last row for each vertex wins");
    }
    let positions = slots
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or(Error::MissingVertex(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok((positions, duplicates))
}

/// Straight-line drawing of `graph` from a layout file.
pub fn load_layout(path: &Path, graph: &Graph) -> Result<Drawing> {
    let text = fs::read_to_string(path)?;
    let (positions, _) = parse_layout(&text, graph.vertex_count())?;
    Drawing::straight(graph, positions)
}

pub fn format_layout(positions: &[Point]) -> String {
    positions
        .iter()
        .enumerate()
        .map(|(v, p)| format!("{v} {:?} {:?}\n", p.x, p.y))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct PolylineRecord {
    edge: [usize; 2],
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct DrawingRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
    positions: Vec<Point>,
    polylines: Vec<PolylineRecord>,
}

/// JSON form of a drawing. `meta`, when given, is stored alongside and ignored
/// on load. Floats are written in shortest round-trip form.
pub fn drawing_to_json(drawing: &Drawing, meta: Option<serde_json::Value>) -> Result<String> {
    drawing.validate()?;
    let record = DrawingRecord {
        meta,
        positions: drawing.positions.clone(),
        polylines: drawing
            .edges
            .iter()
            .zip(&drawing.polylines)
            .map(|(&(u, v), points)| PolylineRecord {
                edge: [u, v],
                points: points.clone(),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&record)?)
}

pub fn parse_drawing(text: &str) -> Result<Drawing> {
    let record: DrawingRecord = serde_json::from_str(text)?;
    let (edges, polylines) = record
        .polylines
        .into_iter()
        .map(|r| ((r.edge[0], r.edge[1]), r.points))
        .unzip();
    let drawing = Drawing {
        positions: record.positions,
        edges,
        polylines,
    };
    drawing.validate()?;
    Ok(drawing)
}

pub fn save_drawing(drawing: &Drawing, path: &Path, meta: Option<serde_json::Value>) -> Result<()> {
    let json = drawing_to_json(drawing, meta)?;
    write_atomic(path, json.as_bytes())
}

pub fn load_drawing(path: &Path) -> Result<Drawing> {
    parse_drawing(&fs::read_to_string(path)?)
}

/// Reads the `meta` object stored with a drawing, if any.
pub fn drawing_meta(text: &str) -> Result<Option<serde_json::Value>> {
    let record: DrawingRecord = serde_json::from_str(text)?;
    Ok(record.meta)
}

/// Writes via a temporary sibling file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
