//! Graph and drawing data model.
//!
//! A [`Graph`] is a weighted, undirected, simple graph whose edges are kept in
//! canonical order (`u < v`, sorted lexicographically). Edge indices into that
//! order are used everywhere else in the crate: a [`Drawing`] stores one
//! polyline per edge index, effective resistances are stored per edge index,
//! and so on.

use crate::error::{Error, Result};
use crate::geometry::{polyline_length, Point};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, w: f64) -> Self {
        Edge { u, v, w }
    }

    /// The endpoint opposite `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }
}

/// Counts of input records dropped while canonicalizing a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CleanReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl CleanReport {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    /// `adj[v]` lists `(neighbor, edge index)` sorted by neighbor.
    adj: Vec<Vec<(VertexId, usize)>>,
}

impl Graph {
    /// Builds a simple graph from raw edges. Self-loops and repeated pairs are
    /// dropped (the first occurrence of a pair keeps its weight) and counted.
    pub fn from_edges(
        vertex_count: usize,
        raw: impl IntoIterator<Item = Edge>,
    ) -> Result<(Graph, CleanReport)> {
        let mut report = CleanReport::default();
        let mut edges = Vec::new();
        for (pos, e) in raw.into_iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) references a vertex outside [0, {vertex_count})",
                    e.u, e.v
                )));
            }
            if !(e.w.is_finite() && e.w > 0.0) {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) has non-positive weight {}",
                    e.u, e.v, e.w
                )));
            }
            if e.u == e.v {
                report.self_loops += 1;
                continue;
            }
            let (u, v) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
            edges.push((Edge::new(u, v, e.w), pos));
        }
        // Stable on input position so the first occurrence survives dedup.
        edges.sort_by_key(|(e, pos)| (e.u, e.v, *pos));
        let before = edges.len();
        edges.dedup_by_key(|(e, _)| e.key());
        report.duplicates = before - edges.len();
        let edges: Vec<Edge> = edges.into_iter().map(|(e, _)| e).collect();
        Ok((Graph::from_canonical(vertex_count, edges), report))
    }

    /// Like [`Graph::from_edges`] but rejects anything that is not already simple.
    pub fn new(vertex_count: usize, raw: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let (g, report) = Graph::from_edges(vertex_count, raw)?;
        if report.dropped() > 0 {
            return Err(Error::InvalidGraph(format!(
                "{} self-loops and {} duplicate edges",
                report.self_loops, report.duplicates
            )));
        }
        Ok(g)
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted(vertex_count: usize, pairs: &[(VertexId, VertexId)]) -> Result<Graph> {
        Graph::new(vertex_count, pairs.iter().map(|&(u, v)| Edge::new(u, v, 1.0)))
    }

    fn from_canonical(vertex_count: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            vertex_count,
            edges,
            adj,
        }
    }

    /// Subgraph on the same vertex set keeping the listed edge indices.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Graph {
        let mut idx = keep.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let edges = idx.into_iter().map(|i| self.edges[i]).collect();
        Graph::from_canonical(self.vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Index of edge `{u, v}` if present.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    /// Connected-component label per vertex, labels numbered by smallest member.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.vertex_count {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Number of components containing at least one edge.
    pub fn nontrivial_component_count(&self) -> usize {
        let labels = self.components();
        let mut seen: Vec<usize> = self.edges.iter().map(|e| labels[e.u]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Vertex positions plus one polyline per edge.
///
/// A straight drawing has two points per polyline; bundlers add interior
/// division points. The first and last point of every polyline are the
/// positions of the edge's endpoints, compared exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Drawing {
    pub positions: Vec<Point>,
    pub edges: Vec<(VertexId, VertexId)>,
    pub polylines: Vec<Vec<Point>>,
}

impl Drawing {
    /// Straight-line drawing of `graph` at `positions`.
    pub fn straight(graph: &Graph, positions: Vec<Point>) -> Result<Drawing> {
        if positions.len() != graph.vertex_count() {
            return Err(Error::InvalidDrawing(format!(
                "{} positions for {} vertices",
                positions.len(),
                graph.vertex_count()
            )));
        }
        if let Some(v) = positions.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        let edges: Vec<_> = graph.edges().iter().map(|e| e.key()).collect();
        let polylines = edges
            .iter()
            .map(|&(u, v)| vec![positions[u], positions[v]])
            .collect();
        Ok(Drawing {
            positions,
            edges,
            polylines,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of interior division points across all polylines.
    pub fn division_point_count(&self) -> usize {
        self.polylines.iter().map(|p| p.len().saturating_sub(2)).sum()
    }

    pub fn is_straight(&self) -> bool {
        self.polylines.iter().all(|p| p.len() == 2)
    }

    /// Straight-line drawing with the same positions and edges.
    pub fn straightened(&self) -> Drawing {
        Drawing {
            positions: self.positions.clone(),
            edges: self.edges.clone(),
            polylines: self
                .edges
                .iter()
                .map(|&(u, v)| vec![self.positions[u], self.positions[v]])
                .collect(),
        }
    }

    /// Euclidean distance between the endpoints of edge `i`.
    pub fn chord_length(&self, i: usize) -> f64 {
        let (u, v) = self.edges[i];
        self.positions[u].dist(self.positions[v])
    }

    pub fn arc_length(&self, i: usize) -> f64 {
        polyline_length(&self.polylines[i])
    }

    /// Length of the diagonal of the bounding box of all vertex positions.
    pub fn diagonal(&self) -> f64 {
        crate::geometry::bounds(&self.positions).map_or(0.0, |(lo, hi)| lo.dist(hi))
    }

    /// Checks the drawing invariants.
    pub fn validate(&self) -> Result<()> {
        if self.edges.len() != self.polylines.len() {
            return Err(Error::InvalidDrawing(format!(
                "{} edges but {} polylines",
                self.edges.len(),
                self.polylines.len()
            )));
        }
        if let Some(v) = self.positions.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        let n = self.positions.len();
        for (i, (&(u, v), line)) in self.edges.iter().zip(&self.polylines).enumerate() {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidDrawing(format!(
                    "polyline {i} has invalid edge ({u}, {v})"
                )));
            }
            if line.len() < 2 {
                return Err(Error::InvalidDrawing(format!(
                    "polyline {i} has {} points, need at least 2",
                    line.len()
                )));
            }
            if line.iter().any(|p| !p.is_finite()) {
                return Err(Error::InvalidDrawing(format!(
                    "polyline {i} has a non-finite point"
                )));
            }
            if line[0] != self.positions[u] || line[line.len() - 1] != self.positions[v] {
                return Err(Error::InvalidDrawing(format!(
                    "polyline {i} endpoints do not match vertices {u} and {v}"
                )));
            }
        }
        Ok(())
    }

    /// True when this drawing's edge list matches `graph` exactly.
    pub fn matches(&self, graph: &Graph) -> bool {
        self.positions.len() == graph.vertex_count()
            && self.edges.len() == graph.edge_count()
            && self
                .edges
                .iter()
                .zip(graph.edges())
                .all(|(&k, e)| k == e.key())
    }

    /// Drawing restricted to a subgraph of the graph it was made for; polylines
    /// are looked up by endpoint pair.
    pub fn restrict_to(&self, sub: &Graph) -> Result<Drawing> {
        let mut polylines = Vec::with_capacity(sub.edge_count());
        for e in sub.edges() {
            let i = self
                .edges
                .binary_search(&e.key())
                .map_err(|_| Error::Mismatch(format!("edge ({}, {}) not drawn", e.u, e.v)))?;
            polylines.push(self.polylines[i].clone());
        }
        Ok(Drawing {
            positions: self.positions.clone(),
            edges: sub.edges().iter().map(|e| e.key()).collect(),
            polylines,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DatasetCategory {
    Geographic,
    ScaleFree,
    Gion,
    BlackHole,
    Synthetic,
}

/// Catalogue entry for an experiment input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetDescriptor {
    pub name: String,
    pub category: DatasetCategory,
    pub vertices: usize,
    pub edges: usize,
}

impl DatasetDescriptor {
    /// Reference datasets with their vertex and edge counts.
    pub fn catalogue() -> Vec<DatasetDescriptor> {
        use DatasetCategory::*;
        [
            ("airlines", Geographic, 235, 1297),
            ("migration", Geographic, 1702, 6487),
            ("airtraffic", Geographic, 1533, 16480),
            ("yeastppi", ScaleFree, 2224, 6609),
            ("facebook", ScaleFree, 4039, 88234),
            ("lastfm", ScaleFree, 7624, 27806),
            ("6_gion", Gion, 1785, 20459),
            ("7_gion", Gion, 3010, 41757),
            ("G443", BlackHole, 285, 2009),
            ("Cycle896", BlackHole, 1031, 22638),
            ("Cycle907", BlackHole, 823, 14995),
        ]
        .into_iter()
        .map(|(name, category, vertices, edges)| DatasetDescriptor {
            name: name.to_string(),
            category,
            vertices,
            edges,
        })
        .collect()
    }

    pub fn lookup(name: &str) -> Option<DatasetDescriptor> {
        Self::catalogue().into_iter().find(|d| d.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_and_counts_drops() {
        let raw = [
            Edge::new(2, 0, 1.0),
            Edge::new(0, 1, 1.0),
            Edge::new(1, 1, 1.0),
            Edge::new(0, 2, 5.0),
            Edge::new(1, 2, 2.0),
        ];
        let (g, report) = Graph::from_edges(3, raw).unwrap();
        assert_eq!(report, CleanReport { self_loops: 1, duplicates: 1 });
        let keys: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        assert_eq!(keys, vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 2.0)]);
        assert_eq!(g.find_edge(2, 1), Some(2));
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn rejects_bad_weight_and_range() {
        assert!(Graph::from_edges(2, [Edge::new(0, 1, 0.0)]).is_err());
        assert!(Graph::from_edges(2, [Edge::new(0, 2, 1.0)]).is_err());
        assert!(Graph::new(2, [Edge::new(0, 1, 1.0), Edge::new(1, 0, 1.0)]).is_err());
    }

    #[test]
    fn components_track_isolated_vertices() {
        let g = Graph::unweighted(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![0, 0, 1, 2, 2]);
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.nontrivial_component_count(), 2);
        assert!(!g.is_connected());
    }

    #[test]
    fn drawing_validation() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let pos = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)];
        let mut d = Drawing::straight(&g, pos).unwrap();
        d.validate().unwrap();
        assert_eq!(d.division_point_count(), 0);
        d.polylines[1].insert(1, Point::new(0.5, 0.5));
        d.validate().unwrap();
        assert_eq!(d.division_point_count(), 1);
        d.polylines[2][1] = Point::new(0.0, 1.0 + 1e-15);
        assert!(d.validate().is_err());
        d.polylines[2] = vec![Point::new(0.0, 0.0)];
        assert!(d.validate().is_err());
    }
}
