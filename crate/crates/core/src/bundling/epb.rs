//! Edge-path bundling and its spanner-accelerated variant.
//!
//! Edges are visited longest first (ties by edge index). An edge that is not
//! locked is taken out of the routing graph and the shortest path between its
//! endpoints is searched, measuring edges by their drawn length. If the path
//! is at most `distortion_limit` times the edge's own length, the edge is
//! drawn along the path (smoothed by corner cutting), stays out of the routing
//! graph, and every edge of the path is locked so it is never rerouted itself.
//! Equal-length paths resolve to the lexicographically smallest vertex
//! sequence.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Drawing, Graph};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EpbParams {
    /// Longest accepted detour, as a multiple of the edge's length.
    pub distortion_limit: f64,
    /// Corner-cutting passes applied to each routed polyline.
    pub smoothing: usize,
    /// Stretch of the greedy spanner used by SEPB.
    pub spanner_stretch: f64,
}

impl Default for EpbParams {
    fn default() -> Self {
        EpbParams {
            distortion_limit: 2.0,
            smoothing: 2,
            spanner_stretch: 2.0,
        }
    }
}

impl EpbParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.distortion_limit > 1.0 && self.distortion_limit.is_finite()) {
            return Err(Error::InvalidParam("distortion_limit must exceed 1".into()));
        }
        if !(self.spanner_stretch >= 1.0 && self.spanner_stretch.is_finite()) {
            return Err(Error::InvalidParam("spanner_stretch must be at least 1".into()));
        }
        Ok(())
    }
}

/// What a path-bundling run did, for tests and instrumentation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EpbReport {
    /// Rerouted edges in processing order, each with its control path.
    pub rerouted: Vec<(usize, Vec<usize>)>,
    /// Edges that served as a path segment.
    pub locked: Vec<bool>,
    /// Edge relaxations performed by all path searches.
    pub relaxations: usize,
    /// Edges available for routing.
    pub routing_edges: usize,
    /// Largest number of relaxations in a single search.
    pub max_relaxations: usize,
}

pub fn epb_bundle(graph: &Graph, drawing: &Drawing, params: &EpbParams) -> Result<Drawing> {
    epb_bundle_with_report(graph, drawing, params).map(|(d, _)| d)
}

pub fn epb_bundle_with_report(
    graph: &Graph,
    drawing: &Drawing,
    params: &EpbParams,
) -> Result<(Drawing, EpbReport)> {
    params.validate()?;
    check_drawing(graph, drawing)?;
    let routable = vec![true; graph.edge_count()];
    Ok(path_bundle(graph, drawing, params, routable))
}

/// EPB with paths searched on a greedy `spanner_stretch`-spanner of the graph.
pub fn sepb_bundle(graph: &Graph, drawing: &Drawing, params: &EpbParams) -> Result<Drawing> {
    sepb_bundle_with_report(graph, drawing, params).map(|(d, _)| d)
}

pub fn sepb_bundle_with_report(
    graph: &Graph,
    drawing: &Drawing,
    params: &EpbParams,
) -> Result<(Drawing, EpbReport)> {
    params.validate()?;
    check_drawing(graph, drawing)?;
    let lengths = edge_lengths(graph, drawing);
    let routable = super::spanner::greedy_spanner(graph, &lengths, params.spanner_stretch);
    Ok(path_bundle(graph, drawing, params, routable))
}

fn check_drawing(graph: &Graph, drawing: &Drawing) -> Result<()> {
    if !drawing.matches(graph) {
        return Err(Error::Mismatch("drawing does not match graph".into()));
    }
    Ok(())
}

pub(crate) fn edge_lengths(graph: &Graph, drawing: &Drawing) -> Vec<f64> {
    graph
        .edges()
        .iter()
        .map(|e| drawing.positions[e.u].dist(drawing.positions[e.v]))
        .collect()
}

fn path_bundle(
    graph: &Graph,
    drawing: &Drawing,
    params: &EpbParams,
    mut routable: Vec<bool>,
) -> (Drawing, EpbReport) {
    let m = graph.edge_count();
    let lengths = edge_lengths(graph, drawing);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| lengths[b].total_cmp(&lengths[a]).then(a.cmp(&b)));

    let mut report = EpbReport {
        locked: vec![false; m],
        routing_edges: routable.iter().filter(|&&r| r).count(),
        ..Default::default()
    };
    let mut polylines = drawing.straightened().polylines;
    let mut search = PathSearch::new(graph.vertex_count());

    for e in order {
        if report.locked[e] || lengths[e] == 0.0 {
            continue;
        }
        let was_routable = routable[e];
        routable[e] = false;
        let edge = graph.edge(e);
        let limit = params.distortion_limit * lengths[e];
        let found = search.shortest_path(graph, &lengths, &routable, edge.u, edge.v, limit);
        report.relaxations += search.relaxations;
        report.max_relaxations = report.max_relaxations.max(search.relaxations);
        match found {
            Some((vertices, path_edges)) => {
                for &pe in &path_edges {
                    report.locked[pe] = true;
                }
                let control: Vec<Point> = vertices.iter().map(|&v| drawing.positions[v]).collect();
                polylines[e] = smooth(&control, params.smoothing);
                report.rerouted.push((e, vertices));
            }
            None => routable[e] = was_routable,
        }
    }

    let bundled = Drawing {
        positions: drawing.positions.clone(),
        edges: drawing.edges.clone(),
        polylines,
    };
    (bundled, report)
}

/// Corner cutting: each pass replaces every interior corner `c` (between `a`
/// and `b`) by the points at 3/4 of `a→c` and 1/4 of `c→b`. Ends are fixed.
pub fn smooth(control: &[Point], passes: usize) -> Vec<Point> {
    let mut pts = control.to_vec();
    for _ in 0..passes {
        if pts.len() <= 2 {
            break;
        }
        let mut next = Vec::with_capacity(2 * pts.len());
        next.push(pts[0]);
        for i in 1..pts.len() - 1 {
            next.push(pts[i - 1].lerp(pts[i], 0.75));
            next.push(pts[i].lerp(pts[i + 1], 0.25));
        }
        next.push(pts[pts.len() - 1]);
        pts = next;
    }
    pts
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance, then vertex id.
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable bounded Dijkstra state.
pub(crate) struct PathSearch {
    dist: Vec<f64>,
    settled: Vec<bool>,
    touched: Vec<usize>,
    heap: BinaryHeap<Entry>,
    pub(crate) relaxations: usize,
}

impl PathSearch {
    pub(crate) fn new(n: usize) -> Self {
        PathSearch {
            dist: vec![f64::INFINITY; n],
            settled: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
            relaxations: 0,
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.settled[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
        self.relaxations = 0;
    }

    /// Distance from `to` to every vertex settled before `from`, stopping
    /// past `limit`. Returns the distance to `from` if within the limit.
    pub(crate) fn distance(
        &mut self,
        graph: &Graph,
        lengths: &[f64],
        usable: &[bool],
        from: usize,
        to: usize,
        limit: f64,
    ) -> Option<f64> {
        self.reset();
        self.dist[to] = 0.0;
        self.touched.push(to);
        self.heap.push(Entry { dist: 0.0, vertex: to });
        while let Some(Entry { dist, vertex }) = self.heap.pop() {
            if self.settled[vertex] {
                continue;
            }
            if dist > limit {
                return None;
            }
            self.settled[vertex] = true;
            if vertex == from {
                return Some(dist);
            }
            for &(next, e) in graph.neighbors(vertex) {
                if !usable[e] || self.settled[next] {
                    continue;
                }
                self.relaxations += 1;
                let nd = dist + lengths[e];
                if nd < self.dist[next] {
                    if self.dist[next].is_infinite() {
                        self.touched.push(next);
                    }
                    self.dist[next] = nd;
                    self.heap.push(Entry { dist: nd, vertex: next });
                }
            }
        }
        None
    }

    /// Shortest `from → to` path within `limit` as (vertices, edge indices),
    /// the lexicographically smallest among equal-length paths.
    pub(crate) fn shortest_path(
        &mut self,
        graph: &Graph,
        lengths: &[f64],
        usable: &[bool],
        from: usize,
        to: usize,
        limit: f64,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let total = self.distance(graph, lengths, usable, from, to, limit)?;
        let eps = 1e-12 * total.max(f64::MIN_POSITIVE);
        let mut vertices = vec![from];
        let mut edges = Vec::new();
        let mut on_path = vec![from];
        let mut cur = from;
        while cur != to {
            let here = self.dist[cur];
            // Neighbors are sorted by id, so the first tight one is the smallest.
            let step = graph.neighbors(cur).iter().find(|&&(next, e)| {
                usable[e]
                    && self.settled[next]
                    && !on_path.contains(&next)
                    && (self.dist[next] + lengths[e] - here).abs() <= eps
            });
            let &(next, e) = step?;
            vertices.push(next);
            edges.push(e);
            on_path.push(next);
            cur = next;
        }
        Some((vertices, edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit square 0-1-2-3 with diagonal (0, 2).
    fn square() -> (Graph, Drawing) {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let pos = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let d = Drawing::straight(&g, pos).unwrap();
        (g, d)
    }

    #[test]
    fn diagonal_routes_through_smallest_corner() {
        let (g, d) = square();
        let params = EpbParams {
            smoothing: 0,
            ..Default::default()
        };
        let (out, report) = epb_bundle_with_report(&g, &d, &params).unwrap();
        let diag = g.find_edge(0, 2).unwrap();
        assert_eq!(report.rerouted, vec![(diag, vec![0, 1, 2])]);
        assert_eq!(
            out.polylines[diag],
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)]
        );
        for (i, line) in out.polylines.iter().enumerate() {
            if i != diag {
                assert_eq!(line.len(), 2);
            }
        }
        assert!(report.locked[g.find_edge(0, 1).unwrap()]);
        assert!(report.locked[g.find_edge(1, 2).unwrap()]);
    }

    #[test]
    fn tight_limit_reroutes_nothing() {
        let (g, d) = square();
        let params = EpbParams {
            distortion_limit: 1.2,
            ..Default::default()
        };
        let (out, report) = epb_bundle_with_report(&g, &d, &params).unwrap();
        assert!(report.rerouted.is_empty());
        assert_eq!(out, d);
    }

    #[test]
    fn tree_is_unchanged() {
        let g = Graph::unweighted(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let pos = (0..5).map(|i| Point::new(i as f64, (i * i) as f64 * 0.1)).collect();
        let d = Drawing::straight(&g, pos).unwrap();
        assert_eq!(epb_bundle(&g, &d, &EpbParams::default()).unwrap(), d);
        assert_eq!(sepb_bundle(&g, &d, &EpbParams::default()).unwrap(), d);
    }

    #[test]
    fn smoothing_keeps_ends() {
        let ctrl = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)];
        assert_eq!(
            smooth(&ctrl, 1),
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.75, 0.0),
                Point::new(1.0, 0.25),
                Point::new(1.0, 1.0)
            ]
        );
        assert_eq!(smooth(&ctrl, 2).len(), 6);
        assert_eq!(smooth(&ctrl[..2], 3), ctrl[..2].to_vec());
    }

    #[test]
    fn params_are_checked() {
        let (g, d) = square();
        let bad = EpbParams {
            distortion_limit: 1.0,
            ..Default::default()
        };
        assert!(epb_bundle(&g, &d, &bad).is_err());
        let bad = EpbParams {
            spanner_stretch: 0.5,
            ..Default::default()
        };
        assert!(sepb_bundle(&g, &d, &bad).is_err());
    }
}
