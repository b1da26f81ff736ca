//! Ambiguity: the share of apparent neighbours that are not real ones.
//!
//! For a vertex `v` and an incident edge `e`, the first hop follows `e`'s
//! bundle from `v`'s end to the far-end endpoints of every member; further
//! hops walk the geometric graph freely. A reached vertex is a false
//! neighbour when it is more than `gamma` hops from `v` in the input graph.

use super::bundles::BundleAssignment;
use super::geometric::GeometricGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use rayon::prelude::*;

struct Scratch {
    seen: Vec<u32>,
    epoch: u32,
    frontier: Vec<VertexId>,
    next: Vec<VertexId>,
    ball: Vec<u32>,
    ball_epoch: u32,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            seen: vec![0; n],
            epoch: 0,
            frontier: Vec::new(),
            next: Vec::new(),
            ball: vec![0; n],
            ball_epoch: 0,
        }
    }
}

/// `(false, total)` neighbour counts summed over all vertex–edge incidences.
pub fn ambiguity_counts(
    graph: &Graph,
    bundles: &BundleAssignment,
    geo: &GeometricGraph,
    gamma: usize,
) -> Result<(u64, u64)> {
    if gamma == 0 {
        return Err(Error::InvalidParam("gamma must be at least 1".into()));
    }
    if geo.vertex_count() != graph.vertex_count() || bundles.edge_count() != graph.edge_count() {
        return Err(Error::Mismatch("geometric graph or bundles do not match the graph".into()));
    }
    let n = graph.vertex_count();
    let totals = (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |s, v| vertex_counts(graph, bundles, geo, gamma, v, s),
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(totals)
}

pub fn ambiguity(graph: &Graph, bundles: &BundleAssignment, geo: &GeometricGraph, gamma: usize) -> Result<f64> {
    let (false_count, total) = ambiguity_counts(graph, bundles, geo, gamma)?;
    Ok(if total == 0 {
        0.0
    } else {
        false_count as f64 / total as f64
    })
}

fn vertex_counts(
    graph: &Graph,
    bundles: &BundleAssignment,
    geo: &GeometricGraph,
    gamma: usize,
    v: VertexId,
    s: &mut Scratch,
) -> (u64, u64) {
    if graph.degree(v) == 0 {
        return (0, 0);
    }
    // Ball of radius gamma around v in the input graph.
    s.ball_epoch += 1;
    let be = s.ball_epoch;
    s.ball[v] = be;
    s.frontier.clear();
    s.frontier.push(v);
    for _ in 0..gamma {
        s.next.clear();
        for &x in &s.frontier {
            for &(y, _) in graph.neighbors(x) {
                if s.ball[y] != be {
                    s.ball[y] = be;
                    s.next.push(y);
                }
            }
        }
        std::mem::swap(&mut s.frontier, &mut s.next);
    }

    let (mut fals, mut total) = (0u64, 0u64);
    for &(_, e) in graph.neighbors(v) {
        let edge = graph.edge(e);
        let key = (edge.u, edge.v);
        let far = bundles.end_of(key, e, v).opposite();

        s.epoch += 1;
        let ep = s.epoch;
        s.frontier.clear();
        for m in bundles.bundle_of(e) {
            let f = graph.edge(m.edge);
            let x = bundles.endpoint_at((f.u, f.v), m.edge, far);
            if x != v && s.seen[x] != ep {
                s.seen[x] = ep;
                s.frontier.push(x);
            }
        }
        let mut reached = s.frontier.clone();
        for _ in 1..gamma {
            s.next.clear();
            for &x in &s.frontier {
                for &y in geo.neighbors(x) {
                    if s.seen[y] != ep {
                        s.seen[y] = ep;
                        s.next.push(y);
                    }
                }
            }
            reached.extend_from_slice(&s.next);
            std::mem::swap(&mut s.frontier, &mut s.next);
        }
        // Walks may pass back through v, but v is not its own neighbour.
        reached.retain(|&x| x != v);
        total += reached.len() as u64;
        fals += reached.iter().filter(|&&x| s.ball[x] != be).count() as u64;
    }
    (fals, total)
}
