//! The graph a bundled drawing appears to show.
//!
//! Bundling `(s,t)` with `(u,v)` so that `s` and `u` share one end makes
//! `(s,v)` and `(t,u)` look adjacent as well. The geometric graph holds the
//! original edges plus every such implied pair.

use super::bundles::{BundleAssignment, End};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeOrigin {
    Original,
    Implied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricGraph {
    vertex_count: usize,
    /// Sorted `(min, max)` pairs.
    edges: Vec<(VertexId, VertexId, EdgeOrigin)>,
    adj: Vec<Vec<VertexId>>,
}

impl GeometricGraph {
    /// The geometric graph of an unbundled drawing.
    pub fn from_graph(graph: &Graph) -> Self {
        Self::build(
            graph.vertex_count(),
            graph.edges().iter().map(|e| (e.u, e.v, EdgeOrigin::Original)),
        )
    }

    fn build(n: usize, pairs: impl IntoIterator<Item = (VertexId, VertexId, EdgeOrigin)>) -> Self {
        let mut map: BTreeMap<(VertexId, VertexId), EdgeOrigin> = BTreeMap::new();
        for (a, b, origin) in pairs {
            if a == b {
                continue;
            }
            let slot = map.entry((a.min(b), a.max(b))).or_insert(origin);
            if origin == EdgeOrigin::Original {
                *slot = EdgeOrigin::Original;
            }
        }
        let mut adj = vec![Vec::new(); n];
        let edges: Vec<_> = map.into_iter().map(|((a, b), o)| (a, b, o)).collect();
        for &(a, b, _) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        GeometricGraph {
            vertex_count: n,
            edges,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, EdgeOrigin)] {
        &self.edges
    }

    pub fn implied_count(&self) -> usize {
        self.edges.iter().filter(|e| e.2 == EdgeOrigin::Implied).count()
    }

    /// Sorted neighbours.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Original edges plus, for every bundle, each pair `(a, b)` with `a` at
/// end A of one member and `b` at end B of a different member.
pub fn geometric_graph(graph: &Graph, bundles: &BundleAssignment) -> Result<GeometricGraph> {
    if bundles.edge_count() != graph.edge_count() {
        return Err(Error::Mismatch(format!(
            "bundle assignment covers {} edges, graph has {}",
            bundles.edge_count(),
            graph.edge_count()
        )));
    }
    let key = |i: usize| {
        let e = graph.edge(i);
        (e.u, e.v)
    };
    let mut pairs: Vec<(VertexId, VertexId, EdgeOrigin)> = graph
        .edges()
        .iter()
        .map(|e| (e.u, e.v, EdgeOrigin::Original))
        .collect();
    for bundle in bundles.bundles() {
        if bundle.len() < 2 {
            continue;
        }
        for (i, mi) in bundle.iter().enumerate() {
            let a = bundles.endpoint_at(key(mi.edge), mi.edge, End::A);
            for (j, mj) in bundle.iter().enumerate() {
                if i != j {
                    let b = bundles.endpoint_at(key(mj.edge), mj.edge, End::B);
                    pairs.push((a, b, EdgeOrigin::Implied));
                }
            }
        }
    }
    Ok(GeometricGraph::build(graph.vertex_count(), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::bundles::BundleMember;

    fn member(edge: usize, flipped: bool) -> BundleMember {
        BundleMember { edge, flipped }
    }

    #[test]
    fn singletons_reproduce_graph() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let geo = geometric_graph(&g, &BundleAssignment::singletons(3)).unwrap();
        assert_eq!(geo, GeometricGraph::from_graph(&g));
        assert_eq!(geo.implied_count(), 0);
    }

    #[test]
    fn two_independent_edges_give_four() {
        // s=0, t=1, u=2, v=3; s and u at end A.
        let g = Graph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
        let b = BundleAssignment::new(2, vec![vec![member(0, false), member(1, false)]]).unwrap();
        let geo = geometric_graph(&g, &b).unwrap();
        let pairs: Vec<_> = geo.edges().iter().map(|e| (e.0, e.1)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(geo.implied_count(), 2);
    }

    #[test]
    fn shared_endpoint_drops_self_pair() {
        // (s,t)=(0,1), (s,v)=(0,2). The pair (t,v) only appears when t and v
        // sit at opposite ends, so s is at end A of one edge and B of the other.
        let g = Graph::unweighted(3, &[(0, 1), (0, 2)]).unwrap();
        let b = BundleAssignment::new(2, vec![vec![member(0, false), member(1, true)]]).unwrap();
        let geo = geometric_graph(&g, &b).unwrap();
        let implied: Vec<_> = geo
            .edges()
            .iter()
            .filter(|e| e.2 == EdgeOrigin::Implied)
            .map(|e| (e.0, e.1))
            .collect();
        assert_eq!(implied, vec![(1, 2)]);
    }

    #[test]
    fn shared_endpoint_same_end_implies_nothing() {
        let g = Graph::unweighted(3, &[(0, 1), (0, 2)]).unwrap();
        let b = BundleAssignment::new(2, vec![vec![member(0, false), member(1, false)]]).unwrap();
        assert_eq!(geometric_graph(&g, &b).unwrap().implied_count(), 0);
    }

    #[test]
    fn implied_count_for_independent_bundle() {
        let pairs: Vec<_> = (0..5).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::unweighted(10, &pairs).unwrap();
        let b = BundleAssignment::new(5, vec![(0..5).map(|e| member(e, false)).collect()]).unwrap();
        let geo = geometric_graph(&g, &b).unwrap();
        assert_eq!(geo.implied_count(), 5 * 4);
        assert_eq!(geo.edge_count(), 5 + 20);
    }
}
