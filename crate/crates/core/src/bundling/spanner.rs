//! Greedy geometric spanner.

use super::epb::PathSearch;
use crate::graph::Graph;

/// Membership mask of the greedy `stretch`-spanner: edges are scanned by
/// increasing length and kept when the spanner built so far has no path
/// between their endpoints of length at most `stretch` times theirs. At
/// stretch 1 every edge is kept.
pub fn greedy_spanner(graph: &Graph, lengths: &[f64], stretch: f64) -> Vec<bool> {
    let m = graph.edge_count();
    if stretch <= 1.0 {
        return vec![true; m];
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| lengths[a].total_cmp(&lengths[b]).then(a.cmp(&b)));
    let mut keep = vec![false; m];
    let mut search = PathSearch::new(graph.vertex_count());
    for e in order {
        let edge = graph.edge(e);
        let limit = stretch * lengths[e];
        if search
            .distance(graph, lengths, &keep, edge.u, edge.v, limit)
            .is_none()
        {
            keep[e] = true;
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundling::epb::edge_lengths;
    use crate::geometry::Point;
    use crate::graph::Drawing;

    #[test]
    fn square_diagonal_is_dropped_at_stretch_two() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let pos = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let d = Drawing::straight(&g, pos).unwrap();
        let lengths = edge_lengths(&g, &d);
        let keep = greedy_spanner(&g, &lengths, 2.0);
        let diag = g.find_edge(0, 2).unwrap();
        assert!(!keep[diag]);
        assert_eq!(keep.iter().filter(|&&k| k).count(), 4);
        assert!(greedy_spanner(&g, &lengths, 1.0).iter().all(|&k| k));
        // Stretch 1.5 still drops it: 2 <= 1.5·√2.
        assert!(!greedy_spanner(&g, &lengths, 1.5)[diag]);
        assert!(greedy_spanner(&g, &lengths, 1.4)[diag]);
    }
}
