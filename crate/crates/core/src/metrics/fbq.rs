//! Proxy faithfulness of a sparsified bundling against the full one.

use super::geometric::GeometricGraph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Mean per-vertex Jaccard similarity of neighbourhoods. A vertex isolated
/// in both graphs counts as full agreement.
pub fn fbq_js(gb: &GeometricGraph, gb_prime: &GeometricGraph) -> Result<f64> {
    let n = gb.vertex_count();
    if n != gb_prime.vertex_count() {
        return Err(Error::Mismatch(format!(
            "vertex counts differ: {n} and {}",
            gb_prime.vertex_count()
        )));
    }
    if n == 0 {
        return Err(Error::Degenerate("graphs have no vertices".into()));
    }
    let mut sum = 0.0;
    for v in 0..n {
        let (a, b) = (gb.neighbors(v), gb_prime.neighbors(v));
        let common = sorted_intersection(a, b);
        let union = a.len() + b.len() - common;
        sum += if union == 0 {
            1.0
        } else {
            common as f64 / union as f64
        };
    }
    Ok(sum / n as f64)
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphProperty {
    /// Mean degree of a vertex's neighbours (DG).
    AvgNeighborDegree,
    /// Local clustering coefficient (CC).
    LocalClustering,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionSummary {
    pub property: GraphProperty,
    /// Ascending.
    pub values: Vec<f64>,
}

impl DistributionSummary {
    pub fn new(property: GraphProperty, mut values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        values.sort_by(f64::total_cmp);
        Ok(DistributionSummary { property, values })
    }

    /// Fraction of samples `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&y| y <= x) as f64 / self.values.len() as f64
    }
}

pub fn property_distribution(geo: &GeometricGraph, property: GraphProperty) -> DistributionSummary {
    let n = geo.vertex_count();
    let values: Vec<f64> = (0..n)
        .map(|v| {
            let nb = geo.neighbors(v);
            match property {
                GraphProperty::AvgNeighborDegree => {
                    if nb.is_empty() {
                        0.0
                    } else {
                        nb.iter().map(|&u| geo.degree(u) as f64).sum::<f64>() / nb.len() as f64
                    }
                }
                GraphProperty::LocalClustering => {
                    let d = nb.len();
                    if d < 2 {
                        return 0.0;
                    }
                    let mut links = 0usize;
                    for (i, &a) in nb.iter().enumerate() {
                        links += sorted_intersection(&nb[i + 1..], geo.neighbors(a));
                    }
                    links as f64 / (d * (d - 1) / 2) as f64
                }
            }
        })
        .collect();
    let mut values = values;
    values.sort_by(f64::total_cmp);
    DistributionSummary { property, values }
}

/// Largest gap between the two empirical CDFs.
pub fn ks_distance(a: &DistributionSummary, b: &DistributionSummary) -> Result<f64> {
    if a.property != b.property {
        return Err(Error::Mismatch("distributions describe different properties".into()));
    }
    if a.values.is_empty() || b.values.is_empty() {
        return Err(Error::Degenerate("empty distribution".into()));
    }
    // Both CDFs are right-continuous steps, so the supremum is attained at a
    // sample point; walk both sorted samples together.
    let (na, nb) = (a.values.len(), b.values.len());
    let (mut i, mut j) = (0, 0);
    let mut best: f64 = 0.0;
    while i < na || j < nb {
        let x = match (a.values.get(i), b.values.get(j)) {
            (Some(&p), Some(&q)) => p.min(q),
            (Some(&p), None) => p,
            (None, Some(&q)) => q,
            (None, None) => unreachable!(),
        };
        while i < na && a.values[i] <= x {
            i += 1;
        }
        while j < nb && b.values[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    Ok(best)
}

pub fn fbq_sq(gb: &GeometricGraph, gb_prime: &GeometricGraph, property: GraphProperty) -> Result<f64> {
    if gb.vertex_count() == 0 || gb_prime.vertex_count() == 0 {
        return Err(Error::Degenerate("graphs have no vertices".into()));
    }
    ks_distance(
        &property_distribution(gb, property),
        &property_distribution(gb_prime, property),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn geo(n: usize, pairs: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::from_graph(&Graph::unweighted(n, pairs).unwrap())
    }

    fn dist(values: &[f64]) -> DistributionSummary {
        DistributionSummary::new(GraphProperty::LocalClustering, values.to_vec()).unwrap()
    }

    #[test]
    fn jaccard_cases() {
        let g = geo(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(fbq_js(&g, &g).unwrap(), 1.0);
        let a = geo(4, &[(0, 1), (2, 3)]);
        let b = geo(4, &[(0, 2), (1, 3)]);
        assert_eq!(fbq_js(&a, &b).unwrap(), 0.0);
        // Vertex 0: N={1,2}, N'={2,3} gives 1/3. Vertex 1: {0} vs {} gives 0.
        // Vertex 2: {0} vs {0} gives 1. Vertex 3: {} vs {0} gives 0.
        let a = geo(4, &[(0, 1), (0, 2)]);
        let b = geo(4, &[(0, 2), (0, 3)]);
        let js = fbq_js(&a, &b).unwrap();
        assert!((js - (1.0 / 3.0 + 0.0 + 1.0 + 0.0) / 4.0).abs() < 1e-15);
        assert_eq!(js, fbq_js(&b, &a).unwrap());
        // Isolated in both counts as agreement.
        let a = geo(3, &[(0, 1)]);
        assert_eq!(fbq_js(&a, &a).unwrap(), 1.0);
        assert!(fbq_js(&a, &geo(4, &[(0, 1)])).is_err());
    }

    #[test]
    fn property_cases() {
        let k3 = geo(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = geo(3, &[(0, 1), (1, 2)]);
        assert_eq!(property_distribution(&k3, GraphProperty::LocalClustering).values, vec![1.0; 3]);
        assert_eq!(property_distribution(&p3, GraphProperty::LocalClustering).values, vec![0.0; 3]);
        let star = geo(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(
            property_distribution(&star, GraphProperty::AvgNeighborDegree).values,
            vec![1.0, 4.0, 4.0, 4.0, 4.0]
        );
        assert_eq!(fbq_sq(&k3, &p3, GraphProperty::LocalClustering).unwrap(), 1.0);
        assert_eq!(fbq_sq(&k3, &k3, GraphProperty::AvgNeighborDegree).unwrap(), 0.0);
    }

    #[test]
    fn ks_cases() {
        assert_eq!(ks_distance(&dist(&[1.0, 2.0]), &dist(&[2.0, 1.0])).unwrap(), 0.0);
        assert_eq!(ks_distance(&dist(&[0.0, 0.0]), &dist(&[1.0, 1.0])).unwrap(), 1.0);
        assert_eq!(
            ks_distance(&dist(&[1.0, 2.0, 3.0, 4.0]), &dist(&[2.0, 3.0, 4.0, 5.0])).unwrap(),
            0.25
        );
        let other = DistributionSummary::new(GraphProperty::AvgNeighborDegree, vec![1.0]).unwrap();
        assert!(ks_distance(&dist(&[1.0]), &other).is_err());
        assert!(ks_distance(&dist(&[]), &dist(&[1.0])).is_err());
    }

    fn brute_ks(a: &DistributionSummary, b: &DistributionSummary) -> f64 {
        a.values
            .iter()
            .chain(&b.values)
            .map(|&x| (a.cdf(x) - b.cdf(x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn ks_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (la, lb) = (1 + rng.random_range(0..9), 1 + rng.random_range(0..9));
            let mut draw = |len| -> Vec<f64> { (0..len).map(|_| rng.random_range(0..6) as f64 / 2.0).collect() };
            let a = dist(&draw(la));
            let b = dist(&draw(lb));
            let ks = ks_distance(&a, &b).unwrap();
            assert_eq!(ks, brute_ks(&a, &b));
            assert_eq!(ks, ks_distance(&b, &a).unwrap());
        }
    }
}
