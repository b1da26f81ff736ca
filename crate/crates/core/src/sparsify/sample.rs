use super::resistance::EffectiveResistanceMap;
use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SparsifyParams {
    /// Edge budget is `ceil(factor · n · ln n)`.
    pub factor: f64,
    pub seed: u64,
    /// Force a spanning forest of the input into the sample.
    pub ensure_connected: bool,
}

impl Default for SparsifyParams {
    fn default() -> Self {
        SparsifyParams {
            factor: 4.0,
            seed: 0,
            ensure_connected: true,
        }
    }
}

impl SparsifyParams {
    pub fn budget(&self, vertex_count: usize) -> usize {
        let n = vertex_count as f64;
        if vertex_count < 2 {
            return 0;
        }
        (self.factor * n * n.ln()).ceil() as usize
    }
}

/// Result of sparsification: the subgraph plus which input edges it kept.
#[derive(Clone, Debug)]
pub struct Sparsified {
    pub graph: Graph,
    /// Sorted indices into the input graph's edge list.
    pub kept: Vec<usize>,
}

/// Samples a subgraph on the same vertex set with at most the edge budget,
/// each edge drawn without replacement with probability proportional to
/// `w_e · ER(e)`. Returns the input unchanged when it already fits.
pub fn spectral_sparsify(
    graph: &Graph,
    er: &EffectiveResistanceMap,
    params: &SparsifyParams,
) -> Result<Sparsified> {
    if !(params.factor > 0.0) {
        return Err(Error::InvalidParam(format!(
            "sparsification factor must be positive, got {}",
            params.factor
        )));
    }
    if er.len() != graph.edge_count() {
        return Err(Error::Mismatch(format!(
            "{} resistances for {} edges",
            er.len(),
            graph.edge_count()
        )));
    }
    let m = graph.edge_count();
    let budget = params.budget(graph.vertex_count());
    if m <= budget {
        return Ok(Sparsified {
            graph: graph.clone(),
            kept: (0..m).collect(),
        });
    }

    let importance: Vec<f64> = graph
        .edges()
        .iter()
        .zip(&er.raw)
        .map(|(e, r)| e.w * r)
        .collect();
    let mut taken = vec![false; m];
    let mut kept = Vec::with_capacity(budget);

    if params.ensure_connected {
        // Maximum-importance spanning forest; bridges have importance 1 and
        // always enter first.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| importance[b].total_cmp(&importance[a]).then(a.cmp(&b)));
        let mut dsu = Dsu::new(graph.vertex_count());
        for i in order {
            let e = graph.edge(i);
            if dsu.union(e.u, e.v) {
                taken[i] = true;
                kept.push(i);
            }
        }
        if kept.len() > budget {
            log::warn!(
                "spanning forest has {} edges, above the budget of {budget}",
                kept.len()
            );
        }
    }

    // Weighted sampling without replacement (Efraimidis–Spirakis): keep the
    // smallest Exp(1)/p keys.
    let remaining = budget.saturating_sub(kept.len());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut keys: Vec<(f64, usize)> = (0..m)
        .filter_map(|i| {
            let u: f64 = rng.random();
            if taken[i] || importance[i] <= 0.0 {
                return None;
            }
            Some((-(1.0 - u).ln() / importance[i], i))
        })
        .collect();
    keys.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    kept.extend(keys.into_iter().take(remaining).map(|(_, i)| i));
    kept.sort_unstable();
    Ok(Sparsified {
        graph: graph.edge_subgraph(&kept),
        kept,
    })
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}
