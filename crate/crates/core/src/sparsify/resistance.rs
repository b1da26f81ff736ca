//! Effective resistance of every edge.
//!
//! The exact method inverts the grounded Laplacian `L + J/k` of each connected
//! component (size `k`); since `J/k` lies in the null space complement only
//! through the all-ones direction it cancels in `(χu − χv)ᵀ M (χu − χv)`.
//! The approximate method is the random-projection sketch: with `Q` a
//! `k × m` matrix of ±1/√k entries, `Z = Q W^{1/2} B L⁺` satisfies
//! `‖Z(χu − χv)‖² ≈ ER(u, v)` within relative error `tol` w.h.p. when
//! `k ≥ 24 ln n / tol²`. Each row of `Z` costs one Laplacian solve.

use super::solver::ComponentLaplacian;
use crate::error::{Error, Result};
use crate::graph::Graph;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResistanceMethod {
    Exact,
    Approximate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ResistanceOptions {
    /// `None` picks exact up to `auto_exact_limit` vertices, approximate above.
    pub method: Option<ResistanceMethod>,
    /// Target relative error of the approximate method.
    pub tol: f64,
    pub seed: u64,
    /// Largest component the exact method will densify.
    pub exact_cap: usize,
    pub auto_exact_limit: usize,
    pub solver_tol: f64,
    pub max_iterations: usize,
}

impl Default for ResistanceOptions {
    fn default() -> Self {
        ResistanceOptions {
            method: None,
            tol: 0.3,
            seed: 0,
            exact_cap: 5000,
            auto_exact_limit: 2000,
            solver_tol: 1e-9,
            max_iterations: 20_000,
        }
    }
}

impl ResistanceOptions {
    pub fn exact() -> Self {
        ResistanceOptions {
            method: Some(ResistanceMethod::Exact),
            ..Default::default()
        }
    }

    pub fn approximate(tol: f64, seed: u64) -> Self {
        ResistanceOptions {
            method: Some(ResistanceMethod::Approximate),
            tol,
            seed,
            ..Default::default()
        }
    }

    fn resolve(&self, n: usize) -> ResistanceMethod {
        self.method.unwrap_or(if n <= self.auto_exact_limit {
            ResistanceMethod::Exact
        } else {
            ResistanceMethod::Approximate
        })
    }
}

/// Per-edge effective resistances, indexed like `Graph::edges()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveResistanceMap {
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    pub method: ResistanceMethod,
    pub tolerance: f64,
}

impl EffectiveResistanceMap {
    /// Builds the map from raw values, min-max normalizing over all edges.
    pub fn from_raw(raw: Vec<f64>, method: ResistanceMethod, tolerance: f64) -> Self {
        let normalized = normalize(&raw);
        EffectiveResistanceMap {
            raw,
            normalized,
            method,
            tolerance,
        }
    }

    /// Map with every normalized value equal, for which SEB reduces to FDEB.
    pub fn uniform(edge_count: usize) -> Self {
        Self::from_raw(vec![1.0; edge_count], ResistanceMethod::Exact, 0.0)
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// CSV with header `u,v,raw,normalized`.
    pub fn to_csv(&self, graph: &Graph) -> String {
        let mut out = String::from("u,v,raw,normalized\n");
        for (e, (r, n)) in graph.edges().iter().zip(self.raw.iter().zip(&self.normalized)) {
            let _ = writeln!(out, "{},{},{:?},{:?}", e.u, e.v, r, n);
        }
        out
    }

    /// Restriction to a subset of edge indices (e.g. a sparsifier), keeping
    /// the normalization of the full map.
    pub fn select(&self, indices: &[usize]) -> Self {
        EffectiveResistanceMap {
            raw: indices.iter().map(|&i| self.raw[i]).collect(),
            normalized: indices.iter().map(|&i| self.normalized[i]).collect(),
            method: self.method,
            tolerance: self.tolerance,
        }
    }
}

/// Min-max normalization; a constant input maps to all ones. Spreads below
/// 1e-9 relative are rounding noise and count as constant.
pub fn normalize(raw: &[f64]) -> Vec<f64> {
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi - lo > 1e-9 * hi.abs()) {
        return vec![1.0; raw.len()];
    }
    raw.iter().map(|r| (r - lo) / (hi - lo)).collect()
}

/// One connected component with at least one edge, in local numbering.
struct Component {
    vertices: Vec<usize>,
    /// `(edge index, local u, local v, weight)`
    edges: Vec<(usize, usize, usize, f64)>,
}

fn split_components(graph: &Graph) -> Vec<Component> {
    let labels = graph.components();
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut local = vec![0usize; graph.vertex_count()];
    let mut comps: Vec<Component> = (0..count)
        .map(|_| Component {
            vertices: Vec::new(),
            edges: Vec::new(),
        })
        .collect();
    for (v, &c) in labels.iter().enumerate() {
        local[v] = comps[c].vertices.len();
        comps[c].vertices.push(v);
    }
    for (i, e) in graph.edges().iter().enumerate() {
        comps[labels[e.u]].edges.push((i, local[e.u], local[e.v], e.w));
    }
    comps.retain(|c| !c.edges.is_empty());
    comps
}

pub fn effective_resistances(graph: &Graph, opts: &ResistanceOptions) -> Result<EffectiveResistanceMap> {
    if graph.edge_count() == 0 {
        return Err(Error::InvalidGraph("graph has no edges".into()));
    }
    let method = opts.resolve(graph.vertex_count());
    if method == ResistanceMethod::Approximate && !(opts.tol > 0.0) {
        return Err(Error::InvalidParam(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let mut raw = vec![0.0; graph.edge_count()];
    for (ci, comp) in split_components(graph).iter().enumerate() {
        let values = match method {
            ResistanceMethod::Exact => exact_component(comp, opts.exact_cap)?,
            ResistanceMethod::Approximate => approximate_component(
                comp,
                opts,
                opts.seed.wrapping_add((ci as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            )?,
        };
        for (&(i, ..), r) in comp.edges.iter().zip(values) {
            raw[i] = r;
        }
    }
    let tolerance = match method {
        ResistanceMethod::Exact => 0.0,
        ResistanceMethod::Approximate => opts.tol,
    };
    Ok(EffectiveResistanceMap::from_raw(raw, method, tolerance))
}

fn exact_component(comp: &Component, cap: usize) -> Result<Vec<f64>> {
    let k = comp.vertices.len();
    if k > cap {
        return Err(Error::TooLarge { n: k, cap });
    }
    let shift = 1.0 / k as f64;
    let mut m = DMatrix::from_element(k, k, shift);
    for &(_, u, v, w) in &comp.edges {
        m[(u, u)] += w;
        m[(v, v)] += w;
        m[(u, v)] -= w;
        m[(v, u)] -= w;
    }
    let inv = m
        .cholesky()
        .ok_or_else(|| Error::InvalidGraph("component Laplacian is not positive definite".into()))?
        .inverse();
    Ok(comp
        .edges
        .iter()
        .map(|&(_, u, v, _)| inv[(u, u)] + inv[(v, v)] - 2.0 * inv[(u, v)])
        .collect())
}

/// Number of projection rows for the sketch.
pub fn sketch_rows(n: usize, tol: f64) -> usize {
    ((24.0 * (n.max(2) as f64).ln()) / (tol * tol)).ceil() as usize
}

fn approximate_component(comp: &Component, opts: &ResistanceOptions, seed: u64) -> Result<Vec<f64>> {
    let n = comp.vertices.len();
    let rows = sketch_rows(n, opts.tol);
    let lap = ComponentLaplacian::new(n, comp.edges.iter().map(|&(_, u, v, w)| (u, v, w)));
    let sqrt_w: Vec<f64> = comp.edges.iter().map(|e| e.3.sqrt()).collect();
    let mut acc = vec![0.0; comp.edges.len()];
    const CHUNK: usize = 32;
    let row_ids: Vec<usize> = (0..rows).collect();
    for chunk in row_ids.chunks(CHUNK) {
        let parts: Vec<Vec<f64>> = chunk
            .par_iter()
            .map(|&row| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(row as u64);
                let mut b = vec![0.0; n];
                for (&(_, u, v, _), sw) in comp.edges.iter().zip(&sqrt_w) {
                    let q = if rng.random::<bool>() { *sw } else { -*sw };
                    b[u] += q;
                    b[v] -= q;
                }
                let z = lap.solve(&b, opts.solver_tol, opts.max_iterations)?;
                Ok(comp
                    .edges
                    .iter()
                    .map(|&(_, u, v, _)| (z[u] - z[v]).powi(2))
                    .collect())
            })
            .collect::<Result<_>>()?;
        // Fixed summation order keeps the result independent of thread count.
        for part in parts {
            for (a, p) in acc.iter_mut().zip(part) {
                *a += p;
            }
        }
    }
    Ok(acc.into_iter().map(|a| a / rows as f64).collect())
}

/// `(Σ_e w_e·ER(e), vertex count − 1)` for each component with edges.
pub fn foster_sums(graph: &Graph, er: &EffectiveResistanceMap) -> Vec<(f64, f64)> {
    split_components(graph)
        .iter()
        .map(|c| {
            let sum = c.edges.iter().map(|&(i, _, _, w)| w * er.raw[i]).sum();
            (sum, (c.vertices.len() - 1) as f64)
        })
        .collect()
}
