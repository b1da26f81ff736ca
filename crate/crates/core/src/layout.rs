//! Vertex placement for graphs that arrive without coordinates.
//!
//! `Force` is a Fruchterman–Reingold spring embedder: repulsion `k²/d`
//! between every vertex pair, attraction `d²/k` along edges, displacement
//! capped by a temperature that decays linearly from `width/10` to zero.

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Drawing, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LayoutAlgorithm {
    Import,
    Force,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutParams {
    pub algorithm: LayoutAlgorithm,
    pub iterations: usize,
    pub seed: u64,
    pub width: f64,
    pub height: f64,
    /// In the sparsify-then-bundle pipeline, draw the sparsified graph at the
    /// positions of the full graph instead of laying it out again.
    pub reuse_positions: bool,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            algorithm: LayoutAlgorithm::Force,
            iterations: 300,
            seed: 0,
            width: 1000.0,
            height: 1000.0,
            reuse_positions: true,
        }
    }
}

impl LayoutParams {
    pub fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidParam("layout iterations must be at least 1".into()));
        }
        if !(self.width > 0.0 && self.height > 0.0 && self.width.is_finite() && self.height.is_finite()) {
            return Err(Error::InvalidParam("layout area must be positive".into()));
        }
        Ok(())
    }
}

/// Straight-line drawing of `graph`. `imported` supplies the coordinates for
/// [`LayoutAlgorithm::Import`] and is ignored otherwise.
pub fn compute_layout(graph: &Graph, params: &LayoutParams, imported: Option<&[Point]>) -> Result<Drawing> {
    if graph.vertex_count() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    match params.algorithm {
        LayoutAlgorithm::Import => {
            let pos = imported.ok_or_else(|| {
                Error::InvalidParam("import layout requires vertex coordinates".into())
            })?;
            Drawing::straight(graph, pos.to_vec())
        }
        LayoutAlgorithm::Force => {
            params.validate()?;
            Drawing::straight(graph, force_positions(graph, params))
        }
    }
}

fn force_positions(graph: &Graph, params: &LayoutParams) -> Vec<Point> {
    let n = graph.vertex_count();
    let (w, h) = (params.width, params.height);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pos: Vec<Point> = (0..n)
        .map(|_| Point::new(rng.random::<f64>() * w, rng.random::<f64>() * h))
        .collect();
    if n == 1 {
        return vec![Point::new(w / 2.0, h / 2.0)];
    }
    let k = (w * h / n as f64).sqrt();
    let k2 = k * k;
    let t0 = w / 10.0;
    for iter in 0..params.iterations {
        let temp = t0 * (1.0 - iter as f64 / params.iterations as f64);
        let current = &pos;
        let disp: Vec<Point> = (0..n)
            .into_par_iter()
            .map(|v| {
                let pv = current[v];
                let mut d = Point::default();
                for (u, &pu) in current.iter().enumerate() {
                    if u == v {
                        continue;
                    }
                    let delta = separation(pv, pu, v, u, k);
                    let dist = delta.norm();
                    d += delta * (k2 / (dist * dist));
                }
                for &(u, _) in graph.neighbors(v) {
                    let delta = separation(pv, current[u], v, u, k);
                    let dist = delta.norm();
                    d += delta * (-dist / k);
                }
                d
            })
            .collect();
        for (p, d) in pos.iter_mut().zip(disp) {
            let len = d.norm();
            if len > 0.0 {
                *p += d * (len.min(temp) / len);
            }
            p.x = p.x.clamp(0.0, w);
            p.y = p.y.clamp(0.0, h);
        }
    }
    pos
}

/// `a − b`, nudged apart deterministically when the points coincide.
fn separation(a: Point, b: Point, ia: usize, ib: usize, k: f64) -> Point {
    let d = a - b;
    if d.norm() > 1e-9 * k {
        return d;
    }
    let angle = ((ia * 31 + ib * 17) % 360) as f64 * std::f64::consts::PI / 180.0;
    let sign = if ia < ib { 1.0 } else { -1.0 };
    Point::new(angle.cos(), angle.sin()) * (1e-3 * k * sign)
}
