//! Which drawn edges read as one bundle.
//!
//! Two polylines are bundled when at least a fraction `tau` of the shorter
//! one (sampled evenly by arc length) lies within `eps` of the other; bundles
//! are the transitive closure of that relation. Within a bundle every member
//! is oriented by matching its endpoints to the endpoints of the bundle's
//! first member.

use crate::error::{Error, Result};
use crate::geometry::{point_polyline_distance, polyline_length, resample, Point};
use crate::graph::{Drawing, VertexId};
use crate::sparsify::Dsu;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

impl End {
    pub fn opposite(self) -> End {
        match self {
            End::A => End::B,
            End::B => End::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BundleMember {
    pub edge: usize,
    /// `false`: the edge's `u` sits at end A; `true`: at end B.
    pub flipped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleAssignment {
    bundles: Vec<Vec<BundleMember>>,
    /// `(bundle, position)` per edge.
    slot: Vec<(usize, usize)>,
}

impl BundleAssignment {
    /// Every edge alone.
    pub fn singletons(edge_count: usize) -> Self {
        let bundles = (0..edge_count)
            .map(|e| vec![BundleMember { edge: e, flipped: false }])
            .collect();
        BundleAssignment {
            bundles,
            slot: (0..edge_count).map(|e| (e, 0)).collect(),
        }
    }

    /// Validates that `bundles` partitions `0..edge_count`.
    pub fn new(edge_count: usize, bundles: Vec<Vec<BundleMember>>) -> Result<Self> {
        let mut slot = vec![(usize::MAX, 0); edge_count];
        for (b, members) in bundles.iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidParam(format!("bundle {b} is empty")));
            }
            for (k, m) in members.iter().enumerate() {
                if m.edge >= edge_count {
                    return Err(Error::InvalidParam(format!("edge {} out of range", m.edge)));
                }
                if slot[m.edge].0 != usize::MAX {
                    return Err(Error::InvalidParam(format!("edge {} in two bundles", m.edge)));
                }
                slot[m.edge] = (b, k);
            }
        }
        if let Some(e) = slot.iter().position(|s| s.0 == usize::MAX) {
            return Err(Error::InvalidParam(format!("edge {e} is in no bundle")));
        }
        Ok(BundleAssignment { bundles, slot })
    }

    pub fn edge_count(&self) -> usize {
        self.slot.len()
    }

    pub fn bundles(&self) -> &[Vec<BundleMember>] {
        &self.bundles
    }

    pub fn bundle_of(&self, edge: usize) -> &[BundleMember] {
        &self.bundles[self.slot[edge].0]
    }

    pub fn member(&self, edge: usize) -> BundleMember {
        let (b, k) = self.slot[edge];
        self.bundles[b][k]
    }

    pub fn is_all_singletons(&self) -> bool {
        self.bundles.iter().all(|b| b.len() == 1)
    }

    /// Vertex of edge `(u, v)` sitting at `end` of its bundle.
    pub fn endpoint_at(&self, edge: (VertexId, VertexId), index: usize, end: End) -> VertexId {
        let flipped = self.member(index).flipped;
        match (end, flipped) {
            (End::A, false) | (End::B, true) => edge.0,
            _ => edge.1,
        }
    }

    /// Bundle end at which `vertex` (an endpoint of edge `index`) sits.
    pub fn end_of(&self, edge: (VertexId, VertexId), index: usize, vertex: VertexId) -> End {
        if self.endpoint_at(edge, index, End::A) == vertex {
            End::A
        } else {
            End::B
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BundleParams {
    /// Proximity, as a fraction of the drawing diagonal.
    pub eps_fraction: f64,
    pub tau: f64,
    /// Samples taken along the shorter polyline of a candidate pair.
    pub samples: usize,
}

impl Default for BundleParams {
    fn default() -> Self {
        BundleParams {
            eps_fraction: 0.005,
            tau: 0.7,
            samples: 16,
        }
    }
}

/// Bundle detection with `eps` in drawing units.
pub fn detect_bundles(drawing: &Drawing, eps: f64, tau: f64) -> Result<BundleAssignment> {
    detect_bundles_with(drawing, eps, tau, BundleParams::default().samples)
}

pub fn detect_bundles_relative(drawing: &Drawing, params: &BundleParams) -> Result<BundleAssignment> {
    let eps = params.eps_fraction * drawing.diagonal();
    detect_bundles_with(drawing, eps, params.tau, params.samples)
}

fn detect_bundles_with(drawing: &Drawing, eps: f64, tau: f64, samples: usize) -> Result<BundleAssignment> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidParam(format!("eps must be positive, got {eps}")));
    }
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidParam(format!("tau must lie in (0, 1], got {tau}")));
    }
    let m = drawing.edge_count();
    let lengths: Vec<f64> = drawing.polylines.iter().map(|l| polyline_length(l)).collect();

    // Dense points every `eps` along each polyline, hashed into cells of 2·eps:
    // any point within eps of a polyline is within 1.5·eps of one of its dense
    // points, hence in the 3×3 block of cells around it.
    let cell = 2.0 * eps;
    let key = |p: Point| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    let mut probes: Vec<Vec<Point>> = Vec::with_capacity(m);
    for (i, line) in drawing.polylines.iter().enumerate() {
        let count = ((lengths[i] / eps).ceil() as usize + 1).clamp(2, 1 << 20);
        let dense = resample(line, count);
        let mut cells: Vec<(i64, i64)> = dense.iter().map(|&p| key(p)).collect();
        cells.sort_unstable();
        cells.dedup();
        for c in cells {
            grid.entry(c).or_default().push(i as u32);
        }
        probes.push(resample(line, samples.max(2)));
    }

    let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, pts) in probes.iter().enumerate() {
        for &p in pts {
            let (cx, cy) = key(p);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(list) = grid.get(&(cx + dx, cy + dy)) {
                        for &j in list {
                            let j = j as usize;
                            if j != i {
                                candidates.insert((i.min(j), i.max(j)));
                            }
                        }
                    }
                }
            }
        }
    }

    let mut dsu = Dsu::new(m);
    for (i, j) in candidates {
        let (short, long) = if (lengths[i], i) <= (lengths[j], j) { (i, j) } else { (j, i) };
        let pts = &probes[short];
        let within = pts
            .iter()
            .filter(|&&p| point_polyline_distance(p, &drawing.polylines[long]) <= eps)
            .count();
        if within as f64 >= tau * pts.len() as f64 {
            dsu.union(i, j);
        }
    }

    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..m {
        groups.entry(dsu.find(e)).or_default().push(e);
    }
    let mut bundles: Vec<Vec<usize>> = groups.into_values().collect();
    bundles.sort_unstable_by_key(|b| b[0]);
    let bundles = bundles
        .into_iter()
        .map(|members| orient(drawing, &members))
        .collect();
    BundleAssignment::new(m, bundles)
}

fn orient(drawing: &Drawing, members: &[usize]) -> Vec<BundleMember> {
    let (ru, rv) = drawing.edges[members[0]];
    let (a, b) = (drawing.positions[ru], drawing.positions[rv]);
    members
        .iter()
        .map(|&e| {
            let (u, v) = drawing.edges[e];
            let (pu, pv) = (drawing.positions[u], drawing.positions[v]);
            let straight = pu.dist(a) + pv.dist(b);
            let crossed = pu.dist(b) + pv.dist(a);
            BundleMember {
                edge: e,
                flipped: crossed < straight,
            }
        })
        .collect()
}
