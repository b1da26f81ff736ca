//! Force-directed edge bundling, with an optional spectral compatibility
//! factor (SEB).
//!
//! Each cycle doubles the number of division points per edge, halves the step
//! and halves the iteration count. Within an iteration every division point
//! `p_i` of edge `P` feels
//!
//! * a spring pull `k_p · ((p_{i−1} − p_i) + (p_{i+1} − p_i))` scaled by the
//!   segment count over the edge length, and
//! * for every compatible edge `Q`, an attraction of magnitude
//!   `C(P, Q) / ‖q_i − p_i‖` towards `q_i`, the division point of `Q` with
//!   the same index once `Q` is oriented along `P`.
//!
//! Displacements are integrated Jacobi-style (all points read the previous
//! iteration's positions) and each partner's contribution uses a fixed
//! partner order, so results do not depend on the number of worker threads.
//! Compatibilities are computed once from the straight input drawing; pairs
//! scoring below the threshold never interact.

use super::compat::{Prepared, Segment, SebVariant};
use crate::error::{Error, Result};
use crate::geometry::{resample, Point};
use crate::graph::Drawing;
use crate::sparsify::EffectiveResistanceMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FdebParams {
    pub cycles: usize,
    /// Iterations in the first cycle; halved every cycle (at least 1).
    pub iterations_per_cycle: usize,
    /// First-cycle step as a fraction of the drawing diagonal; halved every cycle.
    pub initial_step: f64,
    pub spring_constant: f64,
    pub compatibility_threshold: f64,
}

impl Default for FdebParams {
    fn default() -> Self {
        FdebParams {
            cycles: 6,
            iterations_per_cycle: 50,
            initial_step: 0.04,
            spring_constant: 0.1,
            compatibility_threshold: 0.05,
        }
    }
}

impl FdebParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParam(m.to_string()));
        if self.cycles == 0 || self.iterations_per_cycle == 0 {
            return bad("cycles and iterations_per_cycle must be at least 1");
        }
        if !(self.initial_step > 0.0 && self.initial_step.is_finite()) {
            return bad("initial_step must be positive");
        }
        if !(self.spring_constant > 0.0 && self.spring_constant.is_finite()) {
            return bad("spring_constant must be positive");
        }
        if !(0.0..=1.0).contains(&self.compatibility_threshold) {
            return bad("compatibility_threshold must lie in [0, 1]");
        }
        Ok(())
    }

    pub fn iterations_in_cycle(&self, cycle: usize) -> usize {
        (self.iterations_per_cycle >> cycle.min(63)).max(1)
    }

    pub fn division_points_in_cycle(cycle: usize) -> usize {
        1 << cycle
    }
}

/// Compatible partners of every edge in CSR form. A negative weight marks a
/// partner running opposite to the edge.
pub(crate) struct CompatibilityLists {
    offsets: Vec<usize>,
    partners: Vec<u32>,
    weights: Vec<f32>,
}

impl CompatibilityLists {
    fn build<F>(segments: &[Segment], threshold: f64, spectral: F) -> Self
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let m = segments.len();
        let prepared: Vec<Prepared> = segments.iter().map(Prepared::new).collect();
        // Every spectral factor lies in [0, 1], so a geometric score below
        // the threshold can be dropped before the spectral term is looked at.
        let upper: Vec<Vec<(u32, f32)>> = (0..m)
            .into_par_iter()
            .map(|i| {
                let p = &prepared[i];
                let mut row = Vec::new();
                for (j, q) in prepared.iter().enumerate().skip(i + 1) {
                    let g = p.compatibility(q, threshold);
                    if g == 0.0 {
                        continue;
                    }
                    let c = g * spectral(i, j);
                    if c > 0.0 && c >= threshold {
                        let w = c as f32;
                        let signed = if p.vector().dot(q.vector()) < 0.0 { -w } else { w };
                        row.push((j as u32, signed));
                    }
                }
                row
            })
            .collect();

        let mut degree = vec![0usize; m];
        for (i, row) in upper.iter().enumerate() {
            degree[i] += row.len();
            for &(j, _) in row {
                degree[j as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; m + 1];
        for i in 0..m {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let total = offsets[m];
        let mut partners = vec![0u32; total];
        let mut weights = vec![0f32; total];
        let mut fill = offsets[..m].to_vec();
        // Rows are visited in order, so each list ends up sorted by partner.
        for (i, row) in upper.into_iter().enumerate() {
            for (j, w) in row {
                let j = j as usize;
                partners[fill[j]] = i as u32;
                weights[fill[j]] = w;
                fill[j] += 1;
                partners[fill[i]] = j as u32;
                weights[fill[i]] = w;
                fill[i] += 1;
            }
        }
        CompatibilityLists {
            offsets,
            partners,
            weights,
        }
    }

    fn of(&self, i: usize) -> impl Iterator<Item = (usize, f32)> + '_ {
        let r = self.offsets[i]..self.offsets[i + 1];
        self.partners[r.clone()]
            .iter()
            .zip(&self.weights[r])
            .map(|(&j, &w)| (j as usize, w))
    }

    pub(crate) fn pair_count(&self) -> usize {
        self.partners.len() / 2
    }
}

fn segments_of(drawing: &Drawing) -> Vec<Segment> {
    drawing
        .edges
        .iter()
        .map(|&(u, v)| Segment::new(drawing.positions[u], drawing.positions[v]))
        .collect()
}

/// Plain FDEB on geometric compatibility.
pub fn fdeb_bundle(drawing: &Drawing, params: &FdebParams) -> Result<Drawing> {
    params.validate()?;
    let segments = segments_of(drawing);
    let lists = CompatibilityLists::build(&segments, params.compatibility_threshold, |_, _| 1.0);
    Ok(run(drawing, &segments, &lists, params))
}

/// FDEB with each pair's compatibility multiplied by the chosen effective
/// resistance compatibility.
pub fn seb_bundle(
    drawing: &Drawing,
    er: &EffectiveResistanceMap,
    variant: SebVariant,
    params: &FdebParams,
) -> Result<Drawing> {
    params.validate()?;
    if er.normalized.len() < drawing.edge_count() {
        return Err(Error::MissingResistance(er.normalized.len()));
    }
    let segments = segments_of(drawing);
    let norm = &er.normalized;
    let lists = CompatibilityLists::build(&segments, params.compatibility_threshold, |i, j| {
        variant.compatibility(norm[i], norm[j])
    });
    Ok(run(drawing, &segments, &lists, params))
}

/// Number of interacting edge pairs FDEB would use on `drawing`.
pub fn compatible_pair_count(drawing: &Drawing, threshold: f64) -> usize {
    let segments = segments_of(drawing);
    CompatibilityLists::build(&segments, threshold, |_, _| 1.0).pair_count()
}

fn run(drawing: &Drawing, segments: &[Segment], lists: &CompatibilityLists, params: &FdebParams) -> Drawing {
    let diag = drawing.diagonal();
    let scale = if diag > 0.0 { diag } else { 1.0 };
    let lengths: Vec<f64> = segments.iter().map(Segment::length).collect();
    // All polylines share one buffer with a fixed stride per cycle.
    let mut stride = 2;
    let mut points: Vec<Point> = segments.iter().flat_map(|s| [s.a, s.b]).collect();

    for cycle in 0..params.cycles {
        let divisions = FdebParams::division_points_in_cycle(cycle);
        let next = divisions + 2;
        points = points.chunks(stride).flat_map(|l| resample(l, next)).collect();
        stride = next;
        let step = params.initial_step * scale * 0.5f64.powi(cycle as i32);
        let iterations = params.iterations_in_cycle(cycle);
        let mut buffer = points.clone();
        for _ in 0..iterations {
            let current = &points;
            buffer
                .par_chunks_mut(stride)
                .enumerate()
                .for_each(|(i, out)| move_edge(i, current, out, lists, lengths[i], step, params));
            std::mem::swap(&mut points, &mut buffer);
        }
    }

    Drawing {
        positions: drawing.positions.clone(),
        edges: drawing.edges.clone(),
        polylines: points.chunks(stride).map(<[Point]>::to_vec).collect(),
    }
}

fn move_edge(
    i: usize,
    points: &[Point],
    out: &mut [Point],
    lists: &CompatibilityLists,
    length: f64,
    step: f64,
    params: &FdebParams,
) {
    let stride = out.len();
    let divisions = stride - 2;
    let line = &points[i * stride..(i + 1) * stride];
    out.copy_from_slice(line);
    if length == 0.0 {
        return;
    }
    // Explicit spring diffusion is stable only below 1/2.
    let spring = (step * params.spring_constant * (divisions + 1) as f64 / length).min(0.25);
    let half_step2 = 0.5 * step * step;
    let step2 = step * step;
    for k in 1..=divisions {
        let p = line[k];
        let mut delta = ((line[k - 1] - p) + (line[k + 1] - p)) * spring;
        let mut pull = Point::default();
        for (j, w) in lists.of(i) {
            let base = j * stride;
            let q = if w < 0.0 { points[base + stride - 1 - k] } else { points[base + k] };
            let d = q - p;
            let dist2 = d.dot(d);
            if dist2 == 0.0 {
                continue;
            }
            pull += d * (f64::from(w.abs()) / dist2.max(step2));
        }
        delta += pull * half_step2;
        let len = delta.norm();
        if len > step {
            delta = delta * (step / len);
        }
        out[k] = p + delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn drawing(pos: &[(f64, f64)], pairs: &[(usize, usize)]) -> Drawing {
        let g = Graph::unweighted(pos.len(), pairs).unwrap();
        Drawing::straight(&g, pos.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn single_edge_stays_collinear() {
        let d = drawing(&[(0.0, 0.0), (3.0, 1.0)], &[(0, 1)]);
        let out = fdeb_bundle(&d, &FdebParams::default()).unwrap();
        out.validate().unwrap();
        let line = &out.polylines[0];
        assert_eq!(line.len(), 34);
        for p in line {
            // Cross product with the chord direction.
            assert!((p.x * 1.0 - p.y * 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn parallel_edges_attract() {
        let d = drawing(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.1), (1.0, 0.1)], &[(0, 1), (2, 3)]);
        let params = FdebParams {
            cycles: 1,
            ..Default::default()
        };
        let out = fdeb_bundle(&d, &params).unwrap();
        let gap = out.polylines[0][1].dist(out.polylines[1][1]);
        assert!(gap < 0.1, "gap {gap}");
    }

    #[test]
    fn incompatible_edges_stay_straight() {
        let d = drawing(
            &[(0.0, 0.0), (1.0, 0.0), (10.0, 10.0), (10.0, 11.0)],
            &[(0, 1), (2, 3)],
        );
        assert_eq!(compatible_pair_count(&d, 0.05), 0);
        let out = fdeb_bundle(&d, &FdebParams::default()).unwrap();
        for (line, &(u, v)) in out.polylines.iter().zip(&d.edges) {
            let (a, b) = (d.positions[u], d.positions[v]);
            for p in line {
                assert!(crate::geometry::point_segment_distance(*p, a, b) < 1e-9);
            }
        }
    }

    #[test]
    fn params_are_checked() {
        let d = drawing(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        for bad in [
            FdebParams { cycles: 0, ..Default::default() },
            FdebParams { initial_step: 0.0, ..Default::default() },
            FdebParams { compatibility_threshold: 1.5, ..Default::default() },
        ] {
            assert!(fdeb_bundle(&d, &bad).is_err());
        }
        assert_eq!(FdebParams::default().iterations_in_cycle(5), 1);
        assert_eq!(FdebParams::default().iterations_in_cycle(1), 25);
    }

    #[test]
    fn seb_missing_resistance() {
        let d = drawing(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], &[(0, 1), (0, 2)]);
        let er = EffectiveResistanceMap::uniform(1);
        assert!(matches!(
            seb_bundle(&d, &er, SebVariant::Er1, &FdebParams::default()),
            Err(Error::MissingResistance(1))
        ));
    }
}
