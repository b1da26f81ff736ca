//! Pairwise edge compatibility.
//!
//! Geometric compatibility is the product of the four classic FDEB terms
//! (angle, scale, position, visibility). The spectral terms compare the
//! normalized effective resistances of the two edges.

use crate::geometry::Point;
use serde::{Deserialize, Serialize};

/// A straight edge segment `a → b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn vector(&self) -> Point {
        self.b - self.a
    }

    pub fn length(&self) -> f64 {
        self.vector().norm()
    }

    pub fn midpoint(&self) -> Point {
        self.a.lerp(self.b, 0.5)
    }

    fn project(&self, p: Point) -> Point {
        let d = self.vector();
        let t = (p - self.a).dot(d) / d.dot(d);
        self.a + d * t
    }
}

pub fn angle_compatibility(p: &Segment, q: &Segment) -> f64 {
    (p.vector().dot(q.vector()) / (p.length() * q.length())).abs().min(1.0)
}

pub fn scale_compatibility(p: &Segment, q: &Segment) -> f64 {
    let (lp, lq) = (p.length(), q.length());
    let avg = (lp + lq) / 2.0;
    2.0 / (avg / lp.min(lq) + lp.max(lq) / avg)
}

pub fn position_compatibility(p: &Segment, q: &Segment) -> f64 {
    let avg = (p.length() + q.length()) / 2.0;
    avg / (avg + p.midpoint().dist(q.midpoint()))
}

/// How well `q` projects onto the middle of `p`.
fn visibility(p: &Segment, q: &Segment) -> f64 {
    let i0 = p.project(q.a);
    let i1 = p.project(q.b);
    let span = i0.dist(i1);
    if span == 0.0 {
        return 0.0;
    }
    let im = i0.lerp(i1, 0.5);
    (1.0 - 2.0 * p.midpoint().dist(im) / span).max(0.0)
}

pub fn visibility_compatibility(p: &Segment, q: &Segment) -> f64 {
    visibility(p, q).min(visibility(q, p))
}

/// Geometric compatibility `C_G`, in `[0, 1]`; zero when either edge has no length.
pub fn c_geometric(p: &Segment, q: &Segment) -> f64 {
    Prepared::new(p).compatibility(&Prepared::new(q), 0.0)
}

/// A segment with its length, midpoint and direction cached.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Prepared {
    seg: Segment,
    vector: Point,
    length: f64,
    midpoint: Point,
}

impl Prepared {
    pub(crate) fn new(seg: &Segment) -> Self {
        Prepared {
            seg: *seg,
            vector: seg.vector(),
            length: seg.length(),
            midpoint: seg.midpoint(),
        }
    }

    pub(crate) fn vector(&self) -> Point {
        self.vector
    }

    /// `C_G` against `q`, or 0 as soon as the angle, scale and position
    /// terms alone fall below `floor`.
    pub(crate) fn compatibility(&self, q: &Prepared, floor: f64) -> f64 {
        let (lp, lq) = (self.length, q.length);
        if lp == 0.0 || lq == 0.0 {
            return 0.0;
        }
        let angle = (self.vector.dot(q.vector) / (lp * lq)).abs().min(1.0);
        let avg = (lp + lq) / 2.0;
        let scale = 2.0 / (avg / lp.min(lq) + lp.max(lq) / avg);
        let position = avg / (avg + self.midpoint.dist(q.midpoint));
        let partial = angle * scale * position;
        if partial == 0.0 || partial < floor {
            return 0.0;
        }
        let vis = visibility(&self.seg, &q.seg).min(visibility(&q.seg, &self.seg));
        (partial * vis).clamp(0.0, 1.0)
    }
}

/// `1 − |a − b|` on normalized resistances.
pub fn c_er1(a: f64, b: f64) -> f64 {
    1.0 - (a - b).abs()
}

/// `min(a, b) / max(a, b)` on normalized resistances; `(0, 0)` is fully
/// compatible and a single zero is incompatible.
pub fn c_er2(a: f64, b: f64) -> f64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        1.0
    } else {
        lo / hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SebVariant {
    Er1,
    Er2,
}

impl SebVariant {
    pub fn compatibility(self, a: f64, b: f64) -> f64 {
        match self {
            SebVariant::Er1 => c_er1(a, b),
            SebVariant::Er2 => c_er2(a, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompatibilityScore {
    pub geometric: f64,
    pub spectral: f64,
    pub combined: f64,
}

impl CompatibilityScore {
    pub fn new(geometric: f64, spectral: f64) -> Self {
        CompatibilityScore {
            geometric,
            spectral,
            combined: geometric * spectral,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by))
    }

    #[test]
    fn identical_segments_are_fully_compatible() {
        let p = seg(0.3, 0.1, 2.0, 1.7);
        assert_eq!(c_geometric(&p, &p), 1.0);
    }

    #[test]
    fn perpendicular_crossing_is_incompatible() {
        let p = seg(-1.0, 0.0, 1.0, 0.0);
        let q = seg(0.0, -1.0, 0.0, 1.0);
        assert_eq!(c_geometric(&p, &q), 0.0);
    }

    #[test]
    fn parallel_offset_hand_value() {
        // angle 1, scale 1, position 1/(1+1), visibility 1.
        let p = seg(0.0, 0.0, 1.0, 0.0);
        let q = seg(0.0, 1.0, 1.0, 1.0);
        assert_eq!(angle_compatibility(&p, &q), 1.0);
        assert_eq!(scale_compatibility(&p, &q), 1.0);
        assert_eq!(position_compatibility(&p, &q), 0.5);
        assert_eq!(visibility_compatibility(&p, &q), 1.0);
        assert_eq!(c_geometric(&p, &q), 0.5);
    }

    #[test]
    fn half_overlap_visibility_and_scale() {
        // q covers the right half of p: its projection midpoint is 0.5 from
        // p's midpoint over a span of 1, so V(p,q) = 0; lengths 2 and 1 give
        // scale 2 / (1.5/1 + 2/1.5) = 12/17.
        let p = seg(0.0, 0.0, 2.0, 0.0);
        let q = seg(1.0, 0.5, 2.0, 0.5);
        assert_eq!(visibility(&p, &q), 0.0);
        assert!((scale_compatibility(&p, &q) - 12.0 / 17.0).abs() < 1e-15);
    }

    #[test]
    fn zero_length_is_zero() {
        let p = seg(1.0, 1.0, 1.0, 1.0);
        let q = seg(0.0, 0.0, 1.0, 0.0);
        assert_eq!(c_geometric(&p, &q), 0.0);
    }

    #[test]
    fn spectral_terms() {
        assert_eq!(c_er1(0.4, 0.4), 1.0);
        assert!((c_er1(0.2, 0.5) - 0.7).abs() < 1e-15);
        assert_eq!(c_er1(0.0, 1.0), 0.0);
        assert_eq!(c_er2(0.3, 0.3), 1.0);
        assert_eq!(c_er2(0.25, 0.5), 0.5);
        assert_eq!(c_er2(0.0, 0.3), 0.0);
        assert_eq!(c_er2(0.0, 0.0), 1.0);
        let s = CompatibilityScore::new(0.8, 0.5);
        assert_eq!(s.combined, 0.4);
    }
}
