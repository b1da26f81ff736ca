use super::ambiguity::ambiguity;
use super::bundles::{detect_bundles_relative, BundleParams};
use super::fbq::{fbq_js, fbq_sq, GraphProperty};
use super::geometric::{geometric_graph, GeometricGraph};
use super::quality::{distortion, ink_reduction};
use super::raster::{rasterize_in_frame, Frame};
use crate::error::{Error, Result};
use crate::graph::{Drawing, Graph};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MetricSettings {
    /// Raster width in pixels.
    pub width: usize,
    pub line_width: f64,
    /// Binarization threshold for ink.
    pub threshold: f64,
    pub bundles: BundleParams,
    /// Hop thresholds for ambiguity; 1 and 2 are supported.
    pub gammas: Vec<usize>,
}

impl Default for MetricSettings {
    fn default() -> Self {
        MetricSettings {
            width: 2048,
            line_width: 1.0,
            threshold: 0.5,
            bundles: BundleParams::default(),
            gammas: vec![1, 2],
        }
    }
}

impl MetricSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidParam("ink threshold must lie in (0, 1)".into()));
        }
        if let Some(g) = self.gammas.iter().find(|&&g| g != 1 && g != 2) {
            return Err(Error::InvalidParam(format!("unsupported gamma {g}; use 1 or 2")));
        }
        if !(self.bundles.eps_fraction > 0.0) || !(self.bundles.tau > 0.0 && self.bundles.tau <= 1.0) {
            return Err(Error::InvalidParam("bundle detection needs eps > 0 and tau in (0, 1]".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub ink: f64,
    pub distortion_raw: f64,
    pub distortion: f64,
    pub amb1: Option<f64>,
    pub amb2: Option<f64>,
    pub fbq_js: Option<f64>,
    pub fbq_sq_dg: Option<f64>,
    pub fbq_sq_cc: Option<f64>,
    pub bundling_time_seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FbqScores {
    pub js: f64,
    pub sq_dg: f64,
    pub sq_cc: f64,
}

impl MetricsReport {
    pub fn with_fbq(mut self, scores: FbqScores) -> Self {
        self.fbq_js = Some(scores.js);
        self.fbq_sq_dg = Some(scores.sq_dg);
        self.fbq_sq_cc = Some(scores.sq_cc);
        self
    }

    pub const CSV_HEADER: &'static str =
        "ink,distortion_raw,distortion,amb1,amb2,fbq_js,fbq_sq_dg,fbq_sq_cc,bundling_time_seconds";

    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.ink,
            self.distortion_raw,
            self.distortion,
            opt(self.amb1),
            opt(self.amb2),
            opt(self.fbq_js),
            opt(self.fbq_sq_dg),
            opt(self.fbq_sq_cc),
            self.bundling_time_seconds
        )
    }
}

/// Geometric graph implied by `bundled`, a drawing of `graph`.
pub fn bundled_geometric_graph(graph: &Graph, bundled: &Drawing, params: &BundleParams) -> Result<GeometricGraph> {
    if !bundled.matches(graph) {
        return Err(Error::Mismatch("drawing does not match graph".into()));
    }
    let bundles = detect_bundles_relative(bundled, params)?;
    geometric_graph(graph, &bundles)
}

/// Metrics of `bundled` (a drawing of `graph`). Ink is measured against
/// `reference`, the unbundled drawing, on the frame its vertices define.
pub fn evaluate(
    graph: &Graph,
    reference: &Drawing,
    bundled: &Drawing,
    settings: &MetricSettings,
    bundling_time_seconds: f64,
) -> Result<MetricsReport> {
    settings.validate()?;
    if !bundled.matches(graph) {
        return Err(Error::Mismatch("bundled drawing does not match graph".into()));
    }
    let frame = Frame::for_drawing(reference, settings.width, settings.line_width)?;
    let original = rasterize_in_frame(reference, &frame, settings.line_width, settings.threshold);
    let drawn = rasterize_in_frame(bundled, &frame, settings.line_width, settings.threshold);
    let ink = ink_reduction(&original, &drawn)?;
    let (distortion_raw, distortion) = distortion(bundled)?;

    let mut report = MetricsReport {
        ink,
        distortion_raw,
        distortion,
        bundling_time_seconds,
        ..Default::default()
    };
    if !settings.gammas.is_empty() {
        let bundles = detect_bundles_relative(bundled, &settings.bundles)?;
        let geo = geometric_graph(graph, &bundles)?;
        for &g in &settings.gammas {
            let value = Some(ambiguity(graph, &bundles, &geo, g)?);
            match g {
                1 => report.amb1 = value,
                _ => report.amb2 = value,
            }
        }
    }
    Ok(report)
}

/// FBQ scores of the sparsified bundling's geometric graph against the
/// original bundling's.
pub fn fbq_scores(gb: &GeometricGraph, gb_prime: &GeometricGraph) -> Result<FbqScores> {
    Ok(FbqScores {
        js: fbq_js(gb, gb_prime)?,
        sq_dg: fbq_sq(gb, gb_prime, GraphProperty::AvgNeighborDegree)?,
        sq_cc: fbq_sq(gb, gb_prime, GraphProperty::LocalClustering)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    #[test]
    fn straight_drawing_report() {
        let g = Graph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let pos = vec![
            Point::new(0.0, 0.0),
            Point::new(10.0, 0.0),
            Point::new(10.0, 10.0),
            Point::new(0.0, 10.0),
        ];
        let d = Drawing::straight(&g, pos).unwrap();
        let r = evaluate(&g, &d, &d, &MetricSettings::default(), 0.5).unwrap();
        assert_eq!(r.ink, 1.0);
        assert_eq!((r.distortion_raw, r.distortion), (1.0, 0.0));
        assert_eq!((r.amb1, r.amb2), (Some(0.0), Some(0.0)));
        assert_eq!(r.csv_row().split(',').count(), MetricsReport::CSV_HEADER.split(',').count());

        let geo = bundled_geometric_graph(&g, &d, &BundleParams::default()).unwrap();
        let s = fbq_scores(&geo, &geo).unwrap();
        assert_eq!((s.js, s.sq_dg, s.sq_cc), (1.0, 0.0, 0.0));
    }

    #[test]
    fn rejects_odd_gamma() {
        let s = MetricSettings {
            gammas: vec![3],
            ..Default::default()
        };
        assert!(s.validate().is_err());
    }
}
