//! Bundler dispatch and the sparsify-then-bundle pipeline.
//!
//! The pipeline draws a spectral sparsifier `G'` of `G` and bundles that
//! drawing instead of the drawing of `G`. Only the bundling stage is timed;
//! for SEB this includes computing the resistances of the bundled graph.

use super::compat::SebVariant;
use super::epb::{epb_bundle, sepb_bundle, EpbParams};
use super::fdeb::{fdeb_bundle, seb_bundle, FdebParams};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{Drawing, Graph};
use crate::layout::{compute_layout, LayoutParams};
use crate::sparsify::{effective_resistances, spectral_sparsify, ResistanceOptions, SparsifyParams};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BundlerKind {
    Fdeb,
    Seb1,
    Seb2,
    Epb,
    Sepb,
}

impl BundlerKind {
    pub const ALL: [BundlerKind; 5] = [
        BundlerKind::Fdeb,
        BundlerKind::Seb1,
        BundlerKind::Seb2,
        BundlerKind::Epb,
        BundlerKind::Sepb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BundlerKind::Fdeb => "fdeb",
            BundlerKind::Seb1 => "seb1",
            BundlerKind::Seb2 => "seb2",
            BundlerKind::Epb => "epb",
            BundlerKind::Sepb => "sepb",
        }
    }
}

impl fmt::Display for BundlerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BundlerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BundlerKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParam(format!("unknown bundler '{s}'")))
    }
}

/// Parameters for every bundler; each uses the part it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BundlerParams {
    pub fdeb: FdebParams,
    pub epb: EpbParams,
    /// Resistances used by SEB for its compatibility term.
    pub resistance: ResistanceOptions,
}

/// Bundles `drawing` of `graph` with the chosen algorithm.
pub fn run_bundler(kind: BundlerKind, graph: &Graph, drawing: &Drawing, params: &BundlerParams) -> Result<Drawing> {
    if !drawing.matches(graph) {
        return Err(Error::Mismatch("drawing does not match graph".into()));
    }
    match kind {
        BundlerKind::Fdeb => fdeb_bundle(drawing, &params.fdeb),
        BundlerKind::Seb1 | BundlerKind::Seb2 => {
            let variant = if kind == BundlerKind::Seb1 {
                SebVariant::Er1
            } else {
                SebVariant::Er2
            };
            let er = effective_resistances(graph, &params.resistance)?;
            seb_bundle(drawing, &er, variant, &params.fdeb)
        }
        BundlerKind::Epb => epb_bundle(graph, drawing, &params.epb),
        BundlerKind::Sepb => sepb_bundle(graph, drawing, &params.epb),
    }
}

/// [`run_bundler`] plus its wall-clock time in seconds.
pub fn timed_bundle(
    kind: BundlerKind,
    graph: &Graph,
    drawing: &Drawing,
    params: &BundlerParams,
) -> Result<(Drawing, f64)> {
    let start = Instant::now();
    let out = run_bundler(kind, graph, drawing, params)?;
    Ok((out, start.elapsed().as_secs_f64()))
}

#[derive(Clone, Debug)]
pub struct FebOutput {
    /// Bundled drawing of the sparsifier.
    pub bundled: Drawing,
    /// The sparsifier.
    pub sparsified: Graph,
    /// Indices of the input edges kept in the sparsifier.
    pub kept: Vec<usize>,
    /// Straight drawing of the sparsifier that was bundled.
    pub straight: Drawing,
    pub bundle_seconds: f64,
}

/// Sparsify `graph`, draw the sparsifier, bundle it.
///
/// `base` is the drawing of the full graph. When `layout.reuse_positions` is
/// set (or no base is given but the layout imports coordinates) the
/// sparsifier is drawn at the same vertex positions; otherwise it is laid out
/// afresh with `layout`.
pub fn feb_pipeline(
    graph: &Graph,
    base: Option<&Drawing>,
    imported: Option<&[Point]>,
    kind: BundlerKind,
    sparsify: &SparsifyParams,
    layout: &LayoutParams,
    params: &BundlerParams,
) -> Result<FebOutput> {
    let er = effective_resistances(graph, &params.resistance)?;
    let sparse = spectral_sparsify(graph, &er, sparsify)?;
    let straight = match base {
        Some(d) if layout.reuse_positions => Drawing::straight(&sparse.graph, d.positions.clone())?,
        _ => compute_layout(&sparse.graph, layout, imported)?,
    };
    let (bundled, bundle_seconds) = timed_bundle(kind, &sparse.graph, &straight, params)?;
    Ok(FebOutput {
        bundled,
        sparsified: sparse.graph,
        kept: sparse.kept,
        straight,
        bundle_seconds,
    })
}

/// `(t(X) − t(FX)) / t(X)`.
pub fn runtime_improvement(direct_seconds: f64, feb_seconds: f64) -> f64 {
    if direct_seconds <= 0.0 {
        return 0.0;
    }
    (direct_seconds - feb_seconds) / direct_seconds
}

/// Median of a non-empty sample.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
