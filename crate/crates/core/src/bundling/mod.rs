//! Bundling algorithms.

pub mod compat;
mod epb;
mod fdeb;
mod pipeline;
mod spanner;

pub use compat::{c_er1, c_er2, c_geometric, CompatibilityScore, Segment, SebVariant};
pub use epb::{
    epb_bundle, epb_bundle_with_report, sepb_bundle, sepb_bundle_with_report, smooth, EpbParams,
    EpbReport,
};
pub use fdeb::{compatible_pair_count, fdeb_bundle, seb_bundle, FdebParams};
pub use pipeline::{
    feb_pipeline, median, run_bundler, runtime_improvement, timed_bundle, BundlerKind,
    BundlerParams, FebOutput,
};
pub use spanner::greedy_spanner;
