//! Quality metrics for bundled drawings: ink, distortion, ambiguity, and the
//! FBQ comparisons between a bundling and its sparsified counterpart.

pub mod ambiguity;
pub mod bundles;
pub mod fbq;
pub mod geometric;
pub mod quality;
pub mod raster;
pub mod report;

pub use ambiguity::{ambiguity, ambiguity_counts};
pub use bundles::{detect_bundles, detect_bundles_relative, BundleAssignment, BundleMember, BundleParams, End};
pub use fbq::{fbq_js, fbq_sq, ks_distance, property_distribution, DistributionSummary, GraphProperty};
pub use geometric::{geometric_graph, EdgeOrigin, GeometricGraph};
pub use quality::{distortion, ink_reduction};
pub use raster::{rasterize, rasterize_in_frame, Frame, RasterImage};
pub use report::{bundled_geometric_graph, evaluate, fbq_scores, FbqScores, MetricSettings, MetricsReport};
