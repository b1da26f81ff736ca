//! Edge bundling toolkit.
//!
//! * [`sparsify`]: effective resistances and spectral sparsification.
//! * [`layout`]: seeded spring-embedder layout for graphs without coordinates.
//! * [`bundling`]: FDEB, SEB (effective-resistance compatibility), EPB, SEPB
//!   and the sparsify-then-bundle pipeline.
//! * [`metrics`]: ink, distortion, ambiguity and the sparsified-vs-original
//!   bundling similarity measures.
//! * [`render`]: SVG output.

pub mod bundling;
pub mod config;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod layout;
pub mod metrics;
pub mod render;
pub mod sparsify;

pub use error::{Error, Result};
pub use geometry::Point;
pub use graph::{Drawing, Edge, Graph, VertexId};
