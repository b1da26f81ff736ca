//! Effective resistances and spectral sparsification.

mod resistance;
mod sample;
pub mod solver;

pub use resistance::{
    effective_resistances, foster_sums, normalize, sketch_rows, EffectiveResistanceMap,
    ResistanceMethod, ResistanceOptions,
};
pub(crate) use sample::Dsu;
pub use sample::{spectral_sparsify, SparsifyParams, Sparsified};
