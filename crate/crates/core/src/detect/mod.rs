//! Monochromatic structure detection in colored Boolean lattices and colored
//! integer ranges.

mod algebra;
mod copies;
mod hilbert;
mod layered;
mod poset_copy;
mod qn;

pub use algebra::{find_boolean_algebra, AlgebraFile, BooleanAlgebraWitness, MAX_ALGEBRA_SEARCH_DIM};
pub use copies::{count_mono_qn, CopyTable, DEFAULT_COPY_LIMIT};
pub use hilbert::{
    find_mono_hilbert_cube, find_mono_hilbert_cube_from, HilbertCubeWitness, MAX_HILBERT_DIM,
    MAX_HILBERT_RANGE,
};
pub use layered::{find_layered_subcube, MAX_LAYERED_SCAN_DIM};
pub use poset_copy::find_poset_copy;
pub use qn::find_mono_qn;
