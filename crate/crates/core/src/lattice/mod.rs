//! Subsets, posets, antichains and upsets of Boolean lattices.

mod poset;
mod subset;
mod upset;

pub use poset::{
    dim2, dim2_embedding, dim2_lower_bound, is_embedding, is_embedding_bits, Poset, PosetFile,
    DIM2_MAX_SIZE,
};
pub use subset::{
    bit_positions, deposit, extract, full_mask, is_antichain, is_subset, k_subsets, submasks,
    SubsetMask, MAX_GROUND,
};
pub use upset::{
    count_antichains, count_antichains_with, enumerate_upsets, upset_close, upset_families, UpSet,
    MAX_ANTICHAIN_COUNT_DIM, MAX_UPSET_DIM,
};
