//! Exhaustive Ramsey scans and lower-bound witness search.

mod arrowing;
mod multicolor;
mod witness;

pub use arrowing::{arrowing, ramsey_number, RamseyVerdict, ScanOptions, VerdictFile, MAX_ARROWING_DIM};
pub use multicolor::{multicolor_lower_bound, multicolor_ramsey, MulticolorBound};
pub use witness::{witness_search, witness_search_with, AnnealConfig, WitnessReport};
