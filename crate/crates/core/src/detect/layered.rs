use crate::coloring::{is_layered_on, Coloring};
use crate::error::{Error, Result};
use crate::lattice::{k_subsets, SubsetMask};

/// Largest host dimension the exhaustive scan accepts.
pub const MAX_LAYERED_SCAN_DIM: usize = 20;

/// First `n`-subset `S` (ascending mask order) such that `c` is layered on `2^S`.
pub fn find_layered_subcube(c: &Coloring, n: usize) -> Result<Option<SubsetMask>> {
    let dim = c.dim();
    if n > dim {
        return Err(Error::invalid(format!("n = {n} exceeds N = {dim}")));
    }
    if dim > MAX_LAYERED_SCAN_DIM {
        return Err(Error::invalid(format!(
            "layered scan supports N <= {MAX_LAYERED_SCAN_DIM}, got {dim}"
        )));
    }
    for s in k_subsets(dim, n) {
        if is_layered_on(c, s) {
            return Ok(Some(SubsetMask::new(s, dim)?));
        }
    }
    Ok(None)
}
