use crate::coloring::{layer_colors, Color, Coloring};
use crate::detect::{find_mono_hilbert_cube_from, BooleanAlgebraWitness};
use crate::error::{Error, Result};
use crate::lattice::SubsetMask;

use super::GroundPartition;

/// Monochromatic Boolean algebra of dimension `n` in a coloring layered on
/// `[N]`. The layer sizes `0..=N` inherit the layer colors; a monochromatic
/// Hilbert cube `x_0, ..., x_n` among them becomes consecutive blocks of
/// those sizes.
pub fn algebra_from_layered(
    c: &Coloring,
    n: usize,
) -> Result<Option<(Color, BooleanAlgebraWitness)>> {
    let sizes = layer_colors(c)
        .ok_or_else(|| Error::invalid("coloring is not layered on the full ground set"))?;
    let Some((color, cube)) = find_mono_hilbert_cube_from(&sizes, 0, n)? else {
        return Ok(None);
    };
    let block_sizes: Vec<usize> = cube.x.iter().map(|&v| v as usize).collect();
    let total: usize = block_sizes.iter().sum();
    let mut all = block_sizes.clone();
    all.push(c.dim() - total);
    let parts = GroundPartition::consecutive(&all)?;
    let blocks = (0..=n)
        .map(|i| SubsetMask::new(parts.block(i), c.dim()))
        .collect::<Result<Vec<_>>>()?;
    let witness = BooleanAlgebraWitness::new(blocks)?;
    if witness.members().iter().any(|&s| c.get(s) != color) {
        return Err(Error::invalid("lifted algebra is not monochromatic"));
    }
    Ok(Some((color, witness)))
}
