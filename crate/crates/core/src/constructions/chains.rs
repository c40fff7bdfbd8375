use crate::coloring::{layered_coloring, Color, Coloring, BLUE, RED};
use crate::error::{Error, Result};
use crate::lattice::MAX_GROUND;

/// Largest ground set for which chains are materialized.
pub const MAX_CHAIN_PARTITION_DIM: usize = 20;

/// Symmetric chain partition of `2^[N]` by parenthesis matching: element
/// `i` reads `)` when present and `(` when absent. A chain starts at a set
/// with no unmatched `)` and grows by adding its unmatched `(` positions
/// left to right. Chains are listed by starting mask.
pub fn symmetric_chain_partition(dim: usize) -> Result<Vec<Vec<u64>>> {
    if dim > MAX_CHAIN_PARTITION_DIM {
        return Err(Error::invalid(format!(
            "chain partitions support N <= {MAX_CHAIN_PARTITION_DIM}, got {dim}"
        )));
    }
    let mut chains = Vec::new();
    for s in 0..1u64 << dim {
        if let Some(free) = unmatched_opens(s, dim) {
            let mut chain = vec![s];
            let mut cur = s;
            for i in free {
                cur |= 1 << i;
                chain.push(cur);
            }
            chains.push(chain);
        }
    }
    Ok(chains)
}

/// Unmatched `(` positions, or `None` if some `)` is unmatched.
fn unmatched_opens(s: u64, dim: usize) -> Option<Vec<usize>> {
    let mut open = Vec::new();
    for i in 0..dim {
        if s >> i & 1 == 1 {
            open.pop()?;
        } else {
            open.push(i);
        }
    }
    Some(open)
}

/// `min{N : 2n - 1 <= C(N, floor(N/2))}`.
pub fn antichain_ramsey_formula(n: usize) -> usize {
    let mut dim = 0usize;
    while central_binomial(dim) < 2 * n as u128 - 1 {
        dim += 1;
    }
    dim
}

fn central_binomial(dim: usize) -> u128 {
    let k = dim / 2;
    (0..k).fold(1u128, |acc, i| acc * (dim - i) as u128 / (i + 1) as u128)
}

/// Coloring of `Q_{N-1}`, `N` from [`antichain_ramsey_formula`], with the
/// first `n - 1` symmetric chains red and the rest blue. No antichain of size
/// `n` is monochromatic.
pub fn antichain_lower_coloring(n: usize) -> Result<Coloring> {
    if n < 2 {
        return Err(Error::invalid("antichain lower bound needs n >= 2"));
    }
    let dim = antichain_ramsey_formula(n) - 1;
    let chains = symmetric_chain_partition(dim)?;
    if chains.len() > 2 * n - 2 {
        return Err(Error::invalid(format!(
            "{} chains exceed 2n - 2 = {}",
            chains.len(),
            2 * n - 2
        )));
    }
    let mut c = Coloring::constant(dim, 2, BLUE)?;
    for chain in chains.iter().take(n - 1) {
        for &s in chain {
            c.set(s, RED);
        }
    }
    Ok(c)
}

/// Layered `k`-coloring of `Q_{k-1}` in which layer `i` has color `i`; every
/// color class is an antichain.
pub fn multicolor_lower_coloring(k: usize) -> Result<Coloring> {
    if k == 0 || k > crate::coloring::MAX_COLORING_DIM + 1 || k - 1 > MAX_GROUND {
        return Err(Error::invalid(format!("k = {k} out of range")));
    }
    let layers: Vec<Color> = (0..k).map(|i| i as Color).collect();
    layered_coloring(k - 1, k, &layers)
}
