use crate::coloring::{Color, Coloring, BLUE, RED};
use crate::embeddings::Embedding;
use crate::error::{Error, Result};
use crate::lattice::{bit_positions, deposit, is_subset, k_subsets};

use super::antichain::{antichain_extract_blue, red_antichain_layers};
use super::{checked_mono, expect_two_colors, GroundPartition};

/// Monochromatic `Q_n` in any red/blue coloring of `Q_{n^2+2n}`.
///
/// Blocks `X_0, ..., X_{n+1}` of size `n`. For `Y ⊆ X_0` the family
/// `B_Y = {Y ∪ X_1 ∪ ... ∪ X_{|Y|} ∪ X : X ⊆ X_{|Y|+1}}` is a copy of `Q_n`;
/// the first all-blue one is returned, otherwise the first red cell of each
/// `B_Y` forms a red copy.
pub fn strategy_qnqn(c: &Coloring, n: usize) -> Result<(Color, Embedding)> {
    expect_two_colors(c)?;
    let dim = n * n + 2 * n;
    if c.dim() != dim {
        return Err(Error::invalid(format!(
            "strategy for Q_{n} needs N = {dim}, got {}",
            c.dim()
        )));
    }
    let parts = GroundPartition::consecutive(&vec![n; n + 2])?;
    let x0 = parts.block(0);
    let mut picks = Vec::with_capacity(1 << n);
    for y in 0..1u64 << n {
        let ym = deposit(y, x0);
        let size = y.count_ones() as usize;
        let base = ym | parts.union(1, size + 1);
        let free = parts.block(size + 1);
        let red = (0..1u64 << n)
            .map(|s| base | deposit(s, free))
            .find(|&t| c.get(t) == RED);
        match red {
            Some(t) => picks.push(t),
            None => {
                let image = (0..1u64 << n).map(|s| base | deposit(s, free)).collect();
                return Ok((BLUE, checked_mono(c, n, image, BLUE)?));
            }
        }
    }
    Ok((RED, checked_mono(c, n, picks, RED)?))
}

/// Red `Q_2` or blue `Q_n` in any red/blue coloring of `Q_{2n+2}`.
pub fn strategy_q2qn(c: &Coloring, n: usize) -> Result<(Color, Embedding)> {
    expect_two_colors(c)?;
    let dim = 2 * n + 2;
    if n == 0 || c.dim() != dim {
        return Err(Error::invalid(format!(
            "strategy for Q_2 vs Q_{n} needs n >= 1 and N = {dim}, got N = {}",
            c.dim()
        )));
    }
    let layers = red_antichain_layers(c);
    if layers.len() >= n + 3 {
        return chain_branch(c, n, &layers);
    }
    let f = antichain_extract_blue(c)?;
    // restrict the blue Q_{N-ℓ} to its first n coordinates
    let image = f.images()[..1 << n].to_vec();
    Ok((BLUE, checked_mono(c, n, image, BLUE)?))
}

/// Red height at least `n + 3`: take a longest red chain `A ⊂ ... ⊂ B`.
fn chain_branch(c: &Coloring, n: usize, layers: &[Vec<u64>]) -> Result<(Color, Embedding)> {
    let top = *layers.last().and_then(|l| l.first()).expect("nonempty layer");
    // walk down: each layer i-1 has a red subset of the current element
    let mut chain = vec![top];
    for layer in layers[..layers.len() - 1].iter().rev() {
        let cur = *chain.last().expect("chain");
        let next = layer
            .iter()
            .copied()
            .find(|&s| s != cur && is_subset(s, cur))
            .expect("depth implies a red predecessor");
        chain.push(next);
    }
    chain.reverse();
    let (a_set, b_set) = (chain[0], top);
    let reds: Vec<u64> = c
        .class(RED)
        .into_iter()
        .filter(|&s| is_subset(a_set, s) && is_subset(s, b_set))
        .collect();
    for (i, &x) in reds.iter().enumerate() {
        for &y in &reds[i + 1..] {
            if !is_subset(x, y) && !is_subset(y, x) {
                let image = vec![a_set, x, y, b_set];
                return Ok((RED, checked_mono(c, 2, image, RED)?));
            }
        }
    }
    // red cells of [A, B] form a chain; every one above A contains `a`
    let second = reds
        .iter()
        .copied()
        .filter(|&s| s != a_set)
        .min_by_key(|s| s.count_ones())
        .expect("chain has at least two red cells");
    let a = (second & !a_set).trailing_zeros();
    let b = (b_set & !a_set & !(1 << a)).trailing_zeros();
    let free: u64 = bit_positions(b_set & !a_set & !(1 << a) & !(1 << b))
        .take(n)
        .fold(0, |m, i| m | 1 << i);
    let base = a_set | 1 << b;
    let image = (0..1u64 << n).map(|s| base | deposit(s, free)).collect();
    Ok((BLUE, checked_mono(c, n, image, BLUE)?))
}

/// Red `Q_n` from the half-slices: with blocks `X_0` of size `n` and
/// `X_1, ..., X_{n+1}` of size `m`, each
/// `F(S) = {S ∪ X_1 ∪ ... ∪ X_{|S|} ∪ X : X ⊂ X_{|S|+1}, |X| = m/2}` must
/// contain a red cell. `None` when some `F(S)` is entirely blue.
pub fn halfslice_strategy(c: &Coloring, n: usize, m: usize) -> Result<Option<Embedding>> {
    expect_two_colors(c)?;
    let dim = n + (n + 1) * m;
    if !m.is_multiple_of(2) || c.dim() != dim {
        return Err(Error::invalid(format!(
            "half-slice strategy needs even m and N = n + (n+1)m = {dim}, got m = {m}, N = {}",
            c.dim()
        )));
    }
    let mut sizes = vec![n];
    sizes.extend(std::iter::repeat_n(m, n + 1));
    let parts = GroundPartition::consecutive(&sizes)?;
    let mut picks = Vec::with_capacity(1 << n);
    for s in 0..1u64 << n {
        let size = s.count_ones() as usize;
        let base = deposit(s, parts.block(0)) | parts.union(1, size + 1);
        let free = parts.block(size + 1);
        match k_subsets(m, m / 2)
            .map(|x| base | deposit(x, free))
            .find(|&t| c.get(t) == RED)
        {
            Some(t) => picks.push(t),
            None => return Ok(None),
        }
    }
    Ok(Some(checked_mono(c, n, picks, RED)?))
}
