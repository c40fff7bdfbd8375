use crate::coloring::{Coloring, BLUE, RED};
use crate::embeddings::Embedding;
use crate::error::{Error, Result};
use crate::lattice::{full_mask, is_subset};

use super::{checked_mono, expect_two_colors};

/// Length of a longest chain of red cells.
pub fn red_height(c: &Coloring) -> usize {
    // g[U] = longest red chain inside 2^U
    let cells = c.cell_count();
    let mut g = vec![0u8; cells];
    for u in 0..cells as u64 {
        let mut best = 0u8;
        let mut rest = u;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            best = best.max(g[(u ^ bit) as usize]);
            rest ^= bit;
        }
        g[u as usize] = best + u8::from(c.get(u) == RED);
    }
    g[cells - 1] as usize
}

/// Red cells split into antichains by repeatedly removing minimal elements.
/// Layer `i` holds the red cells whose longest red chain from below has
/// exactly `i + 1` elements.
pub fn red_antichain_layers(c: &Coloring) -> Vec<Vec<u64>> {
    let cells = c.cell_count();
    // depth[S] = longest red chain with maximum element S (0 if S blue)
    let mut below = vec![0u8; cells];
    let mut layers: Vec<Vec<u64>> = Vec::new();
    for s in 0..cells as u64 {
        let mut best = 0u8;
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            best = best.max(below[(s ^ bit) as usize]);
            rest ^= bit;
        }
        if c.get(s) == RED {
            let depth = best as usize + 1;
            if layers.len() < depth {
                layers.resize(depth, Vec::new());
            }
            layers[depth - 1].push(s);
            below[s as usize] = best + 1;
        } else {
            below[s as usize] = best;
        }
    }
    layers
}

/// A blue copy of `Q_{N-ℓ}`, `ℓ` the red height, built by the iterated shift
/// over the canonical red antichain decomposition.
pub fn antichain_extract_blue(c: &Coloring) -> Result<Embedding> {
    expect_two_colors(c)?;
    let layers = red_antichain_layers(c);
    shift_out(c, &layers)
}

/// As [`antichain_extract_blue`] for an explicit decomposition `A_1, ..., A_ℓ`
/// of the red cells, in which every member of `A_i` is minimal in
/// `A_i ∪ ... ∪ A_ℓ`.
pub fn antichain_extract_blue_with(c: &Coloring, layers: &[Vec<u64>]) -> Result<Embedding> {
    expect_two_colors(c)?;
    let mut all: Vec<u64> = layers.iter().flatten().copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("antichains of the decomposition overlap"));
    }
    if all != c.class(RED) {
        return Err(Error::invalid("decomposition does not cover exactly the red cells"));
    }
    for (i, layer) in layers.iter().enumerate() {
        for &a in layer {
            let later = layers[i..].iter().flatten();
            if later.clone().any(|&b| b != a && is_subset(b, a)) {
                return Err(Error::invalid(format!(
                    "{a:#x} in antichain {} is not minimal among the remaining red cells",
                    i + 1
                )));
            }
        }
    }
    shift_out(c, layers)
}

fn shift_out(c: &Coloring, layers: &[Vec<u64>]) -> Result<Embedding> {
    let dim = c.dim();
    let l = layers.len();
    if l >= dim {
        return Err(Error::NotApplicable(format!(
            "red height {l} is not below N = {dim}"
        )));
    }
    let n = dim - l;
    let mut images: Vec<u64> = (0..1u64 << n).map(|s| s << l).collect();
    for (i, layer) in layers.iter().enumerate() {
        for y in images.iter_mut() {
            if layer.iter().any(|&a| is_subset(a, *y)) {
                *y |= 1 << i;
            }
        }
    }
    debug_assert!(images.iter().all(|&y| y & !full_mask(dim) == 0));
    checked_mono(c, n, images, BLUE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::random_coloring_from;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_blue_is_identity() {
        let c = Coloring::constant(3, 2, BLUE).unwrap();
        assert_eq!(red_height(&c), 0);
        assert_eq!(antichain_extract_blue(&c).unwrap(), Embedding::identity(3));
    }

    #[test]
    fn single_red_antichain() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let dim = rng.gen_range(2..=6);
            let mut c = Coloring::constant(dim, 2, BLUE).unwrap();
            let layer = rng.gen_range(0..=dim) as u32;
            for s in 0..1u64 << dim {
                if s.count_ones() == layer && rng.gen_bool(0.5) {
                    c.set(s, RED);
                }
            }
            let f = antichain_extract_blue(&c);
            if c.count(RED) == 0 {
                assert_eq!(f.unwrap().source_dim(), dim);
            } else {
                assert_eq!(f.unwrap().source_dim(), dim - 1);
            }
        }
    }

    #[test]
    fn heights_match_layers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=6);
            let c = random_coloring_from(dim, 2, &mut rng).unwrap();
            let layers = red_antichain_layers(&c);
            assert_eq!(layers.len(), red_height(&c));
            match antichain_extract_blue(&c) {
                Ok(f) => assert_eq!(f.source_dim(), dim - layers.len()),
                Err(Error::NotApplicable(_)) => assert!(layers.len() >= dim),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn explicit_decomposition() {
        let mut c = Coloring::constant(3, 2, BLUE).unwrap();
        for s in [0b001, 0b010, 0b011] {
            c.set(s, RED);
        }
        let f = antichain_extract_blue_with(&c, &[vec![0b001, 0b010], vec![0b011]]).unwrap();
        assert_eq!(f.source_dim(), 1);
        // {1} is not minimal once {1,2} is listed first
        assert!(antichain_extract_blue_with(&c, &[vec![0b011, 0b010], vec![0b001]]).is_err());
        assert!(antichain_extract_blue_with(&c, &[vec![0b001]]).is_err());
        // a sub-maximal decomposition is still legal
        let g = antichain_extract_blue_with(&c, &[vec![0b001], vec![0b010], vec![0b011]]);
        assert!(matches!(g, Err(Error::NotApplicable(_))));
    }
}
