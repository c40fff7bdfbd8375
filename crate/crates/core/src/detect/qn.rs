use crate::coloring::{Color, Coloring};
use crate::embeddings::{Embedding, GoodSequenceSpace};
use crate::error::{Budget, Error, Result};
use crate::lattice::full_mask;

/// `reach[j]` holds every value `T & (2^j - 1)` over cells `T` of one color,
/// as a bitset. A partial image fixed on the first `j` coordinates can only
/// be completed inside the color class if its prefix is reachable.
struct Reach {
    levels: Vec<Vec<u64>>,
}

impl Reach {
    fn new(c: &Coloring, color: Color) -> Self {
        let dim = c.dim();
        let mut levels = vec![Vec::new(); dim + 1];
        let mut top = vec![0u64; (1usize << dim).div_ceil(64)];
        for s in 0..c.cell_count() as u64 {
            if c.get(s) == color {
                top[(s >> 6) as usize] |= 1 << (s & 63);
            }
        }
        levels[dim] = top;
        for j in (0..dim).rev() {
            let half = 1u64 << j;
            let mut lvl = vec![0u64; (half as usize).div_ceil(64)];
            for v in 0..half {
                if bit(&levels[j + 1], v) || bit(&levels[j + 1], v | half) {
                    lvl[(v >> 6) as usize] |= 1 << (v & 63);
                }
            }
            levels[j] = lvl;
        }
        Reach { levels }
    }

    #[inline]
    fn contains(&self, j: usize, v: u64) -> bool {
        bit(&self.levels[j], v)
    }
}

#[inline]
fn bit(words: &[u64], v: u64) -> bool {
    words[(v >> 6) as usize] >> (v & 63) & 1 == 1
}

struct ColumnSearch<'a> {
    space: &'a GoodSequenceSpace,
    reach: Reach,
    dim: usize,
    n: usize,
    partial: Vec<u64>,
    letters: Vec<usize>,
}

impl ColumnSearch<'_> {
    fn run(&mut self, col: usize, missing: u64, budget: &mut Budget) -> Result<bool> {
        if col == self.dim {
            return Ok(missing == 0);
        }
        let remaining = self.dim - col - 1;
        let letters = self.space.letters();
        let size = 1usize << self.n;
        // the next unseen principal, if any; only it may be introduced here
        let next_principal = (missing != 0).then(|| missing.trailing_zeros() as usize);
        let must_place = missing.count_ones() as usize > remaining;
        for (idx, &fam) in letters.iter().enumerate() {
            let principal = self.space.principal_at(idx);
            let new_missing = match principal {
                Some(i) if missing >> i & 1 == 1 => {
                    if Some(i) != next_principal {
                        continue;
                    }
                    missing & !(1 << i)
                }
                _ => {
                    if must_place {
                        continue;
                    }
                    missing
                }
            };
            budget.tick("monochromatic Q_n search")?;
            let ok = (0..size).all(|s| {
                let v = self.partial[s] | ((fam >> s & 1) << col);
                self.reach.contains(col + 1, v)
            });
            if !ok {
                continue;
            }
            for s in 0..size {
                self.partial[s] |= (fam >> s & 1) << col;
            }
            self.letters.push(idx);
            let found = self.run(col + 1, new_missing, budget)?;
            if found {
                return Ok(true);
            }
            self.letters.pop();
            for s in 0..size {
                self.partial[s] &= !(1 << col);
            }
        }
        Ok(false)
    }
}

/// A copy of `Q_n` all of whose elements have `color`, or `None` when no
/// such copy exists.
///
/// Backtracks over good sequences one coordinate (column) at a time. A branch
/// is cut when some partial image has no completion inside the color class,
/// or when too few columns remain to place the missing principal upsets.
/// Only the copy-representative ordering of principals is explored, since
/// every copy has one.
pub fn find_mono_qn(
    c: &Coloring,
    n: usize,
    color: Color,
    budget: &mut Budget,
) -> Result<Option<Embedding>> {
    if n > c.dim() {
        return Ok(None);
    }
    if color as usize >= c.colors() {
        return Err(Error::invalid(format!("color {color} not below k = {}", c.colors())));
    }
    let space = GoodSequenceSpace::new(n, c.dim())?;
    let mut search = ColumnSearch {
        space: &space,
        reach: Reach::new(c, color),
        dim: c.dim(),
        n,
        partial: vec![0u64; 1 << n],
        letters: Vec::with_capacity(c.dim()),
    };
    if !search.run(0, full_mask(n), budget)? {
        return Ok(None);
    }
    let f = space.embedding_of(&search.letters);
    debug_assert!(f.is_order_exact());
    debug_assert!(f.images().iter().all(|&t| c.get(t) == color));
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{layered_coloring, BLUE, RED};

    #[test]
    fn all_red_has_red_q2() {
        let c = Coloring::constant(3, 2, RED).unwrap();
        let f = find_mono_qn(&c, 2, RED, &mut Budget::default()).unwrap().unwrap();
        assert!(f.is_order_exact());
        assert!(find_mono_qn(&c, 2, BLUE, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn layered_lower_bound_colorings_are_clean() {
        let c = layered_coloring(3, 2, &[RED, RED, BLUE, BLUE]).unwrap();
        for color in [RED, BLUE] {
            assert!(find_mono_qn(&c, 2, color, &mut Budget::default()).unwrap().is_none());
        }
        for n in 1..=3usize {
            let dim = 2 * n - 1;
            let layers: Vec<_> = (0..=dim).map(|i| if i < n { RED } else { BLUE }).collect();
            let c = layered_coloring(dim, 2, &layers).unwrap();
            for color in [RED, BLUE] {
                assert!(find_mono_qn(&c, n, color, &mut Budget::default()).unwrap().is_none());
            }
        }
    }

    #[test]
    fn q0_always_found_when_color_present() {
        let c = Coloring::from_word(2, 0b0100).unwrap();
        let f = find_mono_qn(&c, 0, BLUE, &mut Budget::default()).unwrap().unwrap();
        assert_eq!(f.images(), &[0b10]);
    }
}
