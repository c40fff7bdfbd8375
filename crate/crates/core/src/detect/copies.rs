use crate::coloring::{Color, Coloring, BLUE, RED};
use crate::embeddings::GoodSequenceSpace;
use crate::error::{Budget, Error, Result};
use crate::lattice::Poset;

use super::poset_copy::for_each_poset_copy;

/// Default cap on the number of copies a table may hold.
pub const DEFAULT_COPY_LIMIT: u64 = 5_000_000;

/// Every copy of a fixed poset inside `Q_N`, each stored as a `2^N`-bit
/// element mask (one word per 64 cells). A copy is monochromatic in a
/// two-coloring iff its mask avoids the other color's cells, which costs a
/// few word operations.
#[derive(Clone, Debug)]
pub struct CopyTable {
    dim: usize,
    words: usize,
    masks: Vec<u64>,
}

impl CopyTable {
    fn empty(dim: usize) -> Self {
        CopyTable {
            dim,
            words: (1usize << dim).div_ceil(64),
            masks: Vec::new(),
        }
    }

    fn push(&mut self, cells: impl Iterator<Item = u64>) {
        let base = self.masks.len();
        self.masks.resize(base + self.words, 0);
        for t in cells {
            self.masks[base + (t >> 6) as usize] |= 1 << (t & 63);
        }
    }

    /// All `e(n, N) / n!` copies of `Q_n` in `Q_N`, one per image family.
    pub fn for_qn(n: usize, dim: usize, limit: u64) -> Result<Self> {
        let space = GoodSequenceSpace::new(n, dim)?;
        let mut table = CopyTable::empty(dim);
        let mut stream = space.stream(0..space.total())?;
        while let Some(seq) = stream.next_letters() {
            if !space.is_copy_representative(seq) {
                continue;
            }
            if table.len() as u64 >= limit {
                return Err(Error::limit(
                    format!("copies of Q_{n} in Q_{dim} exceed the limit {limit}"),
                    table.len() as u64,
                ));
            }
            let f = space.embedding_of(seq);
            table.push(f.images().iter().copied());
        }
        Ok(table)
    }

    /// All copies of an arbitrary poset in `Q_N`, deduplicated by element set.
    pub fn for_poset(p: &Poset, dim: usize, limit: u64) -> Result<Self> {
        let host = Coloring::constant(dim, 2, RED)?;
        let mut table = CopyTable::empty(dim);
        let mut overflow = false;
        let mut budget = Budget::default();
        let words = table.words;
        let mut raw: Vec<Vec<u64>> = Vec::new();
        for_each_poset_copy(&host, p, RED, &mut budget, |imgs| {
            let mut mask = vec![0u64; words];
            for &t in imgs {
                mask[(t >> 6) as usize] |= 1 << (t & 63);
            }
            raw.push(mask);
            if raw.len() as u64 > limit.saturating_mul(64) {
                overflow = true;
                return true;
            }
            false
        })?;
        raw.sort_unstable();
        raw.dedup();
        if overflow || raw.len() as u64 > limit {
            return Err(Error::limit(
                format!("copies of the poset in Q_{dim} exceed the limit {limit}"),
                raw.len() as u64,
            ));
        }
        for m in raw {
            table.masks.extend_from_slice(&m);
        }
        Ok(table)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.masks.len() / self.words
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Element mask of copy `i`.
    pub fn copy(&self, i: usize) -> &[u64] {
        &self.masks[i * self.words..(i + 1) * self.words]
    }

    /// Single-word masks, available when `2^N <= 64`.
    pub fn word_masks(&self) -> Option<&[u64]> {
        (self.words == 1).then_some(&self.masks[..])
    }

    /// Cells of copy `i`, ascending.
    pub fn cells(&self, i: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for (w, &word) in self.copy(i).iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push((w as u64) << 6 | bits.trailing_zeros() as u64);
                bits &= bits - 1;
            }
        }
        out
    }

    fn blue_words<'c>(&self, c: &'c Coloring) -> Result<&'c [u64]> {
        if c.dim() != self.dim {
            return Err(Error::invalid(format!(
                "coloring of Q_{} used with a copy table for Q_{}",
                c.dim(),
                self.dim
            )));
        }
        c.packed_words()
            .ok_or_else(|| Error::invalid("copy tables need two-colorings"))
    }

    /// Monochromatic copies per color: `(red, blue)`.
    pub fn count_mono(&self, c: &Coloring) -> Result<(u64, u64)> {
        let blue = self.blue_words(c)?;
        let (mut r, mut b) = (0u64, 0u64);
        for m in self.masks.chunks_exact(self.words) {
            let mut any_blue = false;
            let mut any_red = false;
            for (w, &cell) in m.iter().zip(blue) {
                any_blue |= w & cell != 0;
                any_red |= w & !cell != 0;
            }
            if !any_blue {
                r += 1;
            }
            if !any_red {
                b += 1;
            }
        }
        Ok((r, b))
    }

    /// Index of the first copy that is entirely `color`.
    pub fn first_mono(&self, c: &Coloring, color: Color) -> Result<Option<usize>> {
        let blue = self.blue_words(c)?;
        Ok(self.masks.chunks_exact(self.words).position(|m| {
            m.iter().zip(blue).all(|(w, &cell)| {
                if color == BLUE {
                    w & !cell == 0
                } else {
                    w & cell == 0
                }
            })
        }))
    }

    /// Word form of [`CopyTable::first_mono`] for `2^N <= 64`: `cells` holds
    /// the cells of one color.
    #[inline]
    pub fn any_inside(&self, cells: u64) -> bool {
        self.masks.iter().any(|&m| m & !cells == 0)
    }
}

/// Exact `(red, blue)` counts of monochromatic copies of `Q_n`.
pub fn count_mono_qn(c: &Coloring, n: usize) -> Result<(u64, u64)> {
    CopyTable::for_qn(n, c.dim(), DEFAULT_COPY_LIMIT)?.count_mono(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{complement_recolor, layered_coloring, random_coloring};
    use crate::lattice::is_embedding_bits;

    #[test]
    fn counts_examples() {
        let red = Coloring::constant(4, 2, RED).unwrap();
        assert_eq!(count_mono_qn(&red, 2).unwrap(), (151, 0));
        let layered = layered_coloring(3, 2, &[RED, RED, BLUE, BLUE]).unwrap();
        assert_eq!(count_mono_qn(&layered, 2).unwrap(), (0, 0));
    }

    #[test]
    fn copies_are_distinct_valid_cubes() {
        let t = CopyTable::for_qn(2, 4, DEFAULT_COPY_LIMIT).unwrap();
        let mut seen = std::collections::HashSet::new();
        let q2 = Poset::boolean_lattice(2);
        for i in 0..t.len() {
            assert!(seen.insert(t.copy(i).to_vec()));
            let cells = t.cells(i);
            assert_eq!(cells.len(), 4);
            // sorted cells of a Q_2 copy: bottom, two middles, top
            let ok = [[0, 1, 2, 3], [0, 2, 1, 3]].iter().any(|perm| {
                let imgs: Vec<u64> = perm.iter().map(|&k| cells[k]).collect();
                is_embedding_bits(&q2, &imgs)
            });
            assert!(ok);
        }
        let general = CopyTable::for_poset(&q2, 4, DEFAULT_COPY_LIMIT).unwrap();
        assert_eq!(general.len(), 151);
    }

    #[test]
    fn counts_swap_under_complement_recolor() {
        let t = CopyTable::for_qn(2, 5, DEFAULT_COPY_LIMIT).unwrap();
        for seed in 0..50 {
            let c = random_coloring(5, 2, seed).unwrap();
            let (r, b) = t.count_mono(&c).unwrap();
            let (r2, b2) = t.count_mono(&complement_recolor(&c).unwrap()).unwrap();
            assert_eq!((r, b), (b2, r2));
        }
    }

    #[test]
    fn multiword_tables() {
        let t = CopyTable::for_qn(1, 7, DEFAULT_COPY_LIMIT).unwrap();
        // copies of Q_1 are strictly comparable pairs: 3^7 - 2^7
        assert_eq!(t.len(), 3usize.pow(7) - 128);
        let c = Coloring::constant(7, 2, BLUE).unwrap();
        assert_eq!(t.count_mono(&c).unwrap(), (0, t.len() as u64));
        assert!(t.word_masks().is_none());
        assert_eq!(t.first_mono(&c, BLUE).unwrap(), Some(0));
    }
}
