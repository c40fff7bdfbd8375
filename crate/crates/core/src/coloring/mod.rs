//! Colorings of `2^[N]`, canonical constructions and the coloring file format.

mod lubell;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{full_mask, submasks, SubsetMask};

pub use lubell::{class_masses, lubell_mass, LubellMass};

/// Color index. Color 0 is red, color 1 is blue.
pub type Color = u8;
pub const RED: Color = 0;
pub const BLUE: Color = 1;

/// Largest lattice that may be fully colored (`2^24` cells).
pub const MAX_COLORING_DIM: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Cells {
    /// k = 2: bit `S` of the little-endian word array is the color of `S`.
    Packed(Vec<u64>),
    Bytes(Vec<u8>),
}

/// Assignment of one of `k` colors to every subset of `[N]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coloring {
    dim: usize,
    k: u8,
    cells: Cells,
}

/// `{"N": N, "k": k, "cells_hex": "..."}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ColoringFile {
    #[serde(rename = "N")]
    pub dim: usize,
    pub k: u8,
    pub cells_hex: String,
}

fn check_shape(dim: usize, k: usize) -> Result<()> {
    if dim > MAX_COLORING_DIM {
        return Err(Error::invalid(format!(
            "colorings support N <= {MAX_COLORING_DIM}, got {dim}"
        )));
    }
    if k == 0 || k > 255 {
        return Err(Error::invalid(format!("number of colors {k} out of range 1..=255")));
    }
    Ok(())
}

fn word_count(dim: usize) -> usize {
    (1usize << dim).div_ceil(64)
}

impl Coloring {
    /// Every cell gets `color`.
    pub fn constant(dim: usize, k: usize, color: Color) -> Result<Self> {
        check_shape(dim, k)?;
        if color as usize >= k {
            return Err(Error::invalid(format!("color {color} not below k = {k}")));
        }
        let cells = if k == 2 {
            let mut words = vec![if color == 1 { u64::MAX } else { 0 }; word_count(dim)];
            trim_words(dim, &mut words);
            Cells::Packed(words)
        } else {
            Cells::Bytes(vec![color; 1 << dim])
        };
        Ok(Coloring {
            dim,
            k: k as u8,
            cells,
        })
    }

    /// Builds from one color per cell, indexed by subset mask.
    pub fn from_cells(dim: usize, k: usize, cells: &[Color]) -> Result<Self> {
        check_shape(dim, k)?;
        if cells.len() != 1 << dim {
            return Err(Error::invalid(format!(
                "expected {} cells, got {}",
                1u64 << dim,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|&&c| c as usize >= k) {
            return Err(Error::invalid(format!("cell color {bad} not below k = {k}")));
        }
        let mut c = Coloring::constant(dim, k, 0)?;
        for (s, &color) in cells.iter().enumerate() {
            c.set(s as u64, color);
        }
        Ok(c)
    }

    /// Two-coloring of a lattice with at most 64 cells from a single word:
    /// bit `S` is the color of `S`.
    pub fn from_word(dim: usize, word: u64) -> Result<Self> {
        if dim > 6 {
            return Err(Error::invalid("single-word colorings need N <= 6"));
        }
        if word & !full_mask(1 << dim) != 0 {
            return Err(Error::invalid("coloring word has bits beyond 2^N cells"));
        }
        Ok(Coloring {
            dim,
            k: 2,
            cells: Cells::Packed(vec![word]),
        })
    }

    /// Inverse of [`Coloring::from_word`].
    pub fn as_word(&self) -> Option<u64> {
        match &self.cells {
            Cells::Packed(w) if self.dim <= 6 => Some(w[0]),
            _ => None,
        }
    }

    /// Packed cell words for two-colorings (bit set = blue).
    pub fn packed_words(&self) -> Option<&[u64]> {
        match &self.cells {
            Cells::Packed(w) => Some(w),
            Cells::Bytes(_) => None,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn colors(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn cell_count(&self) -> usize {
        1 << self.dim
    }

    #[inline]
    pub fn get(&self, s: u64) -> Color {
        match &self.cells {
            Cells::Packed(w) => (w[(s >> 6) as usize] >> (s & 63) & 1) as Color,
            Cells::Bytes(b) => b[s as usize],
        }
    }

    pub fn color_of(&self, s: SubsetMask) -> Color {
        self.get(s.bits())
    }

    /// Panics if `color >= k` or `s` is outside `2^[N]`.
    pub fn set(&mut self, s: u64, color: Color) {
        assert!((color as usize) < self.k as usize, "color out of range");
        match &mut self.cells {
            Cells::Packed(w) => {
                let word = &mut w[(s >> 6) as usize];
                if color == 1 {
                    *word |= 1 << (s & 63);
                } else {
                    *word &= !(1 << (s & 63));
                }
            }
            Cells::Bytes(b) => b[s as usize] = color,
        }
    }

    /// Masks of the given color, ascending.
    pub fn class(&self, color: Color) -> Vec<u64> {
        (0..self.cell_count() as u64)
            .filter(|&s| self.get(s) == color)
            .collect()
    }

    pub fn count(&self, color: Color) -> usize {
        match &self.cells {
            Cells::Packed(w) => {
                let ones: usize = w.iter().map(|x| x.count_ones() as usize).sum();
                if color == 1 {
                    ones
                } else {
                    self.cell_count() - ones
                }
            }
            Cells::Bytes(b) => b.iter().filter(|&&c| c == color).count(),
        }
    }

    /// All cells in mask order.
    pub fn cells(&self) -> Vec<Color> {
        (0..self.cell_count() as u64).map(|s| self.get(s)).collect()
    }

    /// Red and blue exchanged (k = 2 only).
    pub fn swapped(&self) -> Result<Coloring> {
        match &self.cells {
            Cells::Packed(w) => {
                let mut words: Vec<u64> = w.iter().map(|x| !x).collect();
                trim_words(self.dim, &mut words);
                Ok(Coloring {
                    dim: self.dim,
                    k: 2,
                    cells: Cells::Packed(words),
                })
            }
            Cells::Bytes(_) => Err(Error::invalid("color swap needs k = 2")),
        }
    }

    pub fn to_file(&self) -> ColoringFile {
        let bytes: Vec<u8> = match &self.cells {
            Cells::Packed(w) => {
                let nbytes = (1usize << self.dim).div_ceil(8);
                w.iter()
                    .flat_map(|x| x.to_le_bytes())
                    .take(nbytes)
                    .collect()
            }
            Cells::Bytes(b) => b.clone(),
        };
        ColoringFile {
            dim: self.dim,
            k: self.k,
            cells_hex: hex::encode(bytes),
        }
    }

    pub fn from_file(file: &ColoringFile) -> Result<Self> {
        check_shape(file.dim, file.k as usize)?;
        let bytes = hex::decode(&file.cells_hex)
            .map_err(|e| Error::invalid(format!("cells_hex: {e}")))?;
        let cells = 1usize << file.dim;
        if file.k == 2 {
            let nbytes = cells.div_ceil(8);
            if bytes.len() != nbytes {
                return Err(Error::invalid(format!(
                    "cells_hex holds {} bytes, expected {nbytes}",
                    bytes.len()
                )));
            }
            let mut words = vec![0u64; word_count(file.dim)];
            for (i, &b) in bytes.iter().enumerate() {
                words[i / 8] |= (b as u64) << (8 * (i % 8));
            }
            let mut trimmed = words.clone();
            trim_words(file.dim, &mut trimmed);
            if trimmed != words {
                return Err(Error::invalid("padding bits beyond 2^N cells must be zero"));
            }
            Ok(Coloring {
                dim: file.dim,
                k: 2,
                cells: Cells::Packed(words),
            })
        } else {
            Coloring::from_cells(file.dim, file.k as usize, &bytes)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("coloring file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ColoringFile = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("coloring JSON: {e}")))?;
        Coloring::from_file(&file)
    }
}

fn trim_words(dim: usize, words: &mut [u64]) {
    let cells = 1usize << dim;
    if cells < 64 {
        words[0] &= full_mask(cells);
    }
}

/// `cell[S] = layer_colors[|S|]`.
pub fn layered_coloring(dim: usize, k: usize, layer_colors: &[Color]) -> Result<Coloring> {
    if layer_colors.len() != dim + 1 {
        return Err(Error::invalid(format!(
            "layered coloring of Q_{dim} needs {} layer colors, got {}",
            dim + 1,
            layer_colors.len()
        )));
    }
    let mut c = Coloring::constant(dim, k, 0)?;
    if let Some(bad) = layer_colors.iter().find(|&&x| x as usize >= k) {
        return Err(Error::invalid(format!("layer color {bad} not below k = {k}")));
    }
    for s in 0..c.cell_count() as u64 {
        c.set(s, layer_colors[s.count_ones() as usize]);
    }
    Ok(c)
}

/// True iff, for every `i`, all `i`-subsets of `s` share one color.
pub fn is_layered_on(c: &Coloring, s: u64) -> bool {
    let mut layer_color: [Option<Color>; 65] = [None; 65];
    for t in submasks(s) {
        let slot = &mut layer_color[t.count_ones() as usize];
        let color = c.get(t);
        match slot {
            None => *slot = Some(color),
            Some(prev) if *prev != color => return false,
            _ => {}
        }
    }
    true
}

/// The layer colors of a coloring layered on `[N]`, or `None` if it is not.
pub fn layer_colors(c: &Coloring) -> Option<Vec<Color>> {
    if !is_layered_on(c, full_mask(c.dim())) {
        return None;
    }
    Some((0..=c.dim()).map(|i| c.get(full_mask(i))).collect())
}

/// Independent uniform colors from ChaCha8 seeded with `seed`.
///
/// For `k = 2` each group of 64 cells is one `next_u64()` word (bit `S % 64`
/// colors `S`); otherwise cells are drawn in mask order with
/// `gen_range(0..k)`. Identical on every platform.
pub fn random_coloring(dim: usize, k: usize, seed: u64) -> Result<Coloring> {
    if k < 2 {
        return Err(Error::invalid("random colorings need k >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_coloring_from(dim, k, &mut rng)
}

pub fn random_coloring_from<R: RngCore>(dim: usize, k: usize, rng: &mut R) -> Result<Coloring> {
    check_shape(dim, k)?;
    if k == 2 {
        let mut words: Vec<u64> = (0..word_count(dim)).map(|_| rng.next_u64()).collect();
        trim_words(dim, &mut words);
        Ok(Coloring {
            dim,
            k: 2,
            cells: Cells::Packed(words),
        })
    } else {
        let cells: Vec<Color> = (0..1usize << dim)
            .map(|_| rng.gen_range(0..k) as Color)
            .collect();
        Coloring::from_cells(dim, k, &cells)
    }
}

/// `cell'[S] = 1 - cell[[N] \ S]`; an involution on two-colorings.
pub fn complement_recolor(c: &Coloring) -> Result<Coloring> {
    if c.colors() != 2 {
        return Err(Error::invalid("complement recoloring needs k = 2"));
    }
    let all = full_mask(c.dim());
    let mut out = c.clone();
    for s in 0..c.cell_count() as u64 {
        out.set(s, 1 - c.get(all & !s));
    }
    Ok(out)
}

/// Fixed points of [`complement_recolor`]: `S` red iff its complement is blue.
pub fn is_complement_symmetric(c: &Coloring) -> bool {
    let all = full_mask(c.dim());
    c.colors() == 2 && (0..c.cell_count() as u64).all(|s| c.get(s) != c.get(all & !s))
}
