//! Constructive strategies: each takes a coloring (or a poset) and builds
//! the structure whose existence the corresponding argument guarantees.
//! Every witness is re-validated before it is returned.

mod antichain;
mod blob;
mod chains;
mod lift;
mod strategies;

pub use antichain::{
    antichain_extract_blue, antichain_extract_blue_with, red_antichain_layers, red_height,
};
pub use blob::{blob_embedding, BlobEmbedding};
pub use chains::{
    antichain_lower_coloring, antichain_ramsey_formula, multicolor_lower_coloring,
    symmetric_chain_partition, MAX_CHAIN_PARTITION_DIM,
};
pub use lift::algebra_from_layered;
pub use strategies::{halfslice_strategy, strategy_q2qn, strategy_qnqn};

use crate::coloring::{Color, Coloring};
use crate::embeddings::Embedding;
use crate::error::{Error, Result};
use crate::lattice::{full_mask, SubsetMask};

/// Pairwise disjoint blocks covering `[N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundPartition {
    ground: usize,
    blocks: Vec<u64>,
}

impl GroundPartition {
    pub fn new(ground: usize, blocks: Vec<u64>) -> Result<Self> {
        let mut seen = 0u64;
        for &b in &blocks {
            if b & !full_mask(ground) != 0 {
                return Err(Error::invalid(format!("block {b:#x} outside [{ground}]")));
            }
            if seen & b != 0 {
                return Err(Error::invalid("blocks overlap"));
            }
            seen |= b;
        }
        if seen != full_mask(ground) {
            return Err(Error::invalid("blocks do not cover the ground set"));
        }
        Ok(GroundPartition { ground, blocks })
    }

    /// Consecutive blocks of the given sizes, starting at element 1.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let ground: usize = sizes.iter().sum();
        if ground > crate::lattice::MAX_GROUND {
            return Err(Error::invalid(format!("ground set of size {ground} too large")));
        }
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b = full_mask(s) << start;
                start += s;
                b
            })
            .collect();
        Ok(GroundPartition { ground, blocks })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block `i` as a raw mask.
    pub fn block(&self, i: usize) -> u64 {
        self.blocks[i]
    }

    /// Union of blocks `from..to`.
    pub fn union(&self, from: usize, to: usize) -> u64 {
        self.blocks[from..to].iter().fold(0, |a, b| a | b)
    }

    pub fn blocks(&self) -> Vec<SubsetMask> {
        self.blocks
            .iter()
            .map(|&b| SubsetMask::new(b, self.ground).expect("validated block"))
            .collect()
    }
}

/// Validates a claimed monochromatic copy.
fn checked_mono(c: &Coloring, n: usize, image: Vec<u64>, color: Color) -> Result<Embedding> {
    let f = Embedding::new(n, c.dim(), image)?;
    if f.images().iter().any(|&s| c.get(s) != color) {
        return Err(Error::invalid(format!(
            "constructed copy is not monochromatic in color {color}"
        )));
    }
    Ok(f)
}

fn expect_two_colors(c: &Coloring) -> Result<()> {
    if c.colors() != 2 {
        return Err(Error::invalid(format!(
            "strategy needs a red/blue coloring, got k = {}",
            c.colors()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions() {
        let p = GroundPartition::consecutive(&[2, 0, 3]).unwrap();
        assert_eq!(p.ground_size(), 5);
        assert_eq!((p.block(0), p.block(1), p.block(2)), (0b11, 0, 0b11100));
        assert_eq!(p.union(0, 3), 0b11111);
        assert!(GroundPartition::new(3, vec![0b011, 0b110]).is_err());
        assert!(GroundPartition::new(3, vec![0b011]).is_err());
        assert!(GroundPartition::new(3, vec![0b011, 0b100]).is_ok());
    }
}
