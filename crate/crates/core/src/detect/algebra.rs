use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::lattice::SubsetMask;

/// Largest dimension the exhaustive recognizer handles.
pub const MAX_ALGEBRA_SEARCH_DIM: usize = 2;

/// Disjoint blocks `X_0, ..., X_n`; the algebra is `{X_0 ∪ ⋃_{i∈I} X_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanAlgebraWitness {
    blocks: Vec<SubsetMask>,
}

/// Serialized form `{"X": [m_0, ..., m_n]}` with masks as integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(rename = "X")]
    pub blocks: Vec<u64>,
}

impl BooleanAlgebraWitness {
    pub fn new(blocks: Vec<SubsetMask>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::invalid("an algebra witness needs X_0"));
        };
        let ground = first.ground_size();
        let mut seen = 0u64;
        for (i, b) in blocks.iter().enumerate() {
            if b.ground_size() != ground {
                return Err(Error::invalid("blocks live in different ground sets"));
            }
            if i > 0 && b.is_empty() {
                return Err(Error::invalid(format!("block X_{i} is empty")));
            }
            if seen & b.bits() != 0 {
                return Err(Error::invalid(format!("block X_{i} overlaps an earlier block")));
            }
            seen |= b.bits();
        }
        Ok(BooleanAlgebraWitness { blocks })
    }

    pub fn dim(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    /// The `2^n` members, indexed by `I` as a bitmask.
    pub fn members(&self) -> Vec<u64> {
        let n = self.dim();
        (0u64..1 << n)
            .map(|i| {
                (0..n)
                    .filter(|&j| i >> j & 1 == 1)
                    .fold(self.blocks[0].bits(), |acc, j| acc | self.blocks[j + 1].bits())
            })
            .collect()
    }

    /// Whether every member lies in `family`.
    pub fn is_contained_in(&self, family: &[SubsetMask]) -> bool {
        let mut set: Vec<u64> = family.iter().map(|m| m.bits()).collect();
        set.sort_unstable();
        self.members().iter().all(|m| set.binary_search(m).is_ok())
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            blocks: self.blocks.iter().map(|b| b.bits()).collect(),
        }
    }

    pub fn from_file(file: &AlgebraFile, ground: usize) -> Result<Self> {
        let blocks = file
            .blocks
            .iter()
            .map(|&b| SubsetMask::new(b, ground))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }
}

/// Finds a Boolean algebra of dimension `n <= 2` contained (as a set
/// system) in `family`. Candidates are tried with `X_0` ascending, then the
/// other members ascending.
pub fn find_boolean_algebra(
    family: &[SubsetMask],
    n: usize,
    budget: &mut Budget,
) -> Result<Option<BooleanAlgebraWitness>> {
    if n > MAX_ALGEBRA_SEARCH_DIM {
        return Err(Error::invalid(format!(
            "exhaustive algebra search supports n <= {MAX_ALGEBRA_SEARCH_DIM}, got {n}"
        )));
    }
    let Some(first) = family.first() else {
        return Ok(None);
    };
    let ground = first.ground_size();
    if family.iter().any(|m| m.ground_size() != ground) {
        return Err(Error::invalid("family members live in different ground sets"));
    }
    let mut sets: Vec<u64> = family.iter().map(|m| m.bits()).collect();
    sets.sort_unstable();
    sets.dedup();
    let has = |m: u64| sets.binary_search(&m).is_ok();
    let mask = |b: u64| SubsetMask::new(b, ground);

    for &base in &sets {
        budget.tick("algebra search")?;
        if n == 0 {
            return Ok(Some(BooleanAlgebraWitness::new(vec![mask(base)?])?));
        }
        let above: Vec<u64> = sets
            .iter()
            .copied()
            .filter(|&b| b != base && b & base == base)
            .collect();
        for (i, &b) in above.iter().enumerate() {
            budget.tick("algebra search")?;
            let x1 = b & !base;
            if n == 1 {
                return Ok(Some(BooleanAlgebraWitness::new(vec![mask(base)?, mask(x1)?])?));
            }
            for &c in &above[i + 1..] {
                budget.tick("algebra search")?;
                let x2 = c & !base;
                if x1 & x2 == 0 && has(b | c) {
                    return Ok(Some(BooleanAlgebraWitness::new(vec![
                        mask(base)?,
                        mask(x1)?,
                        mask(x2)?,
                    ])?));
                }
            }
        }
    }
    Ok(None)
}
