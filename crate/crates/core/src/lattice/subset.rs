use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can describe.
pub const MAX_GROUND: usize = 63;

/// One element of `Q_N`: a subset of the ground set `{1, ..., N}`.
///
/// Bit `i` is set iff ground element `i + 1` belongs to the set. The ground
/// size travels with the mask so that families mixing different lattices can
/// be rejected.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubsetMask {
    bits: u64,
    ground: u8,
}

impl SubsetMask {
    pub fn new(bits: u64, ground: usize) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(Error::invalid(format!(
                "ground size {ground} exceeds {MAX_GROUND}"
            )));
        }
        if bits & !full_mask(ground) != 0 {
            return Err(Error::invalid(format!(
                "mask {bits:#x} has bits outside a ground set of size {ground}"
            )));
        }
        Ok(SubsetMask {
            bits,
            ground: ground as u8,
        })
    }

    /// Builds a mask from 1-based ground elements.
    pub fn from_elements(elements: &[usize], ground: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > ground {
                return Err(Error::invalid(format!(
                    "element {e} outside ground set [1, {ground}]"
                )));
            }
            bits |= 1 << (e - 1);
        }
        SubsetMask::new(bits, ground)
    }

    pub fn empty(ground: usize) -> Self {
        SubsetMask::new(0, ground).expect("ground size checked by caller")
    }

    pub fn full(ground: usize) -> Self {
        SubsetMask::new(full_mask(ground), ground).expect("ground size checked by caller")
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground_size(self) -> usize {
        self.ground as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Membership of a 1-based ground element.
    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= self.ground as usize && self.bits >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        is_subset(self.bits, other.bits)
    }

    pub fn complement(self) -> SubsetMask {
        SubsetMask {
            bits: !self.bits & full_mask(self.ground as usize),
            ground: self.ground,
        }
    }

    /// Sorted 1-based elements.
    pub fn elements(self) -> Vec<usize> {
        bit_positions(self.bits).map(|i| i + 1).collect()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Positions of set bits, ascending.
pub fn bit_positions(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        }
    })
}

/// All submasks of `mask`, ascending by value.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// All `k`-element subsets of an `n`-element ground set, ascending by value.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full_mask(k))
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt < limit).then_some(nxt)
            }
        };
        Some(cur)
    })
}

/// Spreads the low bits of `source` onto the positions of `target_positions`
/// (bit `i` of `source` lands on the `i`-th set bit of `target_positions`).
pub fn deposit(source: u64, target_positions: u64) -> u64 {
    let mut out = 0;
    for (i, pos) in bit_positions(target_positions).enumerate() {
        if source >> i & 1 == 1 {
            out |= 1 << pos;
        }
    }
    out
}

/// Inverse of [`deposit`]: gathers the bits at `positions` into the low bits.
pub fn extract(value: u64, positions: u64) -> u64 {
    let mut out = 0;
    for (i, pos) in bit_positions(positions).enumerate() {
        if value >> pos & 1 == 1 {
            out |= 1 << i;
        }
    }
    out
}

/// True iff no two distinct members are comparable by containment.
pub fn is_antichain(family: &[SubsetMask]) -> Result<bool> {
    if let Some(first) = family.first() {
        if family.iter().any(|m| m.ground != first.ground) {
            return Err(Error::invalid("family mixes ground sizes"));
        }
    }
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if a.is_subset_of(*b) || b.is_subset_of(*a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
