use std::collections::HashMap;

use num_bigint::BigUint;

use super::subset::{bit_positions, full_mask, is_subset, SubsetMask};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest host dimension an [`UpSet`] can live in: the family of `2^[6]`
/// fits one 64-bit word.
pub const MAX_UPSET_DIM: usize = 6;

/// Largest `n` accepted by [`count_antichains`].
pub const MAX_ANTICHAIN_COUNT_DIM: usize = 7;

/// An upper-closed family of subsets of `[n]`.
///
/// Stored as a bitmap over the `2^n` elements of `Q_n` (bit `S` set iff `S`
/// belongs to the family). The canonical form, the sorted antichain of
/// minimal elements, is derived from it, so two upsets are equal iff their
/// bitmaps are.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UpSet {
    n: u8,
    family: u64,
}

/// Per-dimension lookup tables: `up[s]` / `down[s]` are the bitmaps of all
/// supersets / subsets of `s` inside `Q_n`.
#[derive(Debug, Clone)]
pub(crate) struct CubeTables {
    pub up: Vec<u64>,
    pub down: Vec<u64>,
}

impl CubeTables {
    pub fn new(n: usize) -> Self {
        let size = 1usize << n;
        let mut up = vec![0u64; size];
        let mut down = vec![0u64; size];
        for s in 0..size {
            for t in 0..size {
                if is_subset(s as u64, t as u64) {
                    up[s] |= 1 << t;
                    down[t] |= 1 << s;
                }
            }
        }
        CubeTables { up, down }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_UPSET_DIM {
        Err(Error::limit(
            format!("upsets over 2^[{n}] exceed the supported dimension {MAX_UPSET_DIM}"),
            0,
        ))
    } else {
        Ok(())
    }
}

impl UpSet {
    /// Wraps a family bitmap, rejecting families that are not upper closed.
    pub fn from_family(n: usize, family: u64) -> Result<Self> {
        check_dim(n)?;
        let all = full_mask(1 << n);
        if family & !all != 0 {
            return Err(Error::invalid("family bitmap has bits outside Q_n"));
        }
        let tables = CubeTables::new(n);
        for s in bit_positions(family) {
            if tables.up[s] & !family != 0 {
                return Err(Error::invalid(format!(
                    "family is not upper closed at element {s:#b}"
                )));
            }
        }
        Ok(UpSet {
            n: n as u8,
            family,
        })
    }

    pub(crate) fn from_family_unchecked(n: usize, family: u64) -> Self {
        UpSet {
            n: n as u8,
            family,
        }
    }

    /// Builds an upset from its antichain of minimal elements (or any generators).
    pub fn from_minimal(n: usize, minimal: &[u64]) -> Result<Self> {
        check_dim(n)?;
        let mut family = 0u64;
        for &m in minimal {
            if m & !full_mask(n) != 0 {
                return Err(Error::invalid(format!("mask {m:#b} outside 2^[{n}]")));
            }
            family |= superset_bitmap(n, m);
        }
        Ok(UpSet {
            n: n as u8,
            family,
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        UpSet::from_minimal(n, &[])
    }

    /// The whole lattice `2^[n]`.
    pub fn full(n: usize) -> Result<Self> {
        UpSet::from_minimal(n, &[0])
    }

    /// `{i}+`, all sets containing the 1-based element `i`.
    pub fn principal(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("element {i} outside [1, {n}]")));
        }
        UpSet::from_minimal(n, &[1 << (i - 1)])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    /// Bitmap over `Q_n` of the represented family.
    #[inline]
    pub fn family_bits(&self) -> u64 {
        self.family
    }

    #[inline]
    pub fn contains(&self, s: u64) -> bool {
        self.family >> s & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.family.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.family == 0
    }

    /// Minimal elements in canonical (ascending mask) order.
    pub fn min_masks(&self) -> Vec<u64> {
        let fam = self.family;
        bit_positions(fam)
            .filter(|&s| {
                // minimal iff no proper subset in the family
                let s = s as u64;
                bit_positions(s).all(|i| fam >> (s & !(1 << i)) & 1 == 0)
            })
            .map(|s| s as u64)
            .collect()
    }

    pub fn min_elements(&self) -> Vec<SubsetMask> {
        self.min_masks()
            .into_iter()
            .map(|m| SubsetMask::new(m, self.n as usize).expect("mask inside 2^[n]"))
            .collect()
    }

    /// The 1-based `i` when this upset is `{i}+`.
    pub fn principal_index(&self) -> Option<usize> {
        match self.min_masks().as_slice() {
            [m] if m.count_ones() == 1 => Some(m.trailing_zeros() as usize + 1),
            _ => None,
        }
    }
}

fn superset_bitmap(n: usize, m: u64) -> u64 {
    let mut bits = 0u64;
    for t in 0..1u64 << n {
        if is_subset(m, t) {
            bits |= 1 << t;
        }
    }
    bits
}

/// The upper set generated by `generators` inside `2^[n]`.
pub fn upset_close(generators: &[SubsetMask], n: usize) -> Result<UpSet> {
    for g in generators {
        if g.ground_size() != n {
            return Err(Error::invalid(format!(
                "generator {g} lives in a ground set of size {}, expected {n}",
                g.ground_size()
            )));
        }
    }
    let raw: Vec<u64> = generators.iter().map(|g| g.bits()).collect();
    UpSet::from_minimal(n, &raw)
}

/// Family bitmaps of every upset of `2^[n]`, ordered lexicographically by
/// their sorted minimal-element lists.
pub fn upset_families(n: usize) -> Result<Vec<u64>> {
    check_dim(n)?;
    let tables = CubeTables::new(n);
    let all = full_mask(1 << n);
    let mut out = Vec::new();
    // pre-order DFS over antichains, extending only with larger masks
    fn walk(t: &CubeTables, start: usize, allowed: u64, family: u64, out: &mut Vec<u64>) {
        out.push(family);
        let ge_start = if start >= 64 { 0 } else { u64::MAX << start };
        let mut cand = allowed & ge_start;
        while cand != 0 {
            let m = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            walk(
                t,
                m + 1,
                allowed & !(t.up[m] | t.down[m]),
                family | t.up[m],
                out,
            );
        }
    }
    walk(&tables, 0, all, 0, &mut out);
    Ok(out)
}

/// Every upset of `2^[n]` in canonical form, in lexicographic order of the
/// sorted minimal-element lists. The length is the number of antichains `a(n)`.
pub fn enumerate_upsets(n: usize) -> Result<Vec<UpSet>> {
    Ok(upset_families(n)?
        .into_iter()
        .map(|f| UpSet::from_family_unchecked(n, f))
        .collect())
}

/// Number of antichains of `2^[n]` (equivalently of upsets), for `n <= 7`.
///
/// Splitting off two ground elements writes an upset of `2^[n]` as four
/// upsets `f00 <= f01, f10 <= f11` of `2^[n-2]`, so
/// `a(n) = sum over (f01, f10) of down(f01 & f10) * up(f01 | f10)`, where
/// `down(h)` / `up(h)` count the upsets below / above `h`.
pub fn count_antichains(n: usize) -> Result<BigUint> {
    count_antichains_with(n, Exec::default())
}

pub fn count_antichains_with(n: usize, exec: Exec) -> Result<BigUint> {
    if n > MAX_ANTICHAIN_COUNT_DIM {
        return Err(Error::limit(
            format!("antichain count for n = {n} exceeds supported n <= {MAX_ANTICHAIN_COUNT_DIM}"),
            0,
        ));
    }
    if n < 2 {
        return Ok(BigUint::from(upset_families(n)?.len()));
    }
    let fams = upset_families(n - 2)?;
    let index: HashMap<u64, usize> = fams.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let below_above = exec.map_slice(&fams, |&h| {
        let below = fams.iter().filter(|&&f| is_subset(f, h)).count() as u64;
        let above = fams.iter().filter(|&&f| is_subset(h, f)).count() as u64;
        (below, above)
    });
    let total = exec.map_slice(&fams, |&a| {
        let mut acc: u128 = 0;
        for &b in &fams {
            let lo = index[&(a & b)];
            let hi = index[&(a | b)];
            acc += below_above[lo].0 as u128 * below_above[hi].1 as u128;
        }
        acc
    });
    let sum: u128 = total.into_iter().sum();
    Ok(BigUint::from(sum))
}
