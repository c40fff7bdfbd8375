use std::ops::Range;

use super::{embedding_from_families, Embedding};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{full_mask, upset_families, UpSet};

/// The set of good sequences of length `N` over the upsets of `2^[n]`,
/// ordered lexicographically by letter index (letters ordered as
/// [`crate::lattice::enumerate_upsets`]). Supports counting, ranking and
/// unranking so disjoint rank ranges can be consumed independently.
#[derive(Debug, Clone)]
pub struct GoodSequenceSpace {
    n: usize,
    len: usize,
    letters: Vec<u64>,
    /// 0-based principal index of each letter, if it is some `{i}+`.
    principal: Vec<Option<u8>>,
    /// Letter index of `{i}+` for each 0-based `i`, ascending.
    principal_letters: Vec<usize>,
    /// `completions[m][r]`: good completions of `r` positions with `m` principals missing.
    completions: Vec<Vec<u128>>,
}

impl GoodSequenceSpace {
    pub fn new(n: usize, len: usize) -> Result<Self> {
        let letters = upset_families(n)?;
        let mut principal = vec![None; letters.len()];
        let mut principal_letters = vec![0usize; n];
        for (idx, &fam) in letters.iter().enumerate() {
            let u = UpSet::from_family_unchecked(n, fam);
            if let Some(i) = u.principal_index() {
                principal[idx] = Some((i - 1) as u8);
                principal_letters[i - 1] = idx;
            }
        }
        let a = letters.len() as u128;
        let mut completions = vec![vec![0u128; len + 1]; n + 1];
        for (m, row) in completions.iter_mut().enumerate() {
            for (r, cell) in row.iter_mut().enumerate() {
                *cell = inclusion_exclusion(a, m, r).ok_or_else(|| {
                    Error::limit(
                        format!("good-sequence count for n = {n}, N = {len} overflows 128 bits"),
                        0,
                    )
                })?;
            }
        }
        Ok(GoodSequenceSpace {
            n,
            len,
            letters,
            principal,
            principal_letters,
            completions,
        })
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.len
    }

    /// Upset family bitmaps, indexed by letter.
    pub fn letters(&self) -> &[u64] {
        &self.letters
    }

    /// Total number of good sequences, i.e. `e(n, N)`.
    pub fn total(&self) -> u128 {
        self.completions[self.n][self.len]
    }

    fn missing_after(&self, missing: u64, letter: usize) -> u64 {
        match self.principal[letter] {
            Some(i) => missing & !(1 << i),
            None => missing,
        }
    }

    /// Letters of the good sequence with the given rank.
    pub fn unrank(&self, mut rank: u128) -> Result<Vec<usize>> {
        if rank >= self.total() {
            return Err(Error::invalid(format!(
                "rank {rank} out of range 0..{}",
                self.total()
            )));
        }
        let mut missing = full_mask(self.n);
        let mut out = Vec::with_capacity(self.len);
        for pos in 0..self.len {
            let remaining = self.len - pos - 1;
            for letter in 0..self.letters.len() {
                let after = self.missing_after(missing, letter);
                let count = self.completions[after.count_ones() as usize][remaining];
                if rank < count {
                    out.push(letter);
                    missing = after;
                    break;
                }
                rank -= count;
            }
        }
        Ok(out)
    }

    /// Rank of a good letter sequence.
    pub fn rank(&self, seq: &[usize]) -> Result<u128> {
        if seq.len() != self.len || seq.iter().any(|&l| l >= self.letters.len()) {
            return Err(Error::invalid("letter sequence does not belong to this space"));
        }
        let mut missing = full_mask(self.n);
        let mut rank = 0u128;
        for (pos, &letter) in seq.iter().enumerate() {
            let remaining = self.len - pos - 1;
            for smaller in 0..letter {
                let after = self.missing_after(missing, smaller);
                rank += self.completions[after.count_ones() as usize][remaining];
            }
            missing = self.missing_after(missing, letter);
        }
        if missing != 0 {
            return Err(Error::invalid("letter sequence is not good"));
        }
        Ok(rank)
    }

    pub fn embedding_of(&self, seq: &[usize]) -> Embedding {
        embedding_from_families(self.n, seq.iter().map(|&l| self.letters[l]))
    }

    /// Embeddings with ranks in `range`, in rank order.
    pub fn stream(&self, range: Range<u128>) -> Result<EmbeddingStream<'_>> {
        let end = range.end.min(self.total());
        let start = range.start.min(end);
        let current = if start < end {
            Some(self.unrank(start)?)
        } else {
            None
        };
        Ok(EmbeddingStream {
            space: self,
            current,
            remaining: end - start,
            fresh: true,
        })
    }

    /// Splits `0..total` into at most `parts` contiguous rank ranges.
    pub fn partition(&self, parts: usize) -> Vec<Range<u128>> {
        let total = self.total();
        let parts = (parts.max(1) as u128).min(total.max(1));
        let step = total.div_ceil(parts);
        (0..parts)
            .map(|k| (k * step).min(total)..((k + 1) * step).min(total))
            .filter(|r| !r.is_empty())
            .collect()
    }

    /// Folds every embedding with `f`, chunked over rank ranges, returning
    /// per-chunk results in rank order.
    pub fn map_chunks<T, F>(&self, chunks: usize, exec: Exec, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(EmbeddingStream<'_>) -> T + Sync + Send,
    {
        let ranges = self.partition(chunks);
        exec.map_slice(&ranges, |r| self.stream(r.clone()).map(&f))
            .into_iter()
            .collect()
    }

    /// Is this sequence the representative of its copy, i.e. do the first
    /// occurrences of `{1}+, ..., {n}+` appear in increasing position order?
    /// Each copy of `Q_n` has exactly one such embedding among its `n!`.
    pub fn is_copy_representative(&self, seq: &[usize]) -> bool {
        let mut next = 0u8;
        let mut seen = 0u64;
        for &l in seq {
            if let Some(i) = self.principal[l] {
                if seen >> i & 1 == 0 {
                    if i != next {
                        return false;
                    }
                    seen |= 1 << i;
                    next += 1;
                }
            }
        }
        true
    }

    /// 0-based `i` when the letter is `{i+1}+`.
    pub(crate) fn principal_at(&self, letter: usize) -> Option<usize> {
        self.principal[letter].map(|i| i as usize)
    }

    pub(crate) fn principal_letter(&self, i: usize) -> usize {
        self.principal_letters[i]
    }
}

fn inclusion_exclusion(a: u128, missing: usize, len: usize) -> Option<u128> {
    let mut pos: u128 = 0;
    let mut neg: u128 = 0;
    let mut binom: u128 = 1;
    for k in 0..=missing {
        if (k as u128) <= a {
            let base = a - k as u128;
            let term = binom.checked_mul(base.checked_pow(len as u32)?)?;
            if k % 2 == 0 {
                pos = pos.checked_add(term)?;
            } else {
                neg = neg.checked_add(term)?;
            }
        }
        binom = binom * (missing - k) as u128 / (k as u128 + 1);
    }
    pos.checked_sub(neg)
}

/// Single-consumer iterator over a contiguous rank range of good sequences.
#[derive(Debug, Clone)]
pub struct EmbeddingStream<'a> {
    space: &'a GoodSequenceSpace,
    current: Option<Vec<usize>>,
    remaining: u128,
    fresh: bool,
}

impl EmbeddingStream<'_> {
    /// Advances to the next letter sequence and returns it.
    pub fn next_letters(&mut self) -> Option<&[usize]> {
        if self.remaining == 0 {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else {
            let seq = self.current.as_mut()?;
            advance(self.space, seq);
        }
        self.remaining -= 1;
        self.current.as_deref()
    }
}

impl Iterator for EmbeddingStream<'_> {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        let space = self.space;
        self.next_letters().map(|seq| space.embedding_of(seq))
    }
}

/// Moves `seq` to its lexicographic successor among good sequences. The
/// caller guarantees a successor exists.
fn advance(space: &GoodSequenceSpace, seq: &mut [usize]) {
    let len = seq.len();
    let alphabet = space.letters.len();
    // missing[p] = principals still missing before position p
    let mut missing = vec![0u64; len + 1];
    missing[0] = full_mask(space.n);
    for p in 0..len {
        missing[p + 1] = space.missing_after(missing[p], seq[p]);
    }
    for p in (0..len).rev() {
        let remaining = (len - p - 1) as u32;
        let before = missing[p];
        let choice = if before.count_ones() <= remaining {
            (seq[p] + 1 < alphabet).then_some(seq[p] + 1)
        } else {
            // must place a missing principal here
            (0..space.n)
                .filter(|&i| before >> i & 1 == 1)
                .map(|i| space.principal_letter(i))
                .filter(|&l| l > seq[p])
                .min()
        };
        if let Some(letter) = choice {
            seq[p] = letter;
            let mut miss = space.missing_after(before, letter);
            for (q, slot) in seq.iter_mut().enumerate().skip(p + 1) {
                let remaining = (len - q - 1) as u32;
                // letter 0 is the empty upset; the lowest missing principal
                // has the smallest letter index among principals
                let l = if miss.count_ones() <= remaining {
                    0
                } else {
                    space.principal_letter(miss.trailing_zeros() as usize)
                };
                *slot = l;
                miss = space.missing_after(miss, l);
            }
            return;
        }
    }
    unreachable!("advance called on the last good sequence");
}

/// Every embedding of `Q_n` into `Q_N`, in rank order.
///
/// Fails with a resource-limit error (carrying how many embeddings were
/// produced) when more than `limit` embeddings exist.
pub fn enumerate_embeddings(n: usize, target: usize, limit: u64) -> Result<Vec<Embedding>> {
    let space = GoodSequenceSpace::new(n, target)?;
    let mut out = Vec::new();
    for e in space.stream(0..space.total())? {
        if out.len() as u64 >= limit {
            return Err(Error::limit(
                format!("e({n}, {target}) = {} exceeds the enumeration limit {limit}", space.total()),
                out.len() as u64,
            ));
        }
        out.push(e);
    }
    Ok(out)
}
