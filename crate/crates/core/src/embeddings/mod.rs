//! Embeddings of `Q_n` into `Q_N` and their two combinatorial encodings:
//! characteristic vectors (good sequences of upsets) and `(I, phi)`
//! decompositions.

mod counting;
mod enumerate;
mod phi;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{full_mask, is_subset, Poset, SubsetMask, UpSet, MAX_GROUND, MAX_UPSET_DIM};

pub use counting::{count_embeddings_bounds, count_embeddings_exact, good_sequences_with_missing};
pub use enumerate::{enumerate_embeddings, EmbeddingStream, GoodSequenceSpace};
pub use phi::{decompose_embedding, recompose_phi, PhiDecomposition};

/// Largest source dimension for an [`Embedding`] (image table of `2^n` masks).
pub const MAX_SOURCE_DIM: usize = 20;

/// An order-preserving and order-reflecting map `2^[n] -> 2^[N]`, stored as
/// the image table indexed by source mask.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Embedding {
    n: usize,
    target: usize,
    image: Vec<u64>,
}

/// `{"n": n, "N": N, "image": [m_0, ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFile {
    pub n: usize,
    #[serde(rename = "N")]
    pub target: usize,
    pub image: Vec<u64>,
}

impl Embedding {
    /// Validates length, range and order-exactness of the image table.
    pub fn new(n: usize, target: usize, image: Vec<u64>) -> Result<Self> {
        let e = Embedding::from_parts_unchecked(n, target, image)?;
        if !e.is_order_exact() {
            return Err(Error::invalid(
                "image table is not order-preserving and order-reflecting",
            ));
        }
        Ok(e)
    }

    /// Checks shape only; order-exactness is the caller's responsibility.
    pub(crate) fn from_parts_unchecked(n: usize, target: usize, image: Vec<u64>) -> Result<Self> {
        if n > MAX_SOURCE_DIM || target > MAX_GROUND {
            return Err(Error::invalid(format!(
                "embedding dimensions n = {n}, N = {target} out of range"
            )));
        }
        if image.len() != 1 << n {
            return Err(Error::invalid(format!(
                "image table has {} entries, expected {}",
                image.len(),
                1u64 << n
            )));
        }
        if image.iter().any(|&m| m & !full_mask(target) != 0) {
            return Err(Error::invalid(format!("image mask outside 2^[{target}]")));
        }
        Ok(Embedding { n, target, image })
    }

    pub fn identity(n: usize) -> Self {
        Embedding {
            n,
            target: n,
            image: (0..1u64 << n).collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[u64] {
        &self.image
    }

    pub fn image(&self, source: u64) -> SubsetMask {
        SubsetMask::new(self.image[source as usize], self.target).expect("validated image")
    }

    pub fn image_masks(&self) -> Vec<SubsetMask> {
        (0..self.image.len() as u64).map(|s| self.image(s)).collect()
    }

    /// The copy of `Q_n` as an unordered family (sorted ascending).
    pub fn family(&self) -> Vec<u64> {
        let mut fam = self.image.clone();
        fam.sort_unstable();
        fam
    }

    /// Injective, order-preserving and order-reflecting.
    pub fn is_order_exact(&self) -> bool {
        let size = self.image.len();
        for s in 0..size {
            for t in 0..size {
                if is_subset(s as u64, t as u64) != is_subset(self.image[s], self.image[t]) {
                    return false;
                }
            }
        }
        true
    }

    /// Composition `self ∘ inner` where `inner` maps into `Q_{self.n}`.
    pub fn compose(&self, inner: &Embedding) -> Result<Embedding> {
        if inner.target != self.n {
            return Err(Error::invalid("composition dimensions do not match"));
        }
        let image = inner
            .image
            .iter()
            .map(|&m| self.image[m as usize])
            .collect();
        Ok(Embedding {
            n: inner.n,
            target: self.target,
            image,
        })
    }

    pub fn to_file(&self) -> EmbeddingFile {
        EmbeddingFile {
            n: self.n,
            target: self.target,
            image: self.image.clone(),
        }
    }

    pub fn from_file(file: &EmbeddingFile) -> Result<Self> {
        Embedding::new(file.n, file.target, file.image.clone())
    }

    pub fn as_poset_images(&self) -> (Poset, Vec<SubsetMask>) {
        (Poset::boolean_lattice(self.n), self.image_masks())
    }
}

/// A length-`N` sequence of upsets of `2^[n]` in which every `{i}+` occurs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoodSequence {
    n: usize,
    entries: Vec<UpSet>,
}

/// `{"n": n, "entries": [[minimal masks], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GoodSequenceFile {
    pub n: usize,
    pub entries: Vec<Vec<u64>>,
}

impl GoodSequence {
    pub fn new(n: usize, entries: Vec<UpSet>) -> Result<Self> {
        if entries.iter().any(|u| u.dim() != n) {
            return Err(Error::invalid("entries live in different lattices"));
        }
        if !is_good_for(n, &entries) {
            return Err(Error::invalid(
                "sequence is not good: some principal upset {i}+ is missing",
            ));
        }
        Ok(GoodSequence { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[UpSet] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_file(&self) -> GoodSequenceFile {
        GoodSequenceFile {
            n: self.n,
            entries: self.entries.iter().map(|u| u.min_masks()).collect(),
        }
    }

    pub fn from_file(file: &GoodSequenceFile) -> Result<Self> {
        let entries = file
            .entries
            .iter()
            .map(|mins| UpSet::from_minimal(file.n, mins))
            .collect::<Result<Vec<_>>>()?;
        GoodSequence::new(file.n, entries)
    }
}

fn is_good_for(n: usize, entries: &[UpSet]) -> bool {
    let mut seen = 0u64;
    for u in entries {
        if let Some(i) = u.principal_index() {
            seen |= 1 << (i - 1);
        }
    }
    seen == full_mask(n)
}

/// True iff every `{i}+`, `i` in `[n]`, occurs among `entries`. Entries from
/// different lattices make the answer false.
pub fn is_good(entries: &[UpSet]) -> bool {
    match entries.first() {
        None => true,
        Some(first) => {
            let n = first.dim();
            entries.iter().all(|u| u.dim() == n) && is_good_for(n, entries)
        }
    }
}

/// `is_good` for an explicitly given source dimension (needed when the
/// sequence is empty).
pub fn is_good_in(n: usize, entries: &[UpSet]) -> bool {
    entries.iter().all(|u| u.dim() == n) && is_good_for(n, entries)
}

/// `U_j(f) = {S : j in f(S)}` for `j = 1..N`.
pub fn characteristic_vector(f: &Embedding) -> Result<GoodSequence> {
    if f.n > MAX_UPSET_DIM {
        return Err(Error::limit(
            format!("characteristic vectors need n <= {MAX_UPSET_DIM}"),
            0,
        ));
    }
    let entries = (0..f.target)
        .map(|j| {
            let mut fam = 0u64;
            for (s, &img) in f.image.iter().enumerate() {
                if img >> j & 1 == 1 {
                    fam |= 1 << s;
                }
            }
            UpSet::from_family_unchecked(f.n, fam)
        })
        .collect();
    Ok(GoodSequence { n: f.n, entries })
}

/// `f(S) = {j : S in U_j}`, the unique embedding with the given characteristic vector.
pub fn embedding_from_sequence(seq: &GoodSequence) -> Result<Embedding> {
    if !is_good_in(seq.n, &seq.entries) {
        return Err(Error::invalid("sequence is not good"));
    }
    Ok(embedding_from_families(
        seq.n,
        seq.entries.iter().map(|u| u.family_bits()),
    ))
}

pub(crate) fn embedding_from_families(n: usize, families: impl Iterator<Item = u64>) -> Embedding {
    let mut image = vec![0u64; 1 << n];
    let mut target = 0;
    for (j, fam) in families.enumerate() {
        for (s, img) in image.iter_mut().enumerate() {
            if fam >> s & 1 == 1 {
                *img |= 1 << j;
            }
        }
        target = j + 1;
    }
    Embedding { n, target, image }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn principal(n: usize, i: usize) -> UpSet {
        UpSet::principal(n, i).unwrap()
    }

    #[test]
    fn characteristic_vector_examples() {
        let cv = characteristic_vector(&Embedding::identity(2)).unwrap();
        assert_eq!(cv.entries(), &[principal(2, 1), principal(2, 2)]);

        let f = Embedding::new(1, 2, vec![0b00, 0b11]).unwrap();
        let cv = characteristic_vector(&f).unwrap();
        assert_eq!(cv.entries(), &[principal(1, 1), principal(1, 1)]);

        let f = Embedding::new(1, 2, vec![0b10, 0b11]).unwrap();
        let cv = characteristic_vector(&f).unwrap();
        assert_eq!(cv.entries(), &[principal(1, 1), UpSet::full(1).unwrap()]);
    }

    #[test]
    fn embedding_from_sequence_examples() {
        let s = GoodSequence::new(2, vec![principal(2, 1), principal(2, 2)]).unwrap();
        assert_eq!(embedding_from_sequence(&s).unwrap(), Embedding::identity(2));

        let s = GoodSequence::new(1, vec![principal(1, 1), principal(1, 1)]).unwrap();
        let f = embedding_from_sequence(&s).unwrap();
        assert_eq!(f.images(), &[0, 0b11]);

        let bad = vec![principal(2, 1), principal(2, 1), UpSet::full(2).unwrap()];
        assert!(GoodSequence::new(2, bad).is_err());
    }

    #[test]
    fn goodness_examples() {
        assert!(is_good(&[principal(2, 1), principal(2, 2), UpSet::empty(2).unwrap()]));
        assert!(!is_good(&[principal(2, 1), principal(2, 1)]));
        assert!(is_good(&[UpSet::full(1).unwrap(), principal(1, 1)]));
        assert!(!is_good(&[principal(2, 1), principal(1, 1)]));
    }

    #[test]
    fn rejects_non_embeddings() {
        assert!(Embedding::new(1, 2, vec![0b01, 0b10]).is_err());
        assert!(Embedding::new(1, 2, vec![0b01, 0b01]).is_err());
        assert!(Embedding::new(1, 1, vec![0, 0b10]).is_err());
        assert!(Embedding::new(2, 2, vec![0, 1]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let f = Embedding::new(1, 3, vec![0b100, 0b111]).unwrap();
        let text = serde_json::to_string(&f.to_file()).unwrap();
        assert_eq!(text, r#"{"n":1,"N":3,"image":[4,7]}"#);
        let back: EmbeddingFile = serde_json::from_str(&text).unwrap();
        assert_eq!(Embedding::from_file(&back).unwrap(), f);

        let s = characteristic_vector(&f).unwrap();
        let sf = s.to_file();
        assert_eq!(GoodSequence::from_file(&sf).unwrap(), s);
    }
}
