use super::{characteristic_vector, Embedding};
use crate::error::{Error, Result};
use crate::lattice::{deposit, extract, full_mask, is_subset, SubsetMask, UpSet};

/// A copy of `Q_n` written as `{Y ∪ phi(Y) : Y ⊆ I}` with `|I| = n` and `phi`
/// inclusion preserving into `2^([N] \ I)`.
///
/// `phi` is indexed by the compressed form of `Y`: bit `k` of the index is
/// the `k`-th smallest element of `I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiDecomposition {
    pub target: usize,
    pub index_set: u64,
    pub phi: Vec<u64>,
}

impl PhiDecomposition {
    pub fn validate(&self) -> Result<()> {
        let all = full_mask(self.target);
        if self.index_set & !all != 0 {
            return Err(Error::invalid("index set I lies outside [N]"));
        }
        let k = self.index_set.count_ones() as usize;
        if self.phi.len() != 1 << k {
            return Err(Error::invalid(format!(
                "phi has {} entries, expected 2^|I| = {}",
                self.phi.len(),
                1u64 << k
            )));
        }
        for &v in &self.phi {
            if v & !all != 0 || v & self.index_set != 0 {
                return Err(Error::invalid(format!(
                    "phi value {v:#b} is not a subset of [N] \\ I"
                )));
            }
        }
        for y in 0..self.phi.len() {
            for y2 in 0..self.phi.len() {
                if is_subset(y as u64, y2 as u64) && !is_subset(self.phi[y], self.phi[y2]) {
                    return Err(Error::invalid("phi is not inclusion preserving"));
                }
            }
        }
        Ok(())
    }

    /// `phi(Y)` for an uncompressed `Y ⊆ I`.
    pub fn phi_of(&self, y: u64) -> u64 {
        self.phi[extract(y, self.index_set) as usize]
    }

    pub fn index_set_mask(&self) -> SubsetMask {
        SubsetMask::new(self.index_set, self.target).expect("validated index set")
    }

    /// The embedding `Y -> Y ∪ phi(Y)` with source coordinates ordered like `I`.
    pub fn to_embedding(&self) -> Result<Embedding> {
        self.validate()?;
        let image = (0..self.phi.len() as u64)
            .map(|y| deposit(y, self.index_set) | self.phi[y as usize])
            .collect();
        Embedding::new(self.index_set.count_ones() as usize, self.target, image)
    }
}

/// Writes the copy `f(Q_n)` as `(I, phi)`. `I` takes, for each `i`, the first
/// coordinate `j` whose characteristic-vector entry is `{i}+`.
pub fn decompose_embedding(f: &Embedding) -> Result<PhiDecomposition> {
    let cv = characteristic_vector(f)?;
    let n = f.source_dim();
    let mut index_set = 0u64;
    for i in 1..=n {
        let target = UpSet::principal(n, i)?;
        let j = cv
            .entries()
            .iter()
            .position(|u| *u == target)
            .ok_or_else(|| Error::invalid("embedding has no coordinate for a principal upset"))?;
        index_set |= 1 << j;
    }
    let mut phi = vec![0u64; 1 << n];
    let mut seen = vec![false; 1 << n];
    for &img in f.images() {
        let y = extract(img, index_set) as usize;
        if seen[y] {
            return Err(Error::invalid("two images share a trace on I"));
        }
        seen[y] = true;
        phi[y] = img & !index_set;
    }
    let d = PhiDecomposition {
        target: f.target_dim(),
        index_set,
        phi,
    };
    d.validate()?;
    Ok(d)
}

/// The family `{Y ∪ phi(Y) : Y ⊆ I}`, listed by compressed `Y`.
pub fn recompose_phi(d: &PhiDecomposition) -> Result<Vec<SubsetMask>> {
    d.validate()?;
    (0..d.phi.len() as u64)
        .map(|y| SubsetMask::new(deposit(y, d.index_set) | d.phi[y as usize], d.target))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_embedding, Poset};

    #[test]
    fn decompose_examples() {
        let d = decompose_embedding(&Embedding::identity(2)).unwrap();
        assert_eq!(d.index_set, 0b11);
        assert!(d.phi.iter().all(|&v| v == 0));

        let f = Embedding::new(1, 2, vec![0b10, 0b11]).unwrap();
        let d = decompose_embedding(&f).unwrap();
        assert_eq!(d.index_set, 0b01);
        assert_eq!(d.phi, vec![0b10, 0b10]);
    }

    #[test]
    fn recompose_examples() {
        let d = PhiDecomposition {
            target: 3,
            index_set: 0b011,
            phi: vec![0; 4],
        };
        let fam: Vec<u64> = recompose_phi(&d).unwrap().iter().map(|m| m.bits()).collect();
        assert_eq!(fam, vec![0, 0b001, 0b010, 0b011]);

        // phi(Y) = {3} iff 1 in Y
        let d = PhiDecomposition {
            target: 3,
            index_set: 0b011,
            phi: vec![0, 0b100, 0, 0b100],
        };
        let fam = recompose_phi(&d).unwrap();
        let bits: Vec<u64> = fam.iter().map(|m| m.bits()).collect();
        assert_eq!(bits, vec![0, 0b101, 0b010, 0b111]);
        assert!(is_embedding(&Poset::boolean_lattice(2), &fam));

        let d = PhiDecomposition {
            target: 1,
            index_set: 0b1,
            phi: vec![0, 0],
        };
        let bits: Vec<u64> = recompose_phi(&d).unwrap().iter().map(|m| m.bits()).collect();
        assert_eq!(bits, vec![0, 1]);
    }

    #[test]
    fn invalid_decompositions() {
        let not_monotone = PhiDecomposition {
            target: 2,
            index_set: 0b01,
            phi: vec![0b10, 0],
        };
        assert!(recompose_phi(&not_monotone).is_err());
        let overlapping = PhiDecomposition {
            target: 2,
            index_set: 0b01,
            phi: vec![0, 0b01],
        };
        assert!(recompose_phi(&overlapping).is_err());
    }
}
