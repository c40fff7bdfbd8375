use crate::error::{Budget, Error, Result};
use crate::lattice::{deposit, dim2_embedding, is_embedding_bits, Poset};

use super::GroundPartition;

/// A copy of `P × Q_m` inside `Q_N`; element `(p, S)` (index
/// `p * 2^m + S`) maps to `images[p * 2^m + S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlobEmbedding {
    pub product: Poset,
    pub target: usize,
    pub images: Vec<u64>,
}

/// Embeds `P × Q_m` into `Q_N`, `N = dim_2(P) + h(P) m`: the element
/// `(p, S)` goes to `f(p) ∪ X_1 ∪ ... ∪ X_{h(p)-1} ∪ S` placed inside
/// `X_{h(p)}`, where `f` is a minimum-dimension embedding of `P`.
pub fn blob_embedding(p: &Poset, m: usize, budget: &mut Budget) -> Result<BlobEmbedding> {
    let (d, f) = dim2_embedding(p, budget)?;
    let h = p.height();
    let mut sizes = vec![d];
    sizes.extend(std::iter::repeat_n(m, h));
    let target = d + h * m;
    if m > 20 || target > crate::lattice::MAX_GROUND {
        return Err(Error::invalid(format!(
            "product target Q_{target} out of range"
        )));
    }
    let parts = GroundPartition::consecutive(&sizes)?;
    let heights = p.element_heights();
    let q = 1usize << m;
    let mut images = vec![0u64; p.size() * q];
    for (e, &he) in heights.iter().enumerate() {
        let base = f[e] | parts.union(1, he);
        for s in 0..q {
            images[e * q + s] = base | deposit(s as u64, parts.block(he));
        }
    }
    let product = p.lex_product(&Poset::boolean_lattice(m));
    if !is_embedding_bits(&product, &images) {
        return Err(Error::invalid("blob construction failed to embed the product"));
    }
    Ok(BlobEmbedding {
        product,
        target,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let b = blob_embedding(&Poset::chain(1), 2, &mut Budget::default()).unwrap();
        assert_eq!(b.target, 2);
        assert_eq!(b.images, vec![0, 1, 2, 3]);
    }

    #[test]
    fn cube_times_cube() {
        let b = blob_embedding(&Poset::boolean_lattice(1), 1, &mut Budget::default()).unwrap();
        assert_eq!(b.target, 3);
        assert_eq!(b.product.size(), 4);
        for (n, m) in [(1, 2), (2, 1), (2, 2)] {
            let b = blob_embedding(&Poset::boolean_lattice(n), m, &mut Budget::default()).unwrap();
            assert_eq!(b.target, n * m + n + m);
        }
    }

    #[test]
    fn antichain_and_chain() {
        let b = blob_embedding(&Poset::antichain(3), 2, &mut Budget::default()).unwrap();
        // dim_2(A_3) = 3, height 1
        assert_eq!(b.target, 5);
        let b = blob_embedding(&Poset::chain(3), 1, &mut Budget::default()).unwrap();
        // dim_2(C_3) = 2, height 3
        assert_eq!(b.target, 5);
    }
}
