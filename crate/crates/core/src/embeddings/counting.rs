use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::count_antichains;

/// Number of words of length `len` over an alphabet of `alphabet` letters that
/// contain each of `missing` designated letters at least once:
/// `sum_k (-1)^k C(missing, k) (alphabet - k)^len`.
pub fn good_sequences_with_missing(alphabet: &BigUint, missing: usize, len: usize) -> BigUint {
    let a = BigInt::from(alphabet.clone());
    let mut total = BigInt::from(0);
    for k in 0..=missing {
        let base = &a - BigInt::from(k);
        if base.is_negative() {
            continue;
        }
        let term = BigInt::from(binomial(missing as u64, k as u64)) * num_traits::pow(base, len);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
        .to_biguint()
        .expect("inclusion-exclusion count is non-negative")
}

/// `e(n, N)`, the exact number of embeddings of `Q_n` into `Q_N`, as the
/// number of good sequences of length `N` over the `a(n)` upsets of `2^[n]`.
pub fn count_embeddings_exact(n: usize, target: usize) -> Result<BigUint> {
    let a = count_antichains(n)?;
    Ok(good_sequences_with_missing(&a, n, target))
}

fn falling_factorial(top: usize, count: usize) -> BigUint {
    (0..count).fold(BigUint::one(), |acc, i| acc * BigUint::from(top - i))
}

/// `(N!/(N-n)! (a(n)-n)^(N-n), N!/(N-n)! a(n)^(N-n))`, a sandwich around `e(n, N)`.
pub fn count_embeddings_bounds(n: usize, target: usize) -> Result<(BigUint, BigUint)> {
    if n > target {
        return Err(Error::invalid(format!(
            "bounds need n <= N, got n = {n}, N = {target}"
        )));
    }
    let a = count_antichains(n)?;
    let arrangements = falling_factorial(target, n);
    let free = target - n;
    let lower = &arrangements * num_traits::pow(&a - BigUint::from(n), free);
    let upper = arrangements * num_traits::pow(a, free);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn exact_counts() {
        for (n, fact) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 24)] {
            assert_eq!(count_embeddings_exact(n, n).unwrap(), big(fact));
        }
        assert_eq!(count_embeddings_exact(1, 2).unwrap(), big(5));
        assert_eq!(count_embeddings_exact(2, 4).unwrap(), big(302));
        assert_eq!(count_embeddings_exact(3, 4).unwrap(), big(444));
        assert_eq!(count_embeddings_exact(3, 2).unwrap(), big(0));
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(count_embeddings_bounds(1, 2).unwrap(), (big(4), big(6)));
        assert_eq!(count_embeddings_bounds(2, 2).unwrap(), (big(2), big(2)));
        assert_eq!(count_embeddings_bounds(2, 4).unwrap(), (big(192), big(432)));
        assert!(count_embeddings_bounds(3, 2).is_err());
    }
}
