use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Color, Coloring};
use crate::error::{Error, Result};
use crate::lattice::SubsetMask;

/// Exact Lubell mass `sum over S in F of 1 / C(N, |S|)`, kept reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LubellMass(BigRational);

impl LubellMass {
    pub fn zero() -> Self {
        LubellMass(BigRational::zero())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn from_integer(v: i64) -> Self {
        LubellMass(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Add for LubellMass {
    type Output = LubellMass;
    fn add(self, rhs: LubellMass) -> LubellMass {
        LubellMass(self.0 + rhs.0)
    }
}

impl fmt::Display for LubellMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

fn layer_weights(dim: usize) -> Vec<BigRational> {
    (0..=dim)
        .map(|i| {
            BigRational::new(
                BigInt::from(1),
                BigInt::from(binomial(dim as u64, i as u64)),
            )
        })
        .collect()
}

fn mass_of_sizes(dim: usize, sizes: impl Iterator<Item = usize>) -> LubellMass {
    // count per layer first, then one rational multiply per layer
    let mut per_layer = vec![0u64; dim + 1];
    for s in sizes {
        per_layer[s] += 1;
    }
    let weights = layer_weights(dim);
    let total = per_layer
        .iter()
        .zip(weights)
        .fold(BigRational::zero(), |acc, (&cnt, w)| {
            acc + w * BigRational::from_integer(BigInt::from(cnt))
        });
    LubellMass(total)
}

/// Lubell mass of a family of distinct subsets of `[N]`.
pub fn lubell_mass(family: &[SubsetMask], dim: usize) -> Result<LubellMass> {
    let mut seen = HashSet::with_capacity(family.len());
    for s in family {
        if s.ground_size() != dim {
            return Err(Error::invalid(format!(
                "set {s} is not a subset of a ground set of size {dim}"
            )));
        }
        if !seen.insert(s.bits()) {
            return Err(Error::invalid(format!("duplicate set {s} in family")));
        }
    }
    Ok(mass_of_sizes(dim, family.iter().map(|s| s.len())))
}

/// Lubell mass of each color class, indexed by color.
pub fn class_masses(c: &Coloring) -> Vec<LubellMass> {
    (0..c.colors() as Color)
        .map(|color| {
            mass_of_sizes(
                c.dim(),
                (0..c.cell_count() as u64)
                    .filter(|&s| c.get(s) == color)
                    .map(|s| s.count_ones() as usize),
            )
        })
        .collect()
}
