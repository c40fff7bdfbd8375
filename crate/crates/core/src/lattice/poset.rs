use serde::{Deserialize, Serialize};

use super::subset::{is_subset, SubsetMask};
use crate::coloring::Coloring;
use crate::detect::find_poset_copy;
use crate::error::{Budget, Error, Result};

/// A finite partial order on elements `0..size`, stored as a full `<=` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
}

/// On-disk form: every pair `i <= j` with `i != j`; reflexivity is implied.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PosetFile {
    pub size: usize,
    pub leq: Vec<[usize; 2]>,
}

impl Poset {
    /// Validates a full relation matrix (row-major, `leq[a * size + b]` is `a <= b`).
    pub fn from_matrix(size: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != size * size {
            return Err(Error::invalid(format!(
                "relation matrix has {} entries, expected {}",
                leq.len(),
                size * size
            )));
        }
        let p = Poset { size, leq };
        p.check_axioms()?;
        Ok(p)
    }

    /// Builds from strict pairs plus implied reflexivity. The relation must
    /// already be transitive; it is not closed automatically.
    pub fn from_pairs(size: usize, pairs: &[[usize; 2]]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &[a, b] in pairs {
            if a >= size || b >= size {
                return Err(Error::invalid(format!(
                    "pair ({a}, {b}) references an element outside 0..{size}"
                )));
            }
            leq[a * size + b] = true;
        }
        Poset::from_matrix(size, leq)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(Error::invalid(format!(
                    "reflexivity violated: element {a} is not <= itself"
                )));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::invalid(format!(
                        "antisymmetry violated: {a} <= {b} and {b} <= {a}"
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::invalid(format!(
                            "transitivity violated: {a} <= {b} and {b} <= {c} but not {a} <= {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn chain(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        Poset { size: n, leq }
    }

    pub fn antichain(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for a in 0..n {
            leq[a * n + a] = true;
        }
        Poset { size: n, leq }
    }

    /// `Q_n` with element index equal to the subset mask.
    pub fn boolean_lattice(n: usize) -> Self {
        let size = 1usize << n;
        let mut leq = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = is_subset(a as u64, b as u64);
            }
        }
        Poset { size, leq }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Strict pairs `(a, b)` with `a < b`.
    pub fn strict_pairs(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.lt(a, b) {
                    out.push([a, b]);
                }
            }
        }
        out
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| a == b || !self.leq(a, b)))
    }

    /// For each element, the number of elements in a longest chain whose
    /// maximum is that element.
    pub fn element_heights(&self) -> Vec<usize> {
        let order = self.topological_order();
        let mut h = vec![1usize; self.size];
        for (k, &b) in order.iter().enumerate() {
            for &a in &order[..k] {
                if self.lt(a, b) {
                    h[b] = h[b].max(h[a] + 1);
                }
            }
        }
        h
    }

    /// Maximum cardinality of a chain.
    pub fn height(&self) -> usize {
        self.element_heights().into_iter().max().unwrap_or(0)
    }

    /// Elements sorted so that every element follows all of its predecessors:
    /// by number of strict predecessors, ties by index.
    pub fn topological_order(&self) -> Vec<usize> {
        let below: Vec<usize> = (0..self.size)
            .map(|b| (0..self.size).filter(|&a| self.lt(a, b)).count())
            .collect();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&e| (below[e], e));
        order
    }

    /// Linear extension that lists minimal elements first: by element height,
    /// ties by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let h = self.element_heights();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&e| (h[e], e));
        order
    }

    /// Lexicographic product: `|self|` stacked copies of `other`, ordered
    /// between copies by `self`. Element `(p, q)` has index `p * |other| + q`.
    ///
    /// `(p1, q1) <= (p2, q2)` iff `p1 < p2`, or `p1 == p2` and `q1 <= q2`.
    pub fn lex_product(&self, other: &Poset) -> Poset {
        let (m, k) = (self.size, other.size);
        let size = m * k;
        let mut leq = vec![false; size * size];
        for p1 in 0..m {
            for q1 in 0..k {
                for p2 in 0..m {
                    for q2 in 0..k {
                        let rel = self.lt(p1, p2) || (p1 == p2 && other.leq(q1, q2));
                        leq[(p1 * k + q1) * size + p2 * k + q2] = rel;
                    }
                }
            }
        }
        Poset { size, leq }
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            size: self.size,
            leq: self.strict_pairs(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        Poset::from_pairs(file.size, &file.leq)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("poset JSON: {e}")))?;
        Poset::from_file(&file)
    }
}

/// True iff `images` realizes `p` order-exactly: `a <= b` in `p` iff
/// `images[a]` is a subset of `images[b]`.
///
/// Repeated images make order reflection fail, so non-injective maps simply
/// return false.
pub fn is_embedding(p: &Poset, images: &[SubsetMask]) -> bool {
    if images.len() != p.size() {
        return false;
    }
    if let Some(first) = images.first() {
        if images.iter().any(|m| m.ground_size() != first.ground_size()) {
            return false;
        }
    }
    for a in 0..p.size() {
        for b in 0..p.size() {
            if p.leq(a, b) != images[a].is_subset_of(images[b]) {
                return false;
            }
        }
    }
    true
}

/// Raw-mask form of [`is_embedding`].
pub fn is_embedding_bits(p: &Poset, images: &[u64]) -> bool {
    images.len() == p.size()
        && (0..p.size())
            .all(|a| (0..p.size()).all(|b| p.leq(a, b) == is_subset(images[a], images[b])))
}

/// Largest poset accepted by [`dim2`].
pub const DIM2_MAX_SIZE: usize = 16;

/// Lower bound `max(h(P) - 1, ceil(log2 |P|))` used to seed the search.
pub fn dim2_lower_bound(p: &Poset) -> usize {
    let log = if p.size() <= 1 {
        0
    } else {
        (usize::BITS - (p.size() - 1).leading_zeros()) as usize
    };
    log.max(p.height().saturating_sub(1))
}

/// The 2-dimension of `p` together with one embedding into `Q_dim`.
pub fn dim2_embedding(p: &Poset, budget: &mut Budget) -> Result<(usize, Vec<u64>)> {
    if p.size() > DIM2_MAX_SIZE {
        return Err(Error::invalid(format!(
            "dim2 supports posets with at most {DIM2_MAX_SIZE} elements, got {}",
            p.size()
        )));
    }
    // mapping each element to its down-set always embeds P into Q_{|P|}
    let upper = p.size();
    for n in dim2_lower_bound(p)..=upper {
        let host = Coloring::constant(n, 2, 0)?;
        if let Some(images) = find_poset_copy(&host, p, 0, budget)? {
            return Ok((n, images.iter().map(|m| m.bits()).collect()));
        }
    }
    Err(Error::limit("dim2 search exhausted its range", budget.used()))
}

/// Least `n` such that `Q_n` contains a copy of `p`.
pub fn dim2(p: &Poset) -> Result<usize> {
    dim2_embedding(p, &mut Budget::default()).map(|(n, _)| n)
}
