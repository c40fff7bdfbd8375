use crate::coloring::{Color, Coloring};
use crate::error::{Budget, Error, Result};
use crate::lattice::{is_subset, Poset, SubsetMask};

struct Search<'a> {
    poset: &'a Poset,
    order: Vec<usize>,
    candidates: Vec<u64>,
    /// OR of the images of all strict predecessors, per position in `order`.
    images: Vec<u64>,
}

impl Search<'_> {
    fn accepts(&self, pos: usize, t: u64) -> bool {
        let p = self.order[pos];
        self.order[..pos].iter().enumerate().all(|(k, &q)| {
            let img = self.images[k];
            self.poset.leq(q, p) == is_subset(img, t) && self.poset.leq(p, q) == is_subset(t, img)
        })
    }

    fn required(&self, pos: usize) -> u64 {
        let p = self.order[pos];
        self.order[..pos]
            .iter()
            .enumerate()
            .filter(|&(_, &q)| self.poset.lt(q, p))
            .fold(0, |acc, (k, _)| acc | self.images[k])
    }

    /// Depth-first search; `visit` returns true to stop.
    fn run<F>(&mut self, pos: usize, budget: &mut Budget, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[usize], &[u64]) -> bool,
    {
        if pos == self.order.len() {
            return Ok(visit(&self.order, &self.images));
        }
        let need = self.required(pos);
        for idx in 0..self.candidates.len() {
            let t = self.candidates[idx];
            if !is_subset(need, t) || !self.accepts(pos, t) {
                continue;
            }
            budget.tick("poset copy search")?;
            self.images.push(t);
            let stop = self.run(pos + 1, budget, visit)?;
            self.images.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn candidates(c: &Coloring, color: Color) -> Vec<u64> {
    let mut cand = c.class(color);
    cand.sort_by_key(|&s| (s.count_ones(), s));
    cand
}

/// Walks every injective order-exact placement of `p` into the cells of the
/// given color. `visit` receives the images indexed by element of `p` and
/// returns true to stop the walk. Returns whether the walk was stopped.
pub(crate) fn for_each_poset_copy<F>(
    c: &Coloring,
    p: &Poset,
    color: Color,
    budget: &mut Budget,
    mut visit: F,
) -> Result<bool>
where
    F: FnMut(&[u64]) -> bool,
{
    let mut search = Search {
        poset: p,
        order: p.linear_extension(),
        candidates: candidates(c, color),
        images: Vec::with_capacity(p.size()),
    };
    let mut by_element = vec![0u64; p.size()];
    search.run(0, budget, &mut |order, imgs| {
        for (k, &e) in order.iter().enumerate() {
            by_element[e] = imgs[k];
        }
        visit(&by_element)
    })
}

/// A copy of `p` all of whose elements have `color`, or `None` if there is
/// none. Images are indexed by element of `p`.
///
/// Elements are placed along a linear extension (minimal elements first);
/// candidates are tried ascending by size, then mask.
pub fn find_poset_copy(
    c: &Coloring,
    p: &Poset,
    color: Color,
    budget: &mut Budget,
) -> Result<Option<Vec<SubsetMask>>> {
    if p.size() as u128 > 1u128 << c.dim() {
        return Ok(None);
    }
    if color as usize >= c.colors() {
        return Err(Error::invalid(format!("color {color} not below k = {}", c.colors())));
    }
    let mut found = None;
    for_each_poset_copy(c, p, color, budget, |imgs| {
        found = Some(imgs.to_vec());
        true
    })?;
    Ok(found.map(|imgs| {
        imgs.into_iter()
            .map(|m| SubsetMask::new(m, c.dim()).expect("cell of the coloring"))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{BLUE, RED};
    use crate::lattice::is_embedding;

    #[test]
    fn finds_comparable_red_pair() {
        let mut c = Coloring::constant(3, 2, BLUE).unwrap();
        c.set(0b001, RED);
        c.set(0b011, RED);
        let got = find_poset_copy(&c, &Poset::chain(2), RED, &mut Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(got[0].bits(), 0b001);
        assert_eq!(got[1].bits(), 0b011);
    }

    #[test]
    fn two_chain_partition_has_no_mono_antichain() {
        // Q_2 split into chains {},{1},{1,2} (red) and {2} (blue)
        let c = Coloring::from_cells(2, 2, &[RED, RED, BLUE, RED]).unwrap();
        let a2 = Poset::antichain(2);
        for color in [RED, BLUE] {
            assert!(find_poset_copy(&c, &a2, color, &mut Budget::default())
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn f3_is_not_a_red_q2() {
        let mut c = Coloring::constant(6, 2, BLUE).unwrap();
        for elems in [&[2][..], &[2, 3], &[2, 3, 5], &[2, 3, 4, 5]] {
            c.set(SubsetMask::from_elements(elems, 6).unwrap().bits(), RED);
        }
        let q2 = Poset::boolean_lattice(2);
        assert!(find_poset_copy(&c, &q2, RED, &mut Budget::default())
            .unwrap()
            .is_none());
        let blue = find_poset_copy(&c, &q2, BLUE, &mut Budget::default())
            .unwrap()
            .unwrap();
        assert!(is_embedding(&q2, &blue));
    }

    #[test]
    fn budget_is_reported() {
        let c = Coloring::constant(6, 2, RED).unwrap();
        let err = find_poset_copy(&c, &Poset::antichain(30), RED, &mut Budget::new(100));
        assert!(matches!(err, Err(Error::ResourceLimit { .. })));
    }
}
