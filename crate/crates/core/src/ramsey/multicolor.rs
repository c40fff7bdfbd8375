use crate::coloring::{layered_coloring, Color, Coloring};
use crate::detect::{find_poset_copy, CopyTable, DEFAULT_COPY_LIMIT};
use crate::error::{Budget, Error, Result};
use crate::lattice::Poset;

use super::ScanOptions;

/// Value produced by [`multicolor_ramsey`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticolorBound {
    pub value: usize,
    /// `true`: least `N` forcing a monochromatic copy. `false`: a certified
    /// lower bound (a counterexample exists at `value - 1`).
    pub exact: bool,
    /// The counterexample behind the bound, at dimension `value - 1`.
    pub counterexample: Option<Coloring>,
}

/// Exact `R_k(P)` by scanning every `k`-coloring of `Q_N` for `N <= n_max`,
/// with the color of `∅` fixed to 0 (colors are interchangeable).
pub fn multicolor_ramsey(
    p: &Poset,
    k: usize,
    n_max: usize,
    opts: &ScanOptions,
) -> Result<MulticolorBound> {
    if !(1..=8).contains(&k) {
        return Err(Error::invalid(format!("exhaustive multicolor scans need 1 <= k <= 8, got {k}")));
    }
    let mut spent = 0u64;
    let mut last: Option<Coloring> = None;
    for dim in 0..=n_max.min(5) {
        let cells = 1u32 << dim;
        let total = (k as u128).pow(cells - 1);
        if total > (opts.max_colorings - spent) as u128 {
            return Err(Error::limit(
                format!("{k}-colorings of Q_{dim} exceed the scan budget"),
                spent,
            ));
        }
        let total = total as u64;
        let table = CopyTable::for_poset(p, dim, DEFAULT_COPY_LIMIT)?;
        let classes = |i: u64| -> Vec<u64> {
            let mut masks = vec![0u64; k];
            masks[0] |= 1;
            let mut rest = i;
            for s in 1..cells {
                masks[(rest % k as u64) as usize] |= 1 << s;
                rest /= k as u64;
            }
            masks
        };
        let escapes = |i: u64| classes(i).into_iter().all(|m| !table.any_inside(m));
        spent += total;
        match opts.exec.find_first(0..total, escapes) {
            None => {
                return Ok(MulticolorBound {
                    value: dim,
                    exact: true,
                    counterexample: last,
                })
            }
            Some(i) => {
                let masks = classes(i);
                let mut cellv = vec![0 as Color; cells as usize];
                for (color, m) in masks.iter().enumerate() {
                    for (s, cell) in cellv.iter_mut().enumerate() {
                        if m >> s & 1 == 1 {
                            *cell = color as Color;
                        }
                    }
                }
                let c = Coloring::from_cells(dim, k, &cellv)?;
                certify(&c, p)?;
                last = Some(c);
            }
        }
    }
    Err(Error::Undecided(format!(
        "every N <= {} has a {k}-coloring without a monochromatic copy",
        n_max.min(5)
    )))
}

/// Lower bound on `R_k(P)` from block-layered colorings: with `h = h(P) >= 2`,
/// layer `i` of `Q_N` gets color `floor(i / (h - 1))`, so no color holds a
/// chain of `h` elements. Dimensions below the 2-dimension of `P` count too.
/// Each counterexample is certified by exhaustive copy search.
pub fn multicolor_lower_bound(p: &Poset, k: usize, n_max: usize) -> Result<MulticolorBound> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let h = p.height();
    let mut best: Option<(usize, Coloring)> = None;
    for dim in 0..=n_max.min(crate::coloring::MAX_COLORING_DIM) {
        let fits = h >= 2 && dim < k * (h - 1);
        let candidate = if fits {
            let layers: Vec<Color> = (0..=dim).map(|i| (i / (h - 1)) as Color).collect();
            layered_coloring(dim, k, &layers)?
        } else {
            Coloring::constant(dim, k, 0)?
        };
        if certify(&candidate, p).is_ok() {
            best = Some((dim, candidate));
        } else if !fits {
            break;
        }
    }
    Ok(match best {
        Some((dim, c)) => MulticolorBound {
            value: dim + 1,
            exact: false,
            counterexample: Some(c),
        },
        None => MulticolorBound {
            value: 0,
            exact: false,
            counterexample: None,
        },
    })
}

fn certify(c: &Coloring, p: &Poset) -> Result<()> {
    let mut budget = Budget::new(Budget::DEFAULT_STEPS);
    for color in 0..c.colors() as Color {
        if find_poset_copy(c, p, color, &mut budget)?.is_some() {
            return Err(Error::invalid(format!(
                "coloring has a copy of P in color {color}"
            )));
        }
    }
    Ok(())
}
