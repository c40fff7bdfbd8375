use serde::{Deserialize, Serialize};

use crate::coloring::Color;
use crate::error::{Error, Result};

/// Largest range of integers the exhaustive search accepts.
pub const MAX_HILBERT_RANGE: usize = 64;
/// Largest cube dimension the exhaustive search accepts.
pub const MAX_HILBERT_DIM: usize = 4;

/// Generators `x_0, x_1, ..., x_n` of the cube `{x_0 + sum_{i in I} x_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCubeWitness {
    pub x: Vec<u64>,
}

impl HilbertCubeWitness {
    pub fn dim(&self) -> usize {
        self.x.len().saturating_sub(1)
    }

    /// All `2^n` sums, indexed by the subset `I` as a bitmask.
    pub fn sums(&self) -> Vec<u64> {
        let n = self.dim();
        (0u64..1 << n)
            .map(|i| {
                self.x[0]
                    + (0..n)
                        .filter(|&j| i >> j & 1 == 1)
                        .map(|j| self.x[j + 1])
                        .sum::<u64>()
            })
            .collect()
    }
}

/// Monochromatic Hilbert cube in a coloring of `[M]`; `colors[v - 1]` is the
/// color of `v`.
pub fn find_mono_hilbert_cube(
    colors: &[Color],
    n: usize,
) -> Result<Option<(Color, HilbertCubeWitness)>> {
    find_mono_hilbert_cube_from(colors, 1, n)
}

/// Same search over the integers `first, first + 1, ...`, one per entry of
/// `colors`. `first = 0` covers colorings of layer sizes.
pub fn find_mono_hilbert_cube_from(
    colors: &[Color],
    first: u64,
    n: usize,
) -> Result<Option<(Color, HilbertCubeWitness)>> {
    if colors.len() > MAX_HILBERT_RANGE {
        return Err(Error::invalid(format!(
            "range of {} integers exceeds {MAX_HILBERT_RANGE}",
            colors.len()
        )));
    }
    if n > MAX_HILBERT_DIM {
        return Err(Error::invalid(format!(
            "cube dimension {n} exceeds {MAX_HILBERT_DIM}"
        )));
    }
    let len = colors.len();
    // bit v stands for the integer first + v
    let class = |color: Color| -> u128 {
        colors
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == color)
            .fold(0u128, |acc, (v, _)| acc | 1 << v)
    };
    for x0 in first..first + len as u64 {
        let v0 = (x0 - first) as usize;
        let color = colors[v0];
        let allowed = class(color);
        let mut x = vec![x0];
        if extend(1u128 << v0, allowed, len, n, 1, &mut x) {
            return Ok(Some((color, HilbertCubeWitness { x })));
        }
    }
    Ok(None)
}

fn extend(sums: u128, allowed: u128, len: usize, left: usize, min: u64, x: &mut Vec<u64>) -> bool {
    if left == 0 {
        return true;
    }
    let top = 127 - sums.leading_zeros() as u64;
    let mut step = min;
    while top + step < len as u64 {
        let next = sums | sums << step;
        if next & !allowed == 0 {
            x.push(step);
            if extend(next, allowed, len, left - 1, step, x) {
                return true;
            }
            x.pop();
        }
        step += 1;
    }
    false
}
