use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, ColoringFile, BLUE, RED};
use crate::detect::{find_poset_copy, CopyTable, DEFAULT_COPY_LIMIT};
use crate::error::{Budget, Error, Result};
use crate::exec::Exec;
use crate::lattice::Poset;

/// Largest dimension an exhaustive two-color scan accepts.
pub const MAX_ARROWING_DIM: usize = 5;

/// Colorings examined between checkpoints.
const CHUNK: u64 = 1 << 18;

/// Knobs for exhaustive scans.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub exec: Exec,
    /// Maximum number of colorings examined per call.
    pub max_colorings: u64,
    /// Fix the color of `∅` when both posets are equal.
    pub use_symmetry: bool,
    /// Progress file; an existing file for the same problem resumes the scan.
    pub checkpoint: Option<PathBuf>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            exec: Exec::default(),
            max_colorings: 1 << 34,
            use_symmetry: true,
            checkpoint: None,
        }
    }
}

/// Result of an exhaustive scan of all red/blue colorings of `Q_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyVerdict {
    pub dim: usize,
    /// Every coloring has a red `P` or a blue `P'`.
    pub holds: bool,
    /// A coloring with neither, validated without symmetry assumptions.
    pub counterexample: Option<Coloring>,
    /// Colorings examined, across resumed runs.
    pub examined: u64,
    pub symmetry_reduced: bool,
}

#[derive(Serialize, Deserialize)]
pub struct VerdictFile {
    #[serde(rename = "N")]
    pub dim: usize,
    pub holds: bool,
    pub counterexample: Option<ColoringFile>,
    pub examined: u64,
    pub symmetry_reduced: bool,
}

impl RamseyVerdict {
    pub fn to_file(&self) -> VerdictFile {
        VerdictFile {
            dim: self.dim,
            holds: self.holds,
            counterexample: self.counterexample.as_ref().map(Coloring::to_file),
            examined: self.examined,
            symmetry_reduced: self.symmetry_reduced,
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct Checkpoint {
    problem: String,
    next: u64,
    examined: u64,
}

fn problem_key(dim: usize, p: &Poset, q: &Poset, symmetric: bool) -> String {
    let enc = |x: &Poset| serde_json::to_string(&x.to_file()).expect("poset serializes");
    format!("arrowing N={dim} sym={symmetric} P={} Q={}", enc(p), enc(q))
}

/// Decides whether every red/blue coloring of `Q_N` contains a red copy of
/// `p` or a blue copy of `q`, by scanning coloring words `0..2^(2^N)` in
/// order.
pub fn arrowing(dim: usize, p: &Poset, q: &Poset, opts: &ScanOptions) -> Result<RamseyVerdict> {
    if dim > MAX_ARROWING_DIM {
        return Err(Error::invalid(format!(
            "exhaustive scans support N <= {MAX_ARROWING_DIM}, got {dim}"
        )));
    }
    let red_table = CopyTable::for_poset(p, dim, DEFAULT_COPY_LIMIT)?;
    let same = p == q;
    let blue_table = if same {
        red_table.clone()
    } else {
        CopyTable::for_poset(q, dim, DEFAULT_COPY_LIMIT)?
    };
    let cells = 1u32 << dim;
    let all = crate::lattice::full_mask(cells as usize);
    let symmetric = same && opts.use_symmetry;
    // with symmetry, index i stands for the word i << 1 (∅ red)
    let (total, spread) = if symmetric {
        (1u64 << (cells - 1), 1)
    } else {
        (1u64 << cells, 0)
    };
    let word_of = move |i: u64| i << spread;
    let escapes = |i: u64| {
        let w = word_of(i);
        !red_table.any_inside(!w & all) && !blue_table.any_inside(w)
    };

    let key = problem_key(dim, p, q, symmetric);
    let (mut next, mut examined) = (0u64, 0u64);
    if let Some(path) = &opts.checkpoint {
        if let Ok(text) = fs::read_to_string(path) {
            let cp: Checkpoint = serde_json::from_str(&text)
                .map_err(|e| Error::invalid(format!("checkpoint {}: {e}", path.display())))?;
            if cp.problem == key {
                next = cp.next;
                examined = cp.examined;
            }
        }
    }

    let mut spent = 0u64;
    while next < total {
        if spent >= opts.max_colorings {
            return Err(Error::limit(
                format!("arrowing scan of Q_{dim} stopped at coloring {next} of {total}"),
                examined,
            ));
        }
        let end = next
            .saturating_add(CHUNK.min(opts.max_colorings - spent))
            .min(total);
        if let Some(i) = opts.exec.find_first(next..end, escapes) {
            examined += i - next + 1;
            let c = Coloring::from_word(dim, word_of(i))?;
            revalidate(&c, p, q)?;
            return Ok(RamseyVerdict {
                dim,
                holds: false,
                counterexample: Some(c),
                examined,
                symmetry_reduced: symmetric,
            });
        }
        spent += end - next;
        examined += end - next;
        next = end;
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint {
                problem: key.clone(),
                next,
                examined,
            };
            let text = serde_json::to_string(&cp).expect("checkpoint serializes");
            fs::write(path, text)
                .map_err(|e| Error::invalid(format!("writing {}: {e}", path.display())))?;
        }
    }
    Ok(RamseyVerdict {
        dim,
        holds: true,
        counterexample: None,
        examined,
        symmetry_reduced: symmetric,
    })
}

fn revalidate(c: &Coloring, p: &Poset, q: &Poset) -> Result<()> {
    let mut budget = Budget::unlimited();
    if find_poset_copy(c, p, RED, &mut budget)?.is_some()
        || find_poset_copy(c, q, BLUE, &mut budget)?.is_some()
    {
        return Err(Error::invalid("counterexample failed independent re-validation"));
    }
    Ok(())
}

/// Least `N <= n_max` for which [`arrowing`] holds; the scan at `N - 1`
/// produced a counterexample.
pub fn ramsey_number(p: &Poset, q: &Poset, n_max: usize, opts: &ScanOptions) -> Result<usize> {
    for dim in 0..=n_max {
        let run_opts = ScanOptions {
            checkpoint: opts.checkpoint.clone(),
            ..opts.clone()
        };
        if arrowing(dim, p, q, &run_opts)?.holds {
            return Ok(dim);
        }
    }
    Err(Error::Undecided(format!(
        "every N <= {n_max} has a counterexample"
    )))
}
