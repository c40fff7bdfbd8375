use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, BLUE, RED};
use crate::detect::{find_mono_qn, CopyTable, DEFAULT_COPY_LIMIT};
use crate::error::{Budget, Error, Result};
use crate::exec::Exec;
use crate::lattice::full_mask;

/// Simulated-annealing parameters. Every field has a default, so a partial
/// JSON object is a valid configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnnealConfig {
    /// Total proposed moves across all restarts of one chain.
    pub steps: u64,
    /// Starting temperature of every restart.
    pub t_start: f64,
    /// Geometric cooling factor applied after every move.
    pub cooling: f64,
    /// Temperature floor.
    pub t_min: f64,
    /// Moves without a new best objective before restarting.
    pub stagnation: u64,
    /// Restrict to colorings with `c([N] \ S) != c(S)`, flipping pairs.
    pub symmetric: bool,
    /// Independent chains, seeded `seed, seed + 1, ...`.
    pub chains: u64,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            steps: 20_000_000,
            t_start: 2.0,
            cooling: 0.999_995,
            t_min: 0.05,
            stagnation: 400_000,
            symmetric: true,
            chains: 1,
        }
    }
}

impl AnnealConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: AnnealConfig = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("annealing config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.t_start > 0.0
            && self.t_min > 0.0
            && self.cooling > 0.0
            && self.cooling <= 1.0
            && self.chains >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(
                "annealing config needs positive temperatures, cooling in (0, 1] and chains >= 1",
            ))
        }
    }
}

/// Outcome of [`witness_search`].
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub witness: Option<Coloring>,
    /// Lowest objective seen by any chain.
    pub best_objective: u64,
    /// Moves spent by all chains.
    pub steps_used: u64,
    pub restarts: u64,
}

/// Searches for a red/blue coloring of `Q_N` (`2^N <= 64`) with no
/// monochromatic copy of `Q_n`. The objective is the number of monochromatic
/// copies in either color; a zero-objective state is re-validated by
/// backtracking before it is returned.
pub fn witness_search(dim: usize, n: usize, config: &AnnealConfig, seed: u64) -> Result<WitnessReport> {
    witness_search_with(dim, n, config, seed, Exec::default())
}

pub fn witness_search_with(
    dim: usize,
    n: usize,
    config: &AnnealConfig,
    seed: u64,
    exec: Exec,
) -> Result<WitnessReport> {
    config.validate()?;
    if dim > 6 || n > dim {
        return Err(Error::invalid(format!(
            "witness search needs n <= N <= 6, got n = {n}, N = {dim}"
        )));
    }
    let table = CopyTable::for_qn(n, dim, DEFAULT_COPY_LIMIT)?;
    let problem = Problem::new(dim, &table);
    let seeds: Vec<u64> = (0..config.chains).map(|i| seed.wrapping_add(i)).collect();
    let runs = exec.map_slice(&seeds, |&s| problem.anneal(config, s));
    let mut report = WitnessReport {
        witness: None,
        best_objective: u64::MAX,
        steps_used: 0,
        restarts: 0,
    };
    for run in runs {
        report.best_objective = report.best_objective.min(run.best);
        report.steps_used += run.steps;
        report.restarts += run.restarts;
        if report.witness.is_none() {
            if let Some(word) = run.found {
                report.witness = Some(validated(dim, n, word)?);
            }
        }
    }
    Ok(report)
}

fn validated(dim: usize, n: usize, word: u64) -> Result<Coloring> {
    let c = Coloring::from_word(dim, word)?;
    for color in [RED, BLUE] {
        if find_mono_qn(&c, n, color, &mut Budget::unlimited())?.is_some() {
            return Err(Error::invalid(
                "annealing produced a coloring that fails re-validation",
            ));
        }
    }
    Ok(c)
}

struct Problem {
    dim: usize,
    full: u64,
    /// Copies containing each cell, as element masks.
    incident: Vec<Vec<u64>>,
    all: Vec<u64>,
}

struct Run {
    found: Option<u64>,
    best: u64,
    steps: u64,
    restarts: u64,
}

#[inline]
fn mono(mask: u64, word: u64) -> bool {
    mask & word == 0 || mask & !word == 0
}

impl Problem {
    fn new(dim: usize, table: &CopyTable) -> Self {
        let all = table.word_masks().expect("2^N <= 64").to_vec();
        let cells = 1usize << dim;
        let mut incident = vec![Vec::new(); cells];
        for &m in &all {
            let mut bits = m;
            while bits != 0 {
                incident[bits.trailing_zeros() as usize].push(m);
                bits &= bits - 1;
            }
        }
        Problem {
            dim,
            full: full_mask(cells),
            incident,
            all,
        }
    }

    fn objective(&self, word: u64) -> u64 {
        self.all.iter().filter(|&&m| mono(m, word)).count() as u64
    }

    /// Change in objective when the cells of `flip` (one cell, or a
    /// complementary pair) change color.
    fn delta(&self, word: u64, flip: u64) -> i64 {
        let next = word ^ flip;
        let first = flip.trailing_zeros() as usize;
        let second = (flip & (flip - 1)).trailing_zeros() as usize;
        let mut d = 0i64;
        for &m in &self.incident[first] {
            d += mono(m, next) as i64 - mono(m, word) as i64;
        }
        if flip.count_ones() == 2 {
            for &m in &self.incident[second] {
                if m >> first & 1 == 0 {
                    d += mono(m, next) as i64 - mono(m, word) as i64;
                }
            }
        }
        d
    }

    fn random_state(&self, rng: &mut ChaCha8Rng, symmetric: bool) -> u64 {
        let word = rng.gen::<u64>() & self.full;
        if symmetric {
            self.symmetrize(word)
        } else {
            word
        }
    }

    /// Keeps cells without element N and sets each complement to the
    /// opposite color.
    fn symmetrize(&self, word: u64) -> u64 {
        let top = self.dim - 1;
        let cells = 1u64 << self.dim;
        let mut out = 0u64;
        for s in 0..cells {
            if s >> top & 1 == 0 {
                let blue = word >> s & 1;
                out |= blue << s;
                out |= (blue ^ 1) << (s ^ (cells - 1));
            }
        }
        out
    }

    fn anneal(&self, cfg: &AnnealConfig, seed: u64) -> Run {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cells = 1u64 << self.dim;
        let half = if cfg.symmetric && self.dim > 0 { cells / 2 } else { cells };
        let mut run = Run {
            found: None,
            best: u64::MAX,
            steps: 0,
            restarts: 0,
        };
        let symmetric = cfg.symmetric && self.dim > 0;
        'restart: loop {
            let mut word = self.random_state(&mut rng, symmetric);
            let mut cost = self.objective(word);
            let mut best_here = cost;
            let mut since_best = 0u64;
            let mut t = cfg.t_start;
            loop {
                run.best = run.best.min(cost);
                if cost == 0 {
                    run.found = Some(word);
                    return run;
                }
                if run.steps >= cfg.steps {
                    return run;
                }
                run.steps += 1;
                let cell = rng.gen_range(0..half);
                let flip = if symmetric {
                    1u64 << cell | 1u64 << (cell ^ (cells - 1))
                } else {
                    1u64 << cell
                };
                let d = self.delta(word, flip);
                if d <= 0 || rng.gen::<f64>() < (-(d as f64) / t).exp() {
                    word ^= flip;
                    cost = (cost as i64 + d) as u64;
                }
                if cost < best_here {
                    best_here = cost;
                    since_best = 0;
                } else {
                    since_best += 1;
                    if since_best >= cfg.stagnation {
                        run.restarts += 1;
                        continue 'restart;
                    }
                }
                t = (t * cfg.cooling).max(cfg.t_min);
            }
        }
    }
}
