//! Acceptance suite. Runs every criterion in order and prints one
//! `criterion N: PASS|FAIL` line each; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use qlat::coloring::{
    class_masses, complement_recolor, layer_colors, layered_coloring, lubell_mass,
    random_coloring, random_coloring_from, Coloring, LubellMass, BLUE, RED,
};
use qlat::constructions::{
    algebra_from_layered, antichain_extract_blue, antichain_ramsey_formula, blob_embedding,
    multicolor_lower_coloring, red_height, strategy_q2qn, strategy_qnqn,
};
use qlat::detect::{find_boolean_algebra, find_mono_hilbert_cube_from};
use qlat::embeddings::{count_embeddings_exact, enumerate_embeddings};
use qlat::lattice::{dim2, is_embedding, is_embedding_bits, Poset, SubsetMask};
use qlat::ramsey::{
    arrowing, multicolor_ramsey, ramsey_number, witness_search, AnnealConfig, ScanOptions,
};
use qlat::{Budget, Error, Exec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sequential() -> ScanOptions {
    ScanOptions {
        exec: Exec::Sequential,
        ..ScanOptions::default()
    }
}

fn cells_of(c: &Coloring, color: u8) -> u64 {
    (0..1u64 << c.dim())
        .filter(|&s| c.get(s) == color)
        .fold(0, |m, s| m | 1 << s)
}

fn no_mono_copy(c: &Coloring, n: usize) -> bool {
    !common::has_copy_within(n, c.dim(), cells_of(c, RED))
        && !common::has_copy_within(n, c.dim(), cells_of(c, BLUE))
}

fn falling(top: usize, count: usize) -> BigUint {
    (0..count).fold(BigUint::from(1u8), |acc, i| acc * (top - i))
}

fn set_family(sets: &[&[usize]], ground: usize) -> Vec<SubsetMask> {
    sets.iter()
        .map(|s| SubsetMask::from_elements(s, ground).unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let pairs = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4)];
    for (n, big) in pairs {
        let exact = count_embeddings_exact(n, big).map_err(|e| e.to_string())?;
        let listed = enumerate_embeddings(n, big, 1 << 24).map_err(|e| e.to_string())?.len();
        let brute = common::brute_embeddings(n, big).len();
        ensure(
            exact == BigUint::from(listed) && listed == brute,
            format!("e({n},{big}): formula {exact}, enumeration {listed}, brute force {brute}"),
        )?;
    }
    for (n, big, v) in [(1, 2, 5u32), (2, 2, 2), (3, 3, 6)] {
        ensure(count_embeddings_exact(n, big).unwrap() == BigUint::from(v), format!("e({n},{big}) != {v}"))?;
    }
    Ok(format!("e(3,4) = {}", count_embeddings_exact(3, 4).unwrap()))
}

fn criterion_2() -> Outcome {
    let dedekind = [2u32, 3, 6, 20, 168];
    let mut strict = 0;
    for (n, &a) in dedekind.iter().enumerate().skip(1) {
        let a = a as usize;
        for big in n..=8 {
            let e = count_embeddings_exact(n, big).unwrap();
            let lower = falling(big, n) * BigUint::from(a - n).pow((big - n) as u32);
            let upper = falling(big, n) * BigUint::from(a).pow((big - n) as u32);
            ensure(lower <= e && e <= upper, format!("sandwich fails at ({n},{big})"))?;
            if big > n {
                ensure(lower < e && e < upper, format!("not strict at ({n},{big})"))?;
                strict += 1;
            }
        }
    }
    Ok(format!("{strict} strict cases"))
}

fn criterion_3() -> Outcome {
    let q2 = Poset::boolean_lattice(2);
    let opts = ScanOptions {
        use_symmetry: false,
        ..sequential()
    };
    let v4 = arrowing(4, &q2, &q2, &opts).map_err(|e| e.to_string())?;
    ensure(v4.holds && v4.examined == 1 << 16, format!("Q_4: holds {}, examined {}", v4.holds, v4.examined))?;
    let v3 = arrowing(3, &q2, &q2, &opts).map_err(|e| e.to_string())?;
    ensure(!v3.holds, "Q_3 arrows Q_2")?;
    let found = v3.counterexample.ok_or("no counterexample reported")?;
    ensure(no_mono_copy(&found, 2), "reported counterexample has a monochromatic Q_2")?;
    let layered = layered_coloring(3, 2, &[RED, RED, BLUE, BLUE]).unwrap();
    ensure(no_mono_copy(&layered, 2), "layered coloring of Q_3 has a monochromatic Q_2")?;
    Ok("R(Q_2,Q_2) = 4".into())
}

fn criterion_4() -> Outcome {
    let opts = sequential();
    let q1 = Poset::boolean_lattice(1);
    for n in 1..=3 {
        let r = ramsey_number(&q1, &Poset::boolean_lattice(n), 5, &opts).map_err(|e| e.to_string())?;
        ensure(r == n + 1, format!("R(Q_1,Q_{n}) = {r}"))?;
    }
    for n in 2..=3 {
        let c = Poset::chain(n);
        let r = ramsey_number(&c, &c, 5, &opts).map_err(|e| e.to_string())?;
        ensure(r == 2 * n - 2, format!("R(C_{n},C_{n}) = {r}"))?;
        let a = Poset::antichain(n);
        let r = ramsey_number(&a, &a, 5, &opts).map_err(|e| e.to_string())?;
        let want = (1..).find(|&m| common::binomial(m, m / 2) >= 2 * n as u64 - 1).unwrap() as usize;
        ensure(r == want && r == antichain_ramsey_formula(n), format!("R(A_{n},A_{n}) = {r}, expected {want}"))?;
    }
    Ok("Q_1 vs Q_n, chains and antichains".into())
}

fn criterion_5() -> Outcome {
    for seed in 0..1000 {
        let c = random_coloring(8, 2, seed).unwrap();
        let (color, f) = strategy_qnqn(&c, 2).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(
            f.source_dim() == 2 && f.is_order_exact() && f.images().iter().all(|&s| c.get(s) == color),
            format!("qnqn seed {seed}: invalid copy"),
        )?;
        let c = random_coloring(6, 2, 10_000 + seed).unwrap();
        let (color, f) = strategy_q2qn(&c, 2).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(
            f.source_dim() == 2 && f.is_order_exact() && f.images().iter().all(|&s| c.get(s) == color),
            format!("q2qn seed {seed}: invalid copy"),
        )?;
    }
    Ok("2000 colorings".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    let mut tried = 0;
    while done < 1000 {
        tried += 1;
        let dim = rng.gen_range(1..=8);
        let red_rate = rng.gen_range(0.0..0.6);
        let mut c = Coloring::constant(dim, 2, BLUE).unwrap();
        for s in 0..1u64 << dim {
            if rng.gen_bool(red_rate) {
                c.set(s, RED);
            }
        }
        let l = red_height(&c);
        if l >= dim {
            continue;
        }
        let f = antichain_extract_blue(&c).map_err(|e| e.to_string())?;
        let (p, images) = f.as_poset_images();
        ensure(
            f.source_dim() == dim - l
                && is_embedding(&p, &images)
                && f.images().iter().all(|&s| c.get(s) == BLUE),
            format!("invalid extraction at N = {dim}, height {l}"),
        )?;
        done += 1;
    }
    Ok(format!("{done} colorings with red height < N ({tried} drawn)"))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for size in 1..=4 {
        for p in common::all_posets(size) {
            for m in 1..=2 {
                let b = blob_embedding(&p, m, &mut Budget::default()).map_err(|e| e.to_string())?;
                let want = dim2(&p).unwrap() + p.height() * m;
                ensure(b.target == want, format!("target {} != {want}", b.target))?;
                ensure(
                    is_embedding_bits(&p.lex_product(&Poset::boolean_lattice(m)), &b.images),
                    "blob images are not a copy of the lexicographic product",
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (poset, m) pairs"))
}

fn criterion_8() -> Outcome {
    let budget = Duration::from_secs(600);
    let start = Instant::now();
    let mut attempts = Vec::new();
    for seed in 1..=3 {
        if start.elapsed() > budget {
            break;
        }
        let report = witness_search(6, 3, &AnnealConfig::default(), seed);
        match report {
            Ok(r) => match r.witness {
                Some(c) => {
                    ensure(no_mono_copy(&c, 3), format!("seed {seed}: witness fails the per-copy oracle"))?;
                    let flipped = complement_recolor(&c).unwrap();
                    ensure(no_mono_copy(&flipped, 3), format!("seed {seed}: complement image fails"))?;
                    return Ok(format!(
                        "seed {seed}, {} steps, {:.1}s",
                        r.steps_used,
                        start.elapsed().as_secs_f64()
                    ));
                }
                None => attempts.push(format!("seed {seed}: best {}", r.best_objective)),
            },
            Err(Error::ResourceLimit { what, .. }) => attempts.push(format!("seed {seed}: {what}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    Err(attempts.join("; "))
}

fn criterion_9() -> Outcome {
    for dim in 0..=12 {
        let all: Vec<SubsetMask> = (0..1u64 << dim).map(|s| SubsetMask::new(s, dim).unwrap()).collect();
        let mass = lubell_mass(&all, dim).unwrap();
        ensure(mass == LubellMass::from_integer(dim as i64 + 1), format!("N = {dim}: {mass}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=12);
        let k = rng.gen_range(2..=4);
        let c = random_coloring_from(dim, k, &mut rng).unwrap();
        let total = class_masses(&c).into_iter().fold(LubellMass::zero(), |a, b| a + b);
        ensure(total == LubellMass::from_integer(dim as i64 + 1), format!("class masses sum to {total}"))?;
    }
    Ok("N <= 12 and 100 colorings".into())
}

fn criterion_10() -> Outcome {
    for k in 1..=8 {
        let c = multicolor_lower_coloring(k).map_err(|e| e.to_string())?;
        for a in 0..1u64 << c.dim() {
            for b in 0..1u64 << c.dim() {
                ensure(
                    !(a != b && a & !b == 0 && c.get(a) == c.get(b)),
                    format!("k = {k}: monochromatic Q_1 at {a:#b} < {b:#b}"),
                )?;
            }
        }
    }
    let r = multicolor_ramsey(&Poset::boolean_lattice(1), 3, 3, &sequential()).map_err(|e| e.to_string())?;
    ensure(r.exact && r.value >= 3, format!("R_3(Q_1): value {}, exact {}", r.value, r.exact))?;
    Ok(format!("R_3(Q_1) = {}", r.value))
}

fn criterion_11() -> Outcome {
    let f1 = set_family(&[&[2], &[2, 3], &[2, 4, 5], &[2, 3, 4, 5, 6]], 7);
    let f2 = set_family(&[&[2], &[2, 3, 4], &[2, 5], &[2, 3, 4, 5]], 7);
    let f3 = set_family(&[&[2], &[2, 3], &[2, 3, 5], &[2, 3, 4, 5]], 7);
    let mut budget = Budget::default();
    let w = find_boolean_algebra(&f2, 2, &mut budget).map_err(|e| e.to_string())?;
    let blocks: Option<Vec<Vec<usize>>> = w.map(|w| w.blocks().iter().map(|b| b.elements()).collect());
    ensure(blocks == Some(vec![vec![2], vec![3, 4], vec![5]]), format!("F_2 blocks {blocks:?}"))?;
    for (name, f) in [("F_1", &f1), ("F_3", &f3)] {
        ensure(find_boolean_algebra(f, 2, &mut budget).unwrap().is_none(), format!("{name} accepted as an algebra"))?;
    }
    let q2 = Poset::boolean_lattice(2);
    // Q_2 elements in mask order: ∅, {1}, {2}, {1,2}
    ensure(is_embedding(&q2, &[f1[0], f1[1], f1[2], f1[3]]), "F_1 rejected as a copy")?;
    ensure(is_embedding(&q2, &[f2[0], f2[1], f2[2], f2[3]]), "F_2 rejected as a copy")?;
    for perm in permutations4() {
        let images: Vec<SubsetMask> = perm.iter().map(|&i| f3[i]).collect();
        ensure(!is_embedding(&q2, &images), "F_3 accepted as a copy")?;
    }
    Ok("F_1, F_2, F_3".into())
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a != b && a != c && b != c {
                    out.push([a, b, c, 6 - a - b - c]);
                }
            }
        }
    }
    out
}

/// Every Hilbert cube of dimension `n` inside `first..first + colors.len()`.
fn hilbert_exists(colors: &[u8], first: u64, n: usize) -> bool {
    let top = first + colors.len() as u64 - 1;
    fn rec(colors: &[u8], first: u64, top: u64, n: usize, sums: Vec<u64>) -> bool {
        let color = colors[(sums[0] - first) as usize];
        if !sums.iter().all(|&s| colors[(s - first) as usize] == color) {
            return false;
        }
        if n == 0 {
            return true;
        }
        let max = *sums.iter().max().unwrap();
        (1..=top.saturating_sub(max)).any(|x| {
            let mut next = sums.clone();
            next.extend(sums.iter().map(|s| s + x));
            rec(colors, first, top, n - 1, next)
        })
    }
    (first..=top).any(|x0| rec(colors, first, top, n, vec![x0]))
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut hits, mut misses) = (0, 0);
    for _ in 0..100 {
        let dim = rng.gen_range(1..=16);
        let layers: Vec<u8> = (0..=dim).map(|_| rng.gen_range(0..2)).collect();
        let c = layered_coloring(dim, 2, &layers).unwrap();
        let n = rng.gen_range(1..=3);
        let sizes = layer_colors(&c).unwrap();
        let cube = find_mono_hilbert_cube_from(&sizes, 0, n).map_err(|e| e.to_string())?;
        let lifted = algebra_from_layered(&c, n).map_err(|e| e.to_string())?;
        match (cube, lifted) {
            (Some(_), Some((color, w))) => {
                let members = w.members();
                ensure(
                    members.len() == 1 << n && members.iter().all(|&s| c.get(s) == color),
                    "lifted algebra is not monochromatic",
                )?;
                hits += 1;
            }
            (None, None) => {
                ensure(!hilbert_exists(&sizes, 0, n), "exhaustive search finds a cube the search missed")?;
                misses += 1;
            }
            _ => return Err("cube search and lift disagree".into()),
        }
    }
    Ok(format!("{hits} lifted, {misses} confirmed absent"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {id}: PASS ({note}; {secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id}: FAIL ({why}; {secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
