use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use qlat::coloring::{
    class_masses, layered_coloring, lubell_mass, random_coloring, Color, Coloring, BLUE, RED,
};
use qlat::constructions::{
    algebra_from_layered, antichain_extract_blue, antichain_lower_coloring, blob_embedding,
    halfslice_strategy, multicolor_lower_coloring, red_height, strategy_q2qn, strategy_qnqn,
    symmetric_chain_partition,
};
use qlat::detect::{
    count_mono_qn, find_boolean_algebra, find_layered_subcube, find_mono_hilbert_cube,
    find_mono_qn, find_poset_copy,
};
use qlat::embeddings::{
    count_embeddings_bounds, count_embeddings_exact, Embedding, GoodSequenceSpace,
};
use qlat::lattice::{count_antichains, Poset, SubsetMask};
use qlat::ramsey::{
    multicolor_lower_bound, multicolor_ramsey, ramsey_number, witness_search_with, AnnealConfig,
    ScanOptions,
};
use qlat::{Budget, Error, Exec};

use crate::output::{canonical, to_value};
use crate::{
    AlgebraArgs, CliError, Command, CountArgs, DetectArgs, EnumerateArgs, ExactArgs,
    GenColoringArgs, Global, LubellArgs, MonteCarloArgs, MulticolorArgs, RamseyCommand,
    StrategyCommand, StrategyKind, VerifyArgs, WitnessArgs,
};

/// Canonical output text plus exit code.
pub struct Done {
    pub text: String,
    pub code: u8,
}

impl Done {
    fn ok(v: Value) -> Self {
        Done {
            text: canonical(&v),
            code: 0,
        }
    }
}

type Out = Result<Done, CliError>;

pub fn run(cmd: &Command, g: &Global) -> Out {
    match cmd {
        Command::Count(a) => count(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Detect(a) => detect(a, g),
        Command::VerifyColoring(a) => verify(a),
        Command::Strategy(s) => strategy(s, g),
        Command::Ramsey(RamseyCommand::Exact(a)) => exact(a, g),
        Command::Ramsey(RamseyCommand::Witness(a)) | Command::Witness(a) => witness(a, g),
        Command::Ramsey(RamseyCommand::Multicolor(a)) => multicolor(a, g),
        Command::Chains(a) => {
            let chains = symmetric_chain_partition(a.big_n)?;
            eprintln!("{} symmetric chains", chains.len());
            Ok(Done::ok(json!({ "N": a.big_n, "chains": chains })))
        }
        Command::Algebra(a) => algebra(a, g),
        Command::Lubell(a) => lubell(a),
        Command::Montecarlo(a) => montecarlo(a, g),
        Command::GenColoring(a) => gen_coloring(a, g),
    }
}

fn exec(g: &Global) -> Exec {
    match g.workers {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    }
}

fn budget(g: &Global) -> Budget {
    Budget::new(g.budget.unwrap_or(Budget::DEFAULT_STEPS))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

fn load_coloring(path: &Path) -> Result<Coloring, CliError> {
    Ok(Coloring::from_json(&read(path)?)?)
}

/// A poset file, or one of the names `Q<n>`, `C<n>`, `A<n>`.
fn load_poset(name: &str) -> Result<Poset, CliError> {
    let path = Path::new(name);
    if path.exists() {
        return Ok(Poset::from_json(&read(path)?)?);
    }
    let (kind, size) = name.split_at(name.len().min(1));
    let size: usize = size
        .parse()
        .map_err(|_| CliError::Io(format!("no poset file or built-in poset named {name:?}")))?;
    match kind {
        "Q" if size <= 4 => Ok(Poset::boolean_lattice(size)),
        "C" => Ok(Poset::chain(size)),
        "A" => Ok(Poset::antichain(size)),
        _ => Err(CliError::Io(format!("unknown built-in poset {name:?}"))),
    }
}

#[derive(Deserialize)]
struct FamilyFile {
    #[serde(rename = "N")]
    dim: usize,
    family: Vec<u64>,
}

fn load_family(path: &Path) -> Result<(usize, Vec<SubsetMask>), CliError> {
    let file: FamilyFile = serde_json::from_str(&read(path)?)
        .map_err(|e| Error::InvalidInput(format!("family JSON: {e}")))?;
    let family = file
        .family
        .iter()
        .map(|&m| SubsetMask::new(m, file.dim))
        .collect::<qlat::Result<Vec<_>>>()?;
    Ok((file.dim, family))
}

fn color_name(c: Color) -> String {
    match c {
        RED => "red".into(),
        BLUE => "blue".into(),
        other => format!("color {other}"),
    }
}

fn list_sets(sets: impl IntoIterator<Item = SubsetMask>) -> String {
    sets.into_iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn describe(label: &str, f: &Embedding) {
    eprintln!("{label}: {}", list_sets(f.image_masks()));
}

fn count(a: &CountArgs) -> Out {
    if let Some(n) = a.antichains {
        let v = count_antichains(n)?;
        return Ok(Done {
            text: v.to_string(),
            code: 0,
        });
    }
    let (Some(n), Some(big)) = (a.n, a.big_n) else {
        return Err(Error::InvalidInput("count needs --n and --N, or --antichains".into()).into());
    };
    let exact = count_embeddings_exact(n, big)?;
    if a.bounds {
        let (lo, hi) = count_embeddings_bounds(n, big)?;
        return Ok(Done::ok(json!({
            "n": n,
            "N": big,
            "lower": lo.to_string(),
            "exact": exact.to_string(),
            "upper": hi.to_string(),
        })));
    }
    Ok(Done {
        text: exact.to_string(),
        code: 0,
    })
}

fn enumerate(a: &EnumerateArgs) -> Out {
    let space = GoodSequenceSpace::new(a.n, a.big_n)?;
    let mut stream = space.stream(0..space.total())?;
    let mut out = Vec::new();
    while let Some(seq) = stream.next_letters() {
        if a.copies && !space.is_copy_representative(seq) {
            continue;
        }
        if out.len() as u64 >= a.limit {
            return Err(Error::ResourceLimit {
                what: format!("more than {} embeddings", a.limit),
                partial: out.len() as u64,
            }
            .into());
        }
        out.push(to_value(&space.embedding_of(seq).to_file()));
    }
    eprintln!("{} embeddings", out.len());
    Ok(Done::ok(Value::Array(out)))
}

fn colors_to_try(c: &Coloring, only: Option<u8>) -> Vec<Color> {
    match only {
        Some(x) => vec![x],
        None => (0..c.colors() as Color).collect(),
    }
}

fn detect(a: &DetectArgs, g: &Global) -> Out {
    if let Some(n) = a.hilbert {
        let found = find_mono_hilbert_cube(&a.colors, n)?;
        return Ok(Done::ok(match found {
            Some((color, w)) => {
                eprintln!("{} cube, sums {:?}", color_name(color), w.sums());
                json!({ "color": color, "x": w.x })
            }
            None => {
                eprintln!("no monochromatic cube");
                Value::Null
            }
        }));
    }
    let Some(file) = &a.file else {
        return Err(Error::InvalidInput("detect needs --file (or --hilbert with --colors)".into()).into());
    };
    let c = load_coloring(file)?;
    let mut b = budget(g);
    if let Some(n) = a.layered {
        let s = find_layered_subcube(&c, n)?;
        eprintln!(
            "{}",
            s.map_or("no layered subcube".to_string(), |s| format!("layered on {s}"))
        );
        return Ok(Done::ok(json!({ "S": s.map(SubsetMask::bits) })));
    }
    if let Some(n) = a.qn {
        for color in colors_to_try(&c, a.color) {
            if let Some(f) = find_mono_qn(&c, n, color, &mut b)? {
                describe(&format!("{} Q_{n}", color_name(color)), &f);
                return Ok(Done::ok(json!({ "color": color, "embedding": to_value(&f.to_file()) })));
            }
        }
        eprintln!("no monochromatic Q_{n}");
        return Ok(Done::ok(Value::Null));
    }
    if let Some(name) = &a.poset {
        let p = load_poset(name)?;
        for color in colors_to_try(&c, a.color) {
            if let Some(images) = find_poset_copy(&c, &p, color, &mut b)? {
                eprintln!("{} copy: {}", color_name(color), list_sets(images.iter().copied()));
                let masks: Vec<u64> = images.iter().map(|m| m.bits()).collect();
                return Ok(Done::ok(json!({ "color": color, "images": masks })));
            }
        }
        eprintln!("no monochromatic copy");
        return Ok(Done::ok(Value::Null));
    }
    Err(Error::InvalidInput("detect needs one of --qn, --poset, --layered, --hilbert".into()).into())
}

fn verify(a: &VerifyArgs) -> Out {
    let c = load_coloring(&a.file)?;
    let sizes: Vec<usize> = (0..c.colors() as Color).map(|x| c.count(x)).collect();
    let Some(n) = a.no_mono_q else {
        return Ok(Done::ok(json!({ "N": c.dim(), "k": c.colors(), "class_sizes": sizes })));
    };
    if c.colors() != 2 {
        return Err(Error::InvalidInput("--no-mono-q needs a 2-coloring".into()).into());
    }
    let (r, bl) = count_mono_qn(&c, n)?;
    eprintln!("monochromatic Q_{n}: {r} red, {bl} blue");
    Ok(Done {
        text: canonical(&json!({ "n": n, "red": r, "blue": bl })),
        code: if r + bl == 0 { 0 } else { 1 },
    })
}

fn mono_report(color: Color, f: &Embedding) -> Value {
    json!({
        "color": color,
        "embedding": to_value(&f.to_file()),
        "valid": f.is_order_exact(),
    })
}

fn strategy(s: &StrategyCommand, g: &Global) -> Out {
    match s {
        StrategyCommand::Qnqn(a) => {
            let c = load_coloring(&a.file)?;
            let (color, f) = strategy_qnqn(&c, a.n)?;
            describe(&format!("{} Q_{}", color_name(color), a.n), &f);
            Ok(Done::ok(mono_report(color, &f)))
        }
        StrategyCommand::Q2qn(a) => {
            let c = load_coloring(&a.file)?;
            let (color, f) = strategy_q2qn(&c, a.n)?;
            describe(&format!("{} Q_{}", color_name(color), f.source_dim()), &f);
            Ok(Done::ok(mono_report(color, &f)))
        }
        StrategyCommand::Halfslice(a) => {
            let c = load_coloring(&a.file)?;
            match halfslice_strategy(&c, a.n, a.m)? {
                Some(f) => {
                    describe(&format!("red Q_{}", a.n), &f);
                    Ok(Done::ok(mono_report(RED, &f)))
                }
                None => {
                    eprintln!("some half-slice family is entirely blue; strategy inconclusive");
                    Ok(Done::ok(Value::Null))
                }
            }
        }
        StrategyCommand::Antichain(a) => {
            let c = load_coloring(&a.file)?;
            let l = red_height(&c);
            let f = antichain_extract_blue(&c)?;
            describe(&format!("blue Q_{} (red height {l})", f.source_dim()), &f);
            let mut v = mono_report(BLUE, &f);
            v["red_height"] = json!(l);
            Ok(Done::ok(v))
        }
        StrategyCommand::Blob(a) => {
            let p = load_poset(&a.p)?;
            let blob = blob_embedding(&p, a.m, &mut budget(g))?;
            eprintln!("P x Q_{} into Q_{}", a.m, blob.target);
            Ok(Done::ok(json!({
                "N": blob.target,
                "images": blob.images,
                "product": to_value(&blob.product.to_file()),
            })))
        }
    }
}

fn scan_options(g: &Global) -> ScanOptions {
    let mut o = ScanOptions {
        exec: exec(g),
        ..ScanOptions::default()
    };
    if let Some(b) = g.budget {
        o.max_colorings = b;
    }
    o
}

fn exact(a: &ExactArgs, g: &Global) -> Out {
    let p = load_poset(&a.p)?;
    let q = load_poset(&a.q)?;
    let mut opts = scan_options(g);
    opts.use_symmetry = !a.no_symmetry;
    opts.checkpoint = a.checkpoint.clone();
    let r = ramsey_number(&p, &q, a.nmax, &opts)?;
    eprintln!("R(P, Q) = {r}");
    if let Some(path) = &a.verdicts {
        let mut verdicts = Vec::new();
        for dim in r.saturating_sub(1)..=r {
            let v = qlat::ramsey::arrowing(dim, &p, &q, &opts)?;
            verdicts.push(to_value(&v.to_file()));
        }
        let body = canonical(&json!({ "R": r, "verdicts": verdicts }));
        fs::write(path, format!("{body}\n"))
            .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    }
    Ok(Done::ok(json!(r)))
}

fn witness(a: &WitnessArgs, g: &Global) -> Out {
    let mut cfg = match &a.config {
        Some(path) => AnnealConfig::from_json(&read(path)?)?,
        None => AnnealConfig::default(),
    };
    if a.no_symmetric {
        cfg.symmetric = false;
    }
    if let Some(b) = g.budget {
        cfg.steps = b;
    }
    let report = witness_search_with(a.big_n, a.n, &cfg, g.seed, exec(g))?;
    eprintln!(
        "best objective {} after {} moves, {} restarts",
        report.best_objective, report.steps_used, report.restarts
    );
    match report.witness {
        Some(c) => {
            eprintln!(
                "red sets: {}",
                list_sets(c.class(RED).into_iter().map(|s| SubsetMask::new(s, c.dim()).expect("cell")))
            );
            Ok(Done::ok(to_value(&c.to_file())))
        }
        None => Err(Error::ResourceLimit {
            what: format!("no witness within {} annealing moves", cfg.steps),
            partial: report.steps_used,
        }
        .into()),
    }
}

fn multicolor(a: &MulticolorArgs, g: &Global) -> Out {
    let p = load_poset(&a.p)?;
    let bound = if a.lower {
        multicolor_lower_bound(&p, a.k, a.nmax)?
    } else {
        multicolor_ramsey(&p, a.k, a.nmax, &scan_options(g))?
    };
    eprintln!(
        "R_{}(P) {} {}",
        a.k,
        if bound.exact { "=" } else { ">=" },
        bound.value
    );
    Ok(Done::ok(json!({
        "k": a.k,
        "value": bound.value,
        "exact": bound.exact,
        "counterexample": bound.counterexample.as_ref().map(|c| to_value(&c.to_file())),
    })))
}

fn algebra(a: &AlgebraArgs, g: &Global) -> Out {
    if let Some(path) = &a.layered {
        let c = load_coloring(path)?;
        return Ok(Done::ok(match algebra_from_layered(&c, a.n)? {
            Some((color, w)) => {
                eprintln!("{} algebra: {}", color_name(color), list_sets(w.blocks().iter().copied()));
                json!({ "color": color, "X": w.to_file().blocks })
            }
            None => {
                eprintln!("no monochromatic Hilbert cube among the layer sizes");
                Value::Null
            }
        }));
    }
    let Some(path) = &a.family else {
        return Err(Error::InvalidInput("algebra needs --family or --layered".into()).into());
    };
    let (_, family) = load_family(path)?;
    Ok(Done::ok(match find_boolean_algebra(&family, a.n, &mut budget(g))? {
        Some(w) => {
            eprintln!("blocks: {}", list_sets(w.blocks().iter().copied()));
            to_value(&w.to_file())
        }
        None => {
            eprintln!("no Boolean algebra of dimension {}", a.n);
            Value::Null
        }
    }))
}

fn lubell(a: &LubellArgs) -> Out {
    if let Some(path) = &a.family {
        let (dim, family) = load_family(path)?;
        let m = lubell_mass(&family, dim)?;
        return Ok(Done::ok(json!({ "mass": m.to_string() })));
    }
    let Some(path) = &a.file else {
        return Err(Error::InvalidInput("lubell needs --family or --file".into()).into());
    };
    let c = load_coloring(path)?;
    let masses: Vec<String> = class_masses(&c).iter().map(|m| m.to_string()).collect();
    Ok(Done::ok(json!({ "N": c.dim(), "class_masses": masses })))
}

fn montecarlo(a: &MonteCarloArgs, g: &Global) -> Out {
    let (name, dim) = match a.strategy {
        StrategyKind::Qnqn => ("qnqn", a.n * a.n + 2 * a.n),
        StrategyKind::Q2qn => ("q2qn", 2 * a.n + 2),
        StrategyKind::Halfslice => ("halfslice", a.n + (a.n + 1) * a.m),
    };
    let seed = g.seed;
    let outcomes = exec(g).map_collect(0..a.trials, |i| -> qlat::Result<bool> {
        let c = random_coloring(dim, 2, seed.wrapping_add(i))?;
        Ok(match a.strategy {
            StrategyKind::Qnqn => strategy_qnqn(&c, a.n).is_ok(),
            StrategyKind::Q2qn => strategy_q2qn(&c, a.n).is_ok(),
            StrategyKind::Halfslice => halfslice_strategy(&c, a.n, a.m)?.is_some(),
        })
    });
    let mut successes = 0u64;
    for o in outcomes {
        successes += u64::from(o?);
    }
    eprintln!("{name}: {successes}/{} successes", a.trials);
    Ok(Done::ok(json!({
        "strategy": name,
        "n": a.n,
        "m": a.m,
        "N": dim,
        "seed": seed,
        "trials": a.trials,
        "successes": successes,
    })))
}

fn gen_coloring(a: &GenColoringArgs, g: &Global) -> Out {
    let c = if let Some(n) = a.antichain {
        antichain_lower_coloring(n)?
    } else if let Some(k) = a.multicolor {
        multicolor_lower_coloring(k)?
    } else if !a.layers.is_empty() {
        layered_coloring(a.layers.len() - 1, a.k, &a.layers)?
    } else if let Some(dim) = a.big_n {
        random_coloring(dim, a.k, g.seed)?
    } else {
        return Err(Error::InvalidInput(
            "gen-coloring needs --N, --layers, --antichain or --multicolor".into(),
        )
        .into());
    };
    eprintln!("coloring of Q_{} with {} colors", c.dim(), c.colors());
    Ok(Done::ok(to_value(&c.to_file())))
}
