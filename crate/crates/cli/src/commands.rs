use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use strassen_core::algorithm::{
    extended_strassen, load, naive_algorithm, save, strassen_algorithm, to_json_string,
    BilinearAlgorithm, ExtendedAlgorithm,
};
use strassen_core::engine::{
    self, naive_multiply, strassen_multiply, BenchConfig, Method, OperationCounter, Ring,
    RingKind, RingMatrix,
};
use strassen_core::exact::{rational, ExactMatrix, Rational, Subspace};
use strassen_core::flattening::{
    dependent_triples, flattening_rank, has_direct_sum_split, line_fixing_dimension,
    term_quasiprojection_profile,
};
use strassen_core::segre::{
    close_group, generators_aut_extended, generators_aut_s, orbit_sizes, orbits, random_sandwich,
    sandwich, transform_algorithm, GroupClosure, AUT_EXTENDED_NAMES, AUT_S_NAMES,
};
use strassen_core::tensor::DenseTensor;

use crate::report::{Failure, Outcome, EXIT_CHECK, EXIT_OK};
use crate::{MethodArg, Source};

const FLOAT_REL_TOL: f64 = 1e-9;

enum Loaded {
    Algorithm(String, BilinearAlgorithm),
    Extended(ExtendedAlgorithm),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_source(source: &Source) -> Result<Loaded, Failure> {
    match (&source.path, &source.builtin) {
        (Some(path), None) => Ok(Loaded::Algorithm(path.display().to_string(), load(path)?)),
        (None, Some(names)) => {
            let words: Vec<&str> = names.iter().map(String::as_str).collect();
            match words.as_slice() {
                ["strassen"] => Ok(Loaded::Algorithm("strassen".into(), strassen_algorithm())),
                ["strassen-extended"] => Ok(Loaded::Extended(extended_strassen())),
                ["naive", m, n, p] => {
                    let dim = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| usage(format!("naive format: {s:?} is not a size")))
                    };
                    let (m, n, p) = (dim(m)?, dim(n)?, dim(p)?);
                    Ok(Loaded::Algorithm(format!("naive({m},{n},{p})"), naive_algorithm(m, n, p)?))
                }
                _ => Err(usage(format!(
                    "unknown builtin {:?} (expected strassen, strassen-extended, or naive M N P)",
                    words.join(" ")
                ))),
            }
        }
        _ => Err(usage("give an algorithm file or --builtin")),
    }
}

fn load_algorithm(source: &Source, command: &str) -> Result<(String, BilinearAlgorithm), Failure> {
    match load_source(source)? {
        Loaded::Algorithm(name, alg) => Ok((name, alg)),
        Loaded::Extended(_) => Err(usage(format!("{command} needs a three-factor algorithm"))),
    }
}

/// Sizes `(rows, cols)` of the three matrix factors.
fn factor_sizes(alg: &BilinearAlgorithm) -> [(usize, usize); 3] {
    let (m, n, p) = alg.mnp();
    [(m, n), (n, p), (p, m)]
}

fn format_matrix(v: &[Rational], cols: usize) -> String {
    let rows: Vec<String> = v
        .chunks(cols)
        .map(|r| r.iter().map(rational::format).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn line_vector(l: &Subspace) -> Vec<Rational> {
    l.basis_vectors().into_iter().next().unwrap_or_default()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

fn distinct_count(lines: &[Subspace]) -> usize {
    let mut seen: Vec<&Subspace> = Vec::new();
    for l in lines {
        if !seen.contains(&l) {
            seen.push(l);
        }
    }
    seen.len()
}

fn one_based(triples: &[[usize; 3]]) -> Vec<[usize; 3]> {
    triples.iter().map(|t| t.map(|i| i + 1)).collect()
}

fn format_sets<const N: usize>(sets: &[[usize; N]]) -> String {
    if sets.is_empty() {
        return "none".into();
    }
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Per-factor summary: target flattening rank, distinct term lines and the
/// number of dependent line triples.
fn profile(alg: &BilinearAlgorithm) -> Result<(String, Value), Failure> {
    let mut text = String::from("factor  target-rank  distinct-lines  dependent-triples\n");
    let mut rows = Vec::new();
    for f in 0..3 {
        let rank = flattening_rank(alg.target(), &[f])?;
        let lines = term_quasiprojection_profile(alg, f)?;
        let triples = dependent_triples(&lines)?;
        let distinct = distinct_count(&lines);
        writeln!(text, "{:>6}  {rank:>11}  {distinct:>14}  {:>17}", f + 1, triples.len()).unwrap();
        rows.push(json!({
            "factor": f + 1,
            "target_rank": rank,
            "distinct_lines": distinct,
            "dependent_triples": triples.len(),
        }));
    }
    Ok((text, Value::Array(rows)))
}

pub fn verify(source: &Source) -> Result<Outcome, Failure> {
    match load_source(source)? {
        Loaded::Algorithm(name, alg) => {
            let (m, n, p) = alg.mnp();
            let ok = alg.verify();
            let verdict = if ok { "VERIFIED" } else { "NOT VERIFIED" };
            let (table, rows) = profile(&alg)?;
            let text = format!(
                "algorithm: {name} ({m},{n},{p})\n{} terms, {verdict}\n{table}",
                alg.terms().len()
            );
            let report = json!({
                "command": "verify",
                "algorithm": name,
                "mnp": [m, n, p],
                "terms": alg.terms().len(),
                "verified": ok,
                "profile": rows,
            });
            Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_CHECK }, text, report))
        }
        Loaded::Extended(ext) => {
            let zero = ext.sums_to_zero();
            let decomposable = ext.members().iter().filter(|m| m.is_rank_at_most_one()).count();
            let text = format!(
                "algorithm: strassen-extended (six-factor form)\n{} members, sum {}\n{decomposable} decomposable members\n",
                ext.members().len(),
                if zero { "= 0" } else { "!= 0" },
            );
            let report = json!({
                "command": "verify",
                "algorithm": "strassen-extended",
                "members": ext.members().len(),
                "sum_is_zero": zero,
                "decomposable_members": decomposable,
            });
            Ok(Outcome::new(if zero { EXIT_OK } else { EXIT_CHECK }, text, report))
        }
    }
}

fn word_string(word: &[usize], names: &[&str]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|&j| names[j]).collect::<Vec<_>>().join("·")
}

fn orbit_text(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn group(extended: bool, orbits_only: bool) -> Result<Outcome, Failure> {
    let (gens, names, members, expected_order, expected_orbits, label): (
        _,
        &[&str],
        Vec<DenseTensor>,
        usize,
        Vec<usize>,
        &str,
    ) = if extended {
        (
            generators_aut_extended(),
            &AUT_EXTENDED_NAMES,
            extended_strassen().members().to_vec(),
            72,
            vec![2, 6],
            "strassen-extended",
        )
    } else {
        (
            generators_aut_s(),
            &AUT_S_NAMES,
            strassen_algorithm().terms().iter().map(|t| t.expand()).collect(),
            36,
            vec![1, 6],
            "strassen",
        )
    };
    let g: GroupClosure = close_group(&gens)?;
    let parts = orbits(&g, &members)?;
    let sizes = orbit_sizes(&parts);
    let orbit_list: Vec<Vec<usize>> = parts.iter().map(|o| o.iter().map(|i| i + 1).collect()).collect();

    if orbits_only {
        let ok = sizes == expected_orbits;
        let text = format!(
            "orbits of the {} members of {label} under a group of order {}:\n{}\norbit sizes {sizes:?} (expected {expected_orbits:?})\n",
            members.len(),
            g.order(),
            orbit_text(&parts),
        );
        let report = json!({
            "command": "orbits",
            "algorithm": label,
            "group_order": g.order(),
            "orbits": orbit_list,
            "orbit_sizes": sizes,
            "expected_orbit_sizes": expected_orbits,
        });
        return Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_CHECK }, text, report));
    }

    let orders = g.element_orders();
    let histogram = g.order_histogram();
    let center = g.center_size();
    let abelian = g.abelianization_order();
    let ok = g.order() == expected_order;
    let mut text = format!(
        "group generated by {} on {label}\norder {} (expected {expected_order})\nelement orders: {}\ncenter {center}, abelianization {abelian}\norbits on the {} members: {}\nelements:\n",
        names.join(", "),
        g.order(),
        histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" "),
        members.len(),
        orbit_text(&parts),
    );
    let mut elements = Vec::new();
    for (i, (w, o)) in g.words().iter().zip(&orders).enumerate() {
        let word = word_string(w, names);
        writeln!(text, "  #{:<3} order {o}  {word}", i + 1).unwrap();
        elements.push(json!({ "order": o, "word": word }));
    }
    let report = json!({
        "command": "group",
        "algorithm": label,
        "generators": names,
        "order": g.order(),
        "expected_order": expected_order,
        "element_orders": histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "center_size": center,
        "abelianization_order": abelian,
        "orbits": orbit_list,
        "orbit_sizes": sizes,
        "elements": elements,
    });
    Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_CHECK }, text, report))
}

pub fn flatten(source: &Source, factor: usize) -> Result<Outcome, Failure> {
    let (name, alg) = load_algorithm(source, "flatten")?;
    if factor == 0 || factor > 3 {
        return Err(usage(format!("--factor must be 1, 2 or 3, got {factor}")));
    }
    let f = factor - 1;
    let cols = factor_sizes(&alg)[f].1;
    let rank = flattening_rank(alg.target(), &[f])?;
    let lines = term_quasiprojection_profile(&alg, f)?;
    let triples = one_based(&dependent_triples(&lines)?);
    let fixing = line_fixing_dimension(&lines)?;
    let split = has_direct_sum_split(&lines)?;
    let mut text = format!(
        "algorithm: {name}, factor {factor}\ntarget flattening rank {rank}\nterm lines:\n"
    );
    let mut line_json = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let v = line_vector(l);
        writeln!(text, "  r{} = <{}>", i + 1, format_matrix(&v, cols)).unwrap();
        line_json.push(strings(&v));
    }
    writeln!(text, "dependent triples: {}", format_sets(&triples)).unwrap();
    writeln!(text, "maps fixing every line: dimension {fixing}").unwrap();
    writeln!(text, "direct-sum split: {}", if split { "yes" } else { "none" }).unwrap();
    let report = json!({
        "command": "flatten",
        "algorithm": name,
        "factor": factor,
        "target_rank": rank,
        "lines": line_json,
        "dependent_triples": triples,
        "fixing_dimension": fixing,
        "direct_sum_split": split,
    });
    Ok(Outcome::new(EXIT_OK, text, report))
}

fn read_matrix(path: &Path) -> Result<ExactMatrix, Failure> {
    let where_ = path.display();
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{where_}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("{where_}: {e}")))?;
    let rows = value
        .as_array()
        .ok_or_else(|| usage(format!("{where_}: expected an array of rows")))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| usage(format!("{where_}: row {i} is not an array")))?;
        let mut parsed = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let s = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(usage(format!("{where_}[{i}][{j}]: expected a rational string"))),
            };
            parsed.push(rational::parse(&s).map_err(|e| usage(format!("{where_}[{i}][{j}]: {e}")))?);
        }
        out.push(parsed);
    }
    Ok(ExactMatrix::from_rows(&out)?)
}

pub fn transform(
    source: &Source,
    seed: u64,
    matrices: Option<[PathBuf; 3]>,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let (name, alg) = load_algorithm(source, "transform")?;
    if !alg.verify() {
        return Err(Failure::Check(format!("{name} does not verify")));
    }
    let (g, pqr, how) = match matrices {
        Some(paths) => {
            let [p, q, r] = [read_matrix(&paths[0])?, read_matrix(&paths[1])?, read_matrix(&paths[2])?];
            (sandwich(&p, &q, &r)?, [p, q, r], "matrices from files".to_string())
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, pqr) = random_sandwich(alg.mnp(), &mut rng)?;
            (g, pqr, format!("random matrices from seed {seed}"))
        }
    };
    let t = transform_algorithm(&g, &alg)?;
    let ok = t.verify();
    let same = t.same_terms_as(&alg);
    if let Some(path) = out {
        save(&t, path)?;
    }
    let (table, rows) = profile(&t)?;
    let mut text = format!("transformed {name} by a sandwich ({how})\n");
    for (label, m) in ["P", "Q", "R"].iter().zip(&pqr) {
        writeln!(text, "  {label} = {}", format_matrix(m.entries(), m.cols())).unwrap();
    }
    writeln!(
        text,
        "{} terms, {}\nsame term set as the input: {}",
        t.terms().len(),
        if ok { "VERIFIED" } else { "NOT VERIFIED" },
        if same { "yes" } else { "no" }
    )
    .unwrap();
    text.push_str(&table);
    let file = to_json_string(&t);
    match out {
        Some(path) => writeln!(text, "written to {}", path.display()).unwrap(),
        None => text.push_str(&file),
    }
    let report = json!({
        "command": "transform",
        "input": name,
        "p": pqr[0].row_vecs().iter().map(|r| strings(r)).collect::<Vec<_>>(),
        "q": pqr[1].row_vecs().iter().map(|r| strings(r)).collect::<Vec<_>>(),
        "r": pqr[2].row_vecs().iter().map(|r| strings(r)).collect::<Vec<_>>(),
        "terms": t.terms().len(),
        "verified": ok,
        "same_term_set": same,
        "profile": rows,
        "out": out.map(|p| p.display().to_string()),
        "algorithm": serde_json::from_str::<Value>(&file).expect("own output parses"),
    });
    Ok(Outcome::new(if ok { EXIT_OK } else { EXIT_CHECK }, text, report))
}

fn parse_ring(name: &str) -> Result<RingKind, Failure> {
    name.parse::<RingKind>().map_err(Failure::from)
}

struct Run {
    counts: OperationCounter,
    agrees: Option<bool>,
    max_error: Option<f64>,
}

fn run_multiply<R: Ring>(
    size: usize,
    cutoff: usize,
    check: bool,
    rng: &mut ChaCha8Rng,
    sample: impl Fn(&mut ChaCha8Rng) -> R,
    compare: impl Fn(&RingMatrix<R>, &RingMatrix<R>) -> (bool, Option<f64>),
) -> Result<Run, Failure> {
    let a = RingMatrix::from_fn(size, size, |_, _| sample(rng));
    let b = RingMatrix::from_fn(size, size, |_, _| sample(rng));
    let mut counts = OperationCounter::new();
    let c = strassen_multiply(&a, &b, cutoff, &mut counts)?;
    let (agrees, max_error) = if check {
        let expected = naive_multiply(&a, &b, &mut OperationCounter::new())?;
        let (ok, err) = compare(&c, &expected);
        (Some(ok), err)
    } else {
        (None, None)
    };
    Ok(Run {
        counts,
        agrees,
        max_error,
    })
}

fn exact_compare<R: PartialEq>(x: &RingMatrix<R>, y: &RingMatrix<R>) -> (bool, Option<f64>) {
    (x == y, None)
}

pub fn multiply(
    size: usize,
    cutoff: usize,
    ring: &str,
    count_ops: bool,
    check: bool,
    seed: u64,
) -> Result<Outcome, Failure> {
    let kind = parse_ring(ring)?;
    if size == 0 {
        return Err(usage("--size must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let run = match kind {
        RingKind::Rational => run_multiply(size, cutoff, check, &mut rng, |r| rational::int(r.gen_range(-5..=5)), exact_compare)?,
        RingKind::I64 => run_multiply(size, cutoff, check, &mut rng, |r| r.gen_range(-5i64..=5), exact_compare)?,
        RingKind::F64 => run_multiply(
            size,
            cutoff,
            check,
            &mut rng,
            |r| r.gen_range(-1.0f64..=1.0),
            |x, y| {
                let scale = y.entries().iter().fold(1.0f64, |m, v| m.max(v.abs()));
                let diff = x.entries().iter().zip(y.entries()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                let rel = diff / scale;
                (rel <= FLOAT_REL_TOL, Some(rel))
            },
        )?,
    };
    let mut text = format!("multiply: {size}x{size} over {kind}, cutoff {cutoff}, seed {seed}\n");
    if count_ops {
        writeln!(text, "mults={} adds={}", run.counts.multiplications, run.counts.additions).unwrap();
    }
    if let Some(ok) = run.agrees {
        let detail = run.max_error.map(|e| format!(" (relative error {e:.2e})")).unwrap_or_default();
        writeln!(
            text,
            "check: {}{detail}",
            if ok { "OK, equals the naive product" } else { "MISMATCH against the naive product" }
        )
        .unwrap();
    }
    let code = if run.agrees == Some(false) { EXIT_CHECK } else { EXIT_OK };
    let report = json!({
        "command": "multiply",
        "size": size,
        "cutoff": cutoff,
        "ring": kind.to_string(),
        "mults": run.counts.multiplications,
        "adds": run.counts.additions,
        "check": run.agrees,
        "relative_error": run.max_error,
    });
    Ok(Outcome::new(code, text, report))
}

pub fn bench(
    sizes: &[usize],
    ring: &str,
    cutoffs: &[usize],
    trials: usize,
    method: MethodArg,
    csv: bool,
    seed: u64,
) -> Result<Outcome, Failure> {
    let methods = match method {
        MethodArg::Strassen => vec![Method::Strassen],
        MethodArg::Naive => vec![Method::Naive],
        MethodArg::Both => vec![Method::Naive, Method::Strassen],
    };
    let cfg = BenchConfig {
        sizes: sizes.to_vec(),
        ring: parse_ring(ring)?,
        cutoffs: cutoffs.to_vec(),
        methods,
        trials,
        seed,
    };
    let report = engine::bench(&cfg)?;
    let json = serde_json::to_value(&report).expect("plain data");
    if csv {
        let mut out = Outcome::new(EXIT_OK, report.to_csv(), json);
        out.raw = true;
        return Ok(out);
    }
    let mut text = format!("{:>6} {:>9} {:>6} {:>9} {:>6} {:>12} {:>12} {:>12}\n",
        "size", "method", "cutoff", "ring", "trials", "median_ms", "mults", "adds");
    for r in &report.rows {
        writeln!(
            text,
            "{:>6} {:>9} {:>6} {:>9} {:>6} {:>12.3} {:>12} {:>12}",
            r.size,
            r.method.to_string(),
            r.cutoff,
            r.ring.to_string(),
            r.trials,
            r.median_ns as f64 / 1e6,
            r.mults,
            r.adds
        )
        .unwrap();
    }
    if !report.slopes.is_empty() {
        text.push_str("log2 growth between consecutive power-of-two sizes:\n");
        for s in &report.slopes {
            writeln!(
                text,
                "  {} cutoff {}: {} -> {}  mults {:.3}  time {:.3}",
                s.method, s.cutoff, s.from_size, s.to_size, s.mults_slope, s.time_slope
            )
            .unwrap();
        }
    }
    Ok(Outcome::new(EXIT_OK, text, json))
}
