//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exact criteria compare integers or exact rationals. Numeric ones use the
//! pinned tolerances below. Exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fusion_forge::affine::wall_witness;
use fusion_forge::conjectures::{paper_wall_root, verify_sweep, SweepTask};
use fusion_forge::fusion::beta_element;
use fusion_forge::repring::minimal_index_fundamentals;
use fusion_forge::{
    enumerate_plevel, sl2_fusion_oracle, tensor_decompose, verify_equality_rank2, verify_inclusion,
    Family, FusionMethod, FusionTable, GeneratorSource, LevelContext, LieType, Rational, RepElement, RootSystem,
    RootVector, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute bound on generator values at fusion points.
const VANISH_TOL: f64 = 1e-6;
/// Distance bound for matching computed zeros with fusion points.
const MATCH_TOL: f64 = 1e-6;

const TABLE_LIMIT: Duration = Duration::from_secs(10);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);
const METHODS_LIMIT: Duration = Duration::from_secs(300);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(failures: &[String], ok_detail: String) -> Self {
        if failures.is_empty() {
            Verdict {
                pass: true,
                detail: ok_detail,
            }
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            Verdict {
                pass: false,
                detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")),
            }
        }
    }
}

fn lie(s: &str) -> LieType {
    s.parse().expect("type literal")
}

fn rs(s: &str) -> RootSystem {
    RootSystem::new(lie(s)).expect("valid type")
}

fn ctx(s: &str, level: u32) -> LevelContext {
    enumerate_plevel(Arc::new(rs(s)), level).expect("level >= 1")
}

fn table_one() -> Verdict {
    // (family, ranks, minimizing nodes by rank, minimal index, ȟ by rank)
    type Row = (&'static str, Vec<usize>, fn(usize) -> Vec<usize>, i64, fn(usize) -> i64);
    let rows: Vec<Row> = vec![
        ("A", (1..=8).collect(), |r| if r == 1 { vec![1] } else { vec![1, r] }, 1, |r| r as i64 + 1),
        ("C", (2..=8).collect(), |_| vec![1], 1, |r| r as i64 + 1),
        ("B", (3..=8).collect(), |r| if r == 3 { vec![1, 3] } else { vec![1] }, 2, |r| 2 * r as i64 - 1),
        ("D", (4..=8).collect(), |r| if r == 4 { vec![1, 3, 4] } else { vec![1] }, 2, |r| 2 * r as i64 - 2),
        ("G", vec![2], |_| vec![1], 2, |_| 4),
        ("F", vec![4], |_| vec![4], 6, |_| 9),
        ("E", vec![6], |_| vec![1, 6], 6, |_| 12),
        ("E", vec![7], |_| vec![7], 12, |_| 18),
        ("E", vec![8], |_| vec![8], 60, |_| 30),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (family, ranks, nodes, index, h) in &rows {
        for &r in ranks {
            let t = format!("{family}{r}");
            let rs = rs(&t);
            let (min, got) = minimal_index_fundamentals(&rs).expect("index");
            checked += 1;
            if rs.dual_coxeter() != h(r) {
                failures.push(format!("{t}: dual Coxeter {} != {}", rs.dual_coxeter(), h(r)));
            }
            if min != Rational::from(*index) || got != nodes(r) {
                failures.push(format!("{t}: min index {min} at {got:?}, expected {index} at {:?}", nodes(r)));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > TABLE_LIMIT {
        failures.push(format!("took {elapsed:?} > {TABLE_LIMIT:?}"));
    }
    Verdict::new(&failures, format!("{checked} types across 9 rows in {elapsed:.2?}"))
}

fn inclusion_sweep() -> Verdict {
    use GeneratorSource::*;
    let start = Instant::now();
    let mut tasks = Vec::new();
    for t in ["B3", "B4", "B5", "B6", "D4", "D5", "D6", "G2", "F4", "E6", "E7", "E8"] {
        let lie_type = lie(t);
        let source = match lie_type.family() {
            Family::G => G2Walls,
            Family::F => F4Walls,
            Family::E if lie_type.rank() == 8 => E8Walls,
            _ => MinimalIndexPowers,
        };
        for level in 1..=6 {
            tasks.push(SweepTask {
                lie_type,
                level,
                source,
            });
        }
    }
    let reports = verify_sweep(&tasks, false);
    let mut failures = Vec::new();
    let mut generators = 0;
    for (task, r) in tasks.iter().zip(reports) {
        match r {
            Ok(r) => {
                for g in &r.generators {
                    generators += 1;
                    if !g.beta.is_zero() {
                        failures.push(format!("{} level {}: beta(V{}) != 0", task.lie_type, task.level, g.weight));
                    }
                }
            }
            Err(e) => failures.push(format!("{task:?}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > SWEEP_LIMIT {
        failures.push(format!("took {elapsed:?} > {SWEEP_LIMIT:?}"));
    }
    Verdict::new(&failures, format!("{} tasks, {generators} generators fold to zero in {elapsed:.2?}", tasks.len()))
}

fn witness_agreement() -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in ["B3", "B4", "B5", "B6", "D4", "D5", "D6", "G2", "F4"] {
        let rs = rs(t);
        let r = rs.rank() as i64;
        let family = rs.lie_type().family();
        let count = match family {
            Family::B => 2 * r as usize - 2,
            Family::D => 2 * r as usize - 3,
            Family::G => 3,
            _ => 6,
        };
        let theta = rs.theta().clone();
        let f4_roots: Vec<RootVector> = [[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 2, 0], [1, 2, 2, 0], [2, 2, 2, 0]]
            .iter()
            .map(|d| RootVector(theta.0.iter().zip(d).map(|(a, b)| a - b).collect()))
            .collect();
        for level in 1..=6u32 {
            let l = level as i64;
            let k = l + rs.dual_coxeter();
            for m in 1..=count {
                checked += 1;
                let p = paper_wall_root(&rs, level, m).expect("in range");
                let stated = match family {
                    Family::B => l + 2 * r - 1,
                    Family::D => l + 2 * r - 2,
                    _ => k,
                };
                let expected_root = match family {
                    Family::G if m == 2 => Some(RootVector(vec![3, 1])),
                    Family::G => Some(theta.clone()),
                    Family::F => Some(f4_roots[m - 1].clone()),
                    _ => None,
                };
                let x = &p.generator + &rs.rho();
                let pairing = rs.inner_product(&x, &p.root).expect("rank");
                let searched = wall_witness(&rs, &p.generator, level).expect("dominant");
                let ok = p.pairing == stated
                    && pairing == Rational::from(stated)
                    && rs.positive_roots().contains(&p.root)
                    && (expected_root.is_none() || expected_root.as_ref() == Some(&p.root))
                    && searched.as_ref().is_some_and(|w| w.level_multiple * k == stated);
                if !ok {
                    failures.push(format!(
                        "{t} level {level} m={m}: root {} pairing {pairing} stated {stated}, searched {searched:?}",
                        p.root
                    ));
                }
            }
        }
    }
    Verdict::new(&failures, format!("{checked} stated walls agree with the search"))
}

type Tables = Vec<(String, u32, FusionTable)>;

fn method_equivalence(tables: &mut Tables) -> Verdict {
    let start = Instant::now();
    let mut jobs: Vec<(&str, u32)> = Vec::new();
    for t in ["A1", "A2", "A3", "B3", "C2", "C3", "D4", "G2", "F4"] {
        for level in 1..=3 {
            jobs.push((t, level));
        }
    }
    for level in 4..=10 {
        jobs.push(("A1", level));
    }
    let mut failures = Vec::new();
    let mut entries = 0usize;
    for (t, level) in jobs {
        match FusionTable::build(&ctx(t, level), FusionMethod::Both) {
            Ok(table) => {
                let n = table.context().len();
                entries += n * n * n;
                tables.push((t.to_string(), level, table));
            }
            Err(e) => failures.push(format!("{t} level {level}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > METHODS_LIMIT {
        failures.push(format!("took {elapsed:?} > {METHODS_LIMIT:?}"));
    }
    Verdict::new(&failures, format!("{} tables, {entries} entries agree in {elapsed:.2?}", tables.len()))
}

fn sl2_oracle(tables: &Tables) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for level in 1..=10u32 {
        let table = match tables.iter().find(|(t, l, _)| t == "A1" && *l == level) {
            Some((_, _, table)) => table.clone(),
            None => FusionTable::build(&ctx("A1", level), FusionMethod::KacWalton).expect("A1 table"),
        };
        for a in 0..=level {
            for b in 0..=level {
                checked += 1;
                let oracle = sl2_fusion_oracle(a, b, level).expect("in range");
                let got: std::collections::BTreeMap<u32, u64> = table
                    .product(&Weight(vec![a as i64]), &Weight(vec![b as i64]))
                    .expect("in P_l")
                    .into_iter()
                    .map(|(nu, n)| (nu.0[0] as u32, n))
                    .collect();
                if got != oracle {
                    failures.push(format!("level {level}: {a} x {b} = {got:?}, closed form {oracle:?}"));
                }
            }
        }
    }
    Verdict::new(&failures, format!("{checked} products match the closed form"))
}

fn vanishing_at_points() -> Verdict {
    let mut failures = Vec::new();
    let mut evaluated = 0;
    let mut worst = 0.0f64;
    let mut record = |t: &str, level: u32, source: GeneratorSource, only_extras: bool, failures: &mut Vec<String>| {
        let rs = rs(t);
        let base = match rs.lie_type().family() {
            Family::B | Family::D => (rs.dual_coxeter() - 1) as usize,
            _ => 0,
        };
        match verify_inclusion(&rs, level, source, true) {
            Ok(r) => {
                for (i, g) in r.generators.iter().enumerate() {
                    if only_extras && i < base {
                        continue;
                    }
                    match g.max_abs_value {
                        Some(v) => {
                            evaluated += 1;
                            worst = worst.max(v);
                            if v >= VANISH_TOL {
                                failures.push(format!("{t} level {level} {source}: |chi_{}| = {v:e}", g.weight));
                            }
                        }
                        None => failures.push(format!("{t} level {level} {source}: V{} not evaluated", g.weight)),
                    }
                }
            }
            Err(e) => failures.push(format!("{t} level {level} {source}: {e}")),
        }
    };
    for level in 1..=3 {
        for t in ["A1", "A2", "A3"] {
            record(t, level, GeneratorSource::SpecialLinear, false, &mut failures);
        }
        for t in ["C2", "C3"] {
            record(t, level, GeneratorSource::Symplectic, false, &mut failures);
        }
        for t in ["B3", "B4"] {
            record(t, level, GeneratorSource::OddOrthogonalExtra, true, &mut failures);
        }
        record("D4", level, GeneratorSource::EvenOrthogonalExtra, true, &mut failures);
    }
    Verdict::new(&failures, format!("{evaluated} generators vanish at every fusion point, max |value| {worst:.1e}"))
}

fn rank_two_varieties() -> Verdict {
    let mut failures = Vec::new();
    let mut details = Vec::new();
    for (level, expected) in [(1u32, 2usize), (2, 4), (3, 6)] {
        match verify_equality_rank2(&rs("G2"), level, GeneratorSource::G2Walls) {
            Ok(c) => {
                details.push(format!("l={level}: {} zeros, dist {:.1e}", c.zeros.len(), c.max_distance));
                if c.zeros.len() != expected || c.points.len() != expected || !c.equal || c.max_distance >= MATCH_TOL {
                    failures.push(format!(
                        "level {level}: {} zeros vs {} points (expected {expected}), matching {:?}",
                        c.zeros.len(),
                        c.points.len(),
                        c.matching
                    ));
                }
            }
            Err(e) => failures.push(format!("level {level}: {e}")),
        }
    }
    Verdict::new(&failures, details.join(", "))
}

fn homomorphism() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut cache: HashMap<(String, u32), (LevelContext, FusionTable)> = HashMap::new();
    let types = ["A1", "A2", "A3", "B3", "C2", "C3", "G2"];
    for t in types {
        let rs = rs(t);
        let r = rs.rank();
        let max = if r <= 2 { 5 } else { 3 };
        for _ in 0..200 {
            let level = rng.gen_range(1..=3u32);
            let a = Weight((0..r).map(|_| rng.gen_range(0..=max)).collect());
            let b = Weight((0..r).map(|_| rng.gen_range(0..=max)).collect());
            let (c, table) = cache.entry((t.to_string(), level)).or_insert_with(|| {
                let c = ctx(t, level);
                let table = FusionTable::build(&c, FusionMethod::KacWalton).expect("table");
                (c, table)
            });
            let left = beta_element(c, &tensor_decompose(&rs, &a, &b).expect("dominant")).expect("fold");
            let fa = beta_element(c, &RepElement::irreducible(a.clone())).expect("fold");
            let fb = beta_element(c, &RepElement::irreducible(b.clone())).expect("fold");
            let right = table.multiply(&fa, &fb).expect("in P_l");
            if left != right {
                failures.push(format!("{t} level {level}: {a} x {b}: {left} vs {right}"));
            }
        }
    }
    Verdict::new(&failures, format!("{} random pairs", 200 * types.len()))
}

fn inequality(tables: &Tables) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (t, level, table) in tables {
        let rs = table.context().root_system();
        for (a, b, nu, n) in table.entries() {
            checked += 1;
            let m = tensor_decompose(rs, a, b).expect("dominant").coefficient(nu);
            if n as i64 > m {
                failures.push(format!("{t} level {level}: N({a},{b};{nu}) = {n} > m = {m}"));
            }
        }
    }
    Verdict::new(&failures, format!("{checked} nonzero entries satisfy N <= m"))
}

fn main() -> ExitCode {
    let mut tables: Tables = Vec::new();
    let mut results: Vec<(&str, Verdict, Duration)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        results.push((name, v, start.elapsed()));
    };
    run("1 minimal Dynkin index table", &mut table_one);
    run("2 wall-generator inclusion sweep", &mut inclusion_sweep);
    run("3 stated walls vs wall search", &mut witness_agreement);
    run("4 Kac-Walton = Verlinde", &mut || method_equivalence(&mut tables));
    run("5 sl2 closed form", &mut || sl2_oracle(&tables));
    run("6 generators vanish at fusion points", &mut vanishing_at_points);
    run("7 G2 zero sets = fusion points", &mut rank_two_varieties);
    run("8 beta is a ring homomorphism", &mut homomorphism);
    run("9 fusion <= tensor multiplicities", &mut || inequality(&tables));

    let mut all = true;
    for (name, v, elapsed) in &results {
        all &= v.pass;
        println!(
            "[{}] {name} ({:.2}s): {}",
            if v.pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria pass",
        results.iter().filter(|r| r.1.pass).count(),
        results.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
