//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chowdeg_core::generate::{
    all_proper_tree_monomials, caterpillar_monomial, random_clever_monomial, random_forest, random_proper_monomial,
    sun_like_tree,
};
use chowdeg_core::identity::{check_identity, count_fiber, fiber_counts, fiber_formula, fiber_law, IdentityInstance};
use chowdeg_core::reduction::{
    cut_multi_edge, cut_single_edge, linear_reduction_step, oracle_value, proper_quadruples, tree_reduction,
    OracleOptions,
};
use chowdeg_core::{integral_value, tree_value, Classification, LoadedTree, Monomial, RedundancyForest};
use common::{multinomial_u128, rng};
use num_bigint::{BigInt, BigUint};
use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;

const C1_LIMIT: Duration = Duration::from_millis(1);
const C2_LIMIT: Duration = Duration::from_secs(5);
const C2_TREES: usize = 1000;
const C2_MAX_N: u32 = 30;
const C5_LIMIT: Duration = Duration::from_secs(10);
const C6_LIMIT: Duration = Duration::from_secs(300);
const C6_RANDOM: usize = 500;
const C7_TREES: usize = 500;
const C8_TRIPLES: usize = 200;
const C9_LIMIT: Duration = Duration::from_secs(120);
const C9_FIBER_MAX_S: u64 = 9;
const C10_FORESTS: usize = 500;
const C10_ORDERS: usize = 3;
const C11_LIMIT: Duration = Duration::from_secs(1);
const C11_SIZES: [u32; 3] = [100, 200, 400];
/// Linear growth doubles per doubling of `n`; a factor 2 on top is allowed.
const C11_MAX_RATIO: f64 = 4.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn mono(s: &str) -> Monomial {
    s.parse().expect("fixture parses")
}

fn oracle(m: &Monomial) -> BigInt {
    oracle_value(m, OracleOptions::default()).expect("within oracle cap")
}

fn c1() -> Outcome {
    let start = Instant::now();
    let v = integral_value(&mono("d{1,2|3,4,5} * d{1,4|2,3,5}"));
    let elapsed = start.elapsed();
    check(v.value == BigInt::from(0), || format!("value {}", v.value))?;
    check(v.classification == Classification::ZeroByQuadratic, || {
        format!("classified {:?}", v.classification)
    })?;
    within(elapsed, C1_LIMIT)?;
    Ok(format!("value 0, zero-by-quadratic in {elapsed:?}"))
}

fn c2() -> Outcome {
    let mut r = rng(2);
    let start = Instant::now();
    for i in 0..C2_TREES {
        let n = r.gen_range(4..=C2_MAX_N);
        let m = random_clever_monomial(n, &mut r).map_err(|e| e.to_string())?;
        let v = integral_value(&m);
        let t = LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?;
        let f = tree_value(&t);
        check(v.value == BigInt::from(1) && f == BigInt::from(1), || {
            format!("tree {i} ({m}) gave {} / {f}", v.value)
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, C2_LIMIT)?;
    Ok(format!(
        "{C2_TREES} clever trees, n <= {C2_MAX_N}, all +1 in {elapsed:?}"
    ))
}

fn c3() -> Outcome {
    for (text, want) in [
        ("d{1,2|3,4,5,6}^2 * d{1,2,3,4|5,6}", -1),
        ("d{1,2,3|4,5,6,7}^3 * d{1,2,3,4,5|6,7}", 2),
    ] {
        let m = mono(text);
        let (f, o) = (integral_value(&m).value, oracle(&m));
        check(f == BigInt::from(want) && o == BigInt::from(want), || {
            format!("{text}: forest {f}, oracle {o}, want {want}")
        })?;
    }
    Ok("-1 and +2 by forest and oracle".into())
}

fn c4() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/forest_tree.json");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let t: LoadedTree = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let mag = RedundancyForest::redundancy_forest(&t).value();
    let sign = chowdeg_core::sign_of(&t);
    check(mag == BigUint::from(32u32) && sign == -1, || {
        format!("magnitude {mag}, sign {sign}")
    })?;
    Ok(format!("magnitude {mag}, sign {sign}"))
}

fn c5() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for r in 1..=5usize {
        let mut w = vec![1u64; r];
        loop {
            let k: u64 = w.iter().sum();
            let want = BigInt::from(multinomial_u128(&w)) * if k.is_multiple_of(2) { 1 } else { -1 };
            let t = sun_like_tree(&w).map_err(|e| e.to_string())?;
            let got = integral_value(&t.to_monomial().map_err(|e| e.to_string())?).value;
            check(got == want, || format!("weights {w:?}: {got} vs {want}"))?;
            count += 1;
            let Some(i) = w.iter().position(|&x| x < 4) else { break };
            w[i] += 1;
            w[..i].fill(1);
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, C5_LIMIT)?;
    Ok(format!("{count} sun-like trees in {elapsed:?}"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut seen = BTreeSet::new();
    let mut sizes = Vec::new();
    for n in [5, 6, 7] {
        let corpus = all_proper_tree_monomials(n).map_err(|e| e.to_string())?;
        sizes.push(corpus.len());
        for m in corpus {
            let (f, o) = (integral_value(&m).value, oracle(&m));
            check(f == o, || format!("{m}: forest {f}, oracle {o}"))?;
            seen.insert(m);
        }
    }
    check(seen.len() == sizes.iter().sum::<usize>(), || {
        "corpus has duplicates".into()
    })?;
    let mut r = rng(6);
    for _ in 0..C6_RANDOM {
        let m = random_proper_monomial(8, &mut r).map_err(|e| e.to_string())?;
        let (f, o) = (integral_value(&m).value, oracle(&m));
        check(f == o, || format!("{m}: forest {f}, oracle {o}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, C6_LIMIT)?;
    Ok(format!(
        "exhaustive n=5,6,7 ({sizes:?} monomials) plus {C6_RANDOM} random n=8 in {elapsed:?}"
    ))
}

fn c7() -> Outcome {
    let mut r = rng(7);
    let (mut singles, mut multis) = (0, 0);
    for _ in 0..C7_TREES {
        let m = random_proper_monomial(r.gen_range(4..=16), &mut r).map_err(|e| e.to_string())?;
        let t = LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?;
        let whole = tree_value(&t);
        for e in 0..t.edge_count() {
            let single = t.edges()[e].multiplicity == 1;
            let c = if single {
                cut_single_edge(&t, e)
            } else {
                cut_multi_edge(&t, e)
            }
            .map_err(|e| e.to_string())?;
            let value = |x: &Option<LoadedTree>| x.as_ref().map_or(BigInt::from(0), tree_value);
            let product = BigInt::from(c.coefficient.clone()) * value(&c.left) * value(&c.right);
            check(product == whole, || format!("{m}, edge {e}: {whole} vs {product}"))?;
            if single {
                singles += 1;
            } else {
                multis += 1;
            }
        }
    }
    Ok(format!("{C7_TREES} trees, {singles} single and {multis} multi cuts"))
}

fn c8() -> Outcome {
    let mut r = rng(8);
    let mut done = 0;
    let mut terms = 0;
    while done < C8_TRIPLES {
        let m = random_proper_monomial(r.gen_range(5..=8), &mut r).map_err(|e| e.to_string())?;
        let t = LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?;
        let Some(e) = (0..t.edge_count())
            .filter(|&e| t.edges()[e].multiplicity >= 2)
            .choose(&mut r)
        else {
            continue;
        };
        let q = *proper_quadruples(&t, e)
            .map_err(|e| e.to_string())?
            .choose(&mut r)
            .expect("nonempty");
        let cut = t.edge_cut(e).map_err(|e| e.to_string())?;
        let algebra: BTreeSet<Monomial> = linear_reduction_step(&m, &cut, &q)
            .map_err(|e| e.to_string())?
            .support()
            .into_iter()
            .collect();
        let trees: BTreeSet<Monomial> = tree_reduction(&t, e, &q)
            .map_err(|e| e.to_string())?
            .into_keys()
            .collect();
        check(algebra == trees, || {
            format!("{m}, cut {cut}, quadruple {q}: supports differ")
        })?;
        terms += trees.len();
        done += 1;
    }
    Ok(format!("{C8_TRIPLES} triples, {terms} terms in total"))
}

fn c9() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut skipped) = (0, 0);
    for r in 1..=5usize {
        let mut m = vec![1u64; r];
        loop {
            let inst = IdentityInstance::new(m.clone()).map_err(|e| e.to_string())?;
            for v in 1..=3u8 {
                if r < v as usize {
                    skipped += 1;
                    continue;
                }
                let c = check_identity(v, &inst).map_err(|e| e.to_string())?;
                check(c.holds(), || format!("variant {v}, m = {m:?}: {} vs {}", c.lhs, c.rhs))?;
                checked += 1;
            }
            let Some(i) = m.iter().position(|&x| x < 4) else { break };
            m[i] += 1;
            m[..i].fill(1);
        }
    }
    // every composition of s <= 9
    let mut fibers = 0;
    for s in 1..=C9_FIBER_MAX_S {
        for mask in 0u32..1 << (s - 1) {
            let mut m = vec![1u64];
            for b in 0..s - 1 {
                if mask >> b & 1 == 1 {
                    m.push(1);
                } else {
                    *m.last_mut().expect("nonempty") += 1;
                }
            }
            let inst = IdentityInstance::new(m.clone()).map_err(|e| e.to_string())?;
            let counts = fiber_counts(&inst).map_err(|e| e.to_string())?;
            let f = count_fiber(&inst).map_err(|e| e.to_string())?;
            check(BigUint::from(f) == fiber_formula(&inst), || format!("f_k({m:?}) = {f}"))?;
            for b1 in (1..=inst.full()).filter(|b| b & 1 == 1) {
                let got = BigUint::from(counts.get(&b1).copied().unwrap_or(0));
                check(got == fiber_law(&inst, b1), || {
                    format!("fiber of {b1:#b} for {m:?}: {got}")
                })?;
            }
            fibers += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, C9_LIMIT)?;
    Ok(format!(
        "{checked} identity checks ({skipped} skipped by r), {fibers} fiber instances in {elapsed:?}"
    ))
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut nonzero = 0;
    for i in 0..C10_FORESTS {
        let f = if i % 2 == 0 {
            random_forest(r.gen_range(1..20), 6, &mut r)
        } else {
            let m = random_proper_monomial(r.gen_range(5..20), &mut r).map_err(|e| e.to_string())?;
            RedundancyForest::redundancy_forest(&LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?)
        };
        let base = f.value();
        for _ in 0..C10_ORDERS {
            let v = f.value_by(|ready| *ready.iter().choose(&mut r).expect("nonempty"));
            check(v == base, || format!("forest {i}: {v} vs {base}"))?;
        }
        if base != BigUint::from(0u32) {
            nonzero += 1;
        }
    }
    Ok(format!(
        "{C10_FORESTS} forests x {C10_ORDERS} orders, {nonzero} with nonzero value"
    ))
}

/// Seconds per call, the best of five batches of at least 20 ms each.
fn per_call(mut f: impl FnMut()) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..5 {
        let start = Instant::now();
        let mut calls = 0u32;
        while start.elapsed() < Duration::from_millis(20) {
            f();
            calls += 1;
        }
        best = best.min(start.elapsed().as_secs_f64() / calls as f64);
    }
    best
}

fn c11() -> Outcome {
    let text = caterpillar_monomial(1000).map_err(|e| e.to_string())?.render();
    let start = Instant::now();
    let v = integral_value(&mono(&text));
    let elapsed = start.elapsed();
    check(v.value == BigInt::from(1), || format!("caterpillar value {}", v.value))?;
    within(elapsed, C11_LIMIT)?;

    let (mut forest, mut both) = (Vec::new(), Vec::new());
    for n in C11_SIZES {
        let m = caterpillar_monomial(n).map_err(|e| e.to_string())?;
        let t = LoadedTree::from_monomial(&m).map_err(|e| e.to_string())?;
        forest.push(per_call(|| {
            std::hint::black_box(RedundancyForest::redundancy_forest(&t).value());
        }));
        both.push(per_call(|| {
            let t = LoadedTree::from_monomial(&m).expect("tree");
            std::hint::black_box(RedundancyForest::redundancy_forest(&t).value());
        }));
    }
    let ratios = |times: &[f64]| -> Vec<f64> { times.windows(2).map(|w| w[1] / w[0]).collect() };
    let show = |r: &[f64]| -> Vec<String> { r.iter().map(|x| format!("{x:.2}")).collect() };
    let (rf, rb) = (ratios(&forest), ratios(&both));
    check(rf.iter().all(|&x| x <= C11_MAX_RATIO), || {
        format!("forest ratios per doubling {:?}", show(&rf))
    })?;
    Ok(format!(
        "n=1000 in {elapsed:?}; forest ratios per doubling {:?} (tree+forest {:?})",
        show(&rf),
        show(&rb)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("quadratic-relation fixture", c1),
        ("clever invariance", c2),
        ("worked reductions", c3),
        ("redundancy-forest fixture", c4),
        ("sun-like closed form", c5),
        ("oracle equivalence", c6),
        ("edge-cutting laws", c7),
        ("tree/algebra reduction equivalence", c8),
        ("identity suite", c9),
        ("order independence", c10),
        ("performance sanity", c11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
