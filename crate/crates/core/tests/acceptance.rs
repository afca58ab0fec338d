//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Numeric tolerances are exact (integer
//! and rational equality); time limits are stated on each line.

mod common;

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use condint::bounds::{analyze_nonintersecting, bollobas_check, bound_tables, shadow_lemma_check, ChoiceFunction};
use condint::cluster::{is_conditionally_intersecting, least_disjoint_pair};
use condint::corpus;
use condint::family::{full_star, kset_plus_star, SetFamily};
use condint::search::{classify_family, max_family, max_nonintersecting, Construction, Enumerate, SearchConfig};
use condint::structure::{bad_sets, check_block_lemma, decompose, hypothesis_union_bound, verify_decomposition, Decomposition};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn choose(n: usize, r: usize) -> usize {
    common::choose(n as u64, r as u64) as usize
}

/// Exact value, oracle agreement on the full set of maxima, and a time limit.
fn exact_against_oracle(n: usize, k: usize, d: usize, s: usize, limit: Duration, all_full_stars: bool) -> Outcome {
    let expected = choose(n - 1, k - 1);
    let start = Instant::now();
    let r = max_family(n, k, d, s, &SearchConfig::new(Enumerate::AllMaximum)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let oracle = common::naive_max(n, k, d, s);
    ensure(r.certified, || "search not certified".into())?;
    ensure(r.h == expected, || format!("h = {}, expected {expected}", r.h))?;
    ensure(oracle.h == r.h, || format!("oracle h = {}, search h = {}", oracle.h, r.h))?;
    ensure(oracle.maxima == r.witnesses, || {
        format!("maxima differ: oracle {} families, search {}", oracle.maxima.len(), r.witnesses.len())
    })?;
    let labels: Vec<Construction> = r.witnesses.iter().map(classify_family).collect();
    if all_full_stars {
        ensure(labels.iter().all(|l| *l == Construction::FullStar), || "a maximum family is not a full star".into())?;
    }
    ensure(elapsed < limit, || format!("search took {elapsed:?}, limit {limit:?}"))?;
    let stars = labels.iter().filter(|l| **l == Construction::FullStar).count();
    Ok(format!(
        "h({n},{k},{d},{s}) = {} = C({},{}); {} maxima ({} full stars) identical to the 2^{} oracle; search {:.3}s < {}s",
        r.h,
        n - 1,
        k - 1,
        r.witnesses.len(),
        stars,
        oracle.masks_examined.trailing_zeros(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn criterion_1() -> Outcome {
    exact_against_oracle(5, 3, 3, 6, Duration::from_secs(10), true)
}

fn criterion_2() -> Outcome {
    exact_against_oracle(6, 3, 3, 6, Duration::from_secs(120), true)
}

fn criterion_3() -> Outcome {
    exact_against_oracle(6, 4, 4, 8, Duration::from_secs(30), false)
}

fn criterion_4() -> Outcome {
    let line = exact_against_oracle(6, 3, 2, 6, Duration::from_secs(120), false)?;
    let r = max_family(6, 3, 2, 6, &SearchConfig::new(Enumerate::AllMaximum)).map_err(|e| e.to_string())?;
    let non_star = r.witnesses.iter().filter(|w| condint::family::is_star(w).is_none()).count();
    ensure(non_star > 0, || "no non-star maximum family reported".into())?;
    Ok(format!("{line}; {non_star} non-star maxima"))
}

fn criterion_5() -> Outcome {
    let limit = Duration::from_secs(30 * 60);
    let start = Instant::now();
    let r = max_family(7, 3, 3, 6, &SearchConfig::new(Enumerate::OneWitness)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.certified, || format!("not certified: {} <= h <= {}", r.h, r.upper_bound))?;
    ensure(r.h == 15, || format!("h = {}, expected 15", r.h))?;
    ensure(elapsed < limit, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "h(7,3,3,6) = 15 = C(6,2) certified by branch-and-bound, single worker, {} nodes, {:.3}s < 1800s",
        r.nodes_explored,
        elapsed.as_secs_f64()
    ))
}

fn criterion_6() -> Outcome {
    for (n, k) in [(5, 3), (6, 3), (7, 4)] {
        let star = full_star(n, k, 1).unwrap();
        for choice in [ChoiceFunction::remove_vertex(&star, 1), ChoiceFunction::least_unique(&star).unwrap()] {
            let out = bollobas_check(&star, &choice).map_err(|e| e.to_string())?;
            ensure(out.valid && out.sum == BigRational::one(), || format!("full star ({n},{k}): sum {}", out.sum))?;
        }
    }
    let mut rng = corpus::rng(0);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 200 {
        attempts += 1;
        ensure(attempts < 5000, || "corpus did not yield 200 families".into())?;
        let n = 5 + attempts % 6;
        let k = 2 + attempts % 3;
        if k > n {
            continue;
        }
        let f = if attempts % 2 == 0 {
            corpus::unique_subset_family(&mut rng, n, k, 40)
        } else {
            corpus::random_ci(&mut rng, n, k, 3.min(k).max(2), 2 * k, 40)
        };
        let Some(choice) = ChoiceFunction::least_unique(&f) else {
            continue;
        };
        let out = bollobas_check(&f, &choice).map_err(|e| format!("family {:?}: {e}", f.to_lists()))?;
        ensure(out.valid && out.sum <= BigRational::one(), || format!("sum {} on {:?}", out.sum, f.to_lists()))?;
        checked += 1;
    }
    Ok(format!(
        "sum = 1 exactly on full stars (5,3), (6,3), (7,4); sum <= 1 on {checked} seeded corpus families (seed 0); 0 violations"
    ))
}

fn criterion_7() -> Outcome {
    let mut stars = 0;
    for (n, k) in [(5, 3), (6, 3), (7, 3), (7, 4), (8, 2), (9, 5)] {
        let r = shadow_lemma_check(&full_star(n, k, 1).unwrap());
        ensure(r.hypothesis_met && r.lhs == r.rhs, || format!("full star ({n},{k}): {} vs {}", r.lhs, r.rhs))?;
        stars += 1;
    }
    let mut rng = corpus::rng(0);
    let mut checked = 0;
    for i in 0..200 {
        let n = 5 + i % 7;
        let k = 2 + i % 3;
        let f = corpus::unique_subset_family(&mut rng, n, k, 50);
        let r = shadow_lemma_check(&f);
        ensure(r.hypothesis_met, || format!("corpus family {:?} lacks unique subsets", f.to_lists()))?;
        ensure(r.holds == Some(true), || format!("violated on {:?}: {} > {}", f.to_lists(), r.lhs, r.rhs))?;
        checked += 1;
    }
    Ok(format!(
        "n|H| = (n-k+1)|shadow| exactly on {stars} full stars; inequality on {checked} unique-subset corpus families (seed 0); 0 violations"
    ))
}

fn round_trip(f: &SetFamily, d: usize) -> Result<(), String> {
    let s = hypothesis_union_bound(f.k(), d);
    let dec = decompose(f, d).map_err(|e| format!("{:?}: {e}", f.to_lists()))?;
    let back = Decomposition::from_json(&dec.to_json()).map_err(|e| e.to_string())?;
    ensure(back == dec, || "certificate changed through JSON".into())?;
    let report = verify_decomposition(f, &back, d, s);
    if let Some(c) = report.first_failure() {
        return Err(format!("{:?}: clause {} failed: {:?}", f.to_lists(), c.clause.label(), c.witness));
    }
    for w in bad_sets(f) {
        let lemma = check_block_lemma(f, &w, d);
        ensure(lemma.passed, || format!("{:?}: block lemma fails for {}: {:?}", f.to_lists(), w.bad, lemma.violations))?;
    }
    if d == f.k() {
        let k = f.k();
        ensure(dec.s.is_empty(), || format!("{:?}: S nonempty", f.to_lists()))?;
        ensure(dec.blocks.iter().all(|b| b.len() == k + 1), || format!("{:?}: block size", f.to_lists()))?;
        ensure(dec.b.len() == dec.z.len(), || format!("{:?}: |B| = {} != |Z| = {}", f.to_lists(), dec.b.len(), dec.z.len()))?;
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut exhaustive = 0;
    for n in 3..=6 {
        for f in common::all_ci_families(n, 3, 3, 6) {
            round_trip(&f, 3)?;
            exhaustive += 1;
        }
    }
    let mut rng = corpus::rng(0);
    let mut composites = 0;
    for i in 0..50 {
        let (k, d) = [(3, 3), (4, 3), (4, 4)][i % 3];
        let f = corpus::composite(&mut rng, k, d);
        round_trip(&f, d)?;
        composites += 1;
    }
    Ok(format!(
        "decompose -> JSON -> verify passes every clause on all {exhaustive} (3,6)-CI families with n <= 6, k = 3 and {composites} seeded composites; block lemma and d = k checks hold"
    ))
}

fn criterion_9() -> Outcome {
    // (i)
    let f = kset_plus_star(12, 3).unwrap();
    ensure(f.len() == choose(8, 2) + 1, || format!("|F| = {}", f.len()))?;
    ensure(is_conditionally_intersecting(&f, 3, 6).unwrap(), || "not (3,6)-CI".into())?;
    ensure(least_disjoint_pair(&f).is_some(), || "intersecting".into())?;
    let report = analyze_nonintersecting(&f).map_err(|e| e.to_string())?;
    ensure(report.inequality_holds(), || "cumulative level inequality fails".into())?;
    ensure(report.total() == 29, || format!("level total {}", report.total()))?;
    let last = report.inequality.last().unwrap();
    ensure(last.lhs == last.rhs, || "no equality at the top level".into())?;

    // (ii)
    let r = max_nonintersecting(8, 3, &SearchConfig::new(Enumerate::OneWitness)).map_err(|e| e.to_string())?;
    let (oracle_h, oracle_count) = common::restricted_nonintersecting_max(8, 3);
    ensure(r.certified, || "nonintersecting search not certified".into())?;
    ensure(r.h > choose(4, 2), || format!("value {} below the construction", r.h))?;
    ensure(r.h == oracle_h, || format!("search {} vs restricted oracle {oracle_h}", r.h))?;

    // (iii)
    let mut rng = corpus::rng(0);
    let mut checked = 0;
    for i in 0..150 {
        let k = 3 + i % 2;
        let n = 2 * k + i % 5;
        let g = corpus::nonintersecting_family(&mut rng, n, k, 60);
        let rep = analyze_nonintersecting(&g).map_err(|e| format!("{:?}: {e}", g.to_lists()))?;
        ensure(rep.fk_is_ab, || format!("F_k != {{A, B}} on {:?}", g.to_lists()))?;
        checked += 1;
    }
    Ok(format!(
        "(i) kset_plus_star(12,3): 29 = C(8,2)+1 members, (3,6)-CI, nonintersecting, level inequality holds for l = 1..3 with total 29; \
         (ii) max_nonintersecting(8,3) = {} >= 7 certified, restricted oracle agrees ({oracle_count} families containing the fixed pair); \
         (iii) F_k = {{A,B}} on {checked} corpus families",
        r.h
    ))
}

fn criterion_10() -> Outcome {
    let mut grid = Vec::new();
    for n in 6..=12 {
        grid.push((n, 3, 3));
    }
    grid.push((8, 4, 3));
    grid.push((8, 4, 4));
    let mut points = 0;
    for (n, k, d) in grid {
        let s = 2 * k + d - 3;
        let r = max_family(n, k, d, s, &SearchConfig::new(Enumerate::ValueOnly)).map_err(|e| e.to_string())?;
        ensure(r.certified, || format!("({n},{k},{d},{s}) not certified"))?;
        let star = choose(n - 1, k - 1);
        ensure(r.h <= star, || format!("h({n},{k},{d},{s}) = {} > C({},{}) = {star}", r.h, n - 1, k - 1))?;
        points += 1;
    }
    let mut tables = 0;
    for k in 1..=5 {
        for n in 2 * k..=20 {
            let t = bound_tables(n, k, 3).map_err(|e| e.to_string())?;
            ensure(t.vandermonde_ok, || format!("Vandermonde self-test fails at n = {n}, k = {k}"))?;
            tables += 1;
        }
    }
    Ok(format!(
        "h(n,k,d,2k+d-3) <= C(n-1,k-1) on {points} grid points (k = 3, 6 <= n <= 12; k = 4, n = 8, d = 3,4); Vandermonde self-test passes on {tables} tables (2k <= n <= 20, k <= 5)"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact-5-3-3-6", criterion_1),
        ("exact-6-3-3-6", criterion_2),
        ("exact-6-4-4-8", criterion_3),
        ("exact-6-3-2-6", criterion_4),
        ("stretch-7-3-3-6", criterion_5),
        ("unique-subset-sum", criterion_6),
        ("shadow-inequality", criterion_7),
        ("decomposition-round-trip", criterion_8),
        ("nonintersecting", criterion_9),
        ("upper-bound-grid", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:02} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:02} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
