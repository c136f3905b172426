//! End-to-end acceptance checks. Run with `cargo test --test acceptance`;
//! prints one line per criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zsl_core::analytic::{
    const_c1_exact, const_cbeta_exact, const_levshkredov_exact, numeric_lemma_suite,
    parse_rational,
};
use zsl_core::cyclic::{kneser_slack, translate_intersection};
use zsl_core::harness::{
    canonical_orbits, feasibility_sweep, generate_example, scan, verify_certificate_file,
    ExampleSets, ExampleSpec, ScanConfig, ScanMode, FEASIBILITY_THEOREMS,
};
use zsl_core::isoperimetry::{check_atom_theorems, petridis_minimizer_int};
use zsl_core::progressions::{
    conjecture_conclusion, min_cover, prop7_statements, verify_3k4_integers, Prop7Outcome,
};
use zsl_core::trios::{saturated_in_sumset, vosper_dual};
use zsl_core::{CyclicSet, IntSet};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_sets(n: usize) -> impl Iterator<Item = CyclicSet> {
    (0u64..(1u64 << n)).map(move |m| CyclicSet::from_mask(n, m).unwrap())
}

fn nonempty(n: usize) -> Vec<CyclicSet> {
    all_sets(n).filter(|s| !s.is_empty()).collect()
}

/// One representative per translation class.
fn up_to_translation(n: usize) -> Vec<CyclicSet> {
    let reps: BTreeSet<u64> = all_sets(n)
        .filter(|s| !s.is_empty())
        .map(|s| s.min_translate().0.mask())
        .collect();
    reps.into_iter()
        .map(|m| CyclicSet::from_mask(n, m).unwrap())
        .collect()
}

fn prop13() -> Outcome {
    for r in 1..=4i64 {
        let n = (4 * r + 11) as usize;
        let mut elems: Vec<i64> = (0..=r + 1).collect();
        elems.extend([r + 3, 2 * r + 6]);
        let a = CyclicSet::from_elems(n, &elems).map_err(|e| e.to_string())?;
        let (_, len) = min_cover(&a).map_err(|e| e.to_string())?;
        ensure(len as i64 == 2 * r + 7, || {
            format!("r={r}: min cover {len}, want {}", 2 * r + 7)
        })?;
    }
    Ok("min cover = 2r+7 at n = 15, 19, 23, 27".into())
}

fn example6() -> Outcome {
    let a = CyclicSet::from_elems(19, &[0, 1, 2, 3, 5, 10]).unwrap();
    let s = a.sumset(&a).unwrap();
    let r = s.len() as i64 - 12;
    ensure(s.len() == 14 && 3 * a.len() - 4 == 14 && 19 - r - 3 == 14, || {
        format!("|2A| = {}", s.len())
    })?;
    let concl = conjecture_conclusion(&a, &a).map_err(|e| e.to_string())?;
    ensure(concl.is_none(), || "a conclusion was found".into())?;
    Ok("|2A| = 14, no common-difference covers".into())
}

fn example1() -> Outcome {
    let mut count = 0;
    for r in 0..=2i64 {
        for m in (2 * r + 4)..=12 {
            for n in (2 * r + 3)..=m {
                let inst =
                    generate_example(ExampleSpec::Ex1 { r, m, n }).map_err(|e| e.to_string())?;
                let ExampleSets::Integers { a, b } = &inst.sets else {
                    return Err("expected integer sets".into());
                };
                let v = verify_3k4_integers(a, b).map_err(|e| e.to_string())?;
                ensure(v.applicable && v.r == r && v.bounds_ok, || {
                    format!("r={r} m={m} n={n}: {v:?}")
                })?;
                ensure(v.all_tight(a.len(), b.len()), || {
                    format!("r={r} m={m} n={n}: not tight {v:?}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} instances, all three bounds tight"))
}

fn laws() -> Outcome {
    let t = Instant::now();
    // Cauchy-Davenport
    for p in [2usize, 3, 5, 7, 11] {
        let sets = nonempty(p);
        let bad = sets
            .par_iter()
            .filter(|a| {
                sets.iter().any(|b| {
                    let s = a.sumset(b).unwrap().len();
                    s < p.min(a.len() + b.len() - 1)
                })
            })
            .count();
        ensure(bad == 0, || format!("Cauchy-Davenport fails at p={p}"))?;
    }
    // Kneser
    for n in 1..=12usize {
        let reps = up_to_translation(n);
        let sets = nonempty(n);
        let bad = reps
            .par_iter()
            .filter(|a| sets.iter().any(|b| kneser_slack(a, b).unwrap() < 0))
            .count();
        ensure(bad == 0, || format!("Kneser slack negative at n={n}"))?;
    }
    // (A - A^c)^c = H(A)
    for n in 2..=12usize {
        for a in all_sets(n).filter(|a| !a.is_empty() && !a.is_full()) {
            let lhs = a.difference_set(&a.complement()).unwrap().complement();
            ensure(lhs == a.stabilizer(), || format!("complement law fails for {a:?}"))?;
        }
    }
    // |∩ (x+Z)| <= |Z|-|X|+1 when the intersection is nonempty
    for p in [2usize, 3, 5, 7] {
        for x in nonempty(p) {
            for z in all_sets(p).filter(|z| !z.is_full()) {
                let y = translate_intersection(&x, &z).unwrap();
                if !y.is_empty() {
                    ensure(y.len() + x.len() <= z.len() + 1, || {
                        format!("intersection bound fails: X={x:?} Z={z:?}")
                    })?;
                }
            }
        }
    }
    // duality containment is asserted inside vosper_dual
    for p in [2usize, 3, 5, 7, 11] {
        let sets = nonempty(p);
        let bad = sets
            .par_iter()
            .filter(|a| {
                sets.iter().any(|b| {
                    let (_, eq) = vosper_dual(a, b).unwrap();
                    eq != saturated_in_sumset(a, b)
                })
            })
            .count();
        ensure(bad == 0, || format!("duality equality mismatch at p={p}"))?;
    }
    Ok(format!("five laws, zero violations, {:.1}s", t.elapsed().as_secs_f64()))
}

fn theorem1_suite() -> Outcome {
    let t = Instant::now();
    let sets: Vec<IntSet> = (1u64..1 << 10).map(IntSet::from_mask).collect();
    let (checked, bad): (usize, Vec<String>) = sets
        .par_iter()
        .map(|a| {
            let mut n = 0;
            let mut bad = Vec::new();
            for b in &sets {
                let v = verify_3k4_integers(a, b).unwrap();
                if v.applicable {
                    n += 1;
                    if !v.bounds_ok {
                        bad.push(format!("{a:?} {b:?}"));
                    }
                }
            }
            (n, bad)
        })
        .reduce(
            || (0, Vec::new()),
            |mut x, y| {
                x.0 += y.0;
                x.1.extend(y.1);
                x
            },
        );
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!(
        "{} pairs, {checked} applicable, no bound violated, {:.1}s",
        sets.len() * sets.len(),
        t.elapsed().as_secs_f64()
    ))
}

fn atom_suite() -> Outcome {
    let t = Instant::now();
    let mut cases = Vec::new();
    for n in 2..=13usize {
        for b in up_to_translation(n) {
            for k in 1..=3usize {
                cases.push((b.clone(), k));
            }
        }
    }
    let results: Vec<(bool, Option<String>)> = cases
        .par_iter()
        .map(|(b, k)| match check_atom_theorems(b, *k) {
            Ok(None) => (false, None),
            Ok(Some(rep)) => {
                let failed: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| c.applicable && !c.holds)
                    .map(|c| c.name.as_str())
                    .collect();
                let msg = (!failed.is_empty()).then(|| format!("{b:?} k={k}: {failed:?}"));
                (true, msg)
            }
            Err(e) => (false, Some(format!("{b:?} k={k}: {e}"))),
        })
        .collect();
    let applicable = results.iter().filter(|r| r.0).count();
    let bad: Vec<&String> = results.iter().filter_map(|r| r.1.as_ref()).collect();
    ensure(bad.is_empty(), || format!("{} failures, first {}", bad.len(), bad[0]))?;
    Ok(format!(
        "{applicable} separable (B,k) of {}, zero violations, {:.1}s",
        cases.len(),
        t.elapsed().as_secs_f64()
    ))
}

fn random_int_set(rng: &mut ChaCha8Rng, max_len: usize, span: i64) -> IntSet {
    let len = rng.gen_range(1..=max_len);
    IntSet::new((0..len).map(|_| rng.gen_range(-span..=span)))
}

fn petridis_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for inst in 0..500 {
        let a = random_int_set(&mut rng, 12, 30);
        let b = random_int_set(&mut rng, 6, 15);
        let res = petridis_minimizer_int(&a, &b).map_err(|e| e.to_string())?;
        let ap = IntSet::new(res.a_prime.iter().copied());
        let (num, den) = (res.num as u128, res.den as u128);
        for _ in 0..200 {
            let c = random_int_set(&mut rng, 8, 40);
            let ca = c.sumset(&ap);
            let lhs = ca.sumset(&b).len() as u128 * den;
            ensure(lhs <= num * ca.len() as u128, || {
                format!("instance {inst}: first bound fails for C={c:?}")
            })?;
        }
        let mut nb = b.clone();
        for k in 1..=4u32 {
            if k > 1 {
                nb = nb.sumset(&b);
            }
            let lhs = ap.sumset(&nb).len() as u128 * den.pow(k);
            ensure(lhs <= num.pow(k) * den, || {
                format!("instance {inst}: {k}-fold bound fails")
            })?;
        }
    }
    Ok("500 instances, 200 C each, 4-fold sums, zero violations".into())
}

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn constants() -> Outcome {
    let ge = |name: &str, v: BigRational, bound: BigRational| {
        ensure(v >= bound, || format!("{name} below bound"))
    };
    let c1 = |a: &str| const_c1_exact(&q(a)).map_err(|e| e.to_string());
    let cb = |a: &str, b: &str| const_cbeta_exact(&q(a), &q(b)).map_err(|e| e.to_string());
    ge("c1(0.021)", c1("0.021")?, q("1/3"))?;
    ge("cb(0.021,0.8)", cb("0.021", "0.8")?, q("1/3"))?;
    ge("c1(0.105)", c1("0.105")?, q("1/5"))?;
    ge("cb(0.105,0.8)", cb("0.105", "0.8")?, q("1/5"))?;
    let m = c1("1/9")?.min(cb("1/9", "0.8484")?);
    ge("min(c1,cb)(1/9,0.8484)", m, q("1963/9253"))?;
    for (k, bound) in [
        ("2.572", "0.0111"),
        ("2.552", "0.0289"),
        ("2.515", "0.0588"),
        ("2.578", "0.00561"),
        ("2.564", "0.01845"),
        ("2.541", "0.0382"),
    ] {
        let v = const_levshkredov_exact(&q(k), &q("11")).map_err(|e| e.to_string())?;
        ensure(v > q(bound), || format!("c({k},11) <= {bound}"))?;
    }
    Ok("11 exact rational comparisons".into())
}

fn lemma_suite() -> Outcome {
    let t = Instant::now();
    let rep = numeric_lemma_suite();
    let failed: Vec<&str> = rep
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    ensure(failed.is_empty(), || format!("failed: {failed:?}"))?;
    let margin = 10.0 / 3.0 + 0.16797 * 16.0 - (2.0f64 * 16.0 + 4.25).sqrt();
    ensure((0.0..1e-4).contains(&margin), || format!("margin at r=16 is {margin}"))?;
    Ok(format!(
        "{} checks passed, margin {margin:.2e} at r=16, {:.1}s",
        rep.checks.len(),
        t.elapsed().as_secs_f64()
    ))
}

fn prop7() -> Outcome {
    let t = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .map_err(|e| e.to_string())?;
    let mut applicable = 0;
    for p in [3usize, 5, 7, 11, 13] {
        let orbits = canonical_orbits(p).map_err(|e| e.to_string())?;
        let res: Vec<Result<bool, String>> = pool.install(|| {
            orbits
                .par_iter()
                .filter(|(a, b, _)| !a.sumset(b).unwrap().is_full())
                .map(|(a, b, _)| match prop7_statements(a, b) {
                    Ok(Prop7Outcome::NotApplicable { .. }) => Ok(false),
                    Ok(Prop7Outcome::Applicable(rep)) if rep.equivalent() => Ok(true),
                    Ok(Prop7Outcome::Applicable(rep)) => {
                        Err(format!("p={p} A={a:?} B={b:?}: {rep:?}"))
                    }
                    Err(e) => Err(e.to_string()),
                })
                .collect()
        });
        for r in res {
            applicable += usize::from(r?);
        }
    }
    Ok(format!(
        "{applicable} applicable orbits, statements agree, {:.1}s",
        t.elapsed().as_secs_f64()
    ))
}

fn conjecture_scan() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |jobs: usize, name: &str| {
        let mut cfg = ScanConfig::new(ScanMode::Conjecture, vec![2, 3, 5, 7, 11, 13]);
        cfg.jobs = jobs;
        cfg.emit_all = true;
        cfg.output = Some(dir.path().join(name));
        scan(&cfg).map_err(|e| e.to_string())
    };
    let one = run(1, "jobs1.jsonl")?;
    let four = run(4, "jobs4.jsonl")?;
    ensure(one.content_hash == four.content_hash, || "hash differs across job counts".into())?;
    ensure(one.per_prime == four.per_prime && one.by_r == four.by_r, || {
        "counters differ across job counts".into()
    })?;
    let proven = one.total(|c| c.proven_regime_violations);
    ensure(proven == 0, || format!("{proven} violations in the proven regime"))?;
    let rep = verify_certificate_file(&dir.path().join("jobs1.jsonl")).map_err(|e| e.to_string())?;
    ensure(rep.ok() && rep.records as u64 == one.records_written, || {
        format!("{} records failed re-verification", rep.failures.len())
    })?;
    Ok(format!(
        "{} orbits, {} violations outside the proven regime, {} records re-verified, hash {}",
        one.total(|c| c.orbits_scanned),
        one.total(|c| c.violations),
        rep.passed,
        &one.content_hash[..12]
    ))
}

fn feasibility() -> Outcome {
    let primes = [2usize, 3, 5, 7, 11, 13, 17, 19];
    let rep = feasibility_sweep(&primes);
    for th in FEASIBILITY_THEOREMS {
        let n = rep.total_feasible(th);
        ensure(n == 0, || format!("{th}: {n} feasible instances at p <= 19"))?;
    }
    Ok(format!("{} theorems, no feasible instance at p <= 19", FEASIBILITY_THEOREMS.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("extremal min cover", prop13),
        ("counterexample at p=19", example6),
        ("integer tightness grid", example1),
        ("exhaustive laws", laws),
        ("integer 3k-4 bounds", theorem1_suite),
        ("atom theorems", atom_suite),
        ("Petridis bounds", petridis_suite),
        ("pinned constants", constants),
        ("numeric lemmas", lemma_suite),
        ("progression equivalence", prop7),
        ("conjecture scan", conjecture_scan),
        ("feasibility sweep", feasibility),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
