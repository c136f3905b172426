use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{is_prime, units};
use crate::cyclic::{canonical_pair, CyclicSet};
use crate::error::{Error, Result};

use super::modes::{record_for, ScanMode, ScanRecord, Verdict};

/// Largest prime scanned exhaustively unless the cap is raised.
pub const DEFAULT_CAP: usize = 19;
/// Violation records kept in memory; the JSONL file has all of them.
pub const VIOLATIONS_KEPT: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub mode: ScanMode,
    pub primes: Vec<usize>,
    pub jobs: usize,
    pub output: Option<PathBuf>,
    pub emit_all: bool,
    /// Exhaustive cap on the prime.
    pub cap: usize,
    /// Random pairs per prime above the cap; `None` makes such primes an error.
    pub samples: Option<usize>,
    pub seed: u64,
}

impl ScanConfig {
    pub fn new(mode: ScanMode, primes: Vec<usize>) -> Self {
        ScanConfig {
            mode,
            primes,
            jobs: 1,
            output: None,
            emit_all: false,
            cap: DEFAULT_CAP,
            samples: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCounters {
    pub p: usize,
    pub orbits_scanned: u64,
    /// Sum of orbit sizes; zero for sampled primes.
    pub raw_pairs: u64,
    pub applicable: u64,
    pub conclusion_holds: u64,
    pub violations: u64,
    /// Violations inside the range where the statement is a known theorem.
    pub proven_regime_violations: u64,
    pub sampled: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RCounters {
    pub p: usize,
    pub r: i64,
    pub orbits: u64,
    pub applicable: u64,
    pub holds: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityRow {
    pub theorem: String,
    pub p: usize,
    pub triples_checked: u64,
    pub feasible: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub rows: Vec<FeasibilityRow>,
    /// Smallest prime admitting some `(|A|, |B|, r)`, per theorem.
    pub min_feasible_prime: BTreeMap<String, Option<usize>>,
}

impl FeasibilityReport {
    pub fn total_feasible(&self, theorem: &str) -> u64 {
        self.rows
            .iter()
            .filter(|r| r.theorem == theorem)
            .map(|r| r.feasible)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub per_prime: Vec<PrimeCounters>,
    pub by_r: Vec<RCounters>,
    pub violations: Vec<ScanRecord>,
    pub records_written: u64,
    pub wall_ms: u128,
    /// SHA-256 over every record line in `(p, key)` order, emitted or not.
    pub content_hash: String,
    pub feasibility: Option<FeasibilityReport>,
}

impl ScanReport {
    pub fn total(&self, f: impl Fn(&PrimeCounters) -> u64) -> u64 {
        self.per_prime.iter().map(f).sum()
    }
}

/// Known-theorem range for the conjectured statement: `r <= 0`, or `r = 1`
/// with `|A|, |C| >= 5`, `|B| >= 4` and `p >= 53`.
pub fn proven_regime(p: usize, r: i64, a: usize, b: usize, c: usize) -> bool {
    r <= 0 || (r == 1 && a >= 5 && c >= 5 && b >= 4 && p >= 53)
}

fn full(p: usize) -> u64 {
    if p == 64 {
        u64::MAX
    } else {
        (1u64 << p) - 1
    }
}

fn rot(x: u64, t: usize, p: usize) -> u64 {
    let t = t % p;
    if t == 0 {
        x
    } else {
        ((x << t) | (x >> (p - t))) & full(p)
    }
}

fn min_translate(x: u64, p: usize) -> u64 {
    (0..p).map(|t| rot(x, t, p)).min().unwrap()
}

fn scale(x: u64, u: usize, p: usize) -> u64 {
    let mut out = 0;
    let mut m = x;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << (i * u % p);
        m &= m - 1;
    }
    out
}

fn sum(x: u64, y: u64, p: usize) -> u64 {
    let mut out = 0;
    let mut m = y;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= rot(x, i, p);
        m &= m - 1;
    }
    out
}

/// Orbit representatives for the first coordinate, ascending.
fn canonical_firsts(p: usize, us: &[usize]) -> Vec<u64> {
    (0..1u64 << (p - 1))
        .into_par_iter()
        .map(|i| (i << 1) | 1)
        .filter(|&a| a != full(p))
        .filter(|&a| us.iter().all(|&u| min_translate(scale(a, u, p), p) >= a))
        .collect()
}

/// Representatives `(A, B, orbit size)` with a fixed first set `A`.
fn pairs_for(a: u64, p: usize, us: &[usize], seconds: &[u64]) -> Vec<(u64, u64, u64)> {
    let stab: Vec<usize> = us
        .iter()
        .copied()
        .filter(|&u| min_translate(scale(a, u, p), p) == a)
        .collect();
    let group = (us.len() * p * p) as u64;
    seconds
        .iter()
        .copied()
        .filter(|&b| sum(a, b, p) != full(p))
        .filter_map(|b| {
            let mut fix = 0u64;
            for &u in &stab {
                let img = min_translate(scale(b, u, p), p);
                if img < b {
                    return None;
                }
                fix += u64::from(img == b);
            }
            Some((a, b, group / fix))
        })
        .collect()
}

/// Every orbit representative with `A+B ≠ G`, plus orbit sizes, in key order.
pub fn canonical_orbits(p: usize) -> Result<Vec<(CyclicSet, CyclicSet, u64)>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p));
    }
    if p > 20 {
        return Err(Error::Capacity(format!("p = {p} is too large to enumerate")));
    }
    let us = units(p);
    let seconds = translation_minimal(p);
    let mut out = Vec::new();
    for a in canonical_firsts(p, &us) {
        for (a, b, size) in pairs_for(a, p, &us, &seconds) {
            out.push((
                CyclicSet::from_mask(p, a)?,
                CyclicSet::from_mask(p, b)?,
                size,
            ));
        }
    }
    Ok(out)
}

fn translation_minimal(p: usize) -> Vec<u64> {
    (0..1u64 << (p - 1))
        .into_par_iter()
        .map(|i| (i << 1) | 1)
        .filter(|&b| min_translate(b, p) == b)
        .collect()
}

struct Sink {
    hasher: Sha256,
    writer: Option<(PathBuf, BufWriter<File>)>,
    written: u64,
}

impl Sink {
    fn push(&mut self, rec: &ScanRecord, emit: bool) -> Result<()> {
        let line = serde_json::to_string(rec).expect("record serializes");
        self.hasher.update(line.as_bytes());
        self.hasher.update(b"\n");
        if emit {
            if let Some((path, w)) = &mut self.writer {
                writeln!(w, "{line}").map_err(|e| Error::io(path.clone(), e))?;
            }
            self.written += 1;
        }
        Ok(())
    }
}

fn sampled_pairs(p: usize, count: usize, seed: u64) -> Result<Vec<(CyclicSet, CyclicSet)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut out = BTreeMap::new();
    let pick = |rng: &mut ChaCha8Rng, k: usize| -> Result<CyclicSet> {
        let mut s = CyclicSet::empty(p)?;
        while s.len() < k {
            s.insert(rng.gen_range(0..p));
        }
        Ok(s)
    };
    let mut tries = 0;
    while out.len() < count && tries < count * 20 {
        tries += 1;
        let ka = rng.gen_range(1..=p.div_ceil(2));
        let kb = rng.gen_range(1..=ka);
        let (a, b) = (pick(&mut rng, ka)?, pick(&mut rng, kb)?);
        if a.sumset(&b)?.is_full() {
            continue;
        }
        let c = canonical_pair(&a, &b)?;
        out.insert(c.key(), (c.a, c.b));
    }
    Ok(out.into_values().collect())
}

/// Runs a scan, streaming records to the configured file in key order.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    let start = Instant::now();
    for &p in &config.primes {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if p > config.cap && config.samples.is_none() {
            return Err(Error::Capacity(format!(
                "p = {p} exceeds the exhaustive cap {}; pass a sample count",
                config.cap
            )));
        }
    }
    let mut primes = config.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;

    if config.mode == ScanMode::Feasibility {
        let feas = pool.install(|| feasibility_sweep(&primes));
        let mut hasher = Sha256::new();
        hasher.update(serde_json::to_string(&feas).expect("serializes").as_bytes());
        return Ok(ScanReport {
            config: config.clone(),
            per_prime: Vec::new(),
            by_r: Vec::new(),
            violations: Vec::new(),
            records_written: 0,
            wall_ms: start.elapsed().as_millis(),
            content_hash: hex::encode(hasher.finalize()),
            feasibility: Some(feas),
        });
    }

    let writer = match &config.output {
        Some(path) => {
            let f = File::create(path).map_err(|e| Error::io(path.clone(), e))?;
            Some((path.clone(), BufWriter::new(f)))
        }
        None => None,
    };
    let mut sink = Sink {
        hasher: Sha256::new(),
        writer,
        written: 0,
    };
    let mut per_prime = Vec::new();
    let mut by_r: BTreeMap<(usize, i64), RCounters> = BTreeMap::new();
    let mut violations = Vec::new();
    let mode = config.mode;

    for &p in &primes {
        let mut pc = PrimeCounters {
            p,
            sampled: p > config.cap,
            ..Default::default()
        };
        let mut account = |rec: &ScanRecord, size: u64, sink: &mut Sink| -> Result<()> {
            let cert = &rec.certificate;
            pc.orbits_scanned += 1;
            pc.raw_pairs += size;
            let rc = by_r.entry((p, cert.r)).or_insert(RCounters {
                p,
                r: cert.r,
                ..Default::default()
            });
            rc.orbits += 1;
            match rec.verdict {
                Verdict::Holds => {
                    pc.applicable += 1;
                    pc.conclusion_holds += 1;
                    rc.applicable += 1;
                    rc.holds += 1;
                }
                Verdict::Violation => {
                    pc.applicable += 1;
                    pc.violations += 1;
                    rc.applicable += 1;
                    rc.violations += 1;
                    if proven_regime(p, cert.r, cert.a.len(), cert.b.len(), cert.c.len()) {
                        pc.proven_regime_violations += 1;
                    }
                    if violations.len() < VIOLATIONS_KEPT {
                        violations.push(rec.clone());
                    }
                }
                Verdict::NotApplicable => {}
            }
            let emit = config.emit_all || rec.verdict == Verdict::Violation;
            sink.push(rec, emit)
        };

        if p > config.cap {
            let pairs = sampled_pairs(p, config.samples.unwrap_or(0), config.seed)?;
            let recs: Vec<Result<ScanRecord>> = pool.install(|| {
                pairs
                    .par_iter()
                    .map(|(a, b)| record_for(mode, a, b))
                    .collect()
            });
            for rec in recs {
                account(&rec?, 0, &mut sink)?;
            }
        } else {
            let us = units(p);
            let (firsts, seconds) =
                pool.install(|| (canonical_firsts(p, &us), translation_minimal(p)));
            let chunk = (config.jobs.max(1) * 4).max(8);
            for block in firsts.chunks(chunk) {
                let results: Vec<Result<Vec<(ScanRecord, u64)>>> = pool.install(|| {
                    block
                        .par_iter()
                        .map(|&a| {
                            pairs_for(a, p, &us, &seconds)
                                .into_iter()
                                .map(|(a, b, size)| {
                                    let (a, b) =
                                        (CyclicSet::from_mask(p, a)?, CyclicSet::from_mask(p, b)?);
                                    Ok((record_for(mode, &a, &b)?, size))
                                })
                                .collect()
                        })
                        .collect()
                });
                for part in results {
                    for (rec, size) in part? {
                        account(&rec, size, &mut sink)?;
                    }
                }
            }
        }
        per_prime.push(pc);
    }
    if let Some((path, w)) = &mut sink.writer {
        w.flush().map_err(|e| Error::io(path.clone(), e))?;
    }
    Ok(ScanReport {
        config: config.clone(),
        per_prime,
        by_r: by_r.into_values().collect(),
        violations,
        records_written: sink.written,
        wall_ms: start.elapsed().as_millis(),
        content_hash: hex::encode(sink.hasher.finalize()),
        feasibility: None,
    })
}

/// Theorems whose hypotheses the feasibility sweep tests.
pub const FEASIBILITY_THEOREMS: [&str; 4] = ["thm2", "thm3", "thm15", "thm19"];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn c1_exact(alpha: &BigRational) -> BigRational {
    let a2 = alpha * alpha;
    let a3 = &a2 * alpha;
    let num = rat(5, 1) - rat(18, 1) * alpha - rat(24, 1) * &a2 - rat(8, 1) * &a3;
    let den = rat(14, 1) - rat(9, 1) * alpha - rat(24, 1) * a2 - rat(8, 1) * a3;
    num / den
}

/// Necessary conditions on `(a, b, r) = (|A|, |B|, r)` for the hypotheses of
/// each density theorem. A triple failing them cannot come from any pair.
pub fn feasible(theorem: &str, p: usize, a: i64, b: i64, r: i64) -> bool {
    let p = p as i64;
    let s = a + b + r;
    let base = a >= b && b >= 1 && r >= -1 && b + r >= 0 && s < p;
    if !base {
        return false;
    }
    match theorem {
        // r <= 0.0527 b - 3, |A+B| <= p - 9(r+3)
        "thm2" => 10_000 * r <= 527 * b - 30_000 && s <= p - 9 * (r + 3),
        // r <= 0.01 b - 3, |A+B| <= p - r - 3
        "thm19" => 100 * r <= b - 300 && s <= p - r - 3,
        // r <= b/9 - 3, |A+B| <= p - 9(r+3), and the prime lower bound
        "thm15" => {
            let rhs = 3926 * p - 9253 * (20 * r + 53);
            9 * r <= b - 27
                && s <= p - 9 * (r + 3)
                && rhs >= 0
                && 9253i128 * 9253 * (8 * r as i128 + 17) <= (rhs as i128) * (rhs as i128)
        }
        // α >= (r+3)/b within (0, 0.212], β <= b/a within [0.731, 1], and
        // a <= c1(α) p with c1 decreasing in α
        "thm3" => {
            let alpha = rat(r + 3, b);
            alpha <= rat(212, 1000)
                && rat(b, a) >= rat(731, 1000)
                && rat(a, 1) <= c1_exact(&alpha) * rat(p, 1)
        }
        _ => false,
    }
}

/// Every `(a, b, r)` for each prime and theorem.
pub fn feasibility_sweep(primes: &[usize]) -> FeasibilityReport {
    let mut rows = Vec::new();
    for th in FEASIBILITY_THEOREMS {
        for &p in primes {
            let pi = p as i64;
            let (checked, found) = (1..pi)
                .into_par_iter()
                .map(|a| {
                    let mut c = 0u64;
                    let mut f = 0u64;
                    for b in 1..=a {
                        for r in -1..=(pi - 1 - a - b) {
                            c += 1;
                            f += u64::from(feasible(th, p, a, b, r));
                        }
                    }
                    (c, f)
                })
                .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
            rows.push(FeasibilityRow {
                theorem: th.to_string(),
                p,
                triples_checked: checked,
                feasible: found,
            });
        }
    }
    let min_feasible_prime = FEASIBILITY_THEOREMS
        .iter()
        .map(|&th| (th.to_string(), min_feasible_prime(th, 5_000)))
        .collect();
    FeasibilityReport {
        rows,
        min_feasible_prime,
    }
}

/// Every condition loosens as `r` drops and as `a` drops toward `b`, so a
/// prime is feasible iff some `(b, b, -1)` is.
pub fn min_feasible_prime(theorem: &str, limit: usize) -> Option<usize> {
    (2..=limit)
        .filter(|&p| is_prime(p as u64))
        .find(|&p| (1..p as i64).any(|b| feasible(theorem, p, b, b, -1)))
}
