use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log2, mod_inverse};
use crate::cyclic::{canonical_pair, require_prime, CyclicSet};
use crate::error::{Error, Result};
use crate::progressions::{conjecture_conclusion, ell, ell_cover, reduction_check_part1, Certificate};
use crate::trios::{complement_trio, delta_flags, Trio, PERMUTATIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Conjecture,
    Prop12,
    Mario1,
    Smallr,
    Feasibility,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::Conjecture => "conjecture",
            ScanMode::Prop12 => "prop12",
            ScanMode::Mario1 => "mario1",
            ScanMode::Smallr => "smallr",
            ScanMode::Feasibility => "feasibility",
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "conjecture" => ScanMode::Conjecture,
            "prop12" => ScanMode::Prop12,
            "mario1" => ScanMode::Mario1,
            "smallr" => ScanMode::Smallr,
            "feasibility" => ScanMode::Feasibility,
            _ => return Err(Error::Parse(format!("unknown scan mode {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violation,
    NotApplicable,
}

impl Verdict {
    pub fn applicable(self) -> bool {
        self != Verdict::NotApplicable
    }
}

/// One JSONL line: the certificate plus scan bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub mode: ScanMode,
    pub canonical_key: String,
    pub verdict: Verdict,
    #[serde(flatten)]
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

fn bare_certificate(t: &Trio) -> Certificate {
    Certificate {
        p: t.modulus(),
        a: t.a.elems_i64(),
        b: t.b.elems_i64(),
        c: t.c.elems_i64(),
        r: t.r,
        d: None,
        covers: Vec::new(),
        ok: false,
    }
}

fn sizes(t: &Trio) -> (i64, i64, i64, i64) {
    let (a, b) = (t.a.len() as i64, t.b.len() as i64);
    (a, b, t.c.len() as i64, a + b + t.r)
}

fn conjecture_hypothesis(t: &Trio) -> bool {
    let p = t.modulus() as i64;
    let (a, b, _, s) = sizes(t);
    let dl = delta_flags(t);
    a >= b && s <= a + 2 * b - 3 - dl.delta_b as i64 && s <= p - t.r - 3 - dl.delta_c as i64
}

/// Largest circular window count of `x` along difference `d`, for every
/// window length `1..=p`.
fn window_counts(x: &CyclicSet, d: usize) -> Vec<usize> {
    let p = x.modulus();
    let inv = mod_inverse(d, p).expect("prime modulus");
    let mut on = vec![0usize; 2 * p];
    for e in x.iter() {
        let pos = e * inv % p;
        on[pos] = 1;
        on[pos + p] = 1;
    }
    let mut pre = vec![0usize; 2 * p + 1];
    for i in 0..2 * p {
        pre[i + 1] = pre[i] + on[i];
    }
    let mut best = vec![0usize; p + 1];
    for (len, slot) in best.iter_mut().enumerate().skip(1) {
        *slot = (0..p).map(|s| pre[s + len] - pre[s]).max().unwrap();
    }
    best
}

/// Whether some `A' ⊆ A, B' ⊆ B` (or the roles swapped) with `A'+B'`
/// rectifying and `|B'| <= |A'|` reaches `|A'| + 2|B'| - 4 >= |A+B|`,
/// inside the density window `|A+B| <= 3(p+1)/4`, `p >= 4r+9`.
pub fn prop12_hypothesis(t: &Trio) -> bool {
    let p = t.modulus();
    let (_, _, _, s) = sizes(t);
    if 4 * s > 3 * (p as i64 + 1) || (p as i64) < 4 * t.r + 9 {
        return false;
    }
    let mut best = 0usize;
    for d in 1..p {
        let wa = window_counts(&t.a, d);
        let wb = window_counts(&t.b, d);
        for l in 1..=p {
            let m = p + 1 - l;
            let v1 = wa[l] + 2 * wa[l].min(wb[m]);
            let v2 = wb[l] + 2 * wb[l].min(wa[m]);
            best = best.max(v1).max(v2);
        }
    }
    best as i64 - 4 >= s
}

/// Smallest `|A ∪ (B+t)|` over shifts `t`.
pub fn min_union(a: &CyclicSet, b: &CyclicSet) -> usize {
    (0..a.modulus())
        .map(|t| a.union(&b.translate(t as i64)).expect("same modulus").len())
        .min()
        .unwrap_or(0)
}

fn smallr_hypothesis(t: &Trio) -> bool {
    let p = t.modulus();
    let (a, b, _, s) = sizes(t);
    let delta = i64::from(t.a.is_translate_of(&t.b));
    a >= b
        && min_union(&t.a, &t.b) as u32 <= ceil_log2(p as u64)
        && s <= a + 2 * b - 3 - delta
}

/// Every `(role order, d)` meeting the one-set reduction hypotheses, with the
/// reduction's conclusion for it.
fn mario1_cases(t: &Trio) -> Result<Vec<(usize, bool)>> {
    let p = t.modulus();
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        let tt = t.permuted(perm);
        for d in 1..p {
            let l = ell(&tt.a, d as i64)?.expect("prime modulus") as i64;
            let h = l - tt.a.len() as i64;
            if let Some(ok) = reduction_check_part1(&tt, d as i64, h, t.r)? {
                out.push((d, ok));
            }
        }
    }
    Ok(out)
}

fn with_covers(t: &Trio, d: usize) -> Result<Certificate> {
    let mut cert = bare_certificate(t);
    cert.d = Some(d as i64);
    for x in [&t.a, &t.b, &t.c] {
        cert.covers.push(ell_cover(x, d as i64)?.expect("prime modulus"));
    }
    cert.ok = true;
    Ok(cert)
}

/// Runs one mode on one pair `(A, B)`; `C = -(A+B)^c`.
pub fn evaluate(mode: ScanMode, a: &CyclicSet, b: &CyclicSet) -> Result<Evaluation> {
    require_prime(a.modulus())?;
    let t = complement_trio(a, b)?;
    let applicable = match mode {
        ScanMode::Conjecture => conjecture_hypothesis(&t),
        ScanMode::Prop12 => prop12_hypothesis(&t),
        ScanMode::Smallr => smallr_hypothesis(&t),
        ScanMode::Mario1 => {
            let cases = mario1_cases(&t)?;
            return Ok(match cases.first() {
                None => Evaluation {
                    verdict: Verdict::NotApplicable,
                    certificate: bare_certificate(&t),
                },
                Some(&(d, _)) if cases.iter().all(|c| c.1) => Evaluation {
                    verdict: Verdict::Holds,
                    certificate: with_covers(&t, d)?,
                },
                Some(_) => Evaluation {
                    verdict: Verdict::Violation,
                    certificate: bare_certificate(&t),
                },
            });
        }
        ScanMode::Feasibility => {
            return Err(Error::Precondition(
                "feasibility is a parameter sweep, not a per-instance mode".into(),
            ))
        }
    };
    if !applicable {
        return Ok(Evaluation {
            verdict: Verdict::NotApplicable,
            certificate: bare_certificate(&t),
        });
    }
    Ok(match conjecture_conclusion(a, b)? {
        Some(cert) => Evaluation {
            verdict: Verdict::Holds,
            certificate: cert,
        },
        None => Evaluation {
            verdict: Verdict::Violation,
            certificate: bare_certificate(&t),
        },
    })
}

/// Builds the JSONL record for a pair that is already an orbit representative.
pub fn record_for(mode: ScanMode, a: &CyclicSet, b: &CyclicSet) -> Result<ScanRecord> {
    let ev = evaluate(mode, a, b)?;
    Ok(ScanRecord {
        mode,
        canonical_key: format!("{}:{}", a.to_hex(), b.to_hex()),
        verdict: ev.verdict,
        certificate: ev.certificate,
    })
}

/// Re-derives a record from its sets alone and compares.
pub fn recheck_record(rec: &ScanRecord) -> std::result::Result<(), String> {
    let c = &rec.certificate;
    let p = c.p;
    let a = CyclicSet::from_elems(p, &c.a).map_err(|e| format!("A: {e}"))?;
    let b = CyclicSet::from_elems(p, &c.b).map_err(|e| format!("B: {e}"))?;
    if a.is_empty() || b.is_empty() {
        return Err("A and B must be nonempty".into());
    }
    let canon = canonical_pair(&a, &b).map_err(|e| e.to_string())?;
    if canon.key() != rec.canonical_key {
        return Err(format!(
            "canonical key should be {}, found {}",
            canon.key(),
            rec.canonical_key
        ));
    }
    if canon.a != a || canon.b != b {
        return Err("sets are not the orbit representative".into());
    }
    let ev = evaluate(rec.mode, &a, &b).map_err(|e| e.to_string())?;
    if ev.verdict != rec.verdict {
        return Err(format!("verdict should be {:?}, found {:?}", ev.verdict, rec.verdict));
    }
    if rec.verdict == Verdict::Holds {
        c.check()?;
    } else {
        let base = &ev.certificate;
        if (&c.c, c.r) != (&base.c, base.r) {
            return Err(format!("C or r disagree: expected r = {}", base.r));
        }
        if c.ok {
            return Err("record without covers is marked ok".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, e: &[i64]) -> CyclicSet {
        CyclicSet::from_elems(n, e).unwrap()
    }

    #[test]
    fn conjecture_mode() {
        let a = cs(7, &[0, 1]);
        let ev = evaluate(ScanMode::Conjecture, &a, &a).unwrap();
        assert_eq!(ev.verdict, Verdict::Holds);
        let e6 = cs(19, &[0, 1, 2, 3, 5, 10]);
        // outside the hypothesis once the δ corrections apply
        let ev = evaluate(ScanMode::Conjecture, &e6, &e6).unwrap();
        assert_eq!(ev.verdict, Verdict::NotApplicable);
        assert!(evaluate(ScanMode::Conjecture, &cs(8, &[0]), &cs(8, &[0])).is_err());
    }

    #[test]
    fn window_counts_basic() {
        let a = cs(7, &[0, 1, 3]);
        assert_eq!(window_counts(&a, 1), vec![0, 1, 2, 2, 3, 3, 3, 3]);
        // positions under d = 3: 0, 5, 1
        assert_eq!(window_counts(&a, 3)[2], 2);
    }

    #[test]
    fn prop12_needs_density_room() {
        let a = CyclicSet::interval(13, 0, 6).unwrap();
        let t = complement_trio(&a, &a).unwrap();
        // |A+B| = 11 > 3·14/4
        assert!(!prop12_hypothesis(&t));
        let a = CyclicSet::interval(29, 0, 6).unwrap();
        let t = complement_trio(&a, &a).unwrap();
        assert!(prop12_hypothesis(&t));
        let ev = evaluate(ScanMode::Prop12, &a, &a).unwrap();
        assert_eq!(ev.verdict, Verdict::Holds);
    }

    #[test]
    fn smallr_and_mario1() {
        let a = cs(11, &[0, 1, 2]);
        let b = cs(11, &[0, 1]);
        assert_eq!(min_union(&a, &b), 3);
        let ev = evaluate(ScanMode::Smallr, &a, &b).unwrap();
        assert_eq!(ev.verdict, Verdict::Holds);
        let a = CyclicSet::interval(13, 0, 4).unwrap();
        let ev = evaluate(ScanMode::Mario1, &a, &a).unwrap();
        assert_eq!(ev.verdict, Verdict::Holds);
        ev.certificate.check().unwrap();
    }

    #[test]
    fn records_recheck() {
        let a = cs(7, &[0, 1]);
        let rec = record_for(ScanMode::Conjecture, &a, &a).unwrap();
        recheck_record(&rec).unwrap();
        let mut bad = rec.clone();
        bad.verdict = Verdict::Violation;
        assert!(recheck_record(&bad).is_err());
        let line = serde_json::to_string(&rec).unwrap();
        assert!(line.contains("\"mode\":\"conjecture\"") && line.contains("\"p\":7"));
        let back: ScanRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }
}
