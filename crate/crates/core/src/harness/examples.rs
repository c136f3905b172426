//! The extremal constructions: each generator builds its sets and bundles
//! the claimed facts, recomputed with the core modules.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::cyclic::{CyclicSet, IntSet};
use crate::error::{Error, Result};
use crate::progressions::{conjecture_conclusion, ell, min_cover, verify_3k4_integers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "lowercase")]
pub enum ExampleSpec {
    /// Simultaneous equality in every integer bound.
    Ex1 { r: i64, m: i64, n: i64 },
    /// `A = B` two far intervals with `|A| = r+3`.
    Ex2 { r: i64, gap: i64 },
    /// `B = [0, r+1]` against two far intervals.
    Ex3 { r: i64, a_len: i64, gap: i64 },
    /// Dual of Ex3 modulo `p`: `A = -(B+C)^c`.
    Ex4 { r: i64, b_len: i64, gap: i64, p: usize },
    /// Dual of Ex2 modulo `p`: `A = -(2B)^c`.
    Ex5 { r: i64, gap: i64, p: usize },
    /// `A = B = [0, r+1] ∪ {r+3, 2r+6}` modulo `p = 4r+11`.
    Ex6 { r: i64 },
    /// The same set modulo `n = 4r+11`, any `n`.
    Prop13 { r: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExampleSets {
    Integers { a: IntSet, b: IntSet },
    Cyclic { n: usize, a: CyclicSet, b: CyclicSet },
}

/// A claim and what the core modules say about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub holds: bool,
    /// `false` for claims that only need to hold once the gap or prime is
    /// large enough.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleInstance {
    pub spec: ExampleSpec,
    pub sets: ExampleSets,
    pub facts: Vec<Fact>,
    /// Every asymptotic claim already holds at these parameters.
    pub bites: bool,
    /// How far the best progression cover overshoots `|X|+r+1`, when measured.
    pub failure_margin: Option<i64>,
}

impl ExampleInstance {
    pub fn exact_facts_hold(&self) -> bool {
        self.facts.iter().filter(|f| f.exact).all(|f| f.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.facts.iter().all(|f| f.holds)
    }
}

struct Facts(Vec<Fact>);

impl Facts {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, expected: T, actual: T, exact: bool) {
        self.0.push(Fact {
            name: name.into(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            holds: expected == actual,
            exact,
        });
    }

    fn check(&mut self, name: &str, ok: bool, detail: String, exact: bool) {
        self.0.push(Fact {
            name: name.into(),
            expected: "true".into(),
            actual: detail,
            holds: ok,
            exact,
        });
    }
}

fn bad(msg: String) -> Error {
    Error::Precondition(msg)
}

/// `{0, 2, ..., 2k}`.
fn evens(k: i64) -> Vec<i64> {
    (0..=k).map(|i| 2 * i).collect()
}

/// Two intervals of sizes `k1` and `k2`, `min P2 - max P1 = gap`.
fn two_intervals(k1: i64, k2: i64, gap: i64) -> IntSet {
    let p2 = k1 - 1 + gap;
    IntSet::new((0..k1).chain(p2..p2 + k2))
}

/// Length of the shortest progression containing a finite set of integers.
fn int_cover_len(a: &IntSet) -> i64 {
    let g = a.difference_gcd().max(1) as i64;
    a.diameter().unwrap() / g + 1
}

fn to_cyclic(p: usize, a: &IntSet) -> Result<CyclicSet> {
    CyclicSet::from_elems(p, a.as_slice())
}

/// Smallest over `d` of the worst overshoot `ℓ_d(X) - (|X|+r+1)`.
fn cover_margin(sets: [&CyclicSet; 3], r: i64) -> Result<i64> {
    let p = sets[0].modulus();
    let mut best = i64::MAX;
    for d in 1..p as i64 {
        let mut worst = i64::MIN;
        for x in sets {
            let l = ell(x, d)?.expect("prime modulus") as i64;
            worst = worst.max(l - x.len() as i64 - r - 1);
        }
        best = best.min(worst);
    }
    Ok(best)
}

pub fn generate_example(spec: ExampleSpec) -> Result<ExampleInstance> {
    let mut f = Facts(Vec::new());
    let mut margin = None;
    let sets = match spec {
        ExampleSpec::Ex1 { r, m, n } => {
            if !(r >= -1 && m >= n && n >= 2 * r + 3 && m >= 2 * r + 4) {
                return Err(bad(format!("need r >= -1, m >= n >= 2r+3, m >= 2r+4; got r={r} m={m} n={n}")));
            }
            let a = IntSet::new(evens(r + 1).into_iter().chain(2 * r + 3..=m));
            let b = IntSet::new(evens(r + 1).into_iter().chain(2 * r + 3..=n));
            let s = a.sumset(&b);
            let want_s = IntSet::new(evens(r + 1).into_iter().chain(2 * r + 3..=m + n));
            f.eq("|A|", m - r, a.len() as i64, true);
            f.eq("|B|", n - r, b.len() as i64, true);
            f.eq("A+B", want_s, s.clone(), true);
            f.eq("|A+B|", m + n - r, s.len() as i64, true);
            let v = verify_3k4_integers(&a, &b)?;
            f.eq("applicable", true, v.applicable, true);
            f.eq("r", r, v.r, true);
            f.eq("|P_A|", (m + 1) as usize, v.covers[0].len, true);
            f.eq("|P_B|", (n + 1) as usize, v.covers[1].len, true);
            f.eq("|P_A+B|", (m + n - 2 * r - 1) as usize, v.inner.len, true);
            f.eq("all bounds tight", true, v.all_tight(a.len(), b.len()) && v.bounds_ok, true);
            ExampleSets::Integers { a, b }
        }
        ExampleSpec::Ex2 { r, gap } => {
            if r < 0 || gap < 2 {
                return Err(bad(format!("need r >= 0 and gap >= 2; got r={r} gap={gap}")));
            }
            let k = r + 3;
            let a = two_intervals((k + 1) / 2, k / 2, gap);
            let s = a.sumset(&a);
            f.eq("|A|", k, a.len() as i64, true);
            f.eq("|2A|", 3 * k - 3, s.len() as i64, false);
            let v = verify_3k4_integers(&a, &a)?;
            f.eq("hypothesis fails", false, v.applicable, false);
            let l = int_cover_len(&a);
            f.check("no short cover", l > k + r + 1, format!("cover length {l}"), false);
            margin = Some(l - (k + r + 1));
            ExampleSets::Integers { a: a.clone(), b: a }
        }
        ExampleSpec::Ex3 { r, a_len, gap } => {
            if r < -1 || a_len < (r + 2).max(3) || gap < 2 {
                return Err(bad(format!("need r >= -1, |A| >= max(r+2, 3), gap >= 2; got r={r} |A|={a_len} gap={gap}")));
            }
            let b = IntSet::interval(0, r + 1);
            let a = two_intervals((a_len + 1) / 2, a_len / 2, gap);
            let s = a.sumset(&b);
            let (na, nb) = (a.len() as i64, b.len() as i64);
            f.eq("|B|", r + 2, nb, true);
            f.eq("|A+B|", na + 2 * nb - 2, s.len() as i64, false);
            f.eq("r", r, s.len() as i64 - na - nb, false);
            let l = int_cover_len(&a);
            f.check("no short cover", l > na + r + 1, format!("cover length {l}"), false);
            margin = Some(l - (na + r + 1));
            ExampleSets::Integers { a, b }
        }
        ExampleSpec::Ex4 { r, b_len, gap, p } => {
            if r < -1 || b_len < (r + 2).max(3) || gap < r + 3 || !is_prime(p as u64) {
                return Err(bad(format!("need r >= -1, |B| >= max(r+2, 3), gap >= r+3, prime p; got r={r} |B|={b_len} gap={gap} p={p}")));
            }
            let bz = two_intervals((b_len + 1) / 2, b_len / 2, gap);
            let cz = IntSet::interval(0, r + 1);
            if IntSet::max(&bz).unwrap() + IntSet::max(&cz).unwrap() >= p as i64 {
                return Err(bad(format!("p = {p} too small for B+C")));
            }
            let bzc = bz.sumset(&cz);
            f.eq("|B+C| over Z", bz.len() + 2 * cz.len() - 2, bzc.len(), true);
            let (b, c) = (to_cyclic(p, &bz)?, to_cyclic(p, &cz)?);
            let a = b.sumset(&c)?.complement().neg();
            let s = a.sumset(&b)?;
            f.check("|A| >= |B|", a.len() >= b.len(), format!("|A| = {}", a.len()), false);
            f.eq("A+B", c.complement().neg(), s.clone(), false);
            f.eq("|A+B|", p as i64 - r - 2, s.len() as i64, false);
            f.eq("r", r, s.len() as i64 - a.len() as i64 - b.len() as i64, false);
            let cert = conjecture_conclusion(&a, &b)?;
            f.eq("conclusion absent", true, cert.is_none(), false);
            if !s.is_full() {
                let trio_c = s.complement().neg();
                let rr = s.len() as i64 - a.len() as i64 - b.len() as i64;
                margin = Some(cover_margin([&a, &b, &trio_c], rr)?);
            }
            ExampleSets::Cyclic { n: p, a, b }
        }
        ExampleSpec::Ex5 { r, gap, p } => {
            if r < 0 || gap < 2 || !is_prime(p as u64) {
                return Err(bad(format!("need r >= 0, gap >= 2, prime p; got r={r} gap={gap} p={p}")));
            }
            let k = r + 3;
            let bz = two_intervals((k + 1) / 2, k / 2, gap);
            if 2 * IntSet::max(&bz).unwrap() >= p as i64 {
                return Err(bad(format!("p = {p} too small for 2B")));
            }
            f.eq("|2B| over Z", 3 * k - 3, bz.sumset(&bz).len() as i64, false);
            let b = to_cyclic(p, &bz)?;
            let a = b.sumset(&b)?.complement().neg();
            let s = a.sumset(&b)?;
            f.check("|A| >= |B|", a.len() >= b.len(), format!("|A| = {}", a.len()), false);
            f.eq("A+B", b.complement().neg(), s.clone(), false);
            f.eq("|A+B|", p as i64 - r - 3, s.len() as i64, false);
            f.eq("C = B", b.clone(), s.complement().neg(), false);
            let cert = conjecture_conclusion(&a, &b)?;
            f.eq("conclusion absent", true, cert.is_none(), false);
            if !s.is_full() {
                let trio_c = s.complement().neg();
                let rr = s.len() as i64 - a.len() as i64 - b.len() as i64;
                margin = Some(cover_margin([&a, &b, &trio_c], rr)?);
            }
            ExampleSets::Cyclic { n: p, a, b }
        }
        ExampleSpec::Ex6 { r } => {
            let p = 4 * r + 11;
            if r < 2 || !is_prime(p as u64) {
                return Err(bad(format!("need r >= 2 with 4r+11 prime; got r={r}")));
            }
            let p = p as usize;
            let a = pablo_set(p, r)?;
            let s = a.sumset(&a)?;
            let want = CyclicSet::from_residues(
                p,
                (0..=2 * r + 4).chain(2 * r + 6..=3 * r + 7).chain([3 * r + 9]),
            )?;
            let k = a.len() as i64;
            f.eq("|A|", r + 4, k, true);
            f.eq("2A", want, s.clone(), true);
            f.eq("|2A| = 3|A|-4", 3 * k - 4, s.len() as i64, true);
            f.eq("|2A| = p-r-3", p as i64 - r - 3, s.len() as i64, true);
            f.eq("|C|", (r + 3) as usize, p - s.len(), true);
            f.eq("min cover", (2 * r + 7) as usize, min_cover(&a)?.1, true);
            f.eq("conclusion absent", true, conjecture_conclusion(&a, &a)?.is_none(), true);
            let c = s.complement().neg();
            margin = Some(cover_margin([&a, &a, &c], r)?);
            ExampleSets::Cyclic { n: p, a: a.clone(), b: a }
        }
        ExampleSpec::Prop13 { r } => {
            if r < 1 {
                return Err(bad(format!("need r >= 1; got r={r}")));
            }
            let n = (4 * r + 11) as usize;
            let a = pablo_set(n, r)?;
            f.eq("min cover", (2 * r + 7) as usize, min_cover(&a)?.1, true);
            ExampleSets::Cyclic { n, a: a.clone(), b: a }
        }
    };
    let bites = f.0.iter().all(|x| x.holds);
    Ok(ExampleInstance {
        spec,
        sets,
        facts: f.0,
        bites,
        failure_margin: margin,
    })
}

fn pablo_set(n: usize, r: i64) -> Result<CyclicSet> {
    CyclicSet::from_residues(n, (0..=r + 1).chain([r + 3, 2 * r + 6]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_base_case() {
        let e = generate_example(ExampleSpec::Ex1 { r: 0, m: 4, n: 3 }).unwrap();
        match &e.sets {
            ExampleSets::Integers { a, b } => {
                assert_eq!(a.as_slice(), &[0, 2, 3, 4]);
                assert_eq!(b.as_slice(), &[0, 2, 3]);
                assert_eq!(a.sumset(b).len(), 7);
            }
            _ => panic!(),
        }
        assert!(e.all_hold(), "{:?}", e.facts);
        assert!(generate_example(ExampleSpec::Ex1 { r: 0, m: 3, n: 3 }).is_err());
    }

    #[test]
    fn example6_and_prop13() {
        let e = generate_example(ExampleSpec::Ex6 { r: 2 }).unwrap();
        assert!(e.all_hold(), "{:?}", e.facts);
        assert_eq!(e.failure_margin, Some(2));
        assert!(generate_example(ExampleSpec::Ex6 { r: 4 }).is_err());
        let e = generate_example(ExampleSpec::Prop13 { r: 3 }).unwrap();
        match &e.sets {
            ExampleSets::Cyclic { n, a, .. } => {
                assert_eq!(*n, 23);
                assert_eq!(a.elems(), vec![0, 1, 2, 3, 4, 6, 12]);
            }
            _ => panic!(),
        }
        assert!(e.all_hold());
    }

    #[test]
    fn far_interval_examples() {
        let e = generate_example(ExampleSpec::Ex2 { r: 1, gap: 20 }).unwrap();
        assert!(e.all_hold(), "{:?}", e.facts);
        let e = generate_example(ExampleSpec::Ex3 { r: 0, a_len: 5, gap: 20 }).unwrap();
        assert!(e.all_hold(), "{:?}", e.facts);
        let e = generate_example(ExampleSpec::Ex4 { r: 0, b_len: 4, gap: 20, p: 199 }).unwrap();
        assert!(e.all_hold(), "{:?}", e.facts);
        let e = generate_example(ExampleSpec::Ex5 { r: 1, gap: 20, p: 199 }).unwrap();
        assert!(e.all_hold(), "{:?}", e.facts);
    }
}
