//! Arithmetic-progression covers, rectification and the integer 3k−4 verifier.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, reduce};
use crate::cyclic::{require_prime, CyclicSet, IntSet};
use crate::error::{Error, Result};
use crate::trios::{complement_trio, delta_flags, Trio};

/// `{start + i·d : 0 <= i < len}`, either in Z/nZ or in Z depending on context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApCover {
    pub start: i64,
    pub d: i64,
    pub len: usize,
}

impl ApCover {
    /// Elements reduced modulo `n`.
    pub fn elements_mod(&self, n: usize) -> Vec<usize> {
        (0..self.len as i64)
            .map(|i| reduce(self.start + i * self.d, n))
            .collect()
    }

    pub fn to_cyclic(&self, n: usize) -> Result<CyclicSet> {
        CyclicSet::from_residues(n, (0..self.len as i64).map(|i| self.start + i * self.d))
    }

    /// True when the progression is a valid cover of `a` in Z/nZ: nonzero
    /// difference, no self-overlap, and every element of `a` on it.
    pub fn covers_cyclic(&self, a: &CyclicSet) -> bool {
        let n = a.modulus();
        let d = reduce(self.d, n);
        if d == 0 || self.len == 0 {
            return false;
        }
        let ord = n / gcd(d as u64, n as u64) as usize;
        if self.len > ord {
            return false;
        }
        match self.to_cyclic(n) {
            Ok(p) => a.is_subset(&p),
            Err(_) => false,
        }
    }

    pub fn covers_int(&self, a: &IntSet) -> bool {
        if self.d == 0 {
            return self.len == 1 && a.iter().all(|x| x == self.start);
        }
        a.iter().all(|x| {
            let off = x - self.start;
            off % self.d == 0 && (0..self.len as i64).contains(&(off / self.d))
        })
    }

    pub fn as_int_set(&self) -> IntSet {
        IntSet::new((0..self.len as i64).map(|i| self.start + i * self.d))
    }
}

/// Positions of `a` along the walk `a0, a0+d, a0+2d, ...` inside the coset of
/// `<d>` containing `a0 = min a`, or `None` if `a` meets several cosets.
fn positions(a: &CyclicSet, d: usize) -> Option<(Vec<usize>, usize, usize)> {
    let n = a.modulus();
    let g = gcd(d as u64, n as u64) as usize;
    let ord = n / g;
    let a0 = a.min_elem()?;
    let inv = mod_inverse((d / g) % ord, ord)?;
    let mut pos = Vec::with_capacity(a.len());
    for x in a.iter() {
        let diff = (x + n - a0) % n;
        if !diff.is_multiple_of(g) {
            return None;
        }
        pos.push(((diff / g) as u128 * inv as u128 % ord as u128) as usize);
    }
    pos.sort_unstable();
    Some((pos, ord, a0))
}

/// The shortest `d`-progression containing `a`, or `None` when `a` is not
/// inside a single coset of `<d>`.
pub fn ell_cover(a: &CyclicSet, d: i64) -> Result<Option<ApCover>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.modulus();
    let d = reduce(d, n);
    if d == 0 {
        return Err(Error::ZeroDifference);
    }
    let Some((pos, ord, a0)) = positions(a, d) else {
        return Ok(None);
    };
    // largest circular gap between consecutive positions; the cover starts
    // right after it
    let k = pos.len();
    let mut best_gap = pos[0] + ord - pos[k - 1];
    let mut start_pos = pos[0];
    for i in 1..k {
        let gap = pos[i] - pos[i - 1];
        if gap > best_gap {
            best_gap = gap;
            start_pos = pos[i];
        }
    }
    let len = ord - best_gap + 1;
    let start = (a0 as u128 + start_pos as u128 * d as u128) % n as u128;
    Ok(Some(ApCover {
        start: start as i64,
        d: d as i64,
        len,
    }))
}

/// `ℓ_d(A)`.
pub fn ell(a: &CyclicSet, d: i64) -> Result<Option<usize>> {
    Ok(ell_cover(a, d)?.map(|c| c.len))
}

/// `(d, ℓ_d(A))` minimizing the length over `d ∈ [1, n-1]`, smallest `d` on ties.
pub fn min_cover(a: &CyclicSet) -> Result<(usize, usize)> {
    let n = a.modulus();
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let mut best: Option<(usize, usize)> = None;
    for d in 1..n {
        if let Some(l) = ell(a, d as i64)? {
            if best.is_none_or(|(_, bl)| l < bl) {
                best = Some((d, l));
            }
        }
    }
    Ok(best.expect("d = 1 always yields a cover"))
}

/// Order of `d` in Z/nZ.
pub fn order(d: usize, n: usize) -> usize {
    n / gcd(d as u64, n as u64) as usize
}

/// A `d` minimizing `ℓ_d(A) + ℓ_d(B)` among those meeting
/// `ℓ_d(A) + ℓ_d(B) <= ord(d) + 1`; smallest `d` on ties.
pub fn rectification_witness(
    a: &CyclicSet,
    b: &CyclicSet,
) -> Result<Option<(usize, usize, usize)>> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: b.modulus(),
        });
    }
    let n = a.modulus();
    let mut best: Option<(usize, usize, usize)> = None;
    for d in 1..n {
        let (Some(la), Some(lb)) = (ell(a, d as i64)?, ell(b, d as i64)?) else {
            continue;
        };
        if la + lb <= order(d, n) + 1 && best.is_none_or(|(_, x, y)| la + lb < x + y) {
            best = Some((d, la, lb));
        }
    }
    Ok(best)
}

/// Integer preimage of `a` along its minimal `d`-cover, starting at 0.
pub fn unfold_one(a: &CyclicSet, d: i64) -> Result<Option<IntSet>> {
    let Some(cover) = ell_cover(a, d)? else {
        return Ok(None);
    };
    let n = a.modulus();
    let pts = cover.elements_mod(n);
    Ok(Some(IntSet::new(
        pts.iter()
            .enumerate()
            .filter(|(_, &x)| a.contains(x))
            .map(|(i, _)| i as i64),
    )))
}

/// Integer sets `A', B'` (each with minimum 0) whose sumset is Freiman
/// isomorphic to `A + B` through `x ↦ x·d`.
pub fn unfold(a: &CyclicSet, b: &CyclicSet, d: i64) -> Result<(IntSet, IntSet)> {
    let s = a.sumset(b)?;
    let n = a.modulus();
    let dd = reduce(d, n);
    let (Some(ca), Some(cb)) = (ell_cover(a, d)?, ell_cover(b, d)?) else {
        return Err(Error::Precondition(format!(
            "no {dd}-progression contains both sets"
        )));
    };
    if ca.len + cb.len > order(dd, n) + 1 {
        return Err(Error::Precondition(format!(
            "ℓ_d(A) + ℓ_d(B) = {} exceeds ord(d) + 1 = {}",
            ca.len + cb.len,
            order(dd, n) + 1
        )));
    }
    let ua = unfold_one(a, d)?.expect("cover exists");
    let ub = unfold_one(b, d)?.expect("cover exists");
    assert_eq!(
        ua.sumset(&ub).len(),
        s.len(),
        "unfolding must preserve the sumset size"
    );
    Ok((ua, ub))
}

/// Outcome of the integer 3k−4 verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict3k4Z {
    pub applicable: bool,
    pub delta: u8,
    pub r: i64,
    /// `gcd(A-A+B-B)`.
    pub g: u64,
    pub covers: [ApCover; 2],
    pub inner: ApCover,
    /// All three bounds: `|P_X| <= |X|+r+1` for `X ∈ {A,B}` and `|P_{A+B}| >= |A|+|B|-1`.
    pub bounds_ok: bool,
    /// The sets after swapping so that `|A| >= |B|`.
    pub swapped: bool,
}

impl Verdict3k4Z {
    /// Every bound of the conclusion holds with equality.
    pub fn all_tight(&self, a_len: usize, b_len: usize) -> bool {
        let (a, b) = if self.swapped {
            (b_len, a_len)
        } else {
            (a_len, b_len)
        };
        let r = self.r;
        self.covers[0].len as i64 == a as i64 + r + 1
            && self.covers[1].len as i64 == b as i64 + r + 1
            && self.inner.len == a + b - 1
    }
}

fn hull(a: &IntSet, g: u64) -> ApCover {
    let (lo, hi) = (a.min().unwrap(), a.max().unwrap());
    let g = g.max(1) as i64;
    ApCover {
        start: lo,
        d: g,
        len: ((hi - lo) / g) as usize + 1,
    }
}

/// Longest run `s, s+g, s+2g, ...` inside `s`, leftmost on ties.
fn longest_run(s: &IntSet, g: u64) -> ApCover {
    let g = g.max(1) as i64;
    let v = s.as_slice();
    let (mut best_start, mut best_len) = (v[0], 1usize);
    let (mut cur_start, mut cur_len) = (v[0], 1usize);
    for w in v.windows(2) {
        if w[1] - w[0] == g {
            cur_len += 1;
        } else {
            cur_start = w[1];
            cur_len = 1;
        }
        if cur_len > best_len {
            best_len = cur_len;
            best_start = cur_start;
        }
    }
    ApCover {
        start: best_start,
        d: g,
        len: best_len,
    }
}

/// Checks the 3k−4 theorem over Z for `(A, B)`.
pub fn verify_3k4_integers(a: &IntSet, b: &IntSet) -> Result<Verdict3k4Z> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let swapped = a.len() < b.len();
    let (a, b) = if swapped { (b, a) } else { (a, b) };
    let s = a.sumset(b);
    let (na, nb, ns) = (a.len() as i64, b.len() as i64, s.len() as i64);
    let r = ns - na - nb;
    let delta = u8::from(a.translate_offset(b).is_some());
    let applicable = ns <= na + 2 * nb - 3 - delta as i64;
    // both singletons give gcd 0; any positive difference works then
    let g = gcd(a.difference_gcd(), b.difference_gcd()).max(1);
    let pa = hull(a, g);
    let pb = hull(b, g);
    let inner = longest_run(&s, g);
    let bounds_ok = pa.len as i64 <= na + r + 1
        && pb.len as i64 <= nb + r + 1
        && inner.len as i64 >= na + nb - 1;
    Ok(Verdict3k4Z {
        applicable,
        delta,
        r,
        g,
        covers: [pa, pb],
        inner,
        bounds_ok,
        swapped,
    })
}

/// A witness for the conjectured conclusion: three covers with a common difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub p: usize,
    #[serde(rename = "A")]
    pub a: Vec<i64>,
    #[serde(rename = "B")]
    pub b: Vec<i64>,
    #[serde(rename = "C")]
    pub c: Vec<i64>,
    pub r: i64,
    pub d: Option<i64>,
    pub covers: Vec<ApCover>,
    pub ok: bool,
}

impl Certificate {
    /// Re-derives `C` and `r` from `A` and `B` and re-validates every cover.
    pub fn check(&self) -> std::result::Result<(), String> {
        let p = self.p;
        let a = CyclicSet::from_elems(p, &self.a).map_err(|e| format!("A: {e}"))?;
        let b = CyclicSet::from_elems(p, &self.b).map_err(|e| format!("B: {e}"))?;
        let c = CyclicSet::from_elems(p, &self.c).map_err(|e| format!("C: {e}"))?;
        if a.is_empty() || b.is_empty() {
            return Err("A and B must be nonempty".into());
        }
        let s = a.sumset(&b).map_err(|e| e.to_string())?;
        if s.is_full() {
            return Err("A+B is the whole group".into());
        }
        let c_exp = s.complement().neg();
        if c != c_exp {
            return Err(format!("C should be {c_exp}, found {c}"));
        }
        let r = s.len() as i64 - a.len() as i64 - b.len() as i64;
        if r != self.r {
            return Err(format!("r should be {r}, found {}", self.r));
        }
        let Some(d) = self.d else {
            return Err("missing difference".into());
        };
        if self.covers.len() != 3 {
            return Err(format!("expected 3 covers, found {}", self.covers.len()));
        }
        for (name, set, cover) in [("A", &a, &self.covers[0]), ("B", &b, &self.covers[1]), ("C", &c, &self.covers[2])] {
            if reduce(cover.d, p) != reduce(d, p) {
                return Err(format!("P_{name} has difference {} instead of {d}", cover.d));
            }
            if !cover.covers_cyclic(set) {
                return Err(format!("P_{name} does not contain {name}"));
            }
            if cover.len as i64 > set.len() as i64 + r + 1 {
                return Err(format!(
                    "|P_{name}| = {} exceeds |{name}|+r+1 = {}",
                    cover.len,
                    set.len() as i64 + r + 1
                ));
            }
        }
        if !self.ok {
            return Err("record marked not ok despite valid covers".into());
        }
        Ok(())
    }
}

/// Smallest `d` with `ℓ_d(X) <= |X|+r+1` for `X ∈ {A, B, C}`, where
/// `C = -(A+B)^c`, packaged as a certificate.
pub fn conjecture_conclusion(a: &CyclicSet, b: &CyclicSet) -> Result<Option<Certificate>> {
    let t = complement_trio(a, b)?;
    require_prime(t.modulus())?;
    Ok(trio_conclusion(&t).map(|(d, covers)| Certificate {
        p: t.modulus(),
        a: t.a.elems_i64(),
        b: t.b.elems_i64(),
        c: t.c.elems_i64(),
        r: t.r,
        d: Some(d as i64),
        covers: covers.to_vec(),
        ok: true,
    }))
}

/// Smallest `d` covering all three sets of `t` within `|X|+r+1`.
pub fn trio_conclusion(t: &Trio) -> Option<(usize, [ApCover; 3])> {
    let n = t.modulus();
    (1..n).find_map(|d| {
        let mut covers = [ApCover {
            start: 0,
            d: d as i64,
            len: 0,
        }; 3];
        for (slot, x) in covers.iter_mut().zip([&t.a, &t.b, &t.c]) {
            let c = ell_cover(x, d as i64).ok()??;
            if c.len as i64 > x.len() as i64 + t.r + 1 {
                return None;
            }
            *slot = c;
        }
        Some((d, covers))
    })
}

/// The three progression statements for a trio that meets the size hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop7Report {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    /// Smallest witnesses for each statement.
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    pub d3: Option<usize>,
    /// Smallest `d` minimizing `ℓ_d(A)+ℓ_d(B)` among rectifying differences.
    pub rectification: Option<(usize, usize, usize)>,
}

impl Prop7Report {
    pub fn equivalent(&self) -> bool {
        self.s1 == self.s2 && self.s2 == self.s3
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prop7Outcome {
    NotApplicable { reason: String },
    Applicable(Prop7Report),
}

/// Evaluates the three statements for the complement trio of `(A, B)`.
pub fn prop7_statements(a: &CyclicSet, b: &CyclicSet) -> Result<Prop7Outcome> {
    let t = complement_trio(a, b)?;
    prop7_statements_trio(&t)
}

/// Evaluates the three statements for an arbitrary trio over a prime modulus.
pub fn prop7_statements_trio(t: &Trio) -> Result<Prop7Outcome> {
    let p = t.modulus();
    require_prime(p)?;
    let flags = delta_flags(t);
    for (name, x, dx) in [("A", &t.a, flags.delta_a), ("B", &t.b, flags.delta_b), ("C", &t.c, flags.delta_c)] {
        if (x.len() as i64) < t.r + 3 + dx as i64 {
            return Ok(Prop7Outcome::NotApplicable {
                reason: format!("|{name}| = {} < r+3+δ = {}", x.len(), t.r + 3 + dx as i64),
            });
        }
    }
    let (mut d1, mut d2, mut d3) = (None, None, None);
    for d in 1..p {
        let l: Vec<usize> = [&t.a, &t.b, &t.c]
            .iter()
            .map(|x| ell(x, d as i64).expect("nonzero d").expect("prime modulus"))
            .collect();
        let sizes = [t.a.len(), t.b.len(), t.c.len()];
        if d1.is_none() && (0..3).all(|i| l[i] as i64 <= sizes[i] as i64 + t.r + 1) {
            d1 = Some(d);
        }
        let pair_ok = [(0, 1), (1, 2), (2, 0)].map(|(i, j)| l[i] + l[j] <= p + 1);
        if d2.is_none() && pair_ok.iter().all(|&x| x) {
            d2 = Some(d);
        }
        if d3.is_none() && pair_ok.iter().any(|&x| x) {
            d3 = Some(d);
        }
    }
    Ok(Prop7Outcome::Applicable(Prop7Report {
        s1: d1.is_some(),
        s2: d2.is_some(),
        s3: d3.is_some(),
        d1,
        d2,
        d3,
        rectification: rectification_witness(&t.a, &t.b)?,
    }))
}

/// Outcome of the one-set reduction check: `None` when its hypotheses fail.
///
/// Hypotheses: `ℓ_d(A) <= |A|+h`, `r(T) <= r`, `|A| >= r+3+h`,
/// `|B| >= r+3+2h` (one of the last two strict) and `|C| >= r+3`.
/// The returned flag says whether `ℓ_d(X) <= |X|+r+1` for all three sets.
pub fn reduction_check_part1(t: &Trio, d: i64, h: i64, r: i64) -> Result<Option<bool>> {
    require_prime(t.modulus())?;
    let (na, nb, nc) = (t.a.len() as i64, t.b.len() as i64, t.c.len() as i64);
    let la = ell(&t.a, d)?.expect("prime modulus") as i64;
    let hyp = la <= na + h
        && t.r <= r
        && na >= r + 3 + h
        && nb >= r + 3 + 2 * h
        && (na > r + 3 + h || nb > r + 3 + 2 * h)
        && nc >= r + 3;
    if !hyp {
        return Ok(None);
    }
    let ok = [&t.a, &t.b, &t.c].iter().all(|x| {
        ell(x, d).expect("nonzero d").expect("prime modulus") as i64 <= x.len() as i64 + r + 1
    });
    Ok(Some(ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, e: &[i64]) -> CyclicSet {
        CyclicSet::from_elems(n, e).unwrap()
    }

    /// Brute force: try every start and length.
    fn ell_oracle(a: &CyclicSet, d: usize) -> Option<usize> {
        let n = a.modulus();
        (1..=order(d, n)).find(|&len| {
            (0..n).any(|s| {
                let p = CyclicSet::from_residues(n, (0..len).map(|i| (s + i * d) as i64)).unwrap();
                a.is_subset(&p)
            })
        })
    }

    #[test]
    fn ell_matches_brute_force() {
        for n in 2..=12usize {
            for mask in 1u64..(1 << n) {
                let a = CyclicSet::from_mask(n, mask).unwrap();
                for d in 1..n {
                    let got = ell_cover(&a, d as i64).unwrap();
                    assert_eq!(got.map(|c| c.len), ell_oracle(&a, d), "n={n} A={a} d={d}");
                    if let Some(c) = got {
                        assert!(c.covers_cyclic(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell(&cs(6, &[0, 1]), 2).unwrap(), None);
        assert_eq!(ell(&cs(10, &[0, 1, 2, 3]), 1).unwrap(), Some(4));
        assert!(matches!(ell(&cs(6, &[0]), 6), Err(Error::ZeroDifference)));
        assert_eq!(min_cover(&cs(7, &[0, 3])).unwrap(), (3, 2));
        let a = cs(15, &[0, 1, 2, 4, 8]);
        assert_eq!(min_cover(&a).unwrap().1, 9);
    }

    #[test]
    fn prop13_family() {
        for (r, n) in [(1i64, 15usize), (2, 19), (3, 23), (4, 27)] {
            let mut e: Vec<i64> = (0..=r + 1).collect();
            e.extend([r + 3, 2 * r + 6]);
            let a = cs(n, &e);
            assert_eq!(min_cover(&a).unwrap().1 as i64, 2 * r + 7);
        }
    }

    #[test]
    fn rectification_examples() {
        let a = cs(7, &[0, 1]);
        assert_eq!(rectification_witness(&a, &a).unwrap(), Some((1, 2, 2)));
        let f = CyclicSet::full(5).unwrap();
        assert_eq!(rectification_witness(&f, &f).unwrap(), None);
        let e6 = cs(19, &[0, 1, 2, 3, 5, 10]);
        assert_eq!(rectification_witness(&e6, &e6).unwrap(), None);
    }

    #[test]
    fn unfold_examples() {
        let a = cs(7, &[0, 1]);
        let (x, y) = unfold(&a, &a, 1).unwrap();
        assert_eq!((x.as_slice(), y.as_slice()), (&[0, 1][..], &[0, 1][..]));
        let (x, y) = unfold(&cs(13, &[0, 5, 10]), &cs(13, &[0, 5]), 5).unwrap();
        assert_eq!((x.as_slice(), y.as_slice()), (&[0, 1, 2][..], &[0, 1][..]));
        let (x, y) = unfold(&cs(11, &[0, 1, 2]), &cs(11, &[9, 10]), 1).unwrap();
        assert_eq!((x.as_slice(), y.as_slice()), (&[0, 1, 2][..], &[0, 1][..]));
        let f = CyclicSet::full(5).unwrap();
        assert!(matches!(unfold(&f, &f, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn verify_z_examples() {
        let v = verify_3k4_integers(&IntSet::new([0, 2, 3, 4]), &IntSet::new([0, 2, 3])).unwrap();
        assert!(v.applicable && v.bounds_ok);
        assert_eq!((v.r, v.covers[0].len, v.covers[1].len), (0, 5, 4));
        assert_eq!((v.inner.start, v.inner.len), (2, 6));
        assert!(v.all_tight(4, 3));

        let a = IntSet::new([0, 1, 2, 3, 5]);
        let v = verify_3k4_integers(&a, &a).unwrap();
        assert!(v.applicable && v.bounds_ok);
        assert_eq!((v.r, v.covers[0].len, v.delta), (0, 6, 1));

        // two far-apart intervals against a short interval
        let a = IntSet::new([0, 1, 2, 100, 101, 102]);
        let v = verify_3k4_integers(&a, &IntSet::interval(0, 2)).unwrap();
        assert!(!v.applicable);
        assert!(!v.bounds_ok);
    }

    #[test]
    fn conclusion_examples() {
        let a = cs(5, &[0, 1]);
        let c = conjecture_conclusion(&a, &a).unwrap().unwrap();
        assert_eq!((c.d, c.r, c.c.clone()), (Some(1), -1, vec![1, 2]));
        c.check().unwrap();

        let e6 = cs(19, &[0, 1, 2, 3, 5, 10]);
        assert!(conjecture_conclusion(&e6, &e6).unwrap().is_none());

        let a = cs(7, &[0, 1]);
        let c = conjecture_conclusion(&a, &a).unwrap().unwrap();
        assert_eq!(c.c, vec![1, 2, 3, 4]);
        assert_eq!(c.covers[2].len, 4);

        let f = CyclicSet::full(5).unwrap();
        assert!(conjecture_conclusion(&f, &a.clone()).is_err());
    }

    #[test]
    fn certificate_rejects_tampering() {
        let a = cs(7, &[0, 1]);
        let mut c = conjecture_conclusion(&a, &a).unwrap().unwrap();
        c.covers[2].len -= 1;
        assert!(c.check().is_err());
    }

    #[test]
    fn prop7_examples() {
        let a = cs(11, &[0, 1, 2]);
        match prop7_statements(&a, &a).unwrap() {
            Prop7Outcome::Applicable(r) => assert!(r.s1 && r.s2 && r.s3),
            o => panic!("{o:?}"),
        }
        match prop7_statements(&cs(11, &[0, 1, 2]), &cs(11, &[0, 1, 3])).unwrap() {
            Prop7Outcome::Applicable(r) => assert!(r.s1 && r.s2 && r.s3),
            o => panic!("{o:?}"),
        }
        let e6 = cs(19, &[0, 1, 2, 3, 5, 10]);
        let t = complement_trio(&e6, &e6).unwrap();
        assert_eq!(delta_flags(&t).delta_c, 1);
        assert!(matches!(
            prop7_statements(&e6, &e6).unwrap(),
            Prop7Outcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn reduction_examples() {
        let t = complement_trio(&cs(13, &[0, 1, 2, 3]), &cs(13, &[0, 1, 2, 3])).unwrap();
        assert_eq!(reduction_check_part1(&t, 1, 0, t.r).unwrap(), Some(true));
        let t = complement_trio(&cs(13, &[0, 1, 2, 3, 4]), &cs(13, &[0, 1, 2, 3])).unwrap();
        assert_eq!(reduction_check_part1(&t, 1, 0, 0).unwrap(), Some(true));
        let t = complement_trio(&cs(11, &[0, 1, 2, 3]), &cs(11, &[0])).unwrap();
        assert_eq!(reduction_check_part1(&t, 1, 0, t.r).unwrap(), None);
    }
}
