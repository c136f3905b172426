//! Isoperimetric numbers, fragments and atoms by exhaustive search, and
//! Petridis ratio minimizers.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime};
use crate::cyclic::{CyclicSet, IntSet};
use crate::error::{Error, Result};

/// Default bound on `n` for subset enumeration.
pub const ENUM_LIMIT: usize = 24;
/// Atoms listed before switching to counting only.
pub const ATOM_CAP: usize = 10_000;
/// Fragments listed before switching to counting only.
pub const FRAGMENT_CAP: usize = 1_000;
/// Default bound on `|A|` for the Petridis minimizer.
pub const PETRIDIS_LIMIT: usize = 20;

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn rot(x: u32, t: usize, n: usize) -> u32 {
    let t = t % n;
    if t == 0 {
        return x;
    }
    ((x << t) | (x >> (n - t))) & full_mask(n)
}

fn sum_mask(x: u32, b: &[usize], n: usize) -> u32 {
    b.iter().fold(0, |acc, &t| acc | rot(x, t, n))
}

fn to_set(n: usize, m: u32) -> CyclicSet {
    CyclicSet::from_mask(n, m as u64).expect("n <= 32")
}

fn mask_of(a: &CyclicSet) -> u32 {
    a.mask() as u32
}

/// Everything known about `κ_k(B)` after exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomReport {
    pub n: usize,
    pub k: usize,
    pub kappa: i64,
    /// `κ_k(B) - |B|`.
    pub r: i64,
    pub alpha: usize,
    pub fragment_count: usize,
    pub atom_count: usize,
    /// Listed fragments; empty when there are more than [`FRAGMENT_CAP`].
    pub fragments: Vec<CyclicSet>,
    pub fragments_truncated: bool,
    pub atoms: Vec<CyclicSet>,
    pub atoms_truncated: bool,
}

/// Raw search output: `κ_k`, every fragment containing 0, and the minimum
/// of `|X+B|` for each size `|X| = s` (X containing 0).
struct Search {
    kappa: i64,
    zero_fragments: Vec<u32>,
    min_sum_by_size: Vec<u32>,
}

fn search(n: usize, b: u32, k: usize) -> Option<Search> {
    let b_elems: Vec<usize> = (0..n).filter(|i| b >> i & 1 == 1).collect();
    let half = 1u64 << (n - 1);
    // chunk on the high bits of the subset index
    let chunk_bits = (n - 1).min(8);
    let chunks = 1u64 << chunk_bits;
    let per = half / chunks;
    let parts: Vec<(i64, Vec<u32>, Vec<u32>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = i64::MAX;
            let mut frags = Vec::new();
            let mut min_sum = vec![u32::MAX; n + 1];
            for idx in c * per..(c + 1) * per {
                let x = ((idx as u32) << 1) | 1;
                let s = sum_mask(x, &b_elems, n);
                let (xs, ss) = (x.count_ones(), s.count_ones());
                let m = &mut min_sum[xs as usize];
                *m = (*m).min(ss);
                if (xs as usize) < k || n - (ss as usize) < k {
                    continue;
                }
                let v = ss as i64 - xs as i64;
                if v < best {
                    best = v;
                    frags.clear();
                }
                if v == best {
                    frags.push(x);
                }
            }
            (best, frags, min_sum)
        })
        .collect();
    let kappa = parts.iter().map(|p| p.0).min()?;
    if kappa == i64::MAX {
        return None;
    }
    let mut zero_fragments = Vec::new();
    let mut min_sum_by_size = vec![u32::MAX; n + 1];
    for (v, f, m) in parts {
        if v == kappa {
            zero_fragments.extend(f);
        }
        for (a, b) in min_sum_by_size.iter_mut().zip(m) {
            *a = (*a).min(b);
        }
    }
    Some(Search {
        kappa,
        zero_fragments,
        min_sum_by_size,
    })
}

fn all_translates(n: usize, masks: &[u32]) -> BTreeSet<u32> {
    masks
        .iter()
        .flat_map(|&m| (0..n).map(move |t| rot(m, t, n)))
        .collect()
}

fn validate(b: &CyclicSet, k: usize, limit: usize) -> Result<(usize, u32)> {
    let n = b.modulus();
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::Range("k must be at least 1".into()));
    }
    if n > limit.min(32) {
        return Err(Error::Capacity(format!(
            "modulus {n} exceeds the enumeration limit {}",
            limit.min(32)
        )));
    }
    Ok((n, mask_of(b)))
}

/// `κ_k(B)` with its fragments and atoms, or `None` if `B` is not
/// `k`-separable. Uses the default enumeration limit.
pub fn kappa_atoms(b: &CyclicSet, k: usize) -> Result<Option<AtomReport>> {
    kappa_atoms_with_limit(b, k, ENUM_LIMIT)
}

pub fn kappa_atoms_with_limit(b: &CyclicSet, k: usize, limit: usize) -> Result<Option<AtomReport>> {
    let (n, bm) = validate(b, k, limit)?;
    let Some(s) = search(n, bm, k) else {
        return Ok(None);
    };
    let alpha = s
        .zero_fragments
        .iter()
        .map(|f| f.count_ones() as usize)
        .min()
        .expect("at least one fragment");
    // each translation class of size-s fragments has n/s times as many
    // members as members containing 0
    let mut by_size = vec![0usize; n + 1];
    for f in &s.zero_fragments {
        by_size[f.count_ones() as usize] += 1;
    }
    let fragment_count: usize = (1..=n).map(|sz| by_size[sz] * n / sz).sum();
    let zero_atoms: Vec<u32> = s
        .zero_fragments
        .iter()
        .copied()
        .filter(|f| f.count_ones() as usize == alpha)
        .collect();
    let atom_count = zero_atoms.len() * n / alpha;
    let atoms_truncated = atom_count > ATOM_CAP;
    let atoms = if atoms_truncated {
        Vec::new()
    } else {
        all_translates(n, &zero_atoms)
            .into_iter()
            .map(|m| to_set(n, m))
            .collect()
    };
    let fragments_truncated = fragment_count > FRAGMENT_CAP;
    let fragments = if fragments_truncated {
        Vec::new()
    } else {
        all_translates(n, &s.zero_fragments)
            .into_iter()
            .map(|m| to_set(n, m))
            .collect()
    };
    Ok(Some(AtomReport {
        n,
        k,
        kappa: s.kappa,
        r: s.kappa - b.len() as i64,
        alpha,
        fragment_count,
        atom_count,
        fragments,
        fragments_truncated,
        atoms,
        atoms_truncated,
    }))
}

/// One bound evaluated on one `(B, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

impl TheoremCheck {
    fn new(name: &str, applicable: bool, holds: bool, detail: String) -> Self {
        TheoremCheck {
            name: name.to_string(),
            applicable,
            holds: !applicable || holds,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomTheoremReport {
    pub n: usize,
    pub k: usize,
    pub kappa: i64,
    pub alpha: usize,
    pub checks: Vec<TheoremCheck>,
}

impl AtomTheoremReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `X - x` is a subgroup for some (any) `x ∈ X`.
pub fn is_coset(x: &CyclicSet) -> bool {
    !x.is_empty() && x.stabilizer().len() == x.len()
}

/// `x <= c + sqrt(m)` for integers, `m >= 0`.
fn le_plus_sqrt(x: i64, c: i64, m: i64) -> bool {
    let t = x - c;
    t <= 0 || (m >= 0 && t * t <= m)
}

/// `G/H` for `H` of order `h`: reduction modulo `n / h`.
fn quotient(x: &CyclicSet, h: usize) -> CyclicSet {
    let m = x.modulus() / h;
    CyclicSet::from_residues(m, x.iter().map(|e| e as i64)).expect("m >= 1")
}

/// Size of a 2-atom of `x` (as the summand set), if it is 2-separable.
fn alpha2(x: &CyclicSet) -> Option<usize> {
    let n = x.modulus();
    if n < 2 {
        return None;
    }
    search(n, mask_of(x), 2).map(|s| {
        s.zero_fragments
            .iter()
            .map(|f| f.count_ones() as usize)
            .min()
            .unwrap()
    })
}

/// Evaluates the atom theorems on `(B, k)`. Returns `None` when `B` is not
/// `k`-separable.
pub fn check_atom_theorems(b: &CyclicSet, k: usize) -> Result<Option<AtomTheoremReport>> {
    let (n, bm) = validate(b, k, ENUM_LIMIT)?;
    let Some(s) = search(n, bm, k) else {
        return Ok(None);
    };
    let bl = b.len() as i64;
    let kappa = s.kappa;
    let r0 = kappa - bl;
    let fragments: Vec<u32> = all_translates(n, &s.zero_fragments).into_iter().collect();
    let alpha = fragments.iter().map(|f| f.count_ones()).min().unwrap() as usize;
    let atoms: Vec<u32> = fragments
        .iter()
        .copied()
        .filter(|f| f.count_ones() as usize == alpha)
        .collect();
    let b_elems: Vec<usize> = b.elems();
    let prime = is_prime(n as u64);
    let mut checks = Vec::new();

    // Fundamental theorem: |X ∩ F| >= k forces X ⊆ F
    let mut bad = None;
    'outer: for &x in &atoms {
        for &f in &fragments {
            if (x & f).count_ones() as usize >= k && x & !f != 0 {
                bad = Some((x, f));
                break 'outer;
            }
        }
    }
    checks.push(TheoremCheck::new(
        "fundamental",
        true,
        bad.is_none(),
        match bad {
            Some((x, f)) => format!("atom {} meets fragment {} without inclusion", to_set(n, x), to_set(n, f)),
            None => format!("{} atoms x {} fragments", atoms.len(), fragments.len()),
        },
    ));

    // H(X) = H(X+B) for atoms
    let bad = atoms.iter().find(|&&x| {
        let xs = to_set(n, x);
        let xb = to_set(n, sum_mask(x, &b_elems, n));
        xs.stabilizer() != xb.stabilizer()
    });
    checks.push(TheoremCheck::new(
        "hx_hxb",
        true,
        bad.is_none(),
        bad.map(|&x| format!("atom {}", to_set(n, x))).unwrap_or_default(),
    ));

    // |Y+B| >= min(n-k+1, |Y|+κ) for |Y| >= k
    let bad = (k..=n).find(|&sz| {
        let m = s.min_sum_by_size[sz];
        m != u32::MAX && (m as i64) < ((n - k + 1) as i64).min(sz as i64 + kappa)
    });
    checks.push(TheoremCheck::new(
        "iso_bound",
        true,
        bad.is_none(),
        bad.map(|sz| format!("size {sz}")).unwrap_or_default(),
    ));

    // modular atoms: X mod H(X) is a ⌈k/|H|⌉-atom of B mod H(X)
    let mut applicable = false;
    let mut bad = None;
    for &x in &atoms {
        let xs = to_set(n, x);
        let h = xs.stabilizer().len();
        if h == 1 {
            continue;
        }
        applicable = true;
        let kk = k.div_ceil(h);
        let xbar = quotient(&xs, h);
        let bbar = quotient(b, h);
        let ok = match search(bbar.modulus(), mask_of(&bbar), kk) {
            Some(q) => {
                let qa = q.zero_fragments.iter().map(|f| f.count_ones()).min().unwrap();
                let set: BTreeSet<u32> = all_translates(bbar.modulus(), &q.zero_fragments)
                    .into_iter()
                    .filter(|f| f.count_ones() == qa)
                    .collect();
                set.contains(&mask_of(&xbar))
            }
            None => false,
        };
        if !ok {
            bad = Some(xs);
            break;
        }
    }
    checks.push(TheoremCheck::new(
        "modatoms",
        applicable,
        bad.is_none(),
        bad.map(|x| format!("atom {x}")).unwrap_or_default(),
    ));

    // 2-atom bound α_2 <= r+3 when some 2-atom is not a coset
    let non_coset = atoms.iter().any(|&x| !is_coset(&to_set(n, x)));
    let app = k == 2 && non_coset;
    checks.push(TheoremCheck::new(
        "thm8",
        app,
        alpha as i64 <= r0 + 3,
        format!("alpha={alpha} r={r0}"),
    ));

    // prime-modulus 2-atom bounds, for every admissible r >= κ_2 - |B|
    let base = k == 2 && prime && bl >= 2;
    let mut app1 = false;
    let mut ok1 = true;
    let mut app2 = false;
    let mut ok2 = true;
    if base {
        let a = alpha as i64;
        let mut r = r0;
        while bl <= n as i64 - 3 * r - 4 {
            app1 = true;
            ok1 &= le_plus_sqrt(2 * a, 4, 4 * (2 * r + 2));
            r += 1;
        }
        let mut r = r0.max(1);
        while bl <= n as i64 - 3 * r - 5 {
            app2 = true;
            ok2 &= le_plus_sqrt(2 * a, 1, 8 * r + 17);
            r += 1;
        }
    }
    checks.push(TheoremCheck::new("thm9_1", app1, ok1, format!("alpha={alpha} r>={r0}")));
    checks.push(TheoremCheck::new("thm9_2", app2, ok2, format!("alpha={alpha} r>={}", r0.max(1))));

    // k-atom bound through the quotient by H(X)
    let spans = b.iter().fold(0u64, |g, x| {
        gcd(g, ((x + n - b.min_elem().unwrap()) % n) as u64)
    });
    let generates = gcd(spans, n as u64) == 1;
    let mut app = false;
    let mut ok = true;
    let mut detail = String::new();
    if k >= 2 && generates {
        for &x in &atoms {
            let xs = to_set(n, x);
            if is_coset(&xs) {
                continue;
            }
            let h = xs.stabilizer().len() as i64;
            let xbar = quotient(&xs, h as usize);
            let Some(a2) = alpha2(&xbar) else {
                continue;
            };
            app = true;
            let kk = (k as i64 + h - 1) / h;
            let mid = kk * h - h + r0 + h * a2 as i64;
            let top = k as i64 - 1 + r0 + h * a2 as i64;
            if alpha as i64 > mid || mid > top {
                ok = false;
                detail = format!("atom {xs}: alpha={alpha} mid={mid} top={top}");
                break;
            }
        }
    }
    checks.push(TheoremCheck::new("thm10", app, ok, detail));

    // corollary bounds for prime moduli, every admissible r >= κ_k - |B|
    let base = k >= 2 && prime && bl >= 2;
    let (kk, a) = (k as i64, alpha as i64);
    let n_i = n as i64;
    let mut apps = [false; 3];
    let mut oks = [true; 3];
    if base {
        // every r >= r0 qualifies for part 1; bounds only grow with r
        apps[0] = true;
        oks[0] = a <= kk + 2 * r0 + 2;
        let mut r = r0;
        while kk <= n_i - 5 * r - 6 {
            apps[1] = true;
            oks[1] &= le_plus_sqrt(a, kk + r + 1, 2 * r + 2);
            r += 1;
        }
        let mut r = r0.max(1);
        while kk <= n_i - 5 * r - 7 {
            apps[2] = true;
            // α <= k + r - 1/2 + sqrt(2r + 17/4)
            oks[2] &= le_plus_sqrt(2 * a, 2 * (kk + r) - 1, 8 * r + 17);
            r += 1;
        }
    }
    for (i, name) in ["cor11_1", "cor11_2", "cor11_3"].iter().enumerate() {
        checks.push(TheoremCheck::new(name, apps[i], oks[i], format!("alpha={alpha} r>={r0}")));
    }

    Ok(Some(AtomTheoremReport {
        n,
        k,
        kappa,
        alpha,
        checks,
    }))
}

/// Exact minimizer of `|A'+B| / |A'|` over nonempty `A' ⊆ A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetridisResult {
    #[serde(rename = "Aprime")]
    pub a_prime: Vec<i64>,
    /// `|A'+B|`.
    pub num: usize,
    /// `|A'|`.
    pub den: usize,
}

impl PetridisResult {
    /// `|A'| / |A|` as a pair.
    pub fn fraction_of(&self, a_len: usize) -> (usize, usize) {
        (self.den, a_len)
    }
}

fn minimize<F: Fn(u64) -> (Vec<i64>, usize)>(m: usize, f: F) -> PetridisResult {
    let mut best: Option<PetridisResult> = None;
    for mask in 1u64..(1u64 << m) {
        let (elems, num) = f(mask);
        let den = elems.len();
        let better = match &best {
            None => true,
            Some(b) => {
                let (l, r) = (num as u128 * b.den as u128, b.num as u128 * den as u128);
                l < r || (l == r && (den, &elems) < (b.den, &b.a_prime))
            }
        };
        if better {
            best = Some(PetridisResult {
                a_prime: elems,
                num,
                den,
            });
        }
    }
    best.expect("A is nonempty")
}

fn petridis_check_sizes(a_len: usize, b_empty: bool) -> Result<()> {
    if a_len == 0 || b_empty {
        return Err(Error::EmptySet);
    }
    if a_len > PETRIDIS_LIMIT {
        return Err(Error::Capacity(format!(
            "|A| = {a_len} exceeds the subset limit {PETRIDIS_LIMIT}"
        )));
    }
    Ok(())
}

pub fn petridis_minimizer_int(a: &IntSet, b: &IntSet) -> Result<PetridisResult> {
    petridis_check_sizes(a.len(), b.is_empty())?;
    Ok(minimize(a.len(), |mask| {
        let sub = a.select(mask);
        let num = sub.sumset(b).len();
        (sub.as_slice().to_vec(), num)
    }))
}

pub fn petridis_minimizer_cyclic(a: &CyclicSet, b: &CyclicSet) -> Result<PetridisResult> {
    petridis_check_sizes(a.len(), b.is_empty())?;
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: b.modulus(),
        });
    }
    let elems = a.elems_i64();
    let n = a.modulus();
    Ok(minimize(elems.len(), |mask| {
        let sub: Vec<i64> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect();
        let set = CyclicSet::from_elems(n, &sub).expect("in range");
        let num = set.sumset(b).expect("same modulus").len();
        (sub, num)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, e: &[i64]) -> CyclicSet {
        CyclicSet::from_elems(n, e).unwrap()
    }

    /// Plain definition over every subset, no translation reduction.
    fn kappa_oracle(b: &CyclicSet, k: usize) -> Option<(i64, Vec<u32>)> {
        let n = b.modulus();
        let mut best: Option<(i64, Vec<u32>)> = None;
        for x in 1u32..(1 << n) {
            let xs = to_set(n, x);
            let s = xs.sumset(b).unwrap();
            if xs.len() < k || n - s.len() < k {
                continue;
            }
            let v = s.len() as i64 - xs.len() as i64;
            match &mut best {
                Some((bv, list)) if v == *bv => list.push(x),
                Some((bv, _)) if v > *bv => {}
                _ => best = Some((v, vec![x])),
            }
        }
        best
    }

    #[test]
    fn search_matches_oracle() {
        for n in 3..=9usize {
            for bm in 1u32..(1 << n) {
                let b = to_set(n, bm);
                for k in 1..=2 {
                    let got = kappa_atoms(&b, k).unwrap();
                    let want = kappa_oracle(&b, k);
                    match (got, want) {
                        (None, None) => {}
                        (Some(g), Some((v, list))) => {
                            assert_eq!(g.kappa, v, "n={n} B={b} k={k}");
                            assert_eq!(g.fragment_count, list.len());
                            let a = list.iter().map(|f| f.count_ones()).min().unwrap() as usize;
                            assert_eq!(g.alpha, a);
                        }
                        (g, w) => panic!("n={n} B={b} k={k}: {g:?} vs {w:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn atom_examples() {
        let r = kappa_atoms(&cs(7, &[0, 1]), 2).unwrap().unwrap();
        assert_eq!((r.kappa, r.r, r.alpha), (1, -1, 2));
        assert_eq!(r.atoms.len(), 7);
        assert!(r.atoms.iter().all(|x| {
            let e = x.elems();
            (e[1] + 7 - e[0]) % 7 == 1 || (e[0] + 7 - e[1]) % 7 == 1
        }));

        let r = kappa_atoms(&cs(11, &[0, 1, 2]), 2).unwrap().unwrap();
        assert_eq!((r.kappa, r.alpha), (2, 2));

        let r = kappa_atoms(&cs(6, &[0, 3]), 1).unwrap().unwrap();
        assert_eq!(r.kappa, 0);
        assert!(r.atoms.iter().all(is_coset));
        assert!(r.atoms.iter().all(|a| a.len() == 2));

        assert!(kappa_atoms(&CyclicSet::full(5).unwrap(), 1).unwrap().is_none());
        assert!(matches!(
            kappa_atoms(&cs(25, &[0]), 1),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn theorem_examples() {
        let rep = check_atom_theorems(&cs(7, &[0, 1]), 2).unwrap().unwrap();
        assert!(rep.all_hold());
        let t8 = rep.check("thm8").unwrap();
        assert!(t8.applicable && t8.holds);
        let rep = check_atom_theorems(&cs(11, &[0, 1, 2]), 2).unwrap().unwrap();
        let t9 = rep.check("thm9_1").unwrap();
        assert!(t9.applicable && t9.holds);
    }

    #[test]
    fn petridis_examples() {
        let a = IntSet::new([0, 1]);
        let p = petridis_minimizer_int(&a, &a).unwrap();
        assert_eq!((p.a_prime.clone(), p.num, p.den), (vec![0, 1], 3, 2));
        let two_b = a.sumset(&a);
        let s = IntSet::new(p.a_prime.clone()).sumset(&two_b).len();
        assert!(s * 4 <= 9 * 2);

        let p = petridis_minimizer_int(&IntSet::new([5]), &IntSet::new([0, 3, 9])).unwrap();
        assert_eq!((p.num, p.den), (3, 1));

        let g = CyclicSet::full(6).unwrap();
        let p = petridis_minimizer_cyclic(&g, &cs(6, &[0, 2])).unwrap();
        assert_eq!(p.num, p.den);
    }
}
