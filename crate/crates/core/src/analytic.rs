//! Exponential sums, half-arc counts and the closed-form constants used by
//! the density results, with exact rational companions and the numeric
//! lemma sweeps.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::cyclic::{require_prime, CyclicSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpSumValue {
    pub re: f64,
    pub im: f64,
    pub p: usize,
    pub x: i64,
}

impl ExpSumValue {
    pub fn magnitude(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `Σ_{a∈A} e^{2πi·ax/p}`.
pub fn exp_sum(a: &CyclicSet, x: i64) -> Result<ExpSumValue> {
    let p = a.modulus();
    require_prime(p)?;
    let xr = x.rem_euclid(p as i64) as u64;
    let (mut re, mut im) = (Kahan::default(), Kahan::default());
    for e in a.iter() {
        let k = (e as u64 * xr) % p as u64;
        let theta = TAU * k as f64 / p as f64;
        re.add(theta.cos());
        im.add(theta.sin());
    }
    Ok(ExpSumValue {
        re: re.sum,
        im: im.sum,
        p,
        x,
    })
}

/// Largest number of the points `e^{2πi·ax/p}` inside one open half-circle.
pub fn max_half_arc(a: &CyclicSet, x: i64) -> Result<usize> {
    let p = a.modulus();
    require_prime(p)?;
    let xr = x.rem_euclid(p as i64) as usize;
    if xr == 0 {
        return Err(Error::Precondition("x must be nonzero mod p".into()));
    }
    if a.is_empty() {
        return Ok(0);
    }
    let mut pts: Vec<usize> = a.iter().map(|e| e * xr % p).collect();
    pts.sort_unstable();
    let m = pts.len();
    // a window of residues fits in an open half-arc iff 2·span < p
    let mut best = 1;
    let mut j = 0;
    for i in 0..m {
        if j < i {
            j = i;
        }
        while j + 1 < i + m {
            let next = pts[(j + 1) % m] + if j + 1 >= m { p } else { 0 };
            if 2 * (next - pts[i]) < p {
                j += 1;
            } else {
                break;
            }
        }
        best = best.max(j - i + 1);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSlack {
    /// `(2·max_half_arc − |A|) − |S_A(x)|`.
    pub slack: f64,
    pub half_arc: usize,
    pub magnitude: f64,
    /// The bound `2·max_half_arc − |A|` is itself negative, so it says nothing.
    pub bound_negative: bool,
}

pub fn circle_bound_slack(a: &CyclicSet, x: i64) -> Result<CircleSlack> {
    let h = max_half_arc(a, x)?;
    let mag = exp_sum(a, x)?.magnitude();
    let bound = 2 * h as i64 - a.len() as i64;
    Ok(CircleSlack {
        slack: bound as f64 - mag,
        half_arc: h,
        magnitude: mag,
        bound_negative: bound < 0,
    })
}

fn c<T: FromPrimitive>(v: i64) -> T {
    T::from_i64(v).expect("small constant")
}

fn c1_parts<T: Num + Clone + FromPrimitive>(a: &T) -> (T, T) {
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let num = c::<T>(5) - c::<T>(18) * a.clone() - c::<T>(24) * a2.clone() - c::<T>(8) * a3.clone();
    let den = c::<T>(14) - c::<T>(9) * a.clone() - c::<T>(24) * a2 - c::<T>(8) * a3;
    (num, den)
}

fn cbeta_parts<T: Num + Clone + FromPrimitive>(a: &T, b: &T) -> (T, T) {
    let pw = |x: &T, k: u32| (0..k).fold(T::one(), |acc, _| acc * x.clone());
    let (a2, a3) = (pw(a, 2), pw(a, 3));
    let (b2, b3, b4, b5) = (pw(b, 2), pw(b, 3), pw(b, 4), pw(b, 5));
    let one_a = T::one() + a.clone();
    let num = c::<T>(-4) - (T::one() + c::<T>(12) * a.clone()) * b.clone()
        + c::<T>(3) * (c::<T>(5) + a.clone() - c::<T>(4) * a2.clone()) * b2.clone()
        + (c::<T>(-1) + c::<T>(3) * a.clone() - c::<T>(4) * a3.clone()) * b3.clone()
        - c::<T>(4) * pw(&one_a, 3) * b4.clone();
    let den = c::<T>(-4) + c::<T>(11) * b2.clone() + c::<T>(11) * b3.clone()
        - c::<T>(4) * b5.clone()
        - c::<T>(3) * a.clone() * b.clone() * (c::<T>(4) - c::<T>(5) * b2.clone() + c::<T>(4) * b4)
        - c::<T>(12) * a2 * (b2 + b5.clone())
        - c::<T>(4) * a3 * (b3 + b5);
    (num, den)
}

fn lev_parts<T: Num + Clone + FromPrimitive>(k: &T, s: &T) -> (T, T) {
    let pw = |x: &T, e: u32| (0..e).fold(T::one(), |acc, _| acc * x.clone());
    let num = c::<T>(-27) * k.clone() + c::<T>(9) * pw(k, 2)
        + s.clone()
            * (c::<T>(9) + c::<T>(9) * k.clone() - c::<T>(9) * pw(k, 2) + c::<T>(12) * pw(k, 3)
                - c::<T>(4) * pw(k, 4));
    let den = c::<T>(4) * s.clone() * (c::<T>(3) - k.clone()) * pw(k, 4);
    (num, den)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 0.212) {
        return Err(Error::Range(format!("alpha = {alpha} outside (0, 0.212]")));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.731..=1.0).contains(&beta) {
        return Err(Error::Range(format!("beta = {beta} outside [0.731, 1]")));
    }
    Ok(())
}

fn check_lev(k: f64, s: f64) -> Result<()> {
    if !(k > 2.0 && k < 3.0) {
        return Err(Error::Range(format!("K = {k} outside (2, 3)")));
    }
    if !(s >= k * k) {
        return Err(Error::Range(format!("s = {s} below K^2")));
    }
    Ok(())
}

pub fn const_c1(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (n, d) = c1_parts(&alpha);
    Ok(n / d)
}

pub fn const_cbeta(alpha: f64, beta: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_beta(beta)?;
    let (n, d) = cbeta_parts(&alpha, &beta);
    Ok(n / d)
}

/// Numerator and denominator of `c_β`, for sign checks.
pub fn cbeta_terms(alpha: f64, beta: f64) -> (f64, f64) {
    cbeta_parts(&alpha, &beta)
}

pub fn const_levshkredov(k: f64, s: f64) -> Result<f64> {
    check_lev(k, s)?;
    let (n, d) = lev_parts(&k, &s);
    Ok(n / d)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(q: &BigRational) -> f64 {
    // exact enough for range gating
    let (n, d) = (q.numer().to_string(), q.denom().to_string());
    n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN)
}

/// Parses a decimal or `n/d` literal as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), fp.len());
    let q = BigRational::new(n, d);
    Ok(if neg { -q } else { q })
}

fn check_alpha_q(a: &BigRational) -> Result<()> {
    if !(a.is_positive() && *a <= rat(212, 1000)) {
        return Err(Error::Range(format!("alpha = {a} outside (0, 0.212]")));
    }
    Ok(())
}

fn check_beta_q(b: &BigRational) -> Result<()> {
    if !(*b >= rat(731, 1000) && *b <= BigRational::one()) {
        return Err(Error::Range(format!("beta = {b} outside [0.731, 1]")));
    }
    Ok(())
}

pub fn const_c1_exact(alpha: &BigRational) -> Result<BigRational> {
    check_alpha_q(alpha)?;
    let (n, d) = c1_parts(alpha);
    Ok(n / d)
}

pub fn const_cbeta_exact(alpha: &BigRational, beta: &BigRational) -> Result<BigRational> {
    check_alpha_q(alpha)?;
    check_beta_q(beta)?;
    let (n, d) = cbeta_parts(alpha, beta);
    Ok(n / d)
}

pub fn const_levshkredov_exact(k: &BigRational, s: &BigRational) -> Result<BigRational> {
    check_lev(to_f64(k), to_f64(s))?;
    if !(*k > rat(2, 1) && *k < rat(3, 1) && *s >= k * k) {
        return Err(Error::Range(format!("K = {k}, s = {s} out of range")));
    }
    let (n, d) = lev_parts(k, s);
    Ok(n / d)
}

/// `((2ℓ+6−3a)/3, (2ℓ+6−3b)/3)`.
pub fn gamma_thresholds(a: i64, b: i64, ell: i64) -> (Ratio<i64>, Ratio<i64>) {
    (
        Ratio::new(2 * ell + 6 - 3 * a, 3),
        Ratio::new(2 * ell + 6 - 3 * b, 3),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    pub s: Option<f64>,
    pub c1: Option<f64>,
    pub c_beta: Option<f64>,
    pub c_levshkredov: Option<f64>,
    pub gamma_a: Option<String>,
    pub gamma_b: Option<String>,
}

/// One sweep or exact check from the numeric lemma suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub range: String,
    pub passed: bool,
    /// First few failing parameters, if any.
    pub failures: Vec<i64>,
    pub failure_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericLemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl NumericLemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const MAX_LISTED: usize = 20;

fn sweep(name: &str, lo: i64, hi: i64, f: impl Fn(i64) -> bool + Sync) -> LemmaCheck {
    let mut fails: Vec<i64> = (lo..=hi).into_par_iter().filter(|&r| !f(r)).collect();
    fails.sort_unstable();
    let failure_count = fails.len();
    fails.truncate(MAX_LISTED);
    LemmaCheck {
        name: name.to_string(),
        range: format!("[{lo}, {hi}]"),
        passed: failure_count == 0,
        failures: fails,
        failure_count,
    }
}

fn single(name: &str, range: &str, ok: bool) -> LemmaCheck {
    LemmaCheck {
        name: name.to_string(),
        range: range.to_string(),
        passed: ok,
        failures: Vec::new(),
        failure_count: usize::from(!ok),
    }
}

/// `sqrt(2r + 17/4) <= 10/3 + 0.16797 r`, exactly in integers.
pub fn sqrt_linear_bound(r: i64) -> bool {
    let rhs = 1_000_000i128 + 50_391 * r as i128;
    rhs >= 0 && (8 * r as i128 + 17) * 22_500_000_000 <= rhs * rhs
}

/// `⌊2r + 5/2 + sqrt(2r + 17/4)⌋ + r`.
pub fn atom_size_plus_r(r: i64) -> i64 {
    (4 * r + 5 + isqrt((8 * r + 17) as u64) as i64).div_euclid(2) + r
}

/// `(9253/1963)(10r' + 26.5 + sqrt(2r' + 17/4)) <= 48.3 r' + 136.937`, exactly.
pub fn r_prime_bound(r: i64) -> bool {
    let r = r as i128;
    let n = (48_300 * r + 136_937) * 1963 - (10_000 * r + 26_500) * 9253;
    let d: i128 = 9_253_000;
    n >= 0 && (8 * r + 17) * d * d <= 4 * n * n
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `0.466 n² − Σ_{j≥2} C(n,j) z^{j−2}`; nonnegative iff the quadratic
/// bound on `(1+z)^n` holds at `z > 0`.
pub fn stillness_margin(n: u32, z: f64) -> f64 {
    let tail: f64 = (2..=n).map(|j| binom(n, j) * z.powi(j as i32 - 2)).sum();
    0.466 * (n * n) as f64 - tail
}

fn stillness_margin_exact(n: u32, z: &BigRational) -> BigRational {
    let mut tail = BigRational::zero();
    let mut zp = BigRational::one();
    let mut bin = BigInt::from(n) * BigInt::from(n - 1) / BigInt::from(2);
    for j in 2..=n {
        tail += BigRational::from_integer(bin.clone()) * zp.clone();
        zp *= z.clone();
        bin = bin * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    rat(466 * (n * n) as i64, 1000) - tail
}

/// Sign changes of `f` on `[lo, hi]`, refined by bisection.
fn roots_by_bracketing(f: impl Fn(f64) -> f64, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let h = (hi - lo) / steps as f64;
    let mut out = Vec::new();
    for i in 0..steps {
        let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if fa.signum() == fb.signum() {
            continue;
        }
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if f(m).signum() == f(a).signum() {
                a = m;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Real roots of the numerator and denominator of `c_1` in `[-3, 1]`.
pub fn c1_critical_points() -> Vec<f64> {
    let mut v = roots_by_bracketing(|a| c1_parts(&a).0, -3.0, 1.0, 4000);
    v.extend(roots_by_bracketing(|a| c1_parts(&a).1, -3.0, 1.0, 4000));
    v.sort_by(f64::total_cmp);
    v
}

/// The whole battery: integer sweeps, the quadratic bound on `(1+z)^n`,
/// and the exact rational threshold comparisons.
pub fn numeric_lemma_suite() -> NumericLemmaReport {
    const TOP: i64 = 1_000_000;
    let mut checks = vec![
        sweep("sqrt_linear", -1, TOP, sqrt_linear_bound),
        sweep("r_prime", -1, TOP, r_prime_bound),
        sweep("x_plus_r_283_92", 2, TOP, |r| {
            atom_size_plus_r(r) * 92 <= 283 * (r + 3)
        }),
        sweep("x_plus_r_3143", 2, TOP, |r| {
            atom_size_plus_r(r) * 1000 <= 3143 * (r + 2)
        }),
        sweep("x_plus_r_31", 2, TOP, |r| {
            atom_size_plus_r(r) * 20 <= 31 * (2 * r + 5)
        }),
        sweep("x_plus_r_30885", 2, TOP, |r| {
            atom_size_plus_r(r) * 100_000 <= 30_885 * (10 * r + 27)
        }),
    ];

    // the quadratic bound on (1+z)^n: a float grid, then the exact value at
    // the right endpoint, which bounds the whole range since the tail grows
    // with z
    const GRID: usize = 100_000;
    let zmax = 0.0313;
    let mut fails = Vec::new();
    for n in 2..=8u32 {
        let grid_ok = (0..GRID)
            .into_par_iter()
            .all(|i| stillness_margin(n, zmax * i as f64 / (GRID - 1) as f64) >= 0.0);
        let exact_ok = stillness_margin_exact(n, &rat(313, 10_000)).is_positive()
            || stillness_margin_exact(n, &rat(313, 10_000)).is_zero();
        if !(grid_ok && exact_ok) {
            fails.push(n as i64);
        }
    }
    checks.push(LemmaCheck {
        name: "stillness".into(),
        range: "n in [2, 8], z in [0, 0.0313]".into(),
        passed: fails.is_empty(),
        failure_count: fails.len(),
        failures: fails,
    });

    let ratio = rat(9253, 1963);
    let lin = rat(1_016_797, 100_000);
    let cst = rat(265, 10) + rat(10, 3);
    let alpha = rat(527, 10_000);
    let inv = alpha.recip();
    checks.push(single(
        "alpha_derivation",
        "alpha = 0.0527",
        inv.clone() * rat(2, 1) + rat(10, 1) >= ratio.clone() * lin.clone()
            && inv * rat(6, 1) + rat(27, 1) >= ratio.clone() * cst.clone(),
    ));
    checks.push(single(
        "fixed_derivation",
        "48 and 141",
        rat(48, 1) >= ratio.clone() * lin && rat(141, 1) >= ratio.clone() * cst,
    ));

    let cp = c1_critical_points();
    let listed = [-2.0, -1.56, 0.2129, 0.56];
    let roots_ok = cp.len() == listed.len()
        && cp.iter().zip(listed).all(|(a, b)| (a - b).abs() <= 1e-3);
    checks.push(single("c1_critical_points", "[-3, 1]", roots_ok));

    let den_ok = (1..=212).into_par_iter().all(|i| {
        let a = i as f64 / 1000.0;
        (731..=1000).all(|j| cbeta_parts(&a, &(j as f64 / 1000.0)).1 > 0.0)
    });
    checks.push(single(
        "cbeta_denominator_positive",
        "(0, 0.212] x [0.731, 1] step 0.001",
        den_ok,
    ));

    let c = const_c1_exact(&rat(1, 9))
        .and_then(|c1| Ok(c1.min(const_cbeta_exact(&rat(1, 9), &rat(8484, 10_000))?)));
    checks.push(single(
        "density_constant",
        "alpha = 1/9, beta = 0.8484",
        matches!(c, Ok(v) if v >= rat(1963, 9253)),
    ));

    NumericLemmaReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, e: &[i64]) -> CyclicSet {
        CyclicSet::from_elems(n, e).unwrap()
    }

    #[test]
    fn exp_sum_examples() {
        let a = cs(7, &[0, 1, 2]);
        assert!((exp_sum(&a, 0).unwrap().magnitude() - 3.0).abs() < 1e-12);
        // 1 + 2cos(2π/7), by hand
        let want = 1.0 + 2.0 * (TAU / 7.0).cos();
        assert!((exp_sum(&a, 1).unwrap().magnitude() - want).abs() < 1e-12);
        assert!((want - 2.2470).abs() < 1e-4);
        let g = CyclicSet::full(5).unwrap();
        assert!(exp_sum(&g, 1).unwrap().magnitude() < 1e-12);
        assert!(exp_sum(&cs(6, &[0]), 1).is_err());
    }

    #[test]
    fn half_arc_examples() {
        assert_eq!(max_half_arc(&cs(7, &[0, 1, 2]), 1).unwrap(), 3);
        // three consecutive fifth roots span 144 degrees
        assert_eq!(max_half_arc(&CyclicSet::full(5).unwrap(), 1).unwrap(), 3);
        assert_eq!(max_half_arc(&cs(11, &[4]), 3).unwrap(), 1);
        assert_eq!(max_half_arc(&cs(7, &[0, 3]), 1).unwrap(), 2);
        assert_eq!(max_half_arc(&cs(7, &[0, 4]), 1).unwrap(), 2);
        assert_eq!(max_half_arc(&cs(2, &[0, 1]), 1).unwrap(), 1);
        assert!(max_half_arc(&cs(7, &[0]), 7).is_err());

        let s = circle_bound_slack(&cs(7, &[0, 1, 2]), 1).unwrap();
        assert!((s.slack - 0.753).abs() < 1e-3 && !s.bound_negative);
        let s = circle_bound_slack(&cs(13, &[5]), 2).unwrap();
        assert!(s.slack.abs() < 1e-12);
    }

    /// Brute-force half-arc count over a fine set of arc start angles.
    fn half_arc_oracle(a: &CyclicSet, x: i64) -> usize {
        let p = a.modulus() as i64;
        let pts: Vec<i64> = a.iter().map(|e| (e as i64 * x).rem_euclid(p)).collect();
        // arcs (s, s + p/2) with s = k/4 for k in [0, 4p)
        (0..4 * p)
            .map(|k| {
                pts.iter()
                    .filter(|&&q| {
                        let d = (4 * q - k).rem_euclid(4 * p);
                        d > 0 && d < 2 * p
                    })
                    .count()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn half_arc_matches_oracle() {
        for p in [2usize, 3, 5, 7, 11] {
            for m in 1u64..(1 << p) {
                let a = CyclicSet::from_mask(p, m).unwrap();
                for x in 1..p as i64 {
                    assert_eq!(max_half_arc(&a, x).unwrap(), half_arc_oracle(&a, x), "{a} x={x}");
                }
            }
        }
    }

    #[test]
    fn constant_examples() {
        assert!(const_c1(0.021).unwrap() >= 1.0 / 3.0);
        assert!((const_c1(0.021).unwrap() - 0.3341).abs() < 1e-4);
        assert!(const_c1(0.105).unwrap() >= 0.2);
        assert!(const_cbeta(0.105, 0.8).unwrap() >= 0.2);
        assert!(const_c1(0.3).is_err());
        assert!(const_cbeta(0.1, 0.7).is_err());
        // c1(1/9) is exactly 1963/9253, so only the rational path can decide
        let c1 = const_c1_exact(&rat(1, 9)).unwrap();
        assert_eq!(c1, rat(1963, 9253));
        let cb = const_cbeta_exact(&rat(1, 9), &parse_rational("0.8484").unwrap()).unwrap();
        assert!(cb > c1);

        assert!(const_levshkredov(2.572, 11.0).unwrap() > 0.0111);
        assert!(const_levshkredov(2.552, 11.0).unwrap() > 0.0289);
        assert!(const_levshkredov(2.578, 11.0).unwrap() > 0.00561);
        assert!(const_levshkredov(3.0, 11.0).is_err());
        assert!(const_levshkredov(2.5, 6.0).is_err());

        let k = parse_rational("2.572").unwrap();
        let v = const_levshkredov_exact(&k, &rat(11, 1)).unwrap();
        assert!(v > rat(111, 10_000));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_thresholds(10, 10, 19), (Ratio::new(14, 3), Ratio::new(14, 3)));
        assert_eq!(gamma_thresholds(12, 10, 21), (Ratio::from(4), Ratio::from(6)));
        assert_eq!(gamma_thresholds(7, 7, 7).0, Ratio::new(6 - 7, 3));
    }

    #[test]
    fn lemma_pointwise() {
        // near-tight at r = 16
        assert!(sqrt_linear_bound(16));
        let lhs = 36.25f64.sqrt();
        let rhs = 10.0 / 3.0 + 0.16797 * 16.0;
        assert!(rhs - lhs < 1e-4 && rhs >= lhs);
        assert!((stillness_margin(2, 0.01) - 0.864).abs() < 1e-12);
        // (8 + 5 + isqrt(33)) / 2 + 2
        assert_eq!(atom_size_plus_r(2), 11);
        assert!(c1_critical_points().iter().any(|r| (r - 0.2129).abs() < 1e-3));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("0.8484").unwrap(), rat(8484, 10_000));
        assert_eq!(parse_rational("1/9").unwrap(), rat(1, 9));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
