//! Exact set arithmetic in Z/nZ and Z.
//!
//! [`CyclicSet`] stores a subset of Z/nZ as a little-endian word bitset (bit `i`
//! of word `i / 64` is element `i`). Sumsets are computed as a union of
//! rotations of the larger operand by the members of the smaller one.
//! [`IntSet`] is a sorted, duplicate-free subset of Z.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, reduce};
use crate::error::{Error, Result};

const W: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(W)
}

fn top_mask(n: usize) -> u64 {
    if n.is_multiple_of(W) {
        !0
    } else {
        (1u64 << (n % W)) - 1
    }
}

#[inline]
fn shl_word(src: &[u64], s: usize, i: usize) -> u64 {
    let (ws, bs) = (s / W, s % W);
    if i < ws {
        return 0;
    }
    let j = i - ws;
    let mut v = src.get(j).copied().unwrap_or(0) << bs;
    if bs > 0 && j >= 1 {
        v |= src[j - 1] >> (W - bs);
    }
    v
}

#[inline]
fn shr_word(src: &[u64], s: usize, i: usize) -> u64 {
    let (ws, bs) = (s / W, s % W);
    let j = i + ws;
    let mut v = src.get(j).copied().unwrap_or(0) >> bs;
    if bs > 0 {
        if let Some(&hi) = src.get(j + 1) {
            v |= hi << (W - bs);
        }
    }
    v
}

/// ORs `src` translated by `k` (mod n) into `acc`.
fn rotate_or(src: &[u64], n: usize, k: usize, acc: &mut [u64]) {
    let last = acc.len() - 1;
    if k == 0 {
        for (a, s) in acc.iter_mut().zip(src) {
            *a |= *s;
        }
        return;
    }
    for (i, a) in acc.iter_mut().enumerate() {
        let mut v = shl_word(src, k, i) | shr_word(src, n - k, i);
        if i == last {
            v &= top_mask(n);
        }
        *a |= v;
    }
}

/// A subset of Z/nZ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicSet {
    n: usize,
    words: Vec<u64>,
}

impl CyclicSet {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(CyclicSet {
            n,
            words: vec![0; words_for(n)],
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for w in s.words.iter_mut() {
            *w = !0;
        }
        let last = s.words.len() - 1;
        s.words[last] &= top_mask(n);
        Ok(s)
    }

    /// Builds a set from elements that must already lie in `[0, n-1]`.
    pub fn from_elems(n: usize, elems: &[i64]) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for &e in elems {
            if e < 0 || e as usize >= n {
                return Err(Error::ElementOutOfRange { elem: e, n });
            }
            s.insert(e as usize);
        }
        Ok(s)
    }

    /// Builds a set from arbitrary integers, reducing them modulo `n`.
    pub fn from_residues<I: IntoIterator<Item = i64>>(n: usize, elems: I) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for e in elems {
            s.insert(reduce(e, n));
        }
        Ok(s)
    }

    /// `{start, start+1, ..., start+len-1}` reduced modulo `n`.
    pub fn interval(n: usize, start: i64, len: usize) -> Result<Self> {
        Self::from_residues(n, (0..len as i64).map(|i| start + i))
    }

    pub fn singleton(n: usize, x: i64) -> Result<Self> {
        Self::from_residues(n, [x])
    }

    /// Set whose bitset is the low `n` bits of `mask` (requires `n <= 64`).
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > W {
            return Err(Error::InvalidModulus(n));
        }
        Ok(CyclicSet {
            n,
            words: vec![mask & top_mask(n)],
        })
    }

    /// Low word of the bitset; the whole set when `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && (self.words[x / W] >> (x % W)) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.n, "element {x} out of range for modulus {}", self.n);
        self.words[x / W] |= 1 << (x % W);
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.n {
            self.words[x / W] &= !(1 << (x % W));
        }
    }

    pub fn with(&self, x: usize) -> Self {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * W + b)
            })
        })
    }

    pub fn elems(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn elems_i64(&self) -> Vec<i64> {
        self.iter().map(|x| x as i64).collect()
    }

    pub fn min_elem(&self) -> Option<usize> {
        self.iter().next()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        let last = s.words.len() - 1;
        s.words[last] &= top_mask(self.n);
        s
    }

    /// `-A`.
    pub fn neg(&self) -> Self {
        let mut s = CyclicSet {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        for x in self.iter() {
            s.insert((self.n - x) % self.n);
        }
        s
    }

    /// `v + A`.
    pub fn translate(&self, v: i64) -> Self {
        let k = reduce(v, self.n);
        let mut out = vec![0; self.words.len()];
        rotate_or(&self.words, self.n, k, &mut out);
        CyclicSet {
            n: self.n,
            words: out,
        }
    }

    /// `{u·a : a ∈ A}`; `u` need not be a unit.
    pub fn scale(&self, u: i64) -> Self {
        let u = reduce(u, self.n) as u128;
        let mut s = CyclicSet {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        for x in self.iter() {
            s.insert(((x as u128 * u) % self.n as u128) as usize);
        }
        s
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(CyclicSet { n: self.n, words })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(CyclicSet { n: self.n, words })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        Ok(CyclicSet { n: self.n, words })
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// `A + B`. Empty when either operand is empty.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = vec![0; self.words.len()];
        for b in small.iter() {
            rotate_or(&big.words, self.n, b, &mut acc);
        }
        Ok(CyclicSet {
            n: self.n,
            words: acc,
        })
    }

    /// `A - B`.
    pub fn difference_set(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.sumset(&other.neg())
    }

    /// `A + A + ... + A` (`k` summands, `k >= 1`).
    pub fn multiple(&self, k: usize) -> Self {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.sumset(self).expect("same modulus");
        }
        acc
    }

    /// `H(A) = {x : x + A = A}`. The stabilizer of the empty set is the whole group.
    pub fn stabilizer(&self) -> Self {
        let mut h = CyclicSet {
            n: self.n,
            words: vec![0; self.words.len()],
        };
        // x + A = A forces x to be a multiple of n / |H|, and |H| divides |A|.
        for x in 0..self.n {
            if self.translate(x as i64) == *self {
                h.insert(x);
            }
        }
        h
    }

    /// The shift `t` with `self = t + other`, smallest first, if any.
    pub fn translate_offset(&self, other: &Self) -> Option<usize> {
        if self.n != other.n || self.len() != other.len() {
            return None;
        }
        if self.is_empty() {
            return Some(0);
        }
        let a0 = self.min_elem()?;
        // every valid shift maps some element of `other` onto a0
        let mut shifts: Vec<usize> = other.iter().map(|b| (a0 + self.n - b) % self.n).collect();
        shifts.sort_unstable();
        shifts
            .into_iter()
            .find(|&t| other.translate(t as i64) == *self)
    }

    pub fn is_translate_of(&self, other: &Self) -> bool {
        self.translate_offset(other).is_some()
    }

    /// Smallest translate (in the numeric bitset order) and the shift producing it.
    pub fn min_translate(&self) -> (Self, usize) {
        let mut best = self.clone();
        let mut best_v = 0;
        if self.is_empty() {
            return (best, 0);
        }
        // the minimum contains 0, so only shifts moving an element onto 0 matter
        let mut shifts: Vec<usize> = self.iter().map(|a| (self.n - a) % self.n).collect();
        shifts.sort_unstable();
        for (i, v) in shifts.into_iter().enumerate() {
            let t = self.translate(v as i64);
            if i == 0 || t < best {
                best = t;
                best_v = v;
            }
        }
        (best, best_v)
    }

    /// Bitset as a fixed-width big-endian hex string (`ceil(n/4)` digits).
    pub fn to_hex(&self) -> String {
        let digits = self.n.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let w = self.words[bit / W] >> (bit % W);
            s.push(std::char::from_digit((w & 0xf) as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for (d, c) in hex.chars().rev().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if v >> b & 1 == 1 {
                    let x = d * 4 + b;
                    if x >= n {
                        return Err(Error::ElementOutOfRange { elem: x as i64, n });
                    }
                    s.insert(x);
                }
            }
        }
        Ok(s)
    }
}

/// Numeric order of the bitsets: bit `n-1` is the most significant.
impl Ord for CyclicSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for CyclicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}} mod {}", join(self.iter()), self.n)
    }
}

impl fmt::Display for CyclicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(self.iter()))
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize, Deserialize)]
struct CyclicSetRepr {
    n: usize,
    elems: Vec<i64>,
}

impl Serialize for CyclicSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclicSetRepr {
            n: self.n,
            elems: self.elems_i64(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclicSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CyclicSetRepr::deserialize(d)?;
        CyclicSet::from_elems(repr.n, &repr.elems).map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list of integers such as `"0,1,2,3,5,10"`.
pub fn parse_set_literal(s: &str) -> Result<Vec<i64>> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<i64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

/// An invertible affine map `x ↦ u·x + v` of Z/nZ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    n: usize,
    u: usize,
    v: usize,
}

impl AffineMap {
    pub fn new(n: usize, u: i64, v: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(n));
        }
        let (u, v) = (reduce(u, n), reduce(v, n));
        if gcd(u as u64, n as u64) != 1 {
            return Err(Error::NotUnit { value: u, n });
        }
        Ok(AffineMap { n, u, v })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 1, 0)
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn multiplier(&self) -> usize {
        self.u
    }

    pub fn shift(&self) -> usize {
        self.v
    }

    pub fn apply(&self, x: usize) -> usize {
        ((self.u as u128 * x as u128 + self.v as u128) % self.n as u128) as usize
    }

    pub fn inverse(&self) -> Self {
        let ui = arith::mod_inverse(self.u, self.n).expect("unit");
        let v = (self.n - (ui as u128 * self.v as u128 % self.n as u128) as usize) % self.n;
        AffineMap { n: self.n, u: ui, v }
    }
}

/// `f(A) = {u·a + v}`.
pub fn affine_image(a: &CyclicSet, f: &AffineMap) -> Result<CyclicSet> {
    if a.modulus() != f.n {
        return Err(Error::ModulusMismatch {
            left: a.modulus(),
            right: f.n,
        });
    }
    Ok(a.scale(f.u as i64).translate(f.v as i64))
}

/// Orbit representative of a pair under `(A, B) ↦ (uA + vA, uB + vB)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalPair {
    pub a: CyclicSet,
    pub b: CyclicSet,
    pub u: usize,
    pub va: usize,
    pub vb: usize,
}

impl CanonicalPair {
    /// Fixed-width hex key; string order agrees with the pair order.
    pub fn key(&self) -> String {
        format!("{}:{}", self.a.to_hex(), self.b.to_hex())
    }
}

/// The smallest pair `(uA + vA, uB + vB)` over all units `u` and shifts,
/// compared on `A` first and then `B`; ties go to the smallest `u`, then the
/// smallest shifts.
pub fn canonical_pair(a: &CyclicSet, b: &CyclicSet) -> Result<CanonicalPair> {
    a.check_same(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.modulus();
    let mut best: Option<CanonicalPair> = None;
    for u in arith::units(n) {
        let (ca, va) = a.scale(u as i64).min_translate();
        if let Some(cur) = &best {
            if ca > cur.a {
                continue;
            }
        }
        let (cb, vb) = b.scale(u as i64).min_translate();
        let better = match &best {
            None => true,
            Some(cur) => (&ca, &cb) < (&cur.a, &cur.b),
        };
        if better {
            best = Some(CanonicalPair {
                a: ca,
                b: cb,
                u,
                va,
                vb,
            });
        }
    }
    Ok(best.expect("at least one unit"))
}

/// `|A+B| - (|H+A| + |H+B| - |H|)` with `H = H(A+B)`; never negative.
pub fn kneser_slack(a: &CyclicSet, b: &CyclicSet) -> Result<i64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let s = a.sumset(b)?;
    let h = s.stabilizer();
    let ha = h.sumset(a)?.len() as i64;
    let hb = h.sumset(b)?.len() as i64;
    Ok(s.len() as i64 - (ha + hb - h.len() as i64))
}

/// `⋂_{x ∈ X} (x + Z)`.
pub fn translate_intersection(x: &CyclicSet, z: &CyclicSet) -> Result<CyclicSet> {
    x.check_same(z)?;
    let mut acc = CyclicSet::full(x.modulus())?;
    for t in x.iter() {
        acc = acc.intersection(&z.translate(t as i64))?;
    }
    Ok(acc)
}

/// Requires a prime modulus.
pub fn require_prime(n: usize) -> Result<()> {
    if arith::is_prime(n as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(n))
    }
}

/// A finite subset of Z.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntSet {
    elems: Vec<i64>,
}

impl IntSet {
    pub fn new<I: IntoIterator<Item = i64>>(elems: I) -> Self {
        let mut v: Vec<i64> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet { elems: v }
    }

    /// `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        IntSet::new(lo..=hi)
    }

    pub fn from_mask(mask: u64) -> Self {
        IntSet::new((0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    pub fn min(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elems.last().copied()
    }

    pub fn diameter(&self) -> Option<i64> {
        Some(self.max()? - self.min()?)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn translate(&self, t: i64) -> Self {
        IntSet {
            elems: self.elems.iter().map(|x| x + t).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        IntSet::new(self.iter().chain(other.iter()))
    }

    pub fn sumset(&self, other: &Self) -> Self {
        let (Some(lo_a), Some(lo_b)) = (self.min(), other.min()) else {
            return IntSet::default();
        };
        let lo = lo_a + lo_b;
        let span = (self.max().unwrap() + other.max().unwrap() - lo) as usize + 1;
        if span <= 1 << 22 {
            let mut hit = vec![false; span];
            for a in self.iter() {
                for b in other.iter() {
                    hit[(a + b - lo) as usize] = true;
                }
            }
            IntSet {
                elems: hit
                    .iter()
                    .enumerate()
                    .filter(|(_, &h)| h)
                    .map(|(i, _)| lo + i as i64)
                    .collect(),
            }
        } else {
            let s: BTreeSet<i64> = self
                .iter()
                .flat_map(|a| other.iter().map(move |b| a + b))
                .collect();
            IntSet {
                elems: s.into_iter().collect(),
            }
        }
    }

    pub fn neg(&self) -> Self {
        IntSet::new(self.iter().map(|x| -x))
    }

    pub fn difference_set(&self, other: &Self) -> Self {
        self.sumset(&other.neg())
    }

    /// `gcd(A - A)`; zero for sets with at most one element.
    pub fn difference_gcd(&self) -> u64 {
        let Some(m) = self.min() else { return 0 };
        self.iter().fold(0, |g, x| gcd(g, (x - m) as u64))
    }

    /// The shift `t` with `self = t + other`, if any.
    pub fn translate_offset(&self, other: &Self) -> Option<i64> {
        if self.len() != other.len() || self.is_empty() {
            return None;
        }
        let t = self.min()? - other.min()?;
        self.iter()
            .zip(other.iter())
            .all(|(a, b)| a == b + t)
            .then_some(t)
    }

    /// Subset picked by the bits of `mask` (bit `i` selects the `i`-th smallest element).
    pub fn select(&self, mask: u64) -> Self {
        IntSet {
            elems: self
                .elems
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect(),
        }
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(self.iter()))
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(self.iter()))
    }
}

impl Serialize for IntSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(IntSet::new(Vec::<i64>::deserialize(d)?))
    }
}
