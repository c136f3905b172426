//! Thin wasm-bindgen layer over `zsl-core` for the static page in `www/`.
//! Every export takes plain strings and numbers and returns JSON text, so the
//! same functions run natively in tests.

use serde_json::json;
use wasm_bindgen::prelude::*;

use zsl_core::analytic::{const_c1, const_cbeta};
use zsl_core::arith::is_prime;
use zsl_core::cyclic::{canonical_pair, parse_set_literal};
use zsl_core::progressions::{conjecture_conclusion, ell, min_cover};
use zsl_core::trios::{complement_trio, delta_flags};
use zsl_core::CyclicSet;

fn set(n: usize, lit: &str) -> Result<CyclicSet, String> {
    let elems = parse_set_literal(lit).map_err(|e| e.to_string())?;
    CyclicSet::from_residues(n, elems).map_err(|e| e.to_string())
}

/// `A+B`, its size gap `r`, the complement `C`, and a progression
/// certificate when the modulus is prime.
#[wasm_bindgen]
pub fn sumset_explorer(n: usize, a: &str, b: &str) -> Result<String, String> {
    if !(2..=64).contains(&n) {
        return Err(format!("modulus {n} outside [2, 64]"));
    }
    let (a, b) = (set(n, a)?, set(n, b)?);
    if a.is_empty() || b.is_empty() {
        return Err("A and B must be nonempty".into());
    }
    let s = a.sumset(&b).map_err(|e| e.to_string())?;
    let r = s.len() as i64 - a.len() as i64 - b.len() as i64;
    let mut out = json!({
        "n": n,
        "A": a.elems(),
        "B": b.elems(),
        "sum": s.elems(),
        "r": r,
        "full": s.is_full(),
    });
    if !s.is_full() {
        let t = complement_trio(&a, &b).map_err(|e| e.to_string())?;
        out["C"] = json!(t.c.elems());
        out["delta"] = json!(delta_flags(&t));
        if is_prime(n as u64) {
            let key = canonical_pair(&a, &b).map_err(|e| e.to_string())?.key();
            let cert = conjecture_conclusion(&a, &b).map_err(|e| e.to_string())?;
            out["canonical_key"] = json!(key);
            out["certificate"] = json!(cert);
        }
    }
    Ok(out.to_string())
}

/// `ℓ_d(A)` for every `d` together with the shortest cover.
#[wasm_bindgen]
pub fn cover_profile(n: usize, a: &str) -> Result<String, String> {
    if !(2..=256).contains(&n) {
        return Err(format!("modulus {n} outside [2, 256]"));
    }
    let a = set(n, a)?;
    if a.is_empty() {
        return Err("the set is empty".into());
    }
    let profile: Vec<Option<usize>> = (1..n as i64)
        .map(|d| ell(&a, d))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (d, len) = min_cover(&a).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "size": a.len(), "profile": profile, "min": { "d": d, "len": len } }).to_string())
}

/// `c1(α)` and `c_β(α, β)` sampled on `steps` points of `(0, 0.212]`.
#[wasm_bindgen]
pub fn constant_curves(beta: f64, steps: usize) -> Result<String, String> {
    let steps = steps.clamp(2, 2000);
    let mut alpha = Vec::with_capacity(steps);
    let mut c1 = Vec::with_capacity(steps);
    let mut cb = Vec::with_capacity(steps);
    for i in 1..=steps {
        let x = 0.212 * i as f64 / steps as f64;
        alpha.push(x);
        c1.push(const_c1(x).map_err(|e| e.to_string())?);
        cb.push(const_cbeta(x, beta).map_err(|e| e.to_string())?);
    }
    Ok(json!({ "beta": beta, "alpha": alpha, "c1": c1, "c_beta": cb }).to_string())
}
