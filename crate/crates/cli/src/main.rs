use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zsl_core::analytic::{
    circle_bound_slack, const_c1, const_c1_exact, const_cbeta, const_cbeta_exact,
    const_levshkredov, const_levshkredov_exact, exp_sum, gamma_thresholds, numeric_lemma_suite,
    parse_rational,
};
use zsl_core::arith::{is_prime, primes_up_to};
use zsl_core::cyclic::{canonical_pair, parse_set_literal};
use zsl_core::harness::{
    generate_example, scan, summarize, verify_certificate_file, ExampleSpec, ScanConfig, ScanMode,
};
use zsl_core::isoperimetry::{check_atom_theorems, kappa_atoms};
use zsl_core::progressions::{
    conjecture_conclusion, ell, min_cover, prop7_statements, rectification_witness,
    verify_3k4_integers,
};
use zsl_core::trios::{complement_trio, delta_flags, saturate_default};
use zsl_core::{CyclicSet, Error, IntSet};

#[derive(Parser)]
#[command(name = "zsl", version, about = "Sumsets, progression covers and atoms in Z/nZ")]
struct Cli {
    /// Exit with status 1 when a certificate fails to re-verify.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exhaustive (or sampled) scan over canonical pairs.
    Scan {
        #[arg(long, default_value = "conjecture")]
        mode: ScanMode,
        /// Comma list or inclusive range such as `3..13`.
        #[arg(long, conflicts_with = "max_prime")]
        primes: Option<String>,
        /// Every prime up to this bound.
        #[arg(long)]
        max_prime: Option<usize>,
        #[arg(long, env = "ZSL_JOBS")]
        jobs: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        emit_all: bool,
        #[arg(long)]
        cap: Option<usize>,
        /// Random pairs per prime above the cap.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Progression covers: ℓ_d for one or every d, and the shortest.
    Cover {
        #[arg(long)]
        modulus: usize,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// κ_k, fragments and atoms; `--full` adds the atom theorem checks.
    Atoms {
        #[arg(long)]
        modulus: usize,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        full: bool,
    },
    /// The 3k-4 verifier over the integers.
    VerifyZ {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// The complement trio of (A, B) with its flags and progression statements.
    Trio {
        #[arg(long)]
        modulus: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        saturate: bool,
    },
    /// Density constants and numeric lemmas. Parameters accept decimals or `n/d`.
    Constants {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long = "K")]
        k: Option<String>,
        #[arg(long)]
        s: Option<String>,
        /// `|A|`, `|B|` and ℓ for the thresholds.
        #[arg(long = "size-a")]
        size_a: Option<i64>,
        #[arg(long = "size-b")]
        size_b: Option<i64>,
        #[arg(long)]
        ell: Option<i64>,
    },
    /// Exponential sum, half-arc count and circle-bound slack.
    Fourier {
        #[arg(long)]
        p: usize,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
    },
    /// Build one of the extremal constructions and check its claims.
    Example {
        /// 1 to 6, or `prop13`.
        #[arg(long)]
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        gap: Option<i64>,
        #[arg(long = "size")]
        size: Option<i64>,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Re-verify JSONL certificate files.
    VerifyCerts {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Per-(p, r) CSV counts over JSONL files.
    Summarize {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    C1,
    Cbeta,
    Lev,
    Gammas,
    Lemmas,
}

type Res<T> = Result<T, Error>;

fn cyclic(n: usize, lit: &str) -> Res<CyclicSet> {
    CyclicSet::from_residues(n, parse_set_literal(lit)?)
}

fn int_set(lit: &str) -> Res<IntSet> {
    Ok(IntSet::new(parse_set_literal(lit)?))
}

fn parse_primes(spec: &str) -> Res<Vec<usize>> {
    let bad = |t: &str| Error::Parse(format!("bad prime list entry {t:?}"));
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad(part))?;
            let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad(part))?;
            out.extend((lo..=hi).filter(|&p| is_prime(p)).map(|p| p as usize));
        } else {
            out.push(part.parse().map_err(|_| bad(part))?);
        }
    }
    Ok(out)
}

fn need<T>(v: Option<T>, name: &str) -> Res<T> {
    v.ok_or_else(|| Error::Precondition(format!("--{name} is required here")))
}

// a closed pipe (`zsl ... | head`) is not an error
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &impl serde::Serialize) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

/// Decimal or `n/d` as a float.
fn float(s: &str) -> Res<f64> {
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            Ok(n / d)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn run(cli: Cli) -> Res<i32> {
    match cli.cmd {
        Cmd::Scan {
            mode,
            primes,
            max_prime,
            jobs,
            output,
            emit_all,
            cap,
            samples,
            seed,
        } => {
            let primes = match (primes, max_prime) {
                (Some(s), _) => parse_primes(&s)?,
                (None, Some(m)) => primes_up_to(m as u64).into_iter().map(|p| p as usize).collect(),
                (None, None) => return Err(Error::Precondition("give --primes or --max-prime".into())),
            };
            let mut cfg = ScanConfig::new(mode, primes);
            if let Some(j) = jobs {
                cfg.jobs = j.max(1);
            }
            cfg.output = output.clone();
            cfg.emit_all = emit_all;
            if let Some(c) = cap {
                cfg.cap = c;
            }
            cfg.samples = samples;
            cfg.seed = seed;
            let report = scan(&cfg)?;
            print(&report);
            if cli.strict {
                if let Some(path) = output {
                    let rep = verify_certificate_file(&path)?;
                    if !rep.ok() {
                        for (line, msg) in &rep.failures {
                            eprintln!("{}:{line}: {msg}", path.display());
                        }
                        return Ok(1);
                    }
                }
            }
            Ok(0)
        }
        Cmd::Cover { modulus, set, d } => {
            let a = cyclic(modulus, &set)?;
            let (best_d, best_len) = min_cover(&a)?;
            let profile: Vec<Value> = match d {
                Some(d) => vec![json!({ "d": d, "ell": ell(&a, d)? })],
                None => (1..modulus as i64)
                    .map(|d| Ok(json!({ "d": d, "ell": ell(&a, d)? })))
                    .collect::<Res<_>>()?,
            };
            print(&json!({
                "n": modulus,
                "set": a.elems(),
                "min_cover": { "d": best_d, "len": best_len },
                "profile": profile,
            }));
            Ok(0)
        }
        Cmd::Atoms { modulus, set, k, full } => {
            let b = cyclic(modulus, &set)?;
            let report = kappa_atoms(&b, k)?;
            let theorems = if full { check_atom_theorems(&b, k)? } else { None };
            print(&json!({ "separable": report.is_some(), "report": report, "theorems": theorems }));
            Ok(0)
        }
        Cmd::VerifyZ { a, b } => {
            print(&verify_3k4_integers(&int_set(&a)?, &int_set(&b)?)?);
            Ok(0)
        }
        Cmd::Trio { modulus, a, b, saturate } => {
            let (a, b) = (cyclic(modulus, &a)?, cyclic(modulus, &b)?);
            let t = complement_trio(&a, &b)?;
            let prime = is_prime(modulus as u64);
            let mut out = json!({
                "trio": t,
                "delta": delta_flags(&t),
                "rectification": rectification_witness(&a, &b)?,
            });
            if prime {
                out["canonical_key"] = json!(canonical_pair(&a, &b)?.key());
                out["prop7"] = json!(prop7_statements(&a, &b)?);
                out["certificate"] = json!(conjecture_conclusion(&a, &b)?);
            }
            if saturate {
                out["saturated"] = json!(saturate_default(&t)?);
            }
            print(&out);
            Ok(0)
        }
        Cmd::Constants { which, alpha, beta, k, s, size_a, size_b, ell } => {
            let out = match which {
                Which::C1 => {
                    let a = need(alpha, "alpha")?;
                    json!({
                        "alpha": a,
                        "c1": const_c1(float(&a)?)?,
                        "exact": const_c1_exact(&parse_rational(&a)?)?.to_string(),
                    })
                }
                Which::Cbeta => {
                    let (a, b) = (need(alpha, "alpha")?, need(beta, "beta")?);
                    json!({
                        "alpha": a,
                        "beta": b,
                        "c_beta": const_cbeta(float(&a)?, float(&b)?)?,
                        "exact": const_cbeta_exact(&parse_rational(&a)?, &parse_rational(&b)?)?.to_string(),
                    })
                }
                Which::Lev => {
                    let (k, s) = (need(k, "K")?, need(s, "s")?);
                    json!({
                        "K": k,
                        "s": s,
                        "c": const_levshkredov(float(&k)?, float(&s)?)?,
                        "exact": const_levshkredov_exact(&parse_rational(&k)?, &parse_rational(&s)?)?.to_string(),
                    })
                }
                Which::Gammas => {
                    let (ga, gb) = gamma_thresholds(
                        need(size_a, "size-a")?,
                        need(size_b, "size-b")?,
                        need(ell, "ell")?,
                    );
                    json!({ "gamma_a": ga.to_string(), "gamma_b": gb.to_string() })
                }
                Which::Lemmas => {
                    let rep = numeric_lemma_suite();
                    let ok = rep.all_passed();
                    print(&rep);
                    return Ok(if ok || !cli.strict { 0 } else { 1 });
                }
            };
            print(&out);
            Ok(0)
        }
        Cmd::Fourier { p, set, x } => {
            let a = cyclic(p, &set)?;
            let v = exp_sum(&a, x)?;
            let slack = circle_bound_slack(&a, x)?;
            print(&json!({
                "p": p,
                "x": x,
                "re": v.re,
                "im": v.im,
                "magnitude": v.magnitude(),
                "half_arc": slack.half_arc,
                "slack": slack.slack,
                "bound_negative": slack.bound_negative,
            }));
            Ok(0)
        }
        Cmd::Example { id, r, m, n, gap, size, p } => {
            let spec = match id.as_str() {
                "1" => ExampleSpec::Ex1 { r, m: need(m, "m")?, n: need(n, "n")? },
                "2" => ExampleSpec::Ex2 { r, gap: need(gap, "gap")? },
                "3" => ExampleSpec::Ex3 { r, a_len: need(size, "size")?, gap: need(gap, "gap")? },
                "4" => ExampleSpec::Ex4 {
                    r,
                    b_len: need(size, "size")?,
                    gap: need(gap, "gap")?,
                    p: need(p, "p")?,
                },
                "5" => ExampleSpec::Ex5 { r, gap: need(gap, "gap")?, p: need(p, "p")? },
                "6" => ExampleSpec::Ex6 { r },
                "prop13" => ExampleSpec::Prop13 { r },
                other => return Err(Error::Parse(format!("unknown example {other:?}"))),
            };
            let inst = generate_example(spec)?;
            let ok = inst.exact_facts_hold();
            print(&inst);
            Ok(if ok || !cli.strict { 0 } else { 1 })
        }
        Cmd::VerifyCerts { paths } => {
            let mut all_ok = true;
            let mut reports = Vec::new();
            for path in &paths {
                let rep = verify_certificate_file(path)?;
                for w in &rep.warnings {
                    eprintln!("warning: {w}");
                }
                for (line, msg) in &rep.failures {
                    eprintln!("{}:{line}: {msg}", path.display());
                }
                all_ok &= rep.ok();
                reports.push(json!({ "path": path, "ok": rep.ok(), "report": rep }));
            }
            print(&json!({ "ok": all_ok, "files": reports }));
            Ok(if all_ok || !cli.strict { 0 } else { 1 })
        }
        Cmd::Summarize { paths } => {
            let s = summarize(&paths)?;
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            emit(&s.csv);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
