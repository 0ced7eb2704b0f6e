//! Acceptance criteria 1–10: one PASS/FAIL line each, plus independent cross-checks.
//! A failing criterion is tolerated only if it is a listed deviation whose
//! counterexamples are re-derived here from scratch.

use std::process::ExitCode;

use num_complex::Complex64;

use hcf::validity::{is_valid_prefix, Family};
use hcf::verify::{verify_all, CriterionResult};
use hcf::{expand, Exec, GaussianInt, RatGauss, Surd};

const SEED: u64 = 42;

fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

/// Floating-point HCF digits, for short prefixes of well-conditioned values.
fn float_digits(mut z: Complex64, n: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for _ in 0..n {
        let a = Complex64::new((z.re + 0.5).floor(), (z.im + 0.5).floor());
        out.push((a.re as i64, a.im as i64));
        z = 1.0 / (z - a);
    }
    out
}

fn oracle_golden() -> Result<String, String> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let want: Vec<(i64, i64)> = (0..20).map(|k| if k == 0 { (2, 0) } else if k % 2 == 1 { (-3, 0) } else { (3, 0) }).collect();
    let got = float_digits(Complex64::new(phi, 0.0), 20);
    (got == want).then(|| "float oracle agrees".to_string()).ok_or_else(|| format!("float oracle gave {got:?}"))
}

/// `[a_0; a_1, …, a_{k−1}, y]` by backward evaluation.
fn fold_with_tail(word: &[GaussianInt], y: Complex64) -> Complex64 {
    word.iter().rev().fold(y, |v, a| Complex64::new(a.to_i64_pair().unwrap().0 as f64, a.to_i64_pair().unwrap().1 as f64) + 1.0 / v)
}

fn oracle_reversed_period() -> Result<String, String> {
    // ξ = [overline{5+6i; −3+2i, 2, 9+4i}] by fixed-point iteration; η from the singularized form.
    let period = [g(5, 6), g(-3, 2), g(2, 0), g(9, 4)];
    let mut xi = Complex64::new(5.0, 6.0);
    for _ in 0..60 {
        xi = fold_with_tail(&period, xi);
    }
    let sing = [g(10, 4), g(-2, 0), g(-2, 2), g(5, 6)];
    let mut t = Complex64::new(10.0, 4.0);
    for _ in 0..60 {
        t = fold_with_tail(&sing, t);
    }
    let eta = -(1.0 / t);
    let x = hcf::periodic::eval_periodic(&hcf::periodic::PeriodicCF::purely(period.to_vec()).unwrap()).unwrap();
    let (er, ei) = x.galois_conjugate().to_f64_pair();
    let (xr, xi_im) = x.to_f64_pair();
    let ok = (Complex64::new(er, ei) - eta).norm() < 1e-9 && (Complex64::new(xr, xi_im) - xi).norm() < 1e-9;
    ok.then(|| "float fixed points agree".to_string()).ok_or_else(|| format!("η float {eta}, exact {er}+{ei}i"))
}

/// A value whose exact expansion starts with `word`, built backwards from a point of
/// the last cell with an irrational perturbation.
fn irrational_witness(word: &[GaussianInt]) -> Option<Surd> {
    let sqrt2 = Surd::from_real_parts(0, 1, 2, 1_000_000_000).ok()?;
    let den = 997i64;
    for k in 0..4000i64 {
        // deterministic sweep of the unit square centered at 0
        let (u, v) = ((k * 37) % den - den / 2, (k * 101) % den - den / 2);
        let off = Surd::rational(RatGauss::from_parts(u, den, v, den));
        let mut y = off.checked_add(&sqrt2).ok()?.add_rat(&word[word.len() - 1].to_rat());
        for a in word[..word.len() - 1].iter().rev() {
            y = y.recip().ok()?.add_rat(&a.to_rat());
        }
        if expand(&y, word.len()).ok()?.digits == word {
            return Some(y);
        }
    }
    None
}

/// Families whose stated validity disagrees with the computed one: every disagreement
/// must be a word declared invalid that an irrational number actually realizes.
fn reverify_families() -> Result<String, String> {
    let mut realized = 0;
    for fam in Family::ALL {
        for xi in [g(0, 0), g(3, 0), g(0, 5)] {
            for n in 1..=5 {
                let w = fam.word(&xi, n);
                if is_valid_prefix(&w) == fam.claimed_valid() {
                    continue;
                }
                if fam.claimed_valid() {
                    return Err(format!("{fam:?} n={n}: stated valid, computed invalid"));
                }
                irrational_witness(&w).ok_or_else(|| format!("{fam:?} ξ={xi} n={n}: no witness found"))?;
                realized += 1;
            }
        }
    }
    let base_invalid = [g(0, 0), g(1, 2), g(-2, 2), g(1, 1)];
    if irrational_witness(&base_invalid).is_some() {
        return Err("the fixed invalid prefix was realized".into());
    }
    Ok(format!("{realized} stated-invalid family words realized by explicit irrational values"))
}

struct Deviation {
    id: u8,
    summary: &'static str,
    reverify: fn() -> Result<String, String>,
}

const KNOWN_DEVIATIONS: &[Deviation] = &[Deviation {
    id: 2,
    summary: "family words stated invalid for all n are valid (1+2i shape for n ≥ 2, −1+2i shape for all n)",
    reverify: reverify_families,
}];

fn oracle_for(id: u8) -> Option<fn() -> Result<String, String>> {
    match id {
        1 => Some(oracle_golden),
        8 => Some(oracle_reversed_period),
        _ => None,
    }
}

fn main() -> ExitCode {
    let results: Vec<CriterionResult> = verify_all(SEED, Exec::default());
    let mut unexplained = Vec::new();
    for r in &results {
        println!("{}  [{:.1}s]", r.line(), r.seconds);
        if let Some(oracle) = oracle_for(r.id) {
            match oracle() {
                Ok(msg) => println!("             cross-check: {msg}"),
                Err(msg) => {
                    println!("             cross-check FAILED: {msg}");
                    unexplained.push(r.id);
                }
            }
        }
        if r.pass {
            continue;
        }
        match KNOWN_DEVIATIONS.iter().find(|d| d.id == r.id) {
            Some(d) => match (d.reverify)() {
                Ok(msg) => println!("             known deviation: {}; re-verified: {msg}", d.summary),
                Err(msg) => {
                    println!("             known deviation NOT re-verified: {msg}");
                    unexplained.push(r.id);
                }
            },
            None => unexplained.push(r.id),
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if results.len() != 10 || !unexplained.is_empty() {
        println!("unexplained failures: {unexplained:?}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
