//! Seeded end-to-end checks, one per acceptance criterion.

use std::cell::OnceCell;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::certify::log_bound_check;
use crate::error::{HcfError, Result};
use crate::exec::Exec;
use crate::gaussian::{GaussianInt, RatGauss};
use crate::hcf::{approx_bounds, check_identities, expand, growth_check, is_good_approximation, Expansion};
use crate::periodic::{
    check_necessary, check_sufficient, conjugate, eval_periodic, expand_to_cycle, generate_counterexample,
    reversed_conjugate, singularize_cyclic, CounterexampleFamily, PeriodicCF,
};
use crate::surd::{gaussian_sqrt, Surd};
use crate::validity::{is_valid_periodic, is_valid_prefix, random_valid_word, Catalog, Family, RegionCache, PERIODIC_BUDGET};
use crate::words::{find_wuv, rep_exponent_estimate, repetition_all, repetition_naive, Word, WuvMode};

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("criterion {:>2}  {}  {}: {}", self.id, if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "id": self.id, "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

fn timed(id: u8, name: &'static str, limit: Option<f64>, f: impl FnOnce() -> Result<(bool, String)>) -> CriterionResult {
    let start = Instant::now();
    let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let seconds = start.elapsed().as_secs_f64();
    let in_time = limit.is_none_or(|l| seconds < l);
    let detail = if in_time { detail } else { format!("{detail}; runtime {seconds:.1}s over limit") };
    CriterionResult { id, name, pass: ok && in_time, detail, seconds, limit_seconds: limit }
}

/// A random irrational element of ℚ(i, √d) with small coefficients.
pub fn random_surd<R: Rng>(rng: &mut R) -> Surd {
    loop {
        let d = g(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        if d.is_zero() || gaussian_sqrt(&d).is_some() {
            continue;
        }
        let mut part = || RatGauss::from_parts(rng.gen_range(-9..=9), rng.gen_range(1..=4), rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let (a, b) = (part(), part());
        let s = Surd::new(a, b, d);
        if !s.is_rational() {
            return s;
        }
    }
}

/// A random minimal period with every digit of norm in `[8, 40]`.
pub fn random_big_period<R: Rng>(rng: &mut R, max_len: usize) -> Vec<GaussianInt> {
    let pool: Vec<GaussianInt> =
        (-6i64..=6).flat_map(|x| (-6i64..=6).map(move |y| (x, y))).filter(|(x, y)| (8..=40).contains(&(x * x + y * y))).map(GaussianInt::from).collect();
    loop {
        let len = rng.gen_range(1..=max_len);
        let p: Vec<GaussianInt> = (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let minimal = (1..len).all(|s| len % s != 0 || (0..len).any(|i| p[i] != p[(i + s) % len]));
        if minimal {
            return p;
        }
    }
}

fn random_word<R: Rng>(rng: &mut R) -> Word {
    let digit = |rng: &mut R| g(3 + rng.gen_range(0..3), 0);
    if rng.gen_bool(0.5) {
        let pre = (0..rng.gen_range(0..6)).map(|_| digit(rng)).collect();
        let per = (0..rng.gen_range(1..8)).map(|_| digit(rng)).collect();
        Word::Periodic { preperiod: pre, period: per }
    } else {
        let base = rng.gen_range(2..=3);
        let states = rng.gen_range(1..=3);
        let transitions = (0..states).map(|_| (0..base).map(|_| rng.gen_range(0..states)).collect()).collect();
        let outputs = (0..states).map(|_| digit(rng)).collect();
        Word::Automaton { base, transitions, outputs }
    }
}

fn golden() -> Result<(bool, String)> {
    let phi = Surd::from_real_parts(1, 1, 5, 2)?;
    let psi = Surd::from_real_parts(1, -1, 5, 2)?;
    let want = |a0: i64, s: i64| -> Vec<GaussianInt> {
        (0..20).map(|k| if k == 0 { g(a0, 0) } else if k % 2 == 1 { g(-3 * s, 0) } else { g(3 * s, 0) }).collect()
    };
    let a = expand(&phi, 20)?.digits == want(2, 1);
    let b = expand(&psi, 20)?.digits == want(-1, -1);
    Ok((a && b, format!("(1+√5)/2 matches: {a}; (1−√5)/2 matches: {b}")))
}

fn validity_fixtures() -> Result<(bool, String)> {
    let ok_valid = is_valid_prefix(&[g(0, 0), g(-2, 2), g(1, 1)]);
    let ok_invalid = !is_valid_prefix(&[g(0, 0), g(1, 2), g(-2, 2), g(1, 1)]);
    let mut mismatches = Vec::new();
    let mut total = 0;
    for fam in Family::ALL {
        for xi in [g(0, 0), g(3, 0), g(0, 5)] {
            for n in 1..=5 {
                total += 1;
                let valid = is_valid_prefix(&fam.word(&xi, n));
                if valid != fam.claimed_valid() {
                    mismatches.push(format!("{fam:?}(ξ={xi}, n={n}) valid={valid}"));
                }
            }
        }
    }
    let detail = format!(
        "fixtures {}/{}; family mismatches {}/{}{}",
        ok_valid as u8,
        ok_invalid as u8,
        mismatches.len(),
        total,
        if mismatches.is_empty() { String::new() } else { format!(" [{}{}]", mismatches[..mismatches.len().min(3)].join(", "), if mismatches.len() > 3 { ", …" } else { "" }) }
    );
    Ok((ok_valid && ok_invalid && mismatches.is_empty(), detail))
}

/// 1000 random valid words of length 1..30, digit norms ≤ 50; deterministic in `seed`.
pub fn corpus(seed: u64) -> Vec<Vec<GaussianInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache = RegionCache::new();
    (0..1000).map(|_| {
        let len = rng.gen_range(1..=30);
        random_valid_word(&mut rng, len, 50, &mut cache)
    }).collect()
}

fn identities(words: &[Vec<GaussianInt>], exec: Exec) -> Result<(bool, String)> {
    let bad = exec.map(words, |w| Expansion::of_word(w.clone()).map(|e| check_identities(&e).all_pass()).unwrap_or(false));
    let fails = bad.iter().filter(|&&b| !b).count();
    Ok((fails == 0, format!("{} words, {fails} failures", words.len())))
}

fn growth(words: &[Vec<GaussianInt>], exec: Exec) -> Result<(bool, String)> {
    let ok = exec.map(words, |w| Expansion::of_word(w.clone()).map(|e| growth_check(&e).all_pass()).unwrap_or(false));
    let fails = ok.iter().filter(|&&b| !b).count();
    Ok((fails == 0, format!("{} words, {fails} failures", words.len())))
}

fn sandwich(seed: u64, exec: Exec) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<Surd> = (0..100).map(|_| random_surd(&mut rng)).collect();
    let res = exec.map(&xs, |x| -> Result<u32> {
        let e = expand(x, 12)?;
        let mut bits = 0;
        for n in 0..10 {
            bits = bits.max(approx_bounds(&e, n, 256)?.bits);
        }
        Ok(bits)
    });
    let errors = res.iter().filter(|r| r.is_err()).count();
    let max_bits = res.iter().filter_map(|r| r.as_ref().ok()).max().copied().unwrap_or(0);
    Ok((errors == 0, format!("100 surds × 10 indices, {errors} unseparated, max precision {max_bits} bits")))
}

fn good_approx(seed: u64, exec: Exec) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = 10_000u64;
    let mut checked = 0;
    let mut fails = 0;
    for _ in 0..20 {
        let x = random_surd(&mut rng);
        let e = expand(&x, 40)?;
        for n in 0..e.len() {
            if e.q[n].is_zero() || e.q[n].norm() > BigInt::from(cap) {
                continue;
            }
            checked += 1;
            if !is_good_approximation(&x, &e.p[n], &e.q[n], cap, exec)? {
                fails += 1;
            }
        }
    }
    Ok((fails == 0, format!("{checked} convergents with |q|² ≤ {cap}, {fails} not good approximations")))
}

fn periodic_suite(seed: u64, exec: Exec) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let periods: Vec<Vec<GaussianInt>> = (0..200).map(|_| random_big_period(&mut rng, 6)).collect();
    let res = exec.map(&periods, |p| -> Result<(bool, bool, bool, bool)> {
        let cf = PeriodicCF::purely(p.clone())?;
        let x = eval_periodic(&cf)?;
        let cyc = expand_to_cycle(&x, 16 * p.len() + 64)?;
        let round = cf.valid && cyc.cf.preperiod.is_empty() && &cyc.cf.period == p;
        let nec = check_necessary(&x, 16 * p.len() + 64, 3)?;
        let suff = check_sufficient(&x, 16 * p.len() + 64)?;
        Ok((round, nec.eta_inside_unit_disk && nec.vieta.iter().all(|&b| b), suff.consistent(), suff.hypotheses_hold))
    });
    let mut counts = [0usize; 5];
    for r in &res {
        match r {
            Ok((a, b, c, h)) => {
                counts[0] += *a as usize;
                counts[1] += *b as usize;
                counts[2] += *c as usize;
                counts[3] += *h as usize;
            }
            Err(_) => counts[4] += 1,
        }
    }
    let (fam_ok, fam_total, excluded) = family_sweep()?;
    let pass = counts[0] == 200 && counts[1] == 200 && counts[2] == 200 && counts[4] == 0 && fam_ok == fam_total;
    Ok((
        pass,
        format!(
            "round trip {}/200, |η|<1 and conjugate sums {}/200, sufficient-condition consistent {}/200 ({} with hypotheses), errors {}, counterexamples {fam_ok}/{fam_total} ({excluded} family-c parameters rejected: companion word not valid)",
            counts[0], counts[1], counts[2], counts[3], counts[4]
        ),
    ))
}

/// Families a and b on a parameter grid, family c on every admissible `M` with `|M|² ≤ 50`.
fn family_sweep() -> Result<(usize, usize, usize)> {
    let ab = [g(2, -2), g(3, -2), g(2, -3)];
    let mut reports = Vec::new();
    for m in &ab {
        for n in &ab {
            reports.push(generate_counterexample(CounterexampleFamily::A, m, n, &g(1, 1), 96)?);
            reports.push(generate_counterexample(CounterexampleFamily::B, m, n, &g(3, 0), 96)?);
        }
    }
    let mut excluded = 0;
    for re in 1..=7i64 {
        for im in -7..=7i64 {
            if re * re + im * im > 50 {
                continue;
            }
            match generate_counterexample(CounterexampleFamily::C, &g(re, im), &g(0, 0), &g(0, 0), 96) {
                Ok(r) => reports.push(r),
                Err(HcfError::InvalidArgument(_)) => {}
                Err(HcfError::NotApplicable(_)) => excluded += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok((reports.iter().filter(|r| r.holds()).count(), reports.len(), excluded))
}

fn reversed_period() -> Result<(bool, String)> {
    let period = vec![g(5, 6), g(-3, 2), g(2, 0), g(9, 4)];
    let xi = eval_periodic(&PeriodicCF::purely(period.clone())?)?;
    let eta = conjugate(&xi);
    let rev: Vec<GaussianInt> = period.iter().rev().cloned().collect();
    let sing = singularize_cyclic(&rev, 1)?;
    let target = vec![g(10, 4), g(-2, 0), g(-2, 2), g(5, 6)];
    let hcf = PeriodicCF::new(vec![g(0, 0)], target.clone())?;
    let via_sing = eval_periodic(&hcf)?.neg();
    let via_formal = reversed_conjugate(&period)?;
    let ok = sing == target && hcf.valid && via_sing == eta && via_formal == eta;
    Ok((ok, format!("singularized period matches: {}; HCF route = conjugate: {}; formal route = conjugate: {}", sing == target, via_sing == eta, via_formal == eta)))
}

fn repetition_suite(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matched = 0;
    let mut words = 0;
    while words < 50 {
        let w = random_word(&mut rng);
        let r = match repetition_all(&w, 64, 1 << 13) {
            Ok(r) => r,
            Err(HcfError::BudgetExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        words += 1;
        let naive = repetition_naive(&w.prefix(*r.last().expect("n ≥ 1"))?, 64);
        matched += naive.iter().zip(&r).all(|(a, b)| *a == Some(*b)) as usize;
    }
    let tm = Word::thue_morse(g(3, 0), g(0, 4));
    let prof = rep_exponent_estimate(&tm, 512)?;
    let finite = prof.max_running_min() < BigRational::from_integer(BigInt::from(10));
    let d = find_wuv(&tm, 512, WuvMode::Square)?;
    let bound = log_bound_check(&tm.prefix(513)?, &d)?;
    let ok = matched == 50 && finite && !d.triples.is_empty() && bound.all_hold();
    Ok((
        ok,
        format!(
            "oracle agreement {matched}/50; Thue–Morse rep estimate {:.4}; {} square triples; inequality holds on {}/{}",
            prof.estimate_f64(),
            d.triples.len(),
            bound.holds.iter().filter(|&&b| b).count(),
            bound.holds.len()
        ),
    ))
}

fn catalog(words: &[Vec<GaussianInt>], seed: u64) -> Result<(bool, String)> {
    let mut cache = RegionCache::new();
    let mut cat = Catalog::default();
    for w in words {
        cat.add_word(w, &mut cache);
    }
    let stable = cat.stable_over(500);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let pool: Vec<GaussianInt> =
        (-4i64..=4).flat_map(|x| (-4i64..=4).map(move |y| (x, y))).filter(|(x, y)| x * x + y * y >= 2).map(GaussianInt::from).collect();
    let mut inconclusive = 0;
    let mut valid = 0;
    for _ in 0..200 {
        let len = rng.gen_range(1..=4);
        let p: Vec<GaussianInt> = (0..len).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        match is_valid_periodic(&p, PERIODIC_BUDGET) {
            Ok(v) => valid += v.valid as usize,
            Err(HcfError::BudgetExhausted(_)) => inconclusive += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((
        stable && inconclusive == 0,
        format!(
            "{} shapes, stable over final 500 words: {stable}; periodic checks: 200 run, {valid} valid, {inconclusive} inconclusive",
            cat.shapes.len()
        ),
    ))
}

/// All ten criteria, seeded and deterministic apart from timing.
pub fn verify_all(seed: u64, exec: Exec) -> Vec<CriterionResult> {
    let words = OnceCell::new();
    (1..=10).filter_map(|id| run(id, seed, exec, &words)).collect()
}

/// One criterion by id.
pub fn verify_one(id: u8, seed: u64, exec: Exec) -> Option<CriterionResult> {
    run(id, seed, exec, &OnceCell::new())
}

fn run(id: u8, seed: u64, exec: Exec, words: &OnceCell<Vec<Vec<GaussianInt>>>) -> Option<CriterionResult> {
    let words = || words.get_or_init(|| corpus(seed));
    Some(match id {
        1 => timed(1, "golden-ratio round trip", Some(1.0), golden),
        2 => timed(2, "validity fixtures and families", Some(10.0), validity_fixtures),
        3 => timed(3, "determinant and mirror identities", Some(60.0), || identities(words(), exec)),
        4 => timed(4, "continuant growth", None, || growth(words(), exec)),
        5 => timed(5, "approximation sandwich", None, || sandwich(seed.wrapping_add(5), exec)),
        6 => timed(6, "convergents are good approximations", None, || good_approx(seed.wrapping_add(6), exec)),
        7 => timed(7, "periodic expansions and conjugates", Some(300.0), || periodic_suite(seed.wrapping_add(7), exec)),
        8 => timed(8, "reversed-period fixture", None, reversed_period),
        9 => timed(9, "repetition suite", None, || repetition_suite(seed.wrapping_add(9))),
        10 => timed(10, "region catalog", None, || catalog(words(), seed)),
        _ => return None,
    })
}
