//! Eventually periodic expansions: exact evaluation, cycle detection, conjugates,
//! reversal and singularization.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::error::{HcfError, Result};
use crate::gaussian::{rat, GaussianInt, RatGauss};
use crate::hcf::{expand, q_pair, Expansion};
use crate::interval::sqrt_bounds;
use crate::surd::Surd;
use crate::validity::{is_valid_eventually_periodic, PERIODIC_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicCF {
    pub preperiod: Vec<GaussianInt>,
    pub period: Vec<GaussianInt>,
    pub valid: bool,
}

impl PeriodicCF {
    pub fn new(preperiod: Vec<GaussianInt>, period: Vec<GaussianInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(HcfError::InvalidArgument("empty period".into()));
        }
        let valid = is_valid_eventually_periodic(&preperiod, &period, PERIODIC_BUDGET)?;
        Ok(PeriodicCF { preperiod, period, valid })
    }

    /// Formal word, validity not checked.
    pub fn formal(preperiod: Vec<GaussianInt>, period: Vec<GaussianInt>) -> Self {
        PeriodicCF { preperiod, period, valid: false }
    }

    pub fn purely(period: Vec<GaussianInt>) -> Result<Self> {
        PeriodicCF::new(vec![], period)
    }

    /// First `n` digits of the infinite word.
    pub fn digits(&self, n: usize) -> Vec<GaussianInt> {
        (0..n)
            .map(|k| {
                if k < self.preperiod.len() {
                    self.preperiod[k].clone()
                } else {
                    self.period[(k - self.preperiod.len()) % self.period.len()].clone()
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[GaussianInt]| v.iter().map(GaussianInt::to_json).collect::<Vec<_>>();
        json!({ "preperiod": list(&self.preperiod), "period": list(&self.period) })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let list = |k: &str| -> Result<Vec<GaussianInt>> {
            match v.get(k) {
                None => Ok(vec![]),
                Some(serde_json::Value::Array(a)) => a.iter().map(GaussianInt::from_json).collect(),
                Some(other) => Err(HcfError::Parse(format!("{k}: expected a list, got {other}"))),
            }
        };
        PeriodicCF::new(list("preperiod")?, list("period")?)
    }
}

/// The two fixed points of the period's Möbius map, `Q y² + (Q' − P) y − P' = 0`.
fn period_roots(period: &[GaussianInt]) -> Result<(Surd, Surd)> {
    let (p, q) = q_pair(period)?;
    let m = period.len();
    let (pp, qq) = (p[m - 1].clone(), q[m - 1].clone());
    let (pp1, qq1) = if m >= 2 { (p[m - 2].clone(), q[m - 2].clone()) } else { (GaussianInt::one(), GaussianInt::zero()) };
    let (r1, r2) = Surd::quadratic_roots(&qq, &(&qq1 - &pp), &(-pp1))?;
    if r1.is_rational() {
        return Err(HcfError::InvalidArgument("period has a rational fixed point".into()));
    }
    Ok((r1, r2))
}

/// `[pre; y]` for a tail value `y`.
fn attach_preperiod(pre: &[GaussianInt], y: &Surd) -> Result<Surd> {
    if pre.is_empty() {
        return Ok(y.clone());
    }
    let (p, q) = q_pair(pre)?;
    let k = pre.len();
    let (p2, q2) = if k >= 2 { (p[k - 2].clone(), q[k - 2].clone()) } else { (GaussianInt::one(), GaussianInt::zero()) };
    y.mobius(&p[k - 1], &p2, &q[k - 1], &q2)
}

/// Exact value of a valid eventually periodic HCF; the root is the one whose own
/// expansion reproduces two full periods.
pub fn eval_periodic(cf: &PeriodicCF) -> Result<Surd> {
    let (r1, r2) = period_roots(&cf.period)?;
    let want = cf.digits(cf.preperiod.len() + 2 * cf.period.len());
    for y in [r1, r2] {
        let x = attach_preperiod(&cf.preperiod, &y)?;
        if expand(&x, want.len())?.digits == want {
            return Ok(x);
        }
    }
    Err(HcfError::Inconsistent(format!(
        "neither fixed point reproduces preperiod {:?} / period {:?}",
        cf.preperiod.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        cf.period.iter().map(|g| g.to_string()).collect::<Vec<_>>()
    )))
}

/// Limit of the convergents of the formal continued fraction `⟨pre; overline{period}⟩`,
/// which need not be an HCF.
pub fn eval_formal(cf: &PeriodicCF) -> Result<Surd> {
    let (r1, r2) = period_roots(&cf.period)?;
    let x1 = attach_preperiod(&cf.preperiod, &r1)?;
    let x2 = attach_preperiod(&cf.preperiod, &r2)?;
    let reps = (48 / cf.period.len()).max(4);
    let n = cf.preperiod.len() + reps * cf.period.len();
    let (p, q) = q_pair(&cf.digits(n))?;
    let conv = p[n - 1].to_rat().checked_div(&q[n - 1].to_rat())?;
    let d1 = x1.add_rat(&-conv.clone());
    let d2 = x2.add_rat(&-conv);
    match d1.cmp_norm(&d2)? {
        Ordering::Less => Ok(x1),
        Ordering::Greater => Ok(x2),
        Ordering::Equal => Err(HcfError::Inconsistent("formal expansion does not separate the roots".into())),
    }
}

/// Expansion of a quadratic irrational up to its first repeated complete quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub cf: PeriodicCF,
    pub expansion: Expansion,
}

pub fn expand_to_cycle(x: &Surd, budget: usize) -> Result<Cycle> {
    if x.is_rational() {
        return Err(HcfError::InvalidArgument("value is in Q(i); its expansion terminates".into()));
    }
    let e = expand(x, budget)?;
    let mut seen: HashMap<&Surd, usize> = HashMap::new();
    for (k, r) in e.remainders.iter().enumerate() {
        let z = r.as_exact().expect("exact expansion");
        if let Some(&j) = seen.get(z) {
            let cf = PeriodicCF { preperiod: e.digits[..j].to_vec(), period: e.digits[j..k].to_vec(), valid: true };
            let mut expansion = e.clone();
            expansion.digits.truncate(k);
            expansion.p.truncate(k);
            expansion.q.truncate(k);
            expansion.remainders.truncate(k + 1);
            return Ok(Cycle { cf, expansion });
        }
        seen.insert(z, k);
    }
    Err(HcfError::BudgetExhausted(format!("no repeated complete quotient within {budget} digits")))
}

pub fn is_purely_periodic(x: &Surd, budget: usize) -> Result<bool> {
    Ok(expand_to_cycle(x, budget)?.cf.preperiod.is_empty())
}

/// The conjugate of `x` over ℚ(i).
pub fn conjugate(x: &Surd) -> Surd {
    x.galois_conjugate()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NecessaryReport {
    pub eta: Surd,
    /// `|η|² < 1`, exact.
    pub eta_inside_unit_disk: bool,
    /// `η + ξ = p_{mj−1}/q_{mj−1} − q_{mj−2}/q_{mj−1}` for `j = 1..J`, exact.
    pub vieta: Vec<bool>,
    /// `|q_{mj−2}/q_{mj−1} + η|` for `j = 1..J`.
    pub limit_errors: Vec<f64>,
    pub limit_decreasing: bool,
}

impl NecessaryReport {
    pub fn all_pass(&self) -> bool {
        self.eta_inside_unit_disk && self.vieta.iter().all(|&b| b) && self.limit_decreasing
    }
}

/// Conjugate checks for a purely periodic `x`.
pub fn check_necessary(x: &Surd, budget: usize, periods: usize) -> Result<NecessaryReport> {
    let cyc = expand_to_cycle(x, budget)?;
    if !cyc.cf.preperiod.is_empty() {
        return Err(HcfError::NotApplicable("expansion is not purely periodic".into()));
    }
    let eta = conjugate(x);
    let eta_inside_unit_disk = eta.sign_norm_minus(&rat(1, 1)) == Ordering::Less;
    let m = cyc.cf.period.len();
    let (p, q) = q_pair(&cyc.cf.digits(m * periods))?;
    let sum = eta.checked_add(x)?;
    let mut vieta = Vec::new();
    let mut limit_errors = Vec::new();
    for j in 1..=periods {
        let i1 = m * j - 1;
        let (q1, q2, p1) = (&q[i1], if i1 >= 1 { q[i1 - 1].clone() } else { GaussianInt::zero() }, &p[i1]);
        let rhs = &p1.to_rat().checked_div(&q1.to_rat())? - &q2.to_rat().checked_div(&q1.to_rat())?;
        vieta.push(sum.value_eq(&Surd::rational(rhs)));
        let ratio = q2.to_rat().checked_div(&q1.to_rat())?;
        let err = eta.add_rat(&ratio);
        let (a, b) = err.to_f64_pair();
        limit_errors.push(a.hypot(b));
    }
    let limit_decreasing = limit_errors.windows(2).all(|w| w[1] < w[0]);
    Ok(NecessaryReport { eta, eta_inside_unit_disk, vieta, limit_errors, limit_decreasing })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SufficientReport {
    pub xi_outside_unit_disk: bool,
    pub eta_in_fundamental_domain: bool,
    pub digits_at_least_sqrt8: bool,
    pub hypotheses_hold: bool,
    pub purely_periodic: bool,
    /// `|ζ_n| ≤ 1/k_n` along the conjugated complete quotients, when the hypotheses hold.
    pub k_bounds: Vec<bool>,
}

impl SufficientReport {
    /// No counterexample: hypotheses imply pure periodicity and the `k_n` bounds.
    pub fn consistent(&self) -> bool {
        !self.hypotheses_hold || (self.purely_periodic && self.k_bounds.iter().all(|&b| b))
    }
}

/// Lower dyadic bound for `1/k_n²`, with `k_0 = 1`, `k_{n+1} = √8 − 1/k_n`.
pub fn k_sequence_lower_inv_sq(n: usize, prec: u32) -> BigRational {
    use crate::interval::Interval;
    let (lo, hi) = sqrt_bounds(&rat(8, 1), prec);
    let s8 = Interval::new(lo, hi);
    let mut k = Interval::point(rat(1, 1));
    for _ in 0..n {
        k = s8.sub(&k.recip().expect("k_n > 0")).round_out(prec);
    }
    k.sqr().recip().expect("k_n > 0").round_out(prec).lo
}

/// `k_n` in floating point, for reports.
pub fn k_sequence_f64(n: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for _ in 0..n {
        let last = *out.last().expect("nonempty");
        out.push(8f64.sqrt() - 1.0 / last);
    }
    out
}

pub fn check_sufficient(x: &Surd, budget: usize) -> Result<SufficientReport> {
    let cyc = expand_to_cycle(x, budget)?;
    let eta = conjugate(x);
    let xi_outside_unit_disk = x.sign_norm_minus(&rat(1, 1)) == Ordering::Greater;
    let eta_in_fundamental_domain = eta.in_fundamental_domain();
    let eight = BigInt::from(8);
    let digits = cyc.cf.digits(cyc.cf.preperiod.len() + cyc.cf.period.len());
    let digits_at_least_sqrt8 = digits.iter().all(|a| a.norm() >= eight);
    let hypotheses_hold = xi_outside_unit_disk && eta_in_fundamental_domain && digits_at_least_sqrt8;
    let purely_periodic = cyc.cf.preperiod.is_empty();
    let mut k_bounds = Vec::new();
    if hypotheses_hold {
        for (n, r) in cyc.expansion.remainders.iter().enumerate() {
            let zeta = conjugate(r.as_exact().expect("exact"));
            let bound = if n == 0 { rat(1, 1) } else { k_sequence_lower_inv_sq(n, 128) };
            k_bounds.push(zeta.sign_norm_minus(&bound) != Ordering::Greater);
        }
    }
    Ok(SufficientReport {
        xi_outside_unit_disk,
        eta_in_fundamental_domain,
        digits_at_least_sqrt8,
        hypotheses_hold,
        purely_periodic,
        k_bounds,
    })
}

/// Value `p_n/q_n` of a finite word, `None` when `q_n = 0`.
fn word_value(digits: &[GaussianInt]) -> Option<RatGauss> {
    let (p, q) = q_pair(digits).ok()?;
    let n = digits.len() - 1;
    p[n].to_rat().checked_div(&q[n].to_rat()).ok()
}

/// Shift `s = 2/c` for a singularizable digit `c`.
fn singular_shift(c: &GaussianInt) -> Option<GaussianInt> {
    if c.norm() < BigInt::from(2) {
        return None;
    }
    GaussianInt::new(2, 0).div_exact(c)
}

/// `(…, a, c, b, …) ↦ (…, a + s, −c, b + s, …)` with `s = 2/c`; needs `c | 2`, `|c|² ≥ 2`.
pub fn singularize(digits: &[GaussianInt], at: usize) -> Result<Vec<GaussianInt>> {
    if at == 0 || at + 1 >= digits.len() {
        return Err(HcfError::NotApplicable(format!("index {at} has no neighbours on both sides")));
    }
    let s = singular_shift(&digits[at])
        .ok_or_else(|| HcfError::NotApplicable(format!("digit {} does not divide 2", digits[at])))?;
    let mut out = digits.to_vec();
    out[at - 1] = &out[at - 1] + &s;
    out[at] = -&digits[at];
    out[at + 1] = &out[at + 1] + &s;
    if let (Some(a), Some(b)) = (word_value(digits), word_value(&out)) {
        if a != b {
            return Err(HcfError::Inconsistent("singularization changed the value".into()));
        }
    }
    Ok(out)
}

/// Singularization inside a period of length ≥ 3, neighbours taken cyclically.
pub fn singularize_cyclic(period: &[GaussianInt], at: usize) -> Result<Vec<GaussianInt>> {
    let m = period.len();
    if m < 3 || at >= m {
        return Err(HcfError::NotApplicable("cyclic singularization needs a period of length ≥ 3".into()));
    }
    let s = singular_shift(&period[at])
        .ok_or_else(|| HcfError::NotApplicable(format!("digit {} does not divide 2", period[at])))?;
    let mut out = period.to_vec();
    let (l, r) = ((at + m - 1) % m, (at + 1) % m);
    out[l] = &out[l] + &s;
    out[at] = -&period[at];
    out[r] = &out[r] + &s;
    Ok(out)
}

/// `−⟨0; overline{a_{m−1}, …, a_0}⟩`, the conjugate of a purely periodic value.
pub fn reversed_conjugate(period: &[GaussianInt]) -> Result<Surd> {
    let rev: Vec<GaussianInt> = period.iter().rev().cloned().collect();
    Ok(eval_formal(&PeriodicCF::formal(vec![GaussianInt::zero()], rev))?.neg())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterexampleFamily {
    /// `η ∉ 𝔉`, a digit below `√8`, not purely periodic.
    A,
    /// `η ∉ 𝔉`, every digit at least `√8`, not purely periodic.
    B,
    /// `η ∈ 𝔉`, a digit below `√8`, not purely periodic.
    C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub family: CounterexampleFamily,
    pub xi: Surd,
    pub eta: Surd,
    pub cycle: PeriodicCF,
    pub xi_outside_unit_disk: bool,
    pub eta_in_unit_disk: bool,
    pub eta_in_fundamental_domain: bool,
    pub has_small_digit: bool,
    pub purely_periodic: bool,
    /// Digits of the HCF match the advertised shape.
    pub expected_digits: bool,
}

impl CounterexampleReport {
    pub fn holds(&self) -> bool {
        let shape = match self.family {
            CounterexampleFamily::A => !self.eta_in_fundamental_domain && self.has_small_digit && self.eta_in_unit_disk,
            CounterexampleFamily::B => !self.eta_in_fundamental_domain && !self.has_small_digit,
            CounterexampleFamily::C => self.eta_in_fundamental_domain && self.has_small_digit,
        };
        shape && !self.purely_periodic && self.xi_outside_unit_disk && self.expected_digits
    }
}

fn is_family_ab_param(z: &GaussianInt) -> bool {
    z.re >= BigInt::from(2) && z.im <= BigInt::from(-2)
}

/// Builds `ξ = a_m + 1 + 1/ξ'` with `ξ' = [overline{M; K, N, 2+4i}]` (families a, b)
/// or `ξ(M) = ⟨overline{2+i; −2+i, M}⟩` (family c).
pub fn generate_counterexample(
    family: CounterexampleFamily,
    m: &GaussianInt,
    n: &GaussianInt,
    k: &GaussianInt,
    budget: usize,
) -> Result<CounterexampleReport> {
    let g = |a: i64, b: i64| GaussianInt::new(a, b);
    let (xi, expected) = match family {
        CounterexampleFamily::A | CounterexampleFamily::B => {
            if !is_family_ab_param(m) || !is_family_ab_param(n) {
                return Err(HcfError::InvalidArgument("M and N must be M₁ − iM₂ with M₁, M₂ ≥ 2".into()));
            }
            let k = if family == CounterexampleFamily::A { g(1, 1) } else { k.clone() };
            if family == CounterexampleFamily::B && k.norm() < BigInt::from(8) {
                return Err(HcfError::InvalidArgument("family b needs |K|² ≥ 8".into()));
            }
            let period = vec![m.clone(), k, n.clone(), g(2, 4)];
            let inner = PeriodicCF::purely(period.clone())?;
            if !inner.valid {
                return Err(HcfError::InvalidArgument("inner period is not a valid periodic word".into()));
            }
            let xi_prime = eval_periodic(&inner)?;
            let a0 = &period[period.len() - 1] + &g(1, 0);
            let xi = xi_prime.recip()?.add_rat(&a0.to_rat());
            (xi, PeriodicCF { preperiod: vec![a0], period, valid: true })
        }
        CounterexampleFamily::C => {
            let inv = m.to_rat().inv()?;
            if !crate::gaussian::in_fundamental_domain(&inv) || m.re <= BigInt::from(0) {
                return Err(HcfError::InvalidArgument("family c needs 1/M ∈ 𝔉 and Re M > 0".into()));
            }
            let companion = [m.clone(), g(-2, 1), g(2, 1)];
            if !crate::validity::is_valid_periodic(&companion, PERIODIC_BUDGET)?.valid {
                return Err(HcfError::NotApplicable(format!("overline{{{m}; -2+i, 2+i}} is not a valid periodic word")));
            }
            let xi = eval_formal(&PeriodicCF::formal(vec![], vec![g(2, 1), g(-2, 1), m.clone()]))?;
            let pre = vec![g(2, 1), g(-2, 1), m + &g(1, 0)];
            (xi, PeriodicCF { preperiod: pre, period: vec![g(-2, 1), g(2, 1), m.clone()], valid: true })
        }
    };
    let cyc = expand_to_cycle(&xi, budget)?;
    let eta = conjugate(&xi);
    let eight = BigInt::from(8);
    let all_digits = cyc.cf.digits(cyc.cf.preperiod.len() + cyc.cf.period.len());
    Ok(CounterexampleReport {
        family,
        xi_outside_unit_disk: xi.sign_norm_minus(&rat(1, 1)) == Ordering::Greater,
        eta_in_unit_disk: eta.sign_norm_minus(&rat(1, 1)) == Ordering::Less,
        eta_in_fundamental_domain: eta.in_fundamental_domain(),
        has_small_digit: all_digits.iter().skip(1).any(|a| a.norm() < eight),
        purely_periodic: cyc.cf.preperiod.is_empty(),
        expected_digits: cyc.cf.preperiod == expected.preperiod && cyc.cf.period == expected.period,
        cycle: cyc.cf,
        xi,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn gs(v: &[(i64, i64)]) -> Vec<GaussianInt> {
        v.iter().map(|&p| GaussianInt::from(p)).collect()
    }

    fn phi() -> Surd {
        Surd::from_real_parts(1, 1, 5, 2).unwrap()
    }

    #[test]
    fn golden_ratio_cycle() {
        let cf = PeriodicCF::new(gs(&[(2, 0)]), gs(&[(-3, 0), (3, 0)])).unwrap();
        assert!(cf.valid);
        assert_eq!(eval_periodic(&cf).unwrap(), phi());
        let c = expand_to_cycle(&phi(), 50).unwrap();
        assert_eq!((c.cf.preperiod, c.cf.period), (gs(&[(2, 0)]), gs(&[(-3, 0), (3, 0)])));
        let c = expand_to_cycle(&phi().galois_conjugate(), 50).unwrap();
        assert_eq!((c.cf.preperiod, c.cf.period), (gs(&[(-1, 0)]), gs(&[(3, 0), (-3, 0)])));
        assert!(!is_purely_periodic(&phi(), 50).unwrap());
        assert!(matches!(check_necessary(&phi(), 50, 4), Err(HcfError::NotApplicable(_))));
        let s = check_sufficient(&phi(), 50).unwrap();
        assert!(!s.eta_in_fundamental_domain && !s.hypotheses_hold && s.consistent());
    }

    #[test]
    fn reversed_period_example() {
        let period = gs(&[(5, 6), (-3, 2), (2, 0), (9, 4)]);
        let cf = PeriodicCF::purely(period.clone()).unwrap();
        assert!(cf.valid);
        let xi = eval_periodic(&cf).unwrap();
        assert!(is_purely_periodic(&xi, 60).unwrap());
        let rev: Vec<GaussianInt> = period.iter().rev().cloned().collect();
        let sing = singularize_cyclic(&rev, 1).unwrap();
        assert_eq!(sing, gs(&[(10, 4), (-2, 0), (-2, 2), (5, 6)]));
        let eta = conjugate(&xi);
        let via_hcf = eval_periodic(&PeriodicCF::new(vec![g(0, 0)], sing).unwrap()).unwrap().neg();
        assert_eq!(via_hcf, eta);
        assert_eq!(reversed_conjugate(&period).unwrap(), eta);
        let r = check_necessary(&xi, 60, 5).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn singularization_examples() {
        assert_eq!(singularize(&gs(&[(0, 0), (2, 0), (3, 0)]), 1).unwrap(), gs(&[(1, 0), (-2, 0), (4, 0)]));
        assert_eq!(
            singularize(&gs(&[(0, 0), (1, 1), (2, 0)]), 1).unwrap(),
            gs(&[(1, -1), (-1, -1), (3, -1)])
        );
        assert_eq!(
            crate::hcf::fold(&gs(&[(0, 0), (2, 0), (3, 0)])).unwrap(),
            crate::hcf::fold(&gs(&[(1, 0), (-2, 0), (4, 0)])).unwrap()
        );
        assert!(matches!(singularize(&gs(&[(0, 0), (3, 0), (3, 0)]), 1), Err(HcfError::NotApplicable(_))));
        assert!(matches!(singularize(&gs(&[(2, 0), (3, 0)]), 0), Err(HcfError::NotApplicable(_))));
    }

    #[test]
    fn formal_value_of_family_c() {
        let cf = PeriodicCF::formal(vec![], gs(&[(2, 1), (-2, 1), (3, 0)]));
        let xi = eval_formal(&cf).unwrap();
        let e = expand(&xi, 9).unwrap();
        assert_eq!(e.digits, gs(&[(2, 1), (-2, 1), (4, 0), (-2, 1), (2, 1), (3, 0), (-2, 1), (2, 1), (3, 0)]));
        assert!(!is_purely_periodic(&xi, 60).unwrap());
        // the same word is not a valid HCF
        assert!(!PeriodicCF::purely(gs(&[(2, 1), (-2, 1), (3, 0)])).unwrap().valid);
    }

    #[test]
    fn counterexample_families() {
        let a = generate_counterexample(CounterexampleFamily::A, &g(2, -2), &g(2, -2), &g(1, 1), 80).unwrap();
        assert!(a.holds(), "{a:?}");
        let b = generate_counterexample(CounterexampleFamily::B, &g(2, -2), &g(3, -2), &g(3, 0), 80).unwrap();
        assert!(b.holds(), "{b:?}");
        let c = generate_counterexample(CounterexampleFamily::C, &g(3, 0), &g(0, 0), &g(0, 0), 80).unwrap();
        assert!(c.holds(), "{c:?}");
        assert!(generate_counterexample(CounterexampleFamily::C, &g(1, 0), &g(0, 0), &g(0, 0), 80).is_err());
        for m in [g(2, 1), g(1, 2)] {
            let r = generate_counterexample(CounterexampleFamily::C, &m, &g(0, 0), &g(0, 0), 80);
            assert!(matches!(r, Err(HcfError::NotApplicable(_))), "{m}");
        }
        assert!(generate_counterexample(CounterexampleFamily::A, &g(1, -2), &g(2, -2), &g(1, 1), 80).is_err());
    }

    #[test]
    fn k_sequence() {
        let k = k_sequence_f64(30);
        assert!((k[1] - 1.828_427).abs() < 1e-5);
        assert!(k.iter().skip(2).all(|&v| v > 2.0));
        assert!((k[30] - (2f64.sqrt() + 1.0)).abs() < 1e-3);
        let lo = k_sequence_lower_inv_sq(1, 64);
        let direct = 1.0 / (8f64.sqrt() - 1.0).powi(2);
        let lo = num_traits::ToPrimitive::to_f64(&lo).unwrap();
        assert!(lo <= direct + 1e-15 && lo > direct - 1e-12);
    }

    fn big_digit() -> impl Strategy<Value = GaussianInt> {
        (-5i64..=5, -5i64..=5).prop_filter("norm ≥ 8", |(a, b)| a * a + b * b >= 8).prop_map(GaussianInt::from)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn periodic_round_trip(period in proptest::collection::vec(big_digit(), 1..5)) {
            let m = period.len();
            let minimal = (1..m).all(|s| m % s != 0 || (0..m).any(|i| period[i] != period[(i + s) % m]));
            prop_assume!(minimal);
            let cf = PeriodicCF::purely(period.clone()).unwrap();
            prop_assert!(cf.valid);
            let x = eval_periodic(&cf).unwrap();
            let c = expand_to_cycle(&x, 80).unwrap();
            prop_assert!(c.cf.preperiod.is_empty());
            prop_assert_eq!(&c.cf.period, &period);
            let r = check_necessary(&x, 80, 4).unwrap();
            prop_assert!(r.eta_inside_unit_disk && r.vieta.iter().all(|&b| b));
            prop_assert!(check_sufficient(&x, 80).unwrap().consistent());
            prop_assert_eq!(reversed_conjugate(&period).unwrap(), conjugate(&x));
        }
    }
}
