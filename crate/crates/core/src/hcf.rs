//! Hurwitz digit extraction, Q-pairs, convergents and the classical identities.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{HcfError, Result};
use crate::exec::Exec;
use crate::gaussian::{floor_rat, rat, rat_int, GaussianInt, RatGauss};
use crate::interval::{ComplexInterval, Interval};
use crate::qsqrt::sign1;
use crate::surd::Surd;

/// A complete quotient `z_n`: exact when the source was exact.
#[derive(Clone, Debug, PartialEq)]
pub enum Remainder {
    Exact(Surd),
    Approx(ComplexInterval),
}

impl Remainder {
    pub fn enclose(&self, prec: u32) -> ComplexInterval {
        match self {
            Remainder::Exact(s) => s.enclose(prec),
            Remainder::Approx(b) => b.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&Surd> {
        match self {
            Remainder::Exact(s) => Some(s),
            Remainder::Approx(_) => None,
        }
    }
}

/// Digits `a_0, a_1, …`, the Q-pair `p_n, q_n` from `n = 0`, and the complete
/// quotients `z_0, z_1, …` (one more than the digits unless terminated).
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub digits: Vec<GaussianInt>,
    pub p: Vec<GaussianInt>,
    pub q: Vec<GaussianInt>,
    pub remainders: Vec<Remainder>,
    pub terminated: bool,
    pub certified: bool,
    /// Interval source ran out of precision before `max_digits`.
    pub exhausted: bool,
}

impl Expansion {
    fn from_digits(digits: Vec<GaussianInt>, remainders: Vec<Remainder>, terminated: bool, exhausted: bool) -> Self {
        let (p, q) = q_pair_unchecked(&digits);
        Expansion { digits, p, q, remainders, terminated, certified: true, exhausted }
    }

    /// Q-pair of a bare digit word; no remainders.
    pub fn of_word(digits: Vec<GaussianInt>) -> Result<Self> {
        if digits.is_empty() {
            return Err(HcfError::InvalidArgument("empty digit list".into()));
        }
        let mut e = Expansion::from_digits(digits, vec![], false, false);
        e.certified = false;
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// `p_n` for `n ≥ −2`.
    pub fn p_at(&self, n: isize) -> GaussianInt {
        seeded(&self.p, n, 0, 1)
    }

    /// `q_n` for `n ≥ −2`.
    pub fn q_at(&self, n: isize) -> GaussianInt {
        seeded(&self.q, n, 1, 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[GaussianInt]| serde_json::Value::Array(v.iter().map(GaussianInt::to_json).collect());
        json!({
            "digits": list(&self.digits),
            "p": list(&self.p),
            "q": list(&self.q),
            "terminated": self.terminated,
            "certified": self.certified,
        })
    }
}

fn seeded(v: &[GaussianInt], n: isize, at_m2: i64, at_m1: i64) -> GaussianInt {
    match n {
        -2 => GaussianInt::from(at_m2),
        -1 => GaussianInt::from(at_m1),
        n => v[n as usize].clone(),
    }
}

fn q_pair_unchecked(digits: &[GaussianInt]) -> (Vec<GaussianInt>, Vec<GaussianInt>) {
    let mut p = Vec::with_capacity(digits.len());
    let mut q = Vec::with_capacity(digits.len());
    let (mut p2, mut p1) = (GaussianInt::zero(), GaussianInt::one());
    let (mut q2, mut q1) = (GaussianInt::one(), GaussianInt::zero());
    for a in digits {
        let pn = &(a * &p1) + &p2;
        let qn = &(a * &q1) + &q2;
        p2 = std::mem::replace(&mut p1, pn.clone());
        q2 = std::mem::replace(&mut q1, qn.clone());
        p.push(pn);
        q.push(qn);
    }
    (p, q)
}

/// `p_n = a_n p_{n−1} + p_{n−2}`, `q_n = a_n q_{n−1} + q_{n−2}` from the seeds
/// `p_{−2} = 0, p_{−1} = 1, q_{−2} = 1, q_{−1} = 0`.
pub fn q_pair(digits: &[GaussianInt]) -> Result<(Vec<GaussianInt>, Vec<GaussianInt>)> {
    if digits.is_empty() {
        return Err(HcfError::InvalidArgument("empty digit list".into()));
    }
    Ok(q_pair_unchecked(digits))
}

/// Exact HCF expansion of an element of ℚ(i, √d).
pub fn expand(x: &Surd, max_digits: usize) -> Result<Expansion> {
    if max_digits == 0 {
        return Err(HcfError::InvalidArgument("max_digits must be positive".into()));
    }
    let mut digits = Vec::new();
    let mut rems = vec![Remainder::Exact(x.clone())];
    let mut z = x.clone();
    let mut terminated = false;
    while digits.len() < max_digits {
        let a = z.nearest_gauss();
        let frac = z.sub_gauss(&a);
        digits.push(a);
        if frac.is_zero() {
            terminated = true;
            break;
        }
        z = frac.recip()?;
        rems.push(Remainder::Exact(z.clone()));
    }
    Ok(Expansion::from_digits(digits, rems, terminated, false))
}

pub fn expand_rat(x: &RatGauss, max_digits: usize) -> Result<Expansion> {
    expand(&Surd::rational(x.clone()), max_digits)
}

fn cell(iv: &Interval) -> Option<BigInt> {
    let half = rat(1, 2);
    let lo = floor_rat(&(&iv.lo + &half));
    let hi = floor_rat(&(&iv.hi + &half));
    (lo == hi).then_some(lo)
}

/// Expansion from a certified box around `z_0`. Digits are emitted only while the
/// current box sits inside a single rounding cell.
pub fn expand_interval(x: &ComplexInterval, max_digits: usize, prec: u32) -> Result<Expansion> {
    if max_digits == 0 {
        return Err(HcfError::InvalidArgument("max_digits must be positive".into()));
    }
    let mut digits = Vec::new();
    let mut rems = vec![Remainder::Approx(x.clone())];
    let mut z = x.clone();
    let mut terminated = false;
    let mut exhausted = false;
    while digits.len() < max_digits {
        let (Some(re), Some(im)) = (cell(&z.re), cell(&z.im)) else {
            exhausted = true;
            break;
        };
        let a = GaussianInt { re, im };
        let frac = z.sub(&ComplexInterval::point(&a.to_rat()));
        if frac.re.width().is_zero() && frac.im.width().is_zero() && frac.contains_zero() {
            digits.push(a);
            terminated = true;
            break;
        }
        let Ok(next) = frac.recip() else {
            exhausted = true;
            break;
        };
        digits.push(a);
        z = next.round_out(prec);
        rems.push(Remainder::Approx(z.clone()));
    }
    if digits.is_empty() {
        return Err(HcfError::PrecisionExhausted("enclosure straddles a rounding cell at z_0".into()));
    }
    Ok(Expansion::from_digits(digits, rems, terminated, exhausted))
}

/// `⟨b_0; b_1, …, b_k⟩` evaluated from the right.
pub fn fold(digits: &[GaussianInt]) -> Result<RatGauss> {
    let (last, rest) = digits.split_last().ok_or_else(|| HcfError::InvalidArgument("empty digit list".into()))?;
    let mut v = last.to_rat();
    for b in rest.iter().rev() {
        v = &b.to_rat() + &v.inv()?;
    }
    Ok(v)
}

/// `p_n / q_n`.
pub fn convergent(digits: &[GaussianInt], n: usize) -> Result<RatGauss> {
    if n >= digits.len() {
        return Err(HcfError::IndexOutOfRange { index: n, len: digits.len() });
    }
    let (p, q) = q_pair_unchecked(&digits[..=n]);
    p[n].to_rat().checked_div(&q[n].to_rat())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    /// `q_n p_{n−1} − q_{n−1} p_n = (−1)^n`, per `n`.
    pub determinant: Vec<bool>,
    /// `q_n / q_{n−1} = ⟨a_n; a_{n−1}, …, a_1⟩`, per `n ≥ 1` (index `n − 1`).
    pub mirror: Vec<bool>,
    /// `z_0 = (p_n z_{n+1} + p_{n−1})/(q_n z_{n+1} + q_{n−1})` where exact remainders exist.
    pub reconstruction: Vec<bool>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.determinant.iter().chain(&self.mirror).chain(&self.reconstruction).all(|&b| b)
    }
}

pub fn check_identities(e: &Expansion) -> IdentityReport {
    let mut r = IdentityReport::default();
    for n in 0..e.len() {
        let ni = n as isize;
        let lhs = &(&e.q_at(ni) * &e.p_at(ni - 1)) - &(&e.q_at(ni - 1) * &e.p_at(ni));
        let sign = if n % 2 == 0 { 1 } else { -1 };
        r.determinant.push(lhs == GaussianInt::from(sign));
    }
    for n in 1..e.len() {
        let word: Vec<GaussianInt> = e.digits[1..=n].iter().rev().cloned().collect();
        let ok = match (fold(&word), e.q[n].to_rat().checked_div(&e.q[n - 1].to_rat())) {
            (Ok(m), Ok(ratio)) => m == ratio,
            _ => false,
        };
        r.mirror.push(ok);
    }
    if let Some(z0) = e.remainders.first().and_then(Remainder::as_exact) {
        for n in 0..e.len() {
            let Some(zn1) = e.remainders.get(n + 1).and_then(Remainder::as_exact) else { break };
            let ni = n as isize;
            let ok = zn1
                .mobius(&e.p_at(ni), &e.p_at(ni - 1), &e.q_at(ni), &e.q_at(ni - 1))
                .map(|v| v.value_eq(z0))
                .unwrap_or(false);
            r.reconstruction.push(ok);
        }
    }
    r
}

fn fib(n: u64) -> (BigInt, BigInt) {
    // (F(n), F(n+1))
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    (a, b)
}

/// Sign of `big − φ^{2m}·small` for non-negative integers, exact in ℚ(√5).
pub fn cmp_phi_power(big: &BigInt, small: &BigInt, m: u64) -> Ordering {
    if m == 0 {
        return big.cmp(small);
    }
    // φ^{2m} = (L_{2m} + F_{2m}√5)/2 with L_{2m} = 2F_{2m−1} + F_{2m}
    let (f_prev, f) = fib(2 * m - 1);
    let lucas = &f_prev * 2 + &f;
    let s = rat_int(small);
    let r = rat_int(big) - &s * rat_int(&lucas) / rat(2, 1);
    let c = -(&s * rat_int(&f)) / rat(2, 1);
    sign1(&r, &c, &BigInt::from(5))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GrowthReport {
    pub strictly_increasing: bool,
    pub ratio_phi: bool,
    pub power_phi: bool,
}

impl GrowthReport {
    pub fn all_pass(&self) -> bool {
        self.strictly_increasing && self.ratio_phi && self.power_phi
    }
}

/// The three growth statements for `|q_n|` on a finite Q-pair.
pub fn growth_check_q(q: &[GaussianInt]) -> GrowthReport {
    let norms: Vec<BigInt> = q.iter().map(GaussianInt::norm).collect();
    let len = norms.len();
    let strictly_increasing = norms.windows(2).all(|w| w[1] > w[0]);
    let gt_phi = |n: usize| cmp_phi_power(&norms[n + 1], &norms[n], 1) == Ordering::Greater;
    let ratio_phi = (0..len.saturating_sub(2)).all(|n| gt_phi(n) || gt_phi(n + 1));
    let mut power_phi = true;
    'outer: for n in 1..len {
        for k in 1..len - n {
            if cmp_phi_power(&norms[n + k], &norms[n], (k / 2) as u64) != Ordering::Greater {
                power_phi = false;
                break 'outer;
            }
        }
    }
    GrowthReport { strictly_increasing, ratio_phi, power_phi }
}

pub fn growth_check(e: &Expansion) -> GrowthReport {
    growth_check_q(&e.q)
}

/// `γ = (1 − √2/2)^{−1} = 2 + √2`.
pub fn gamma_f64() -> f64 {
    2.0 + std::f64::consts::SQRT_2
}

fn gamma_interval(prec: u32) -> Interval {
    let (lo, hi) = crate::interval::sqrt_bounds(&rat(2, 1), prec);
    Interval::new(lo + rat(2, 1), hi + rat(2, 1))
}

/// Certified enclosures of the three members of the sandwich at index `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxBounds {
    pub lower: Interval,
    pub middle: Interval,
    pub upper: Interval,
    pub bits: u32,
}

impl ApproxBounds {
    pub fn separated(&self) -> bool {
        self.lower.hi < self.middle.lo && self.middle.hi < self.upper.lo
    }
}

fn bounds_at(e: &Expansion, n: usize, prec: u32) -> Result<ApproxBounds> {
    let zn1 = e.remainders[n + 1].enclose(prec);
    let qn = e.q[n].to_rat();
    let qn2 = Interval::point(qn.norm());
    let conv = e.p[n].to_rat().checked_div(&qn)?;
    let diff = match &e.remainders[0] {
        Remainder::Exact(z0) => z0.add_rat(&(-conv)).enclose(prec),
        Remainder::Approx(b) => b.sub(&ComplexInterval::point(&conv)),
    };
    let middle = diff.abs(prec);
    let one = Interval::point(BigRational::one());
    let lower = zn1.abs(prec).add(&one).mul(&qn2).recip()?.round_out(prec);
    let qq = (&e.q[n] * &e.q[n + 1]).norm();
    let qq_abs = Interval::point(rat_int(&qq)).sqrt(prec);
    let upper = gamma_interval(prec).div(&qq_abs)?.round_out(prec);
    Ok(ApproxBounds { lower, middle, upper, bits: prec })
}

/// `1/((|z_{n+1}|+1)|q_n|²) < |z_0 − p_n/q_n| ≤ γ/|q_n q_{n+1}|`, certified with
/// working precision doubling from 64 up to `max_bits`.
pub fn approx_bounds(e: &Expansion, n: usize, max_bits: u32) -> Result<ApproxBounds> {
    if n + 1 >= e.remainders.len() || n + 1 >= e.q.len() {
        return Err(HcfError::IndexOutOfRange { index: n + 1, len: e.q.len().min(e.remainders.len()) });
    }
    let mut prec = 64.min(max_bits.max(8));
    loop {
        if let Ok(b) = bounds_at(e, n, prec) {
            if b.separated() {
                return Ok(b);
            }
        }
        if prec >= max_bits {
            return Err(HcfError::PrecisionExhausted(format!("sandwich at n={n} not separated at {prec} bits")));
        }
        prec = (prec * 2).min(max_bits);
    }
}

/// Default enumeration cap on `|q|²` for brute-force checks.
pub const GOOD_APPROX_CAP: u64 = 10_000;

/// All nonzero Gaussian integers with `|q|² ≤ bound`.
pub fn gaussians_up_to(bound: &BigInt) -> Vec<GaussianInt> {
    let b = bound.to_i64().unwrap_or(i64::MAX);
    let r = (b as f64).sqrt().floor() as i64 + 1;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if (x, y) != (0, 0) && x * x + y * y <= b {
                out.push(GaussianInt::new(x, y));
            }
        }
    }
    out
}

/// Whether `|q x − p|` is minimal among all `q'` with `0 < |q'| ≤ |q|`.
pub fn is_good_approximation(x: &Surd, p: &GaussianInt, q: &GaussianInt, cap: u64, exec: Exec) -> Result<bool> {
    if q.is_zero() {
        return Err(HcfError::InvalidArgument("q must be nonzero".into()));
    }
    let qn = q.norm();
    if qn > BigInt::from(cap) {
        return Err(HcfError::BudgetExhausted(format!("|q|² = {qn} exceeds cap {cap}")));
    }
    let target = x.mul_rat(&q.to_rat()).sub_gauss(p);
    let (xr, xi) = x.to_f64_pair();
    let t_f = {
        let (a, b) = target.to_f64_pair();
        a * a + b * b
    };
    let candidates = gaussians_up_to(&qn);
    let ok = exec.all(&candidates, |qq| {
        let (a, b) = qq.to_i64_pair().expect("small candidate");
        let (a, b) = (a as f64, b as f64);
        let (wr, wi) = (a * xr - b * xi, a * xi + b * xr);
        let (pr, pi) = ((wr + 0.5).floor(), (wi + 0.5).floor());
        let v = (wr - pr).powi(2) + (wi - pi).powi(2);
        if v > t_f * (1.0 + 1e-6) + 1e-9 {
            return true;
        }
        let w = x.mul_rat(&qq.to_rat());
        let other = w.sub_gauss(&w.nearest_gauss());
        target.cmp_norm(&other).map(|o| o != Ordering::Greater).unwrap_or(false)
    });
    Ok(ok)
}
