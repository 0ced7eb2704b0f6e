//! Exact arithmetic in ℚ(i, √d) and certified enclosures of its elements.
//!
//! A [`Surd`] is `a + b·√d` with `a, b ∈ ℚ(i)` and `d ∈ ℤ[i]`, where `√d` is the
//! principal root (`Re √d > 0`, or `Re √d = 0` and `Im √d > 0`). Canonical form:
//! `d` carries no square factor of norm ≤ 10⁴, lies in the half-plane
//! `Re d > 0 ∨ (Re d = 0 ∧ Im d > 0)`, and `d = 0` exactly when `b = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HcfError, Result};
use crate::gaussian::{bigint_from_json, rat, rat_int, GaussianInt, RatGauss};
use crate::interval::{sqrt_bounds, ComplexInterval, Interval};
use crate::qsqrt::sign1;

/// Gaussian primes up to this norm are used to strip square factors from radicands.
pub const SQUARE_FACTOR_NORM_BUDGET: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: RatGauss,
    pub b: RatGauss,
    pub d: GaussianInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn sgn(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

fn sgn_int(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

/// Sign of `α + β·|d| + Re(C·√d)`, decided exactly.
///
/// Writes `√d = u + iv`, so `u² = (|d| + Re d)/2`, `v² = (|d| − Re d)/2`, and
/// `(Re C√d)² = (Re(C²d) + |C|²·|d|)/2`; every comparison then lives in ℚ(√N)
/// with `N = |d|²`.
pub(crate) fn sign_mixed(alpha: &BigRational, beta: &BigRational, c: &RatGauss, d: &GaussianInt) -> Ordering {
    let n = d.norm();
    let t_sign = sign1(alpha, beta, &n);
    let half = rat(1, 2);
    let p = rat_int(&d.re);

    let u_nonzero = !(d.im.is_zero() && !d.re.is_positive());
    let v_sign = match sgn_int(&d.im) {
        Ordering::Equal => {
            if d.re.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
        s => s,
    };
    let term1 = if u_nonzero { sgn(&c.re) } else { Ordering::Equal };
    let term2 = match (sgn(&c.im), v_sign) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
        (a, b) => {
            if a == b {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    };
    let r_sign = match (term1, term2) {
        (Ordering::Equal, t) | (t, Ordering::Equal) => t,
        (a, b) if a == b => a,
        (a, b) => {
            // x²u² − y²v² = ((x²+y²)p + (x²−y²)√N)/2
            let x2 = &c.re * &c.re;
            let y2 = &c.im * &c.im;
            match sign1(&((&x2 + &y2) * &p * &half), &((&x2 - &y2) * &half), &n) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    if t_sign == Ordering::Equal {
        return r_sign;
    }
    if r_sign == Ordering::Equal || r_sign == t_sign {
        return t_sign;
    }
    let c2d = &(c * c) * &d.to_rat();
    let rat_part = alpha * alpha + beta * beta * rat_int(&n) - &c2d.re * &half;
    let rad_part = BigRational::from_integer(2.into()) * alpha * beta - c.norm() * &half;
    match sign1(&rat_part, &rad_part, &n) {
        Ordering::Greater => t_sign,
        Ordering::Less => r_sign,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Principal square root of `d` when `d` is a perfect square in ℤ[i].
pub fn gaussian_sqrt(d: &GaussianInt) -> Option<GaussianInt> {
    let n = d.norm();
    let m = n.sqrt();
    if &m * &m != n {
        return None;
    }
    let two = BigInt::from(2);
    let x2 = &m + &d.re;
    let y2 = &m - &d.re;
    if !(&x2 % &two).is_zero() {
        return None;
    }
    let x2 = x2 / &two;
    let y2 = y2 / &two;
    let x = x2.sqrt();
    let mut y = y2.sqrt();
    if &x * &x != x2 || &y * &y != y2 {
        return None;
    }
    if d.im.is_negative() {
        y = -y;
    }
    let r = GaussianInt { re: x, im: y };
    if &r * &r == *d {
        Some(r)
    } else {
        None
    }
}

fn gaussian_primes() -> &'static [GaussianInt] {
    static PRIMES: OnceLock<Vec<GaussianInt>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SQUARE_FACTOR_NORM_BUDGET as usize;
        let mut sieve = vec![true; limit + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if sieve[i] {
                let mut j = i * i;
                while j <= limit {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let mut out = Vec::new();
        for p in 2..=limit {
            if !sieve[p] {
                continue;
            }
            let p = p as i64;
            if p == 2 {
                out.push(GaussianInt::new(1, 1));
            } else if p % 4 == 1 {
                let a = (1..).find(|a: &i64| {
                    let r = p - a * a;
                    let b = (r as f64).sqrt().round() as i64;
                    b * b == r
                });
                let a = a.expect("Fermat two-squares");
                let b = ((p - a * a) as f64).sqrt().round() as i64;
                out.push(GaussianInt::new(a, b));
                out.push(GaussianInt::new(a, -b));
            } else if p * p <= SQUARE_FACTOR_NORM_BUDGET as i64 {
                out.push(GaussianInt::new(p, 0));
            }
        }
        out.sort_by_key(|g| g.norm());
        out
    })
}

fn in_canonical_half_plane(d: &GaussianInt) -> bool {
    d.re.is_positive() || (d.re.is_zero() && d.im.is_positive())
}

/// True when `f·√d` is the principal root of whatever it squares to.
fn is_principal(f: &RatGauss, d: &GaussianInt) -> bool {
    match sign_mixed(&BigRational::zero(), &BigRational::zero(), f, d) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => {
            let rot = f * &RatGauss::from_parts(0, 1, -1, 1);
            sign_mixed(&BigRational::zero(), &BigRational::zero(), &rot, d) == Ordering::Greater
        }
    }
}

/// Writes `√d = f·√d'` with `d'` canonical, or returns `d' = 0` when `d` is a square.
fn canonical_radicand(d: &GaussianInt) -> (RatGauss, GaussianInt) {
    if let Some(r) = gaussian_sqrt(d) {
        return (r.to_rat(), GaussianInt::zero());
    }
    let mut rest = d.clone();
    let mut s = GaussianInt::one();
    for pi in gaussian_primes() {
        let p2 = pi * pi;
        if p2.norm() > rest.norm() {
            break;
        }
        while let Some(q) = rest.div_exact(&p2) {
            rest = q;
            s = &s * pi;
        }
    }
    let mut f = s.to_rat();
    if let Some(r) = gaussian_sqrt(&rest) {
        let v = &f * &r.to_rat();
        let v = if is_principal(&v, &GaussianInt::one()) { v } else { -v };
        return (v, GaussianInt::zero());
    }
    if rest.re.is_zero() || rest.im.is_zero() {
        // ±m and ±i·m share a square class with a positive rational integer (m or 2m)
        let m = if rest.im.is_zero() { rest.re.abs() } else { rest.im.abs() };
        let target = if rest.im.is_zero() { m } else { m * 2 };
        let target = GaussianInt { re: target, im: BigInt::zero() };
        let ratio = rest.to_rat().checked_div(&target.to_rat()).expect("nonzero radicand");
        let candidates = [
            RatGauss::from_parts(1, 1, 0, 1),
            RatGauss::from_parts(0, 1, 1, 1),
            RatGauss::from_parts(1, 2, 1, 2),
            RatGauss::from_parts(1, 2, -1, 2),
        ];
        let g = candidates.into_iter().find(|g| g * g == ratio).expect("unit square class");
        f = &f * &g;
        rest = target;
    } else if !in_canonical_half_plane(&rest) {
        rest = -rest;
        f = &f * &RatGauss::from_parts(0, 1, 1, 1);
    }
    if !is_principal(&f, &rest) {
        f = -f;
    }
    (f, rest)
}

impl Surd {
    /// `a + b·√d` with `√d` the principal root of `d`; canonicalized.
    pub fn new(a: RatGauss, b: RatGauss, d: GaussianInt) -> Self {
        if b.is_zero() || d.is_zero() {
            return Surd::rational(a);
        }
        let (f, d2) = canonical_radicand(&d);
        if d2.is_zero() {
            return Surd::rational(&a + &(&b * &f));
        }
        Surd { a, b: &b * &f, d: d2 }
    }

    pub fn rational(a: RatGauss) -> Self {
        Surd { a, b: RatGauss::zero(), d: GaussianInt::zero() }
    }

    pub fn from_gaussian(g: &GaussianInt) -> Self {
        Surd::rational(g.to_rat())
    }

    /// `(a + b√d)/den` for real integers; the CLI shorthand.
    pub fn from_real_parts(a: i64, b: i64, d: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(HcfError::DivisionByZero);
        }
        Ok(Surd::new(
            RatGauss::from_parts(a, den, 0, 1),
            RatGauss::from_parts(b, den, 0, 1),
            GaussianInt::new(d, 0),
        ))
    }

    /// `√d` itself.
    pub fn sqrt_of(d: &GaussianInt) -> Self {
        Surd::new(RatGauss::zero(), RatGauss::one(), d.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rat(&self) -> Option<RatGauss> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn build(a: RatGauss, b: RatGauss, d: &GaussianInt) -> Self {
        if b.is_zero() {
            Surd::rational(a)
        } else {
            Surd { a, b, d: d.clone() }
        }
    }

    fn common_radicand(&self, other: &Surd) -> Result<GaussianInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Ok(GaussianInt::zero()),
            (true, false) => Ok(other.d.clone()),
            (false, true) => Ok(self.d.clone()),
            (false, false) if self.d == other.d => Ok(self.d.clone()),
            _ => Err(HcfError::IncompatibleRadicands(self.d.to_string(), other.d.to_string())),
        }
    }

    pub fn checked_add(&self, o: &Surd) -> Result<Surd> {
        let d = self.common_radicand(o)?;
        Ok(Surd::build(&self.a + &o.a, &self.b + &o.b, &d))
    }

    pub fn checked_sub(&self, o: &Surd) -> Result<Surd> {
        let d = self.common_radicand(o)?;
        Ok(Surd::build(&self.a - &o.a, &self.b - &o.b, &d))
    }

    pub fn checked_mul(&self, o: &Surd) -> Result<Surd> {
        let d = self.common_radicand(o)?;
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * &d.to_rat());
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Ok(Surd::build(a, b, &d))
    }

    pub fn recip(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(HcfError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Surd::rational(self.a.inv()?));
        }
        let den = &(&self.a * &self.a) - &(&(&self.b * &self.b) * &self.d.to_rat());
        let inv = den.inv()?;
        Ok(Surd::build(&self.a * &inv, -(&self.b * &inv), &self.d))
    }

    pub fn checked_div(&self, o: &Surd) -> Result<Surd> {
        self.common_radicand(o)?;
        self.checked_mul(&o.recip()?)
    }

    pub fn arith(&self, o: &Surd, op: SurdOp) -> Result<Surd> {
        match op {
            SurdOp::Add => self.checked_add(o),
            SurdOp::Sub => self.checked_sub(o),
            SurdOp::Mul => self.checked_mul(o),
            SurdOp::Div => self.checked_div(o),
        }
    }

    pub fn add_rat(&self, r: &RatGauss) -> Surd {
        Surd::build(&self.a + r, self.b.clone(), &self.d)
    }

    pub fn sub_gauss(&self, g: &GaussianInt) -> Surd {
        self.add_rat(&(-g.to_rat()))
    }

    pub fn mul_rat(&self, r: &RatGauss) -> Surd {
        Surd::build(&self.a * r, &self.b * r, &self.d)
    }

    pub fn neg(&self) -> Surd {
        Surd::build(-&self.a, -&self.b, &self.d)
    }

    /// `a − b√d`.
    pub fn galois_conjugate(&self) -> Surd {
        Surd::build(self.a.clone(), -&self.b, &self.d)
    }

    /// Möbius image `(α·x + β)/(γ·x + δ)`.
    pub fn mobius(&self, alpha: &GaussianInt, beta: &GaussianInt, gamma: &GaussianInt, delta: &GaussianInt) -> Result<Surd> {
        let num = self.mul_rat(&alpha.to_rat()).add_rat(&beta.to_rat());
        let den = self.mul_rat(&gamma.to_rat()).add_rat(&delta.to_rat());
        num.checked_div(&den)
    }

    /// Both roots `(−B ± √(B² − 4AC))/(2A)` of `A y² + B y + C` over ℤ[i].
    pub fn quadratic_roots(a: &GaussianInt, b: &GaussianInt, c: &GaussianInt) -> Result<(Surd, Surd)> {
        if a.is_zero() {
            return Err(HcfError::InvalidArgument("leading coefficient is zero".into()));
        }
        let disc = &(b * b) - &(&GaussianInt::new(4, 0) * &(a * c));
        let two_a_inv = (&GaussianInt::new(2, 0) * a).to_rat().inv()?;
        let base = (-b.to_rat()) * two_a_inv.clone();
        let r1 = Surd::new(base.clone(), two_a_inv.clone(), disc.clone());
        let r2 = Surd::new(base, -two_a_inv, disc);
        Ok((r1, r2))
    }

    // --- exact comparisons ---------------------------------------------

    /// Sign of `Re(self) − c`.
    pub fn sign_re_minus(&self, c: &BigRational) -> Ordering {
        if self.is_rational() {
            return sgn(&(&self.a.re - c));
        }
        sign_mixed(&(&self.a.re - c), &BigRational::zero(), &self.b, &self.d)
    }

    /// Sign of `Im(self) − c`.
    pub fn sign_im_minus(&self, c: &BigRational) -> Ordering {
        if self.is_rational() {
            return sgn(&(&self.a.im - c));
        }
        let rot = &self.b * &RatGauss::from_parts(0, 1, -1, 1);
        sign_mixed(&(&self.a.im - c), &BigRational::zero(), &rot, &self.d)
    }

    /// Sign of `|self|² − r`.
    pub fn sign_norm_minus(&self, r: &BigRational) -> Ordering {
        if self.is_rational() {
            return sgn(&(self.a.norm() - r));
        }
        let cross = (&self.a.conj() * &self.b).scale(&rat(2, 1));
        sign_mixed(&(self.a.norm() - r), &self.b.norm(), &cross, &self.d)
    }

    /// Compares `|self|²` with `|other|²` exactly.
    pub fn cmp_norm(&self, other: &Surd) -> Result<Ordering> {
        let d = self.common_radicand(other)?;
        let alpha = self.a.norm() - other.a.norm();
        if d.is_zero() {
            return Ok(sgn(&alpha));
        }
        let beta = self.b.norm() - other.b.norm();
        let cross = (&(&self.a.conj() * &self.b) - &(&other.a.conj() * &other.b)).scale(&rat(2, 1));
        Ok(sign_mixed(&alpha, &beta, &cross, &d))
    }

    /// Value equality even across differently reduced radicands.
    pub fn value_eq(&self, other: &Surd) -> bool {
        if self.a != other.a {
            return false;
        }
        match (self.is_rational(), other.is_rational()) {
            (true, true) => return true,
            (true, false) | (false, true) => return false,
            _ => {}
        }
        if self.d == other.d {
            return self.b == other.b;
        }
        let l = &(&self.b * &self.b) * &self.d.to_rat();
        let r = &(&other.b * &other.b) * &other.d.to_rat();
        if l != r {
            return false;
        }
        let z = BigRational::zero();
        let re1 = sign_mixed(&z, &z, &self.b, &self.d);
        let re2 = sign_mixed(&z, &z, &other.b, &other.d);
        if re1 != Ordering::Equal || re2 != Ordering::Equal {
            return re1 == re2;
        }
        let rot = RatGauss::from_parts(0, 1, -1, 1);
        sign_mixed(&z, &z, &(&self.b * &rot), &self.d) == sign_mixed(&z, &z, &(&other.b * &rot), &other.d)
    }

    /// `⌊Re(self)·2^shift + offset⌋` (or the imaginary part), exact.
    fn floor_part(&self, imag: bool, offset: &BigRational, shift: u32) -> BigInt {
        let scale = BigRational::from_integer(BigInt::one() << shift);
        let part = |s: &Surd| if imag { s.a.im.clone() } else { s.a.re.clone() };
        if self.is_rational() {
            return crate::gaussian::floor_rat(&(part(self) * &scale + offset));
        }
        let enc = self.enclose(shift + 64);
        let iv = if imag { &enc.im } else { &enc.re };
        let mut k = crate::gaussian::floor_rat(&(&iv.lo * &scale + offset));
        // k ≤ value·2^shift + offset < k + 1  ⇔  value ≥ (k − offset)/2^shift and value < (k + 1 − offset)/2^shift
        let cmp_at = |k: &BigInt| {
            let c = (rat_int(k) - offset) / &scale;
            if imag {
                self.sign_im_minus(&c)
            } else {
                self.sign_re_minus(&c)
            }
        };
        loop {
            if cmp_at(&k) == Ordering::Less {
                k -= 1;
                continue;
            }
            let next = &k + 1;
            if cmp_at(&next) != Ordering::Less {
                k = next;
                continue;
            }
            return k;
        }
    }

    /// Exact nearest Gaussian integer with the half-open tie rule.
    pub fn nearest_gauss(&self) -> GaussianInt {
        let half = rat(1, 2);
        GaussianInt { re: self.floor_part(false, &half, 0), im: self.floor_part(true, &half, 0) }
    }

    /// Is `self` in the half-open square `−1/2 ≤ Re, Im < 1/2`?
    pub fn in_fundamental_domain(&self) -> bool {
        let lo = rat(-1, 2);
        let hi = rat(1, 2);
        self.sign_re_minus(&lo) != Ordering::Less
            && self.sign_re_minus(&hi) == Ordering::Less
            && self.sign_im_minus(&lo) != Ordering::Less
            && self.sign_im_minus(&hi) == Ordering::Less
    }

    // --- enclosures ----------------------------------------------------

    /// Enclosure of the principal `√d`.
    pub fn sqrt_enclosure(d: &GaussianInt, prec: u32) -> ComplexInterval {
        let p = prec + 4;
        let n = rat_int(&d.norm());
        let (slo, shi) = sqrt_bounds(&n, p);
        let abs_d = Interval::new(slo, shi);
        let pr = Interval::point(rat_int(&d.re));
        let half = rat(1, 2);
        let u = abs_d.add(&pr).scale(&half).sqrt(p);
        let v = abs_d.sub(&pr).scale(&half).sqrt(p);
        let v = if d.im.is_negative() {
            v.neg()
        } else if d.im.is_zero() && !d.re.is_negative() {
            Interval::zero()
        } else {
            v
        };
        let u = if d.im.is_zero() && !d.re.is_positive() { Interval::zero() } else { u };
        ComplexInterval::new(u, v)
    }

    /// An enclosure computed at working precision `prec` (width roughly `2^-prec`
    /// scaled by `|b|`, larger when `√d` is near a branch point).
    pub fn enclose(&self, prec: u32) -> ComplexInterval {
        if self.is_rational() {
            return ComplexInterval::point(&self.a);
        }
        let s = Surd::sqrt_enclosure(&self.d, prec);
        s.mul_rat(&self.b).add_rat(&self.a).round_out(prec + 2)
    }

    /// Canonical nested enclosure of width ≤ `2^-bits` with dyadic endpoints.
    ///
    /// Each irrational coordinate `x` maps to `[(k−1)/2^c, (k+2)/2^c]`, `k = ⌊x·2^c⌋`,
    /// `c = bits + 2`; boxes for larger `bits` are contained in those for smaller.
    pub fn refine(&self, bits: u32) -> ComplexInterval {
        if self.is_rational() {
            return ComplexInterval::point(&self.a);
        }
        let c = bits + 2;
        let den = BigInt::one() << c;
        let zero = BigRational::zero();
        let coord = |imag: bool| {
            let k = self.floor_part(imag, &zero, c);
            Interval::new(BigRational::new(&k - 1, den.clone()), BigRational::new(&k + 2, den.clone()))
        };
        ComplexInterval::new(coord(false), coord(true))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let e = self.enclose(60);
        (e.re.mid_f64(), e.im.mid_f64())
    }

    // --- serialization -------------------------------------------------

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "d": self.d.to_json(),
            "branch": "+",
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| HcfError::Parse(format!("surd: missing field {k}")));
        let a = RatGauss::from_json(field("a")?)?;
        let b = RatGauss::from_json(field("b")?)?;
        let d = GaussianInt::from_json(field("d")?)?;
        let branch = match v.get("branch") {
            None => "+".to_string(),
            Some(serde_json::Value::String(s)) => s.clone(),
            Some(other) => return Err(HcfError::Parse(format!("surd: bad branch {other}"))),
        };
        let b = match branch.as_str() {
            "+" => b,
            "-" | "−" => -b,
            other => return Err(HcfError::Parse(format!("surd: bad branch {other}"))),
        };
        Ok(Surd::new(a, b, d))
    }

    /// Parses `"a,b,d,den"` meaning `(a + b√d)/den` over the integers.
    pub fn parse_short(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(HcfError::Parse(format!("expected \"a,b,d,den\", got {s:?}")));
        }
        let nums: Vec<BigInt> = parts
            .iter()
            .map(|p| bigint_from_json(&serde_json::Value::String(p.to_string())))
            .collect::<Result<_>>()?;
        let den = nums[3].clone();
        if den.is_zero() {
            return Err(HcfError::DivisionByZero);
        }
        let den = rat_int(&den);
        let z = BigRational::zero();
        Ok(Surd::new(
            RatGauss::new(rat_int(&nums[0]) / &den, z.clone()),
            RatGauss::new(rat_int(&nums[1]) / &den, z),
            GaussianInt { re: nums[2].clone(), im: BigInt::zero() },
        ))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})·√({})", self.a, self.b, self.d)
        }
    }
}

/// Nearest Gaussian integer of a surd; agrees with [`crate::gaussian::nearest_gauss`] on ℚ(i).
pub fn nearest_gauss_surd(x: &Surd) -> GaussianInt {
    x.nearest_gauss()
}

pub fn galois_conjugate(x: &Surd) -> Surd {
    x.galois_conjugate()
}

pub fn surd_arith(x: &Surd, y: &Surd, op: SurdOp) -> Result<Surd> {
    x.arith(y, op)
}

pub fn refine(x: &Surd, bits: u32) -> Result<ComplexInterval> {
    if bits == 0 {
        return Err(HcfError::InvalidArgument("bits must be at least 1".into()));
    }
    Ok(x.refine(bits))
}
