//! Exact arithmetic on the Gaussian integers and the Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HcfError, Result};

/// An element `re + im·i` of ℤ[i].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

/// An element of ℚ(i); both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatGauss {
    pub re: BigRational,
    pub im: BigRational,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// `⌊x⌋` for an exact rational.
pub(crate) fn floor_rat(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// `i^k` for any integer `k`.
    pub fn unit(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn to_rat(&self) -> RatGauss {
        RatGauss { re: rat_int(&self.re), im: rat_int(&self.im) }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact quotient if `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = self * &other.conj();
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(GaussianInt { re: num.re / &n, im: num.im / &n })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    /// Euclidean division `self = q·other + r` with `N(r) ≤ N(other)/2`.
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        if other.is_zero() {
            return Err(HcfError::DivisionByZero);
        }
        let q = nearest_gauss(&(self.to_rat() / other.to_rat()));
        let r = self - &(&q * other);
        Ok((q, r))
    }

    /// The associate lying in the first quadrant `re > 0, im ≥ 0`.
    pub fn first_quadrant(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        (0..4)
            .map(|k| self * &Self::unit(k))
            .find(|g| g.re.is_positive() && !g.im.is_negative())
            .expect("one associate is always in the first quadrant")
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::new(v, 0)
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussianInt::new(re, im)
    }
}

fn fmt_complex<T: fmt::Display + Signed>(re: &T, im: &T, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.is_zero() {
        return write!(f, "{re}");
    }
    let im_abs = im.abs();
    let im_txt = if im_abs.is_one() { String::new() } else { im_abs.to_string() };
    if re.is_zero() {
        let sign = if im.is_negative() { "-" } else { "" };
        write!(f, "{sign}{im_txt}i")
    } else {
        let sign = if im.is_negative() { '-' } else { '+' };
        write!(f, "{re}{sign}{im_txt}i")
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_complex(&self.re, &self.im, f)
    }
}

impl fmt::Display for RatGauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})i", self.im);
        }
        write!(f, "{}+({})i", self.re, self.im)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &'b GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &'b GaussianInt) -> GaussianInt {
        GaussianInt { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b GaussianInt> for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &'b GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -&self.re, im: -&self.im }
    }
}

forward_binop!(GaussianInt, Add, add);
forward_binop!(GaussianInt, Sub, sub);
forward_binop!(GaussianInt, Mul, mul);

impl RatGauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RatGauss { re, im }
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`; panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        RatGauss { re: rat(re_num, re_den), im: rat(im_num, im_den) }
    }

    pub fn zero() -> Self {
        RatGauss { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        RatGauss { re: BigRational::one(), im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        RatGauss { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(HcfError::DivisionByZero);
        }
        let n = self.norm();
        Ok(RatGauss { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Returns the Gaussian integer if both parts are integers.
    pub fn to_gaussian(&self) -> Option<GaussianInt> {
        if self.re.is_integer() && self.im.is_integer() {
            Some(GaussianInt { re: self.re.to_integer(), im: self.im.to_integer() })
        } else {
            None
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RatGauss { re: &self.re * k, im: &self.im * k }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl From<GaussianInt> for RatGauss {
    fn from(g: GaussianInt) -> Self {
        g.to_rat()
    }
}

impl<'b> Add<&'b RatGauss> for &RatGauss {
    type Output = RatGauss;
    fn add(self, rhs: &'b RatGauss) -> RatGauss {
        RatGauss { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b RatGauss> for &RatGauss {
    type Output = RatGauss;
    fn sub(self, rhs: &'b RatGauss) -> RatGauss {
        RatGauss { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b RatGauss> for &RatGauss {
    type Output = RatGauss;
    fn mul(self, rhs: &'b RatGauss) -> RatGauss {
        RatGauss {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

/// Panics on division by zero, like the underlying rationals.
impl<'b> Div<&'b RatGauss> for &RatGauss {
    type Output = RatGauss;
    fn div(self, rhs: &'b RatGauss) -> RatGauss {
        self.checked_div(rhs).expect("RatGauss division by zero")
    }
}

impl Neg for RatGauss {
    type Output = RatGauss;
    fn neg(self) -> RatGauss {
        RatGauss { re: -self.re, im: -self.im }
    }
}

impl Neg for &RatGauss {
    type Output = RatGauss;
    fn neg(self) -> RatGauss {
        RatGauss { re: -&self.re, im: -&self.im }
    }
}

forward_binop!(RatGauss, Add, add);
forward_binop!(RatGauss, Sub, sub);
forward_binop!(RatGauss, Mul, mul);
forward_binop!(RatGauss, Div, div);

/// `[z] = ⌊Re z + 1/2⌋ + i⌊Im z + 1/2⌋`: ties go to the larger real and imaginary part.
pub fn nearest_gauss(z: &RatGauss) -> GaussianInt {
    let half = rat(1, 2);
    GaussianInt { re: floor_rat(&(&z.re + &half)), im: floor_rat(&(&z.im + &half)) }
}

/// Membership in the half-open square `-1/2 ≤ Re, Im < 1/2`.
pub fn in_fundamental_domain(z: &RatGauss) -> bool {
    let lo = rat(-1, 2);
    let hi = rat(1, 2);
    lo <= z.re && z.re < hi && lo <= z.im && z.im < hi
}

/// Greatest common divisor, normalized to the first-quadrant associate.
pub fn gauss_gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(HcfError::ZeroGcd);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.first_quadrant())
}

// --- serialization -------------------------------------------------------

pub(crate) fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(v.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| HcfError::Parse(format!("not an integer: {n}"))),
        serde_json::Value::String(s) => {
            s.parse::<BigInt>().map_err(|e| HcfError::Parse(format!("{s}: {e}")))
        }
        other => Err(HcfError::Parse(format!("expected integer, got {other}"))),
    }
}

impl GaussianInt {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(vec![bigint_to_json(&self.re), bigint_to_json(&self.im)])
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => Ok(GaussianInt { re: bigint_from_json(re)?, im: bigint_from_json(im)? }),
            _ => Err(HcfError::Parse(format!("expected [re, im], got {v}"))),
        }
    }
}

impl RatGauss {
    /// `[re_num, re_den, im_num, im_den]`, lowest terms, positive denominators.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(vec![
            bigint_to_json(self.re.numer()),
            bigint_to_json(self.re.denom()),
            bigint_to_json(self.im.numer()),
            bigint_to_json(self.im.denom()),
        ])
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([rn, rd, inum, id]) => {
                let (rd, id) = (bigint_from_json(rd)?, bigint_from_json(id)?);
                if rd.is_zero() || id.is_zero() {
                    return Err(HcfError::Parse("zero denominator".into()));
                }
                Ok(RatGauss {
                    re: BigRational::new(bigint_from_json(rn)?, rd),
                    im: BigRational::new(bigint_from_json(inum)?, id),
                })
            }
            _ => Err(HcfError::Parse(format!("expected [re_num, re_den, im_num, im_den], got {v}"))),
        }
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GaussianInt::from_json(&v).map_err(D::Error::custom)
    }
}

impl Serialize for RatGauss {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatGauss {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        RatGauss::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn rounding_examples() {
        assert_eq!(nearest_gauss(&RatGauss::zero()), g(0, 0));
        assert_eq!(nearest_gauss(&RatGauss::from_parts(1, 2, -1, 2)), g(1, 0));
        assert_eq!(nearest_gauss(&RatGauss::from_parts(-6, 5, 27, 10)), g(-1, 3));
    }

    #[test]
    fn fundamental_domain_edges() {
        assert!(in_fundamental_domain(&RatGauss::zero()));
        assert!(!in_fundamental_domain(&RatGauss::from_parts(1, 2, 0, 1)));
        assert!(in_fundamental_domain(&RatGauss::from_parts(-1, 2, -1, 2)));
        assert!(!in_fundamental_domain(&RatGauss::from_parts(0, 1, 1, 2)));
    }

    /// All divisors of `x` with norm at most `bound`, by exhaustive search.
    fn divisors_brute(x: &GaussianInt, bound: i64) -> Vec<GaussianInt> {
        let r = (bound as f64).sqrt() as i64 + 1;
        let mut out = Vec::new();
        for re in -r..=r {
            for im in -r..=r {
                let d = g(re, im);
                if !d.is_zero() && d.norm() <= BigInt::from(bound) && d.divides(x) {
                    out.push(d);
                }
            }
        }
        out
    }

    fn brute_gcd(a: &GaussianInt, b: &GaussianInt, bound: i64) -> GaussianInt {
        divisors_brute(a, bound)
            .into_iter()
            .filter(|d| d.divides(b))
            .max_by_key(|d| d.norm())
            .unwrap()
            .first_quadrant()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gauss_gcd(&g(2, 0), &g(1, 1)).unwrap(), brute_gcd(&g(2, 0), &g(1, 1), 2));
        assert_eq!(gauss_gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
        assert_eq!(gauss_gcd(&g(5, 0), &g(0, 0)).unwrap(), g(5, 0));
        assert_eq!(gauss_gcd(&g(1, 1), &g(1, -1)).unwrap(), g(1, 1));
        assert_eq!(gauss_gcd(&g(0, 0), &g(0, 0)), Err(HcfError::ZeroGcd));
    }

    #[test]
    fn gcd_matches_exhaustive_search() {
        for a in [g(3, 4), g(6, 8), g(5, 0), g(7, 1), g(-4, 2), g(2, 6)] {
            for b in [g(1, 2), g(10, 0), g(3, -1), g(4, 4), g(0, 5)] {
                let d = gauss_gcd(&a, &b).unwrap();
                assert!(d.divides(&a) && d.divides(&b));
                let bound = a.norm().min(b.norm()).to_i64().unwrap().min(50).max(2);
                for c in divisors_brute(&a, bound) {
                    if c.divides(&b) {
                        assert!(c.divides(&d), "{c} divides {a} and {b} but not {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn json_shapes() {
        assert_eq!(g(3, -4).to_json().to_string(), "[3,-4]");
        let z = RatGauss::from_parts(2, 4, -3, 6);
        assert_eq!(z.to_json().to_string(), "[1,2,-1,2]");
        assert_eq!(RatGauss::from_json(&z.to_json()).unwrap(), z);
        let big = GaussianInt::new(BigInt::from(10).pow(30), BigInt::from(1));
        assert_eq!(GaussianInt::from_json(&big.to_json()).unwrap(), big);
    }

    #[test]
    fn display() {
        assert_eq!(g(-2, 2).to_string(), "-2+2i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(3, 0).to_string(), "3");
    }
}
