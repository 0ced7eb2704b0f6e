//! Rational interval arithmetic with outward rounding to dyadic grids.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{HcfError, Result};
use crate::gaussian::{floor_rat, RatGauss};

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// `⌊x·2^prec⌋ / 2^prec`.
pub fn round_down(x: &BigRational, prec: u32) -> BigRational {
    let s = pow2(prec);
    BigRational::new(floor_rat(&(x * BigRational::from_integer(s.clone()))), s)
}

/// `⌈x·2^prec⌉ / 2^prec`.
pub fn round_up(x: &BigRational, prec: u32) -> BigRational {
    -round_down(&-x, prec)
}

/// Lower and upper dyadic bounds of `√x` at precision `prec`, `x ≥ 0`.
pub fn sqrt_bounds(x: &BigRational, prec: u32) -> (BigRational, BigRational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = pow2(2 * prec);
    let scaled = x * BigRational::from_integer(scale);
    let lo_int = scaled.numer().div_floor(scaled.denom());
    let hi_int = scaled.numer().div_ceil(scaled.denom());
    let lo = lo_int.sqrt();
    let mut hi = hi_int.sqrt();
    if &hi * &hi != hi_int {
        hi += 1;
    }
    let s = pow2(prec);
    (BigRational::new(lo, s.clone()), BigRational::new(hi, s))
}

/// Closed real interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(BigRational::zero())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Strictly below `other`.
    pub fn lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn round_out(&self, prec: u32) -> Self {
        Interval { lo: round_down(&self.lo, prec), hi: round_up(&self.hi, prec) }
    }

    pub fn add(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn sqr(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.contains_zero() {
            Interval { lo: BigRational::zero(), hi: a.max(b) }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(HcfError::PrecisionExhausted("reciprocal of an interval containing 0".into()));
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Enclosure of `√x` over the interval; negative parts are clipped to 0.
    pub fn sqrt(&self, prec: u32) -> Self {
        let zero = BigRational::zero();
        let lo = if self.lo.is_negative() { zero.clone() } else { self.lo.clone() };
        let hi = if self.hi.is_negative() { zero } else { self.hi.clone() };
        Interval { lo: sqrt_bounds(&lo, prec).0, hi: sqrt_bounds(&hi, prec).1 }
    }

    pub fn mid_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Width at most `2^-bits`.
    pub fn width_le_pow2(&self, bits: u32) -> bool {
        self.width() * BigRational::from_integer(pow2(bits)) <= BigRational::one()
    }
}

/// Axis-aligned box `[re_lo, re_hi] × [im_lo, im_hi]` in ℂ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn point(z: &RatGauss) -> Self {
        ComplexInterval { re: Interval::point(z.re.clone()), im: Interval::point(z.im.clone()) }
    }

    pub fn contains(&self, z: &RatGauss) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn contains_box(&self, other: &ComplexInterval) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn round_out(&self, prec: u32) -> Self {
        ComplexInterval { re: self.re.round_out(prec), im: self.im.round_out(prec) }
    }

    pub fn add(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &ComplexInterval) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_rat(&self, z: &RatGauss) -> Self {
        self.mul(&ComplexInterval::point(z))
    }

    pub fn add_rat(&self, z: &RatGauss) -> Self {
        self.add(&ComplexInterval::point(z))
    }

    /// Enclosure of `|z|²`.
    pub fn norm(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self, prec: u32) -> Interval {
        self.norm().sqrt(prec)
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if !n.lo.is_positive() {
            return Err(HcfError::PrecisionExhausted("reciprocal of a box touching 0".into()));
        }
        let inv = n.recip()?;
        Ok(ComplexInterval { re: self.re.mul(&inv), im: self.im.neg().mul(&inv) })
    }

    pub fn div(&self, o: &ComplexInterval) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |x: &BigRational| serde_json::Value::String(x.to_string());
        serde_json::json!({
            "re_lo": s(&self.re.lo), "re_hi": s(&self.re.hi),
            "im_lo": s(&self.im.lo), "im_hi": s(&self.im.hi),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get = |k: &str| -> Result<BigRational> {
            let txt = match v.get(k) {
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(serde_json::Value::Number(n)) => n.to_string(),
                _ => return Err(HcfError::Parse(format!("missing field {k}"))),
            };
            txt.parse::<BigRational>().map_err(|e| HcfError::Parse(format!("{k}: {e}")))
        };
        let (rl, rh, il, ih) = (get("re_lo")?, get("re_hi")?, get("im_lo")?, get("im_hi")?);
        if rl > rh || il > ih {
            return Err(HcfError::Parse("interval with lo > hi".into()));
        }
        Ok(ComplexInterval::new(Interval::new(rl, rh), Interval::new(il, ih)))
    }
}

/// Width summary used in reports.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl From<&Interval> for Enclosure {
    fn from(i: &Interval) -> Self {
        Enclosure { lo: i.lo_f64(), hi: i.hi_f64() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::rat;
    use proptest::prelude::*;

    #[test]
    fn sqrt_bounds_bracket() {
        for n in 0..200i64 {
            let (lo, hi) = sqrt_bounds(&rat(n, 7), 30);
            let x = rat(n, 7);
            assert!(&lo * &lo <= x && x <= &hi * &hi);
            assert!((&hi - &lo) * BigRational::from_integer(pow2(29)) <= BigRational::one());
        }
    }

    proptest! {
        #[test]
        fn arithmetic_encloses(a in -100i64..100, b in -100i64..100, c in 1i64..50, d in -100i64..100) {
            let x = rat(a, c);
            let y = rat(b, 7);
            let z = rat(d, 3);
            let ix = Interval::new(&x - rat(1, 100), &x + rat(1, 50));
            let iy = Interval::new(&y - rat(1, 30), y.clone());
            prop_assert!(ix.mul(&iy).contains(&(&x * &y)));
            prop_assert!(ix.sub(&iy).contains(&(&x - &y)));
            prop_assert!(ix.sqr().contains(&(&x * &x)));
            let cz = ComplexInterval::new(ix.clone(), iy.clone());
            let pt = RatGauss::new(x.clone(), y.clone());
            let w = RatGauss::new(z.clone(), rat(1, 1));
            prop_assert!(cz.mul_rat(&w).round_out(20).contains(&(&pt * &w)));
            if !pt.is_zero() && !cz.contains_zero() {
                if let Ok(r) = cz.recip() {
                    prop_assert!(r.contains(&pt.inv().unwrap()));
                }
            }
        }
    }
}
