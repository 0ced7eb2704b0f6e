//! Exact sign decisions for real expressions `r + s₁√m₁ + s₂√m₂` with rational
//! coefficients and non-negative integer radicands.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn sgn(x: &BigRational) -> Ordering {
    x.cmp(&BigRational::zero())
}

fn term_sign(s: &BigRational, m: &BigInt) -> Ordering {
    if m.is_zero() {
        Ordering::Equal
    } else {
        sgn(s)
    }
}

/// Combine a known-sign rational part `r` with an irrational part `u` of known sign
/// and known square `u²`, given as the sign of `r² − u²`.
fn combine(r: &BigRational, u_sign: Ordering, r2_minus_u2: impl FnOnce() -> Ordering) -> Ordering {
    let r_sign = sgn(r);
    if r_sign == Ordering::Equal {
        return u_sign;
    }
    if u_sign == Ordering::Equal || u_sign == r_sign {
        return r_sign;
    }
    match r2_minus_u2() {
        Ordering::Greater => r_sign,
        Ordering::Less => u_sign,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `r + s·√m`.
pub fn sign1(r: &BigRational, s: &BigRational, m: &BigInt) -> Ordering {
    debug_assert!(!m.is_negative());
    let t = term_sign(s, m);
    combine(r, t, || {
        let m = BigRational::from_integer(m.clone());
        (r * r).cmp(&(s * s * m))
    })
}

/// Sign of `r + s1·√m1 + s2·√m2`.
pub fn sign2(r: &BigRational, s1: &BigRational, m1: &BigInt, s2: &BigRational, m2: &BigInt) -> Ordering {
    debug_assert!(!m1.is_negative() && !m2.is_negative());
    let t1 = term_sign(s1, m1);
    let t2 = term_sign(s2, m2);
    let sq1 = s1 * s1 * BigRational::from_integer(m1.clone());
    let sq2 = s2 * s2 * BigRational::from_integer(m2.clone());
    let u_sign = match (t1, t2) {
        (Ordering::Equal, t) | (t, Ordering::Equal) => t,
        (a, b) if a == b => a,
        (a, b) => match sq1.cmp(&sq2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => Ordering::Equal,
        },
    };
    combine(r, u_sign, || {
        let rest = r * r - &sq1 - &sq2;
        let cross = -(s1 * s2) * BigRational::from_integer(2.into());
        sign1(&rest, &cross, &(m1 * m2))
    })
}

/// A real number `r + s·√m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSqrt {
    pub r: BigRational,
    pub s: BigRational,
    pub m: BigInt,
}

impl QSqrt {
    pub fn rational(r: BigRational) -> Self {
        QSqrt { r, s: BigRational::zero(), m: BigInt::zero() }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        sign2(&(&self.r - &other.r), &self.s, &self.m, &(-&other.s), &other.m)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.r.to_f64().unwrap_or(f64::NAN)
            + self.s.to_f64().unwrap_or(f64::NAN) * self.m.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::rat;
    use proptest::prelude::*;

    fn naive(r: f64, s1: f64, m1: f64, s2: f64, m2: f64) -> f64 {
        r + s1 * m1.sqrt() + s2 * m2.sqrt()
    }

    #[test]
    fn known_cases() {
        // 3 − √9 = 0
        assert_eq!(sign1(&rat(3, 1), &rat(-1, 1), &9.into()), Ordering::Equal);
        // √2 + √3 − √(5 + 2√6)  → use 0 + √2 + √3 − (√2+√3) style: √8 − 2√2 = 0
        assert_eq!(sign2(&rat(0, 1), &rat(1, 1), &8.into(), &rat(-2, 1), &2.into()), Ordering::Equal);
        // 3 − √2 − √3 > 0 (3 > 3.146? no: 1.414+1.732=3.146) → negative
        assert_eq!(sign2(&rat(3, 1), &rat(-1, 1), &2.into(), &rat(-1, 1), &3.into()), Ordering::Less);
        assert_eq!(sign2(&rat(32, 10), &rat(-1, 1), &2.into(), &rat(-1, 1), &3.into()), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn sign2_agrees_with_floats(r in -50i64..50, s1 in -9i64..9, m1 in 0i64..40, s2 in -9i64..9, m2 in 0i64..40) {
            let v = naive(r as f64 / 3.0, s1 as f64, m1 as f64, s2 as f64 / 2.0, m2 as f64);
            prop_assume!(v.abs() > 1e-9);
            let got = sign2(&rat(r, 3), &rat(s1, 1), &m1.into(), &rat(s2, 2), &m2.into());
            prop_assert_eq!(got, if v > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
    }
}
