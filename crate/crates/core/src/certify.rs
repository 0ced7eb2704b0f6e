//! Approximation certificates: badly approximable constants, the `ψ^u` inequality
//! on W/U/V triples, and continuant submultiplicativity.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::json;

use crate::error::{HcfError, Result};
use crate::exec::Exec;
use crate::gaussian::{rat, rat_int, GaussianInt};
use crate::hcf::{expand, gamma_f64, gaussians_up_to, q_pair};
use crate::interval::sqrt_bounds;
use crate::surd::Surd;
use crate::validity::is_valid_prefix;
use crate::words::WuvDecomposition;

/// Growth flag: the largest `|a_n|²` in the second half exceeds four times the first half's.
fn digits_grow(norms: &[BigInt]) -> bool {
    if norms.len() < 4 {
        return false;
    }
    let h = norms.len() / 2;
    let first = norms[..h].iter().max().expect("nonempty");
    let second = norms[h..].iter().max().expect("nonempty");
    second > &(first * 4)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BadReport {
    pub digits: Vec<GaussianInt>,
    /// `max |a_n|²` over `n ≥ 1`.
    pub m_sq: BigInt,
    pub m: f64,
    /// `C = (M+1)^{−1}(M+2)^{−2}`; exact when `M` is an integer.
    pub c: Option<BigRational>,
    pub c_f64: f64,
    pub gamma: f64,
    /// Digit bound recovered from `C`: `γ/C + 1`.
    pub m_recovered: f64,
    pub competitors: usize,
    pub violations: Vec<(GaussianInt, GaussianInt)>,
    pub growth: bool,
}

impl BadReport {
    pub fn consistent(&self) -> bool {
        !self.growth && self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let verdict = if self.growth {
            "digit growth detected: no certificate"
        } else if self.violations.is_empty() {
            "consistent with Bad_C on examined range"
        } else {
            "violations found"
        };
        json!({
            "M_sq": self.m_sq.to_string(),
            "M": self.m,
            "C": self.c.as_ref().map(|c| c.to_string()),
            "C_f64": self.c_f64,
            "gamma": self.gamma,
            "M_recovered": self.m_recovered,
            "competitors": self.competitors,
            "violations": self.violations.iter().map(|(p, q)| json!([p.to_json(), q.to_json()])).collect::<Vec<_>>(),
            "growth": self.growth,
            "verdict": verdict,
        })
    }
}

/// Checks `|x − p/q| > C/|q|²` for every `q` with `|q|² ≤ cap` (nearest `p`) and every
/// convergent among the first `n_digits`.
pub fn badly_approximable_certificate(x: &Surd, n_digits: usize, cap: u64, exec: Exec) -> Result<BadReport> {
    if n_digits < 2 {
        return Err(HcfError::InvalidArgument("need at least two digits".into()));
    }
    let e = expand(x, n_digits)?;
    if e.terminated {
        return Err(HcfError::NotApplicable("value lies in Q(i)".into()));
    }
    let norms: Vec<BigInt> = e.digits[1..].iter().map(GaussianInt::norm).collect();
    let m_sq = norms.iter().max().expect("n ≥ 2").clone();
    let growth = digits_grow(&norms);
    let (m_lo, _) = sqrt_bounds(&rat_int(&m_sq), 96);
    let exact_m = m_sq.sqrt();
    let c = (&exact_m * &exact_m == m_sq).then(|| {
        let m = rat_int(&exact_m);
        BigRational::one() / ((&m + rat(1, 1)) * (&m + rat(2, 1)) * (&m + rat(2, 1)))
    });
    // C is decreasing in M, so this bounds C from above.
    let c_hi = c.clone().unwrap_or_else(|| BigRational::one() / ((&m_lo + rat(1, 1)) * (&m_lo + rat(2, 1)) * (&m_lo + rat(2, 1))));
    let c_f64 = c_hi.to_f64().unwrap_or(f64::NAN);
    let gamma = gamma_f64();
    let m = m_sq.to_f64().unwrap_or(f64::INFINITY).sqrt();
    let mut qs = gaussians_up_to(&BigInt::from(cap));
    qs.extend(e.q.iter().filter(|q| !q.is_zero()).cloned());
    let competitors = qs.len();
    let c_sq = &c_hi * &c_hi;
    let checked = exec.map(&qs, |q| {
        let w = x.mul_rat(&q.to_rat());
        let p = w.nearest_gauss();
        let bound = &c_sq / rat_int(&q.norm());
        let ok = w.sub_gauss(&p).sign_norm_minus(&bound) == Ordering::Greater;
        (!ok).then(|| (p, q.clone()))
    });
    let violations = if growth { vec![] } else { checked.into_iter().flatten().collect() };
    Ok(BadReport {
        digits: e.digits,
        m_sq,
        m,
        c,
        c_f64,
        gamma,
        m_recovered: gamma / c_f64 + 1.0,
        competitors,
        violations,
        growth,
    })
}

/// `ln |z|` for a nonzero Gaussian integer, accurate for arbitrarily large norms.
fn ln_abs(z: &GaussianInt) -> f64 {
    let n = z.norm();
    let bits = n.bits();
    let shift = bits.saturating_sub(60);
    let top = (&n >> shift).to_f64().expect("fits");
    0.5 * (top.ln() + shift as f64 * std::f64::consts::LN_2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogBoundReport {
    /// `1 + max |q_n|^{1/n}` over the computed range.
    pub m: f64,
    /// `2 + max (2w + v)/u` over the triples.
    pub n: f64,
    pub epsilon: f64,
    pub psi: f64,
    /// Per triple: `ψ^u ≥ |q_w q_t|^ε`.
    pub holds: Vec<bool>,
}

impl LogBoundReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "M": self.m, "N": self.n, "epsilon": self.epsilon, "psi": self.psi, "holds": self.holds, "all_hold": self.all_hold() })
    }
}

/// Verifies `u ln ψ ≥ ε ln|q_w q_t|` in the equivalent form `u N ln M ≥ ln|q_w| + ln|q_t|`.
pub fn log_bound_check(digits: &[GaussianInt], d: &WuvDecomposition) -> Result<LogBoundReport> {
    let psi = ((1.0 + 5f64.sqrt()) / 2.0).sqrt();
    let need = d.triples.iter().map(|t| t.t() + 1).max().unwrap_or(0);
    if need > digits.len() {
        return Err(HcfError::IndexOutOfRange { index: need - 1, len: digits.len() });
    }
    if digits.len() < 2 {
        return Err(HcfError::InvalidArgument("need at least two digits".into()));
    }
    let (_, q) = q_pair(digits)?;
    if q.iter().skip(1).any(GaussianInt::is_zero) {
        return Err(HcfError::InvalidArgument("vanishing continuant".into()));
    }
    let ln_q: Vec<f64> = q.iter().map(ln_abs).collect();
    let m = 1.0 + (1..q.len()).map(|k| (ln_q[k] / k as f64).exp()).fold(0.0, f64::max);
    let n = 2.0 + d.triples.iter().map(|t| (2 * t.w + t.v) as f64 / t.u as f64).fold(0.0, f64::max);
    let epsilon = psi.ln() / (n * m.ln());
    let mut holds = Vec::new();
    for t in &d.triples {
        let lhs = t.u as f64 * n * m.ln();
        let rhs = ln_q[t.w] + ln_q[t.t()];
        let margin = 1e-9 * lhs.abs().max(1.0);
        if (lhs - rhs).abs() <= margin {
            return Err(HcfError::PrecisionExhausted(format!("triple {t:?} too close to call")));
        }
        holds.push(lhs > rhs);
    }
    Ok(LogBoundReport { m, n, epsilon, psi, holds })
}

/// `q_k` of `[0; word]`.
pub fn continuant(word: &[GaussianInt]) -> Result<GaussianInt> {
    let mut d = vec![GaussianInt::zero()];
    d.extend_from_slice(word);
    let (_, q) = q_pair(&d)?;
    Ok(q.last().expect("nonempty").clone())
}

/// Working constant `κ = 2 + √2`.
pub fn kappa_f64() -> f64 {
    2.0 + std::f64::consts::SQRT_2
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContinuantReport {
    pub q_a: GaussianInt,
    pub q_b: GaussianInt,
    pub q_ab: GaussianInt,
    /// `|q(ab)|² / (|q(a)|² |q(b)|²)`.
    pub ratio_sq: BigRational,
    pub kappa: f64,
    /// `ratio ≤ κ`, exact.
    pub within_kappa: bool,
}

impl ContinuantReport {
    pub fn ratio_f64(&self) -> f64 {
        self.ratio_sq.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "q_a": self.q_a.to_json(), "q_b": self.q_b.to_json(), "q_ab": self.q_ab.to_json(),
            "ratio_sq": self.ratio_sq.to_string(), "ratio": self.ratio_f64(),
            "kappa": self.kappa, "within_kappa": self.within_kappa,
            "note": "kappa is an empirical working constant",
        })
    }
}

/// `r ≤ (2 + √2)² = 6 + 4√2`, exact.
fn within_kappa_sq(r: &BigRational) -> bool {
    let t = r - rat(6, 1);
    t <= rat(0, 1) || &t * &t <= rat(32, 1)
}

pub fn continuant_submultiplicativity(a: &[GaussianInt], b: &[GaussianInt]) -> Result<ContinuantReport> {
    if a.is_empty() || b.is_empty() {
        return Err(HcfError::InvalidArgument("words must be nonempty".into()));
    }
    let ab: Vec<GaussianInt> = a.iter().chain(b).cloned().collect();
    for w in [a, b, &ab[..]] {
        let mut d = vec![GaussianInt::zero()];
        d.extend_from_slice(w);
        if !is_valid_prefix(&d) {
            return Err(HcfError::InvalidArgument("concatenation is not a valid prefix".into()));
        }
    }
    let (q_a, q_b, q_ab) = (continuant(a)?, continuant(b)?, continuant(&ab)?);
    let den = (&q_a * &q_b).norm();
    let ratio_sq = BigRational::new(q_ab.norm(), den);
    let within_kappa = within_kappa_sq(&ratio_sq);
    Ok(ContinuantReport { q_a, q_b, q_ab, ratio_sq, kappa: kappa_f64(), within_kappa })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{find_wuv, Triple, Word, WuvMode};

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn golden_ratio_certificate() {
        let phi = Surd::from_real_parts(1, 1, 5, 2).unwrap();
        let r = badly_approximable_certificate(&phi, 20, 100, Exec::default()).unwrap();
        assert_eq!(r.c, Some(rat(1, 100)));
        assert!(r.consistent(), "{:?}", r.violations);
        assert!((r.m_recovered - (100.0 * gamma_f64() + 1.0)).abs() < 1e-9);
    }

    #[test]
    fn growth_is_flagged() {
        let norms: Vec<BigInt> = (1..20).map(|k| BigInt::from(k * k * 10)).collect();
        assert!(digits_grow(&norms));
        assert!(!digits_grow(&vec![BigInt::from(9); 20]));
    }

    #[test]
    fn continuant_examples() {
        let r = continuant_submultiplicativity(&[g(3, 0)], &[g(3, 0)]).unwrap();
        assert_eq!((r.q_ab.clone(), r.ratio_sq.clone()), (g(10, 0), rat(100, 81)));
        assert!(r.within_kappa);
        let r = continuant_submultiplicativity(&[g(0, 4)], &[g(0, 4)]).unwrap();
        assert_eq!((r.q_ab.clone(), r.ratio_sq.clone()), (g(-15, 0), rat(225, 256)));
        let r = continuant_submultiplicativity(&[g(3, 0)], &[g(-3, 0)]).unwrap();
        assert_eq!((r.q_ab.clone(), r.ratio_sq.clone()), (g(-8, 0), rat(64, 81)));
        assert!(continuant_submultiplicativity(&[g(1, 2)], &[g(-2, 2), g(1, 1)]).is_err());
        assert!(within_kappa_sq(&rat(1165, 100)) && !within_kappa_sq(&rat(1166, 100)));
    }

    #[test]
    fn log_bound_on_thue_morse() {
        let tm = Word::thue_morse(g(3, 0), g(4, 0));
        let d = find_wuv(&tm, 128, WuvMode::Square).unwrap();
        let r = log_bound_check(&tm.prefix(129).unwrap(), &d).unwrap();
        assert!(!r.holds.is_empty() && r.all_hold());
        let single = WuvDecomposition { mode: WuvMode::Square, horizon: 8, triples: vec![Triple { w: 0, u: 1, v: 0 }] };
        assert!(log_bound_check(&tm.prefix(8).unwrap(), &single).unwrap().all_hold());
        let empty = WuvDecomposition { mode: WuvMode::Square, horizon: 8, triples: vec![] };
        assert!(log_bound_check(&tm.prefix(8).unwrap(), &empty).unwrap().all_hold());
    }
}
