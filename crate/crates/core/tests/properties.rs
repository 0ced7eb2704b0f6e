//! Properties of expansions checked against independent floating-point oracles.

use num_complex::Complex64;
use proptest::prelude::*;

use hcf::certify::{continuant, continuant_submultiplicativity, kappa_f64};
use hcf::periodic::singularize;
use hcf::validity::is_valid_prefix;
use hcf::{expand, GaussianInt, RatGauss, Surd};

fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

fn c(z: &GaussianInt) -> Complex64 {
    let (re, im) = z.to_i64_pair().expect("small digit");
    Complex64::new(re as f64, im as f64)
}

/// Nearest-integer digits in f64; `None` once a remainder sits too close to a cell edge.
fn float_digits(mut z: Complex64, n: usize) -> Vec<Option<(i64, i64)>> {
    let mut out = Vec::new();
    for _ in 0..n {
        let (fr, fi) = ((z.re + 0.5).fract().abs(), (z.im + 0.5).fract().abs());
        if [fr, fi].iter().any(|f| *f < 1e-6 || *f > 1.0 - 1e-6) {
            out.push(None);
            break;
        }
        let a = Complex64::new((z.re + 0.5).floor(), (z.im + 0.5).floor());
        out.push(Some((a.re as i64, a.im as i64)));
        let r = z - a;
        if r.norm() < 1e-9 {
            break;
        }
        z = 1.0 / r;
    }
    out
}

fn word_value(word: &[GaussianInt]) -> Complex64 {
    let mut v = c(word.last().unwrap());
    for a in word[..word.len() - 1].iter().rev() {
        v = c(a) + 1.0 / v;
    }
    v
}

fn surd() -> impl Strategy<Value = Surd> {
    (-20i64..=20, -20i64..=20, 1i64..=6, -6i64..=6, 1i64..=6, -30i64..=30, -30i64..=30, 2i64..=12).prop_map(
        |(ar, ai, den, br, bi, dr, di, dden)| {
            let d = if dr == 0 && di == 0 { g(2, 1) } else { g(dr, di) };
            let b = if br == 0 && bi == 0 { RatGauss::from_parts(1, dden, 0, 1) } else { RatGauss::from_parts(br, dden, bi, dden) };
            Surd::new(RatGauss::from_parts(ar, den, ai, den), b, d)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_matches_float_oracle(x in surd()) {
        let e = expand(&x, 8).unwrap();
        let (re, im) = x.to_f64_pair();
        for (k, f) in float_digits(Complex64::new(re, im), e.len()).into_iter().enumerate() {
            match f {
                Some(pair) => prop_assert_eq!(e.digits[k].to_i64_pair(), Some(pair), "digit {}", k),
                None => break,
            }
        }
    }

    #[test]
    fn expansions_are_valid_prefixes(x in surd()) {
        let e = expand(&x, 12).unwrap();
        prop_assert!(is_valid_prefix(&e.digits));
        for a in &e.digits[1..] {
            prop_assert!(a.norm() >= 2u32.into());
        }
    }

    #[test]
    fn convergents_approximate(x in surd()) {
        let e = expand(&x, 10).unwrap();
        let (re, im) = x.to_f64_pair();
        let xf = Complex64::new(re, im);
        for n in 0..e.len() {
            let (p, q) = (c(&e.p[n]), c(&e.q[n]));
            // f64 resolves the error only while |q|² stays well below 1/ε
            if q.norm_sqr() < 1e10 {
                prop_assert!((xf - p / q).norm() * q.norm_sqr() <= 1.0 + 1e-6, "n = {}", n);
            }
            // p_n q_{n−1} − p_{n−1} q_n = (−1)^{n+1}
            let det = &(&e.p[n] * &e.q_at(n as isize - 1)) - &(&e.p_at(n as isize - 1) * &e.q[n]);
            prop_assert_eq!(det, g(if n % 2 == 0 { -1 } else { 1 }, 0));
        }
    }

    #[test]
    fn singularization_preserves_value(
        head in prop::collection::vec((-9i64..=9, -9i64..=9), 1..4),
        mid in prop::sample::select(vec![(1i64, 1i64), (1, -1), (-1, 1), (-1, -1), (2, 0), (-2, 0), (0, 2), (0, -2)]),
        tail in prop::collection::vec((-9i64..=9, -9i64..=9), 1..4),
    ) {
        let mut word: Vec<GaussianInt> = head.iter().map(|&(a, b)| g(a, b)).collect();
        let at = word.len();
        word.push(g(mid.0, mid.1));
        word.extend(tail.iter().map(|&(a, b)| g(a, b)));
        let out = match singularize(&word, at) {
            Ok(out) => out,
            // a zero partial denominator makes the value undefined on one side
            Err(hcf::HcfError::DivisionByZero) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let (a, b) = (word_value(&word), word_value(&out));
        prop_assume!(a.is_finite() && b.is_finite() && a.norm() < 1e6);
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()), "{} vs {}", a, b);
    }

    #[test]
    fn continuant_ratio_matches_float(x in surd(), split in 1usize..6) {
        let e = expand(&x, 12).unwrap();
        prop_assume!(e.len() > split + 2);
        let (a, b) = (&e.digits[1..=split], &e.digits[split + 1..]);
        let rep = continuant_submultiplicativity(a, b).unwrap();
        let ratio = float_continuant(&e.digits[1..]).norm() / (float_continuant(a).norm() * float_continuant(b).norm());
        prop_assert!((rep.ratio_f64() - ratio).abs() <= 1e-9 * ratio.max(1.0));
        prop_assert_eq!(rep.within_kappa, rep.ratio_f64() <= kappa_f64() + 1e-12);
        prop_assert_eq!(continuant(a).unwrap(), rep.q_a);
    }
}

/// Continuant by the three-term recurrence in f64.
fn float_continuant(w: &[GaussianInt]) -> Complex64 {
    // q_{−1} = 0, q_0 = 1 for the leading 0 of [0; w]
    let (mut q2, mut q1) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for a in w {
        let q = c(a) * q1 + q2;
        q2 = q1;
        q1 = q;
    }
    q1
}

#[test]
fn golden_ratio_digits() {
    let x = Surd::from_real_parts(1, 1, 5, 2).unwrap();
    let e = expand(&x, 9).unwrap();
    let want = [g(2, 0), g(-3, 0), g(3, 0), g(-3, 0), g(3, 0), g(-3, 0), g(3, 0), g(-3, 0), g(3, 0)];
    assert_eq!(e.digits, want);
}

#[test]
fn fixed_invalid_prefix() {
    assert!(!is_valid_prefix(&[g(0, 0), g(1, 2), g(-2, 2), g(1, 1)]));
    assert!(is_valid_prefix(&[g(0, 0), g(-2, 2), g(1, 1)]));
}
