//! Validity of digit words via propagation of feasible regions.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::error::{HcfError, Result};
use crate::gaussian::GaussianInt;
use crate::hcf::gaussians_up_to;
use crate::region::{Constraint, Region, ShapeKey};

/// Default `|a|²` cap for digit enumeration.
pub const DIGIT_NORM_CAP: u64 = 200;

/// Default number of period repetitions tried before giving up on a cycle.
pub const PERIODIC_BUDGET: usize = 256;

/// Memo of `Region::step`.
#[derive(Default, Debug)]
pub struct RegionCache {
    map: HashMap<(Region, GaussianInt), Region>,
}

impl RegionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step(&mut self, r: &Region, a: &GaussianInt) -> Region {
        if let Some(v) = self.map.get(&(r.clone(), a.clone())) {
            return v.clone();
        }
        let v = r.step(a);
        self.map.insert((r.clone(), a.clone()), v.clone());
        v
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Feasible regions after each digit `a_1, a_2, …` (the first entry is 𝔉 for `a_0`).
pub fn prefix_regions(digits: &[GaussianInt], cache: &mut RegionCache) -> Vec<Region> {
    let mut out = vec![Region::fundamental()];
    for a in digits.iter().skip(1) {
        let next = cache.step(out.last().expect("nonempty"), a);
        let stop = next.empty;
        out.push(next);
        if stop {
            break;
        }
    }
    out
}

/// `a_0` is unconstrained; every later digit must keep a region with interior.
pub fn is_valid_prefix(digits: &[GaussianInt]) -> bool {
    is_valid_prefix_cached(digits, &mut RegionCache::new())
}

pub fn is_valid_prefix_cached(digits: &[GaussianInt], cache: &mut RegionCache) -> bool {
    if digits.is_empty() {
        return false;
    }
    let regs = prefix_regions(digits, cache);
    regs.len() == digits.len() && !regs.last().expect("nonempty").empty
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleDigits {
    /// Feasible digits with `|a|² ≤ cap`, in enumeration order.
    pub digits: Vec<GaussianInt>,
    pub cap: u64,
    /// Every digit with `|a|² ≥ tail_from` is feasible.
    pub tail_from: Option<BigInt>,
}

/// Radius `ρ = 2^-k` of a disk around 0 inside `r`, if 0 is interior.
fn inner_radius(r: &Region) -> Option<BigRational> {
    if !r.zero_is_interior() {
        return None;
    }
    let mut rho = BigRational::one();
    for _ in 0..64 {
        let rho2 = &rho * &rho;
        // disk |z|² < ρ²: −den·|z|² + num ≥ 0
        let disk = Constraint::new(-rho2.denom().clone(), 0, 0, rho2.numer().clone(), true);
        let inside = r.constraints.iter().all(|c| {
            Region::from_constraints(vec![disk.clone(), c.negated()], false).empty
        });
        if inside {
            return Some(rho);
        }
        rho /= BigRational::from_integer(2.into());
    }
    None
}

pub fn feasible_digits(r: &Region, cap: u64) -> FeasibleDigits {
    if r.empty {
        return FeasibleDigits { digits: vec![], cap, tail_from: None };
    }
    let digits = gaussians_up_to(&BigInt::from(cap)).into_iter().filter(|a| !r.step(a).empty).collect();
    // a + 𝔉 ⊂ {|w| > 1/ρ} once |a| > 1/ρ + 1/√2; (1/ρ + 1)² is a safe integer bound
    let tail_from = inner_radius(r).map(|rho| {
        let t = rho.recip() + BigRational::one();
        let t2 = &t * &t;
        t2.ceil().to_integer()
    });
    FeasibleDigits { digits, cap, tail_from }
}

/// Outcome of a periodic validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicVerdict {
    pub valid: bool,
    /// Repetitions processed before a region repeat or a dead end.
    pub repetitions: usize,
}

/// Validity of the purely periodic word `overline{a_0, …, a_{m−1}}`.
///
/// Regions are compared exactly each time a copy of `a_0` has been consumed; a
/// repeat with nothing empty so far proves validity of the infinite word.
pub fn is_valid_periodic(period: &[GaussianInt], budget: usize) -> Result<PeriodicVerdict> {
    is_valid_periodic_cached(period, budget, &mut RegionCache::new())
}

pub fn is_valid_periodic_cached(period: &[GaussianInt], budget: usize, cache: &mut RegionCache) -> Result<PeriodicVerdict> {
    if period.is_empty() {
        return Err(HcfError::InvalidArgument("empty period".into()));
    }
    let mut seen = std::collections::HashSet::new();
    let mut r = Region::fundamental();
    for rep in 0..budget {
        if !seen.insert(r.clone()) {
            return Ok(PeriodicVerdict { valid: true, repetitions: rep });
        }
        for k in 1..=period.len() {
            r = cache.step(&r, &period[k % period.len()]);
            if r.empty {
                return Ok(PeriodicVerdict { valid: false, repetitions: rep });
            }
        }
    }
    Err(HcfError::BudgetExhausted(format!("no region cycle within {budget} repetitions")))
}

/// Validity of the preperiodic word `(pre…, overline{period})`, `pre[0]` being `a_0`.
pub fn is_valid_eventually_periodic(pre: &[GaussianInt], period: &[GaussianInt], budget: usize) -> Result<bool> {
    if period.is_empty() {
        return Err(HcfError::InvalidArgument("empty period".into()));
    }
    let mut cache = RegionCache::new();
    let mut r = Region::fundamental();
    let mut word: Vec<&GaussianInt> = pre.iter().skip(1).collect();
    let offset = if pre.is_empty() { 1 } else { 0 };
    word.extend(period.iter().skip(offset));
    for a in word {
        r = cache.step(&r, a);
        if r.empty {
            return Ok(false);
        }
    }
    let mut seen = std::collections::HashSet::new();
    for _ in 0..budget {
        if !seen.insert(r.clone()) {
            return Ok(true);
        }
        for a in period {
            r = cache.step(&r, a);
            if r.empty {
                return Ok(false);
            }
        }
    }
    Err(HcfError::BudgetExhausted(format!("no region cycle within {budget} repetitions")))
}

/// Whether the reversed period is again a valid periodic word.
pub fn is_reversible(period: &[GaussianInt], budget: usize) -> Result<bool> {
    let rev: Vec<GaussianInt> = period.iter().rev().cloned().collect();
    Ok(is_valid_periodic(&rev, budget)?.valid)
}

/// The four prefix shapes built on `n` alternating copies of `−2+2i` (separated by
/// `2−2i`) and closed by `1+i`; `n = 1` is the single digit `−2+2i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Plain,
    LeadingTwoMinusTwoI,
    LeadingOnePlusTwoI,
    LeadingMinusOnePlusTwoI,
}

impl Family {
    pub const ALL: [Family; 4] =
        [Family::Plain, Family::LeadingTwoMinusTwoI, Family::LeadingOnePlusTwoI, Family::LeadingMinusOnePlusTwoI];

    /// Validity claimed for every member of the family.
    pub fn claimed_valid(self) -> bool {
        matches!(self, Family::Plain | Family::LeadingTwoMinusTwoI)
    }

    pub fn word(self, xi: &GaussianInt, n: usize) -> Vec<GaussianInt> {
        let mut w = vec![xi.clone()];
        match self {
            Family::Plain => {}
            Family::LeadingTwoMinusTwoI => w.push(GaussianInt::new(2, -2)),
            Family::LeadingOnePlusTwoI => w.push(GaussianInt::new(1, 2)),
            Family::LeadingMinusOnePlusTwoI => {
                w.push(GaussianInt::new(-1, 2));
                w.push(GaussianInt::new(2, -2));
            }
        }
        w.push(GaussianInt::new(-2, 2));
        for _ in 1..n {
            w.push(GaussianInt::new(2, -2));
            w.push(GaussianInt::new(-2, 2));
        }
        w.push(GaussianInt::new(1, 1));
        w
    }
}

/// A random valid prefix of the given length with `|a_n|² ≤ max_norm` for `n ≥ 1`.
pub fn random_valid_word<R: Rng>(rng: &mut R, len: usize, max_norm: i64, cache: &mut RegionCache) -> Vec<GaussianInt> {
    let r = (max_norm as f64).sqrt() as i64;
    let pool: Vec<GaussianInt> = (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| (x, y)))
        .filter(|(x, y)| x * x + y * y >= 2 && x * x + y * y <= max_norm)
        .map(GaussianInt::from)
        .collect();
    let mut word = vec![GaussianInt::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5))];
    let mut region = Region::fundamental();
    while word.len() < len {
        loop {
            let a = &pool[rng.gen_range(0..pool.len())];
            let next = cache.step(&region, a);
            if !next.empty {
                region = next;
                word.push(a.clone());
                break;
            }
        }
    }
    word
}

/// Shapes (up to rotation) of all regions met along the given words.
#[derive(Default, Debug, Clone)]
pub struct Catalog {
    pub shapes: BTreeSet<ShapeKey>,
    /// Catalog size after each word.
    pub sizes: Vec<usize>,
}

impl Catalog {
    pub fn add_word(&mut self, digits: &[GaussianInt], cache: &mut RegionCache) {
        for r in prefix_regions(digits, cache) {
            if !r.empty {
                self.shapes.insert(r.shape_key());
            }
        }
        self.sizes.push(self.shapes.len());
    }

    /// Size unchanged over the last `window` words.
    pub fn stable_over(&self, window: usize) -> bool {
        if self.sizes.len() < window + 1 {
            return false;
        }
        let tail = &self.sizes[self.sizes.len() - window - 1..];
        tail.first() == tail.last()
    }
}

/// Boundary samples of the cells `{z ∈ 𝔉 : [1/z] = a}` as CSV rows.
pub fn partition_csv(cap: u64, samples: usize) -> String {
    let mut out = String::from("digit_re,digit_im,arc_index,point_re,point_im\n");
    let f = Region::fundamental();
    for a in gaussians_up_to(&BigInt::from(cap)) {
        let cell = f.intersect(&Region::fundamental().translated(&a).inverted());
        if cell.empty {
            continue;
        }
        let (ar, ai) = a.to_i64_pair().expect("small digit");
        for (k, c) in cell.constraints.iter().enumerate() {
            // the origin satisfies every inverted constraint with equality but is not in the cell
            let on_arc: Vec<(f64, f64)> = sample_arc(c, samples * 64)
                .into_iter()
                .filter(|&(x, y)| {
                    x.hypot(y) > 1e-12
                        && cell.constraints.iter().enumerate().all(|(j, o)| j == k || eval_f64(o, x, y) >= -1e-9)
                })
                .collect();
            let step = (on_arc.len() / samples).max(1);
            for &(x, y) in on_arc.iter().step_by(step) {
                let (x, y) = (tidy(x), tidy(y));
                out.push_str(&format!("{ar},{ai},{k},{x:.9},{y:.9}\n"));
            }
        }
    }
    out
}

/// Avoids printing `-0.000000000`.
fn tidy(v: f64) -> f64 {
    if v.abs() < 5e-10 {
        0.0
    } else {
        v
    }
}

fn coeffs_f64(c: &Constraint) -> [f64; 4] {
    [&c.a, &c.b, &c.c, &c.d].map(|v| v.to_f64().unwrap_or(f64::NAN))
}

fn eval_f64(c: &Constraint, x: f64, y: f64) -> f64 {
    let [a, b, cc, d] = coeffs_f64(c);
    a * (x * x + y * y) + b * x + cc * y + d
}

fn sample_arc(c: &Constraint, samples: usize) -> Vec<(f64, f64)> {
    let [a, b, cc, d] = coeffs_f64(c);
    let n = samples.max(2);
    if a == 0.0 {
        let n2 = b * b + cc * cc;
        let (px, py) = (-d * b / n2, -d * cc / n2);
        let len = n2.sqrt();
        (0..n)
            .map(|j| {
                let t = -1.0 + 2.0 * j as f64 / (n - 1) as f64;
                (px - cc / len * t, py + b / len * t)
            })
            .collect()
    } else {
        let (cx, cy) = (-b / (2.0 * a), -cc / (2.0 * a));
        let r = ((b * b + cc * cc - 4.0 * a * d) / (4.0 * a * a)).sqrt();
        (0..n)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / n as f64;
                (cx + r * th.cos(), cy + r * th.sin())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{in_fundamental_domain, RatGauss};
    use crate::hcf::expand_rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn gs(v: &[(i64, i64)]) -> Vec<GaussianInt> {
        v.iter().map(|&p| GaussianInt::from(p)).collect()
    }

    #[test]
    fn prefix_examples() {
        assert!(is_valid_prefix(&gs(&[(0, 0), (-2, 2), (1, 1)])));
        assert!(!is_valid_prefix(&gs(&[(0, 0), (1, 2), (-2, 2), (1, 1)])));
        assert!(!is_valid_prefix(&gs(&[(0, 0), (1, 0)])));
        assert!(is_valid_prefix(&gs(&[(7, 3)])));
    }

    /// Oracle: build `z = [0; w_1, …, w_k + u]` for sample points `u ∈ 𝔉` and
    /// re-expand exactly; any reproduction is a witness of validity.
    fn witness(word: &[GaussianInt], trials: usize) -> Option<RatGauss> {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let den = 1_000_000i64;
        for _ in 0..trials {
            let u = RatGauss::from_parts(rng.gen_range(-den / 2..den / 2), den, rng.gen_range(-den / 2..den / 2), den);
            let mut v = &word[word.len() - 1].to_rat() + &u;
            for a in word[1..word.len() - 1].iter().rev() {
                v = &a.to_rat() + &v.inv().unwrap();
            }
            let z = v.inv().unwrap();
            if !in_fundamental_domain(&z) {
                continue;
            }
            let e = expand_rat(&(&word[0].to_rat() + &z), word.len()).unwrap();
            if e.digits == word {
                return Some(z);
            }
        }
        None
    }

    #[test]
    fn families_agree_with_backward_oracle() {
        for n in 1..=3 {
            for fam in Family::ALL {
                let w = fam.word(&g(0, 0), n);
                assert_eq!(is_valid_prefix(&w), witness(&w, 3000).is_some(), "{fam:?} n={n}");
            }
        }
    }

    #[test]
    fn family_base_cases() {
        for xi in [g(0, 0), g(3, 0), g(0, 5)] {
            for n in 1..=5 {
                assert!(is_valid_prefix(&Family::Plain.word(&xi, n)));
                assert!(is_valid_prefix(&Family::LeadingTwoMinusTwoI.word(&xi, n)));
            }
            assert!(!is_valid_prefix(&Family::LeadingOnePlusTwoI.word(&xi, 1)));
        }
        // longer members of the 1+2i shape are realized by actual points
        let w = Family::LeadingOnePlusTwoI.word(&g(0, 0), 2);
        let z = witness(&w, 3000).expect("witness");
        assert_eq!(expand_rat(&z, w.len()).unwrap().digits[1..], w[1..]);
    }

    #[test]
    fn feasible_from_fundamental() {
        let fd = feasible_digits(&Region::fundamental(), 20);
        assert!(fd.digits.contains(&g(1, 1)));
        assert!(!fd.digits.contains(&g(1, 0)));
        assert!(fd.digits.iter().all(|a| a.norm() >= BigInt::from(2)));
        assert!(fd.tail_from.is_some());
        let r = Region::fundamental().step(&g(-2, 2));
        assert!(feasible_digits(&r, 20).digits.contains(&g(1, 1)));
        let r = Region::fundamental().step(&g(1, 2)).step(&g(-2, 2));
        assert!(!feasible_digits(&r, 20).digits.contains(&g(1, 1)));
        assert!(feasible_digits(&Region::empty(), 20).digits.is_empty());
    }

    #[test]
    fn periodic_examples() {
        assert!(is_valid_periodic(&gs(&[(3, 0), (-3, 0)]), 64).unwrap().valid);
        assert!(is_valid_periodic(&gs(&[(3, 0), (0, 3), (-3, 0), (4, 1)]), 64).unwrap().valid);
        assert!(!is_valid_periodic(&gs(&[(1, 1), (1, 1)]), 64).unwrap().valid);
        assert!(is_reversible(&gs(&[(3, 0), (0, 3), (-3, 0)]), 64).unwrap());
        assert!(!is_reversible(&gs(&[(5, 6), (-3, 2), (2, 0), (9, 4)]), 64).unwrap());
        assert!(is_reversible(&gs(&[(2, -2), (1, 1), (2, -2), (2, 4)]), 64).unwrap());
    }

    #[test]
    fn large_digits_always_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut cache = RegionCache::new();
        for _ in 0..100 {
            let len = rng.gen_range(2..20);
            let w: Vec<GaussianInt> = (0..len)
                .map(|_| loop {
                    let a = g(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
                    if a.norm() >= BigInt::from(8) {
                        break a;
                    }
                })
                .collect();
            assert!(is_valid_prefix_cached(&w, &mut cache));
        }
    }

    #[test]
    fn random_words_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut cache = RegionCache::new();
        for _ in 0..30 {
            let w = random_valid_word(&mut rng, 25, 10, &mut cache);
            assert_eq!(w.len(), 25);
            assert!(is_valid_prefix_cached(&w, &mut cache));
        }
    }

    #[test]
    fn partition_has_header_and_rows() {
        let csv = partition_csv(8, 16);
        assert!(csv.starts_with("digit_re,digit_im,arc_index,point_re,point_im\n"));
        assert!(csv.lines().count() > 10);
        assert!(!csv.contains("\n1,0,"));
    }
}
