//! Regions of ℂ cut out by generalized circles, with exact emptiness tests.
//!
//! A constraint is `f(z) = A|z|² + B·Re z + C·Im z + D ≥ 0` (or `> 0` when strict)
//! with primitive integer coefficients. Lines are the case `A = 0`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{HcfError, Result};
use crate::gaussian::{bigint_from_json, bigint_to_json, rat_int, GaussianInt, RatGauss};
use crate::interval::sqrt_bounds;
use crate::qsqrt::QSqrt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
    pub strict: bool,
}

/// How a constraint looks geometrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    HalfPlane,
    DiskInterior,
    DiskExterior,
    Trivial,
    Infeasible,
}

impl Constraint {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>, strict: bool) -> Self {
        Constraint { a: a.into(), b: b.into(), c: c.into(), d: d.into(), strict }.primitive()
    }

    fn primitive(mut self) -> Self {
        let g = self.a.gcd(&self.b).gcd(&self.c).gcd(&self.d);
        if !g.is_zero() && !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
            self.d /= &g;
        }
        self
    }

    pub fn eval(&self, z: &RatGauss) -> BigRational {
        rat_int(&self.a) * z.norm() + rat_int(&self.b) * &z.re + rat_int(&self.c) * &z.im + rat_int(&self.d)
    }

    fn eval_xy(&self, x: &BigRational, y: &BigRational) -> BigRational {
        rat_int(&self.a) * (x * x + y * y) + rat_int(&self.b) * x + rat_int(&self.c) * y + rat_int(&self.d)
    }

    pub fn negated(&self) -> Self {
        Constraint { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d, strict: true }
    }

    pub fn opened(&self) -> Self {
        Constraint { strict: true, ..self.clone() }
    }

    /// `B² + C² − 4AD`; positive iff the zero set is a genuine circle or line.
    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b + &self.c * &self.c - BigInt::from(4) * &self.a * &self.d
    }

    pub fn kind(&self) -> ConstraintKind {
        let disc = self.discriminant();
        if self.a.is_zero() && self.b.is_zero() && self.c.is_zero() {
            return if self.d.is_positive() || (self.d.is_zero() && !self.strict) {
                ConstraintKind::Trivial
            } else {
                ConstraintKind::Infeasible
            };
        }
        if !disc.is_positive() {
            return if self.a.is_positive() { ConstraintKind::Trivial } else { ConstraintKind::Infeasible };
        }
        match self.a.sign() {
            num_bigint::Sign::NoSign => ConstraintKind::HalfPlane,
            num_bigint::Sign::Plus => ConstraintKind::DiskExterior,
            num_bigint::Sign::Minus => ConstraintKind::DiskInterior,
        }
    }

    /// Image under `z ↦ 1/z`: `(A, B, C, D) ↦ (D, B, −C, A)`.
    pub fn inverted(&self) -> Self {
        Constraint { a: self.d.clone(), b: self.b.clone(), c: -&self.c, d: self.a.clone(), strict: self.strict }
    }

    /// Constraint on `w` equivalent to this one on `z = w + t`.
    pub fn shifted(&self, t: &GaussianInt) -> Self {
        let two_a = &self.a * 2;
        let d = &self.a * t.norm() + &self.b * &t.re + &self.c * &t.im + &self.d;
        Constraint::new(self.a.clone(), &two_a * &t.re + &self.b, &two_a * &t.im + &self.c, d, self.strict)
    }

    /// Constraint describing `i·S` when this one describes `S`.
    pub fn rotated(&self) -> Self {
        Constraint { a: self.a.clone(), b: -&self.c, c: self.b.clone(), d: self.d.clone(), strict: self.strict }
    }

    /// Center and squared radius of a circle constraint.
    pub fn circle(&self) -> Option<(RatGauss, BigRational)> {
        if self.a.is_zero() {
            return None;
        }
        let two_a = rat_int(&self.a) * BigRational::from_integer(2.into());
        let center = RatGauss::new(-rat_int(&self.b) / &two_a, -rat_int(&self.c) / &two_a);
        let r2 = rat_int(&self.discriminant()) / (&two_a * &two_a);
        Some((center, r2))
    }

    fn coeff_key(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "a": bigint_to_json(&self.a), "b": bigint_to_json(&self.b),
            "c": bigint_to_json(&self.c), "d": bigint_to_json(&self.d),
            "strict": self.strict,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f = |k: &str| v.get(k).ok_or_else(|| HcfError::Parse(format!("constraint: missing {k}"))).and_then(bigint_from_json);
        let strict = v.get("strict").and_then(|s| s.as_bool()).unwrap_or(false);
        Ok(Constraint::new(f("a")?, f("b")?, f("c")?, f("d")?, strict))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { ">" } else { "≥" };
        write!(f, "{}|z|² + {}x + {}y + {} {} 0", self.a, self.b, self.c, self.d, op)
    }
}

// --- exact emptiness ------------------------------------------------------

type Pt = (BigRational, BigRational);

/// Open half-plane `bx + cy + d > 0`.
#[derive(Clone, Debug)]
struct Half {
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

impl Half {
    fn at(&self, p: &Pt) -> BigRational {
        &self.b * &p.0 + &self.c * &p.1 + &self.d
    }
}

/// Sutherland–Hodgman clip of a convex polygon by `h ≥ 0`.
fn clip(poly: &[Pt], h: &Half) -> Vec<Pt> {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let fp = h.at(p);
        let fq = h.at(q);
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let t = &fp / (&fp - &fq);
            out.push((&p.0 + &t * (&q.0 - &p.0), &p.1 + &t * (&q.1 - &p.1)));
        }
    }
    out
}

fn twice_area(poly: &[Pt]) -> BigRational {
    let n = poly.len();
    let mut s = BigRational::zero();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        s += &p.0 * &q.1 - &q.0 * &p.1;
    }
    s.abs()
}

fn dist2(p: &Pt, c: &Pt) -> BigRational {
    let dx = &p.0 - &c.0;
    let dy = &p.1 - &c.1;
    &dx * &dx + &dy * &dy
}

fn seg_dist2(p: &Pt, q: &Pt, c: &Pt) -> BigRational {
    let vx = &q.0 - &p.0;
    let vy = &q.1 - &p.1;
    let len2 = &vx * &vx + &vy * &vy;
    if len2.is_zero() {
        return dist2(p, c);
    }
    let t = ((&c.0 - &p.0) * &vx + (&c.1 - &p.1) * &vy) / &len2;
    let t = t.max(BigRational::zero()).min(BigRational::one());
    let proj = (&p.0 + &t * &vx, &p.1 + &t * &vy);
    dist2(&proj, c)
}

/// Point inside or on a convex polygon (counter-clockwise or clockwise).
fn inside_convex(poly: &[Pt], c: &Pt) -> bool {
    let n = poly.len();
    let mut sign = 0i32;
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let cross = (&q.0 - &p.0) * (&c.1 - &p.1) - (&q.1 - &p.1) * (&c.0 - &p.0);
        let s = if cross.is_positive() {
            1
        } else if cross.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if sign == 0 {
                sign = s;
            } else if sign != s {
                return false;
            }
        }
    }
    true
}

/// Does the circle `|z − c|² = r²` meet the open polygon `∩ halves`?
fn circle_meets(center: &Pt, r2: &BigRational, halves: &[Half]) -> bool {
    let (_, r_hi) = sqrt_bounds(r2, 4);
    let m = r_hi + BigRational::one();
    let mut poly: Vec<Pt> = vec![
        (&center.0 - &m, &center.1 - &m),
        (&center.0 + &m, &center.1 - &m),
        (&center.0 + &m, &center.1 + &m),
        (&center.0 - &m, &center.1 + &m),
    ];
    for h in halves {
        poly = clip(&poly, h);
        if poly.len() < 3 {
            return false;
        }
    }
    if !twice_area(&poly).is_positive() {
        return false;
    }
    let inf = if inside_convex(&poly, center) {
        BigRational::zero()
    } else {
        (0..poly.len()).map(|i| seg_dist2(&poly[i], &poly[(i + 1) % poly.len()], center)).min().expect("polygon")
    };
    let sup = poly.iter().map(|p| dist2(p, center)).max().expect("polygon");
    &inf < r2 && &sup > r2
}

#[derive(Clone, Debug)]
enum End {
    NegInf,
    PosInf,
    At(QSqrt),
}

fn end_cmp(x: &End, y: &End) -> Ordering {
    match (x, y) {
        (End::NegInf, End::NegInf) | (End::PosInf, End::PosInf) => Ordering::Equal,
        (End::NegInf, _) | (_, End::PosInf) => Ordering::Less,
        (_, End::NegInf) | (End::PosInf, _) => Ordering::Greater,
        (End::At(a), End::At(b)) => a.cmp_exact(b),
    }
}

/// `{t : αt² + βt + γ > 0}` as a union of open intervals.
fn positive_set(alpha: &BigRational, beta: &BigRational, gamma: &BigRational) -> Vec<(End, End)> {
    let all = vec![(End::NegInf, End::PosInf)];
    if alpha.is_zero() {
        if beta.is_zero() {
            return if gamma.is_positive() { all } else { vec![] };
        }
        let root = End::At(QSqrt::rational(-gamma / beta));
        return if beta.is_positive() { vec![(root, End::PosInf)] } else { vec![(End::NegInf, root)] };
    }
    let disc = beta * beta - BigRational::from_integer(4.into()) * alpha * gamma;
    let vertex = -beta / (alpha * BigRational::from_integer(2.into()));
    if disc.is_negative() {
        return if alpha.is_positive() { all } else { vec![] };
    }
    if disc.is_zero() {
        if alpha.is_negative() {
            return vec![];
        }
        let r = End::At(QSqrt::rational(vertex));
        return vec![(End::NegInf, r.clone()), (r, End::PosInf)];
    }
    // √(n/d) = √(nd)/d
    let m = disc.numer() * disc.denom();
    let s = BigRational::one() / (alpha.abs() * BigRational::from_integer(2.into()) * rat_int(disc.denom()));
    let r1 = End::At(QSqrt { r: vertex.clone(), s: -&s, m: m.clone() });
    let r2 = End::At(QSqrt { r: vertex, s, m });
    if alpha.is_positive() {
        vec![(End::NegInf, r1), (r2, End::PosInf)]
    } else {
        vec![(r1, r2)]
    }
}

/// Does the line `f_j = 0` contain a point where every other constraint is positive?
fn line_meets(j: &Constraint, others: &[&Constraint]) -> bool {
    let (b, c, d) = (rat_int(&j.b), rat_int(&j.c), rat_int(&j.d));
    let n2 = &b * &b + &c * &c;
    let p0 = (-&d * &b / &n2, -&d * &c / &n2);
    let dir = (-c, b);
    let sets: Vec<Vec<(End, End)>> = others
        .iter()
        .map(|f| {
            let (fa, fb, fc) = (rat_int(&f.a), rat_int(&f.b), rat_int(&f.c));
            let alpha = &fa * &n2;
            let beta = &fa * BigRational::from_integer(2.into()) * (&p0.0 * &dir.0 + &p0.1 * &dir.1) + &fb * &dir.0 + &fc * &dir.1;
            let gamma = f.eval_xy(&p0.0, &p0.1);
            positive_set(&alpha, &beta, &gamma)
        })
        .collect();
    if sets.iter().any(Vec::is_empty) {
        return false;
    }
    let mut candidates = vec![End::NegInf];
    for s in &sets {
        for (lo, _) in s {
            if !matches!(lo, End::NegInf) {
                candidates.push(lo.clone());
            }
        }
    }
    candidates.iter().any(|e| {
        sets.iter().all(|s| {
            s.iter().any(|(lo, hi)| end_cmp(lo, e) != Ordering::Greater && end_cmp(e, hi) == Ordering::Less)
        })
    })
}

/// Whether the open set `{f > 0 for all f}` is empty. Constraints must already be
/// free of trivial and degenerate members.
fn open_set_empty(cs: &[Constraint]) -> bool {
    if cs.is_empty() {
        return false;
    }
    for (j, fj) in cs.iter().enumerate() {
        let others: Vec<&Constraint> = cs.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, f)| f).collect();
        if fj.a.is_zero() {
            if line_meets(fj, &others) {
                return false;
            }
            continue;
        }
        let aj = rat_int(&fj.a);
        let mut halves = Vec::new();
        let mut ok = true;
        for f in &others {
            let k = rat_int(&f.a) / &aj;
            let h = Half {
                b: rat_int(&f.b) - &k * rat_int(&fj.b),
                c: rat_int(&f.c) - &k * rat_int(&fj.c),
                d: rat_int(&f.d) - &k * rat_int(&fj.d),
            };
            if h.b.is_zero() && h.c.is_zero() {
                if !h.d.is_positive() {
                    ok = false;
                    break;
                }
                continue;
            }
            halves.push(h);
        }
        if !ok {
            continue;
        }
        let (center, r2) = fj.circle().expect("circle");
        if circle_meets(&(center.re, center.im), &r2, &halves) {
            return false;
        }
    }
    true
}

// --- regions ---------------------------------------------------------------

/// Intersection of constraints, kept in canonical form: sorted, primitive, no
/// trivial or redundant members. `empty` means the interior is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub constraints: Vec<Constraint>,
    pub punctured: bool,
    pub empty: bool,
}

pub type ShapeKey = Vec<(BigInt, BigInt, BigInt, BigInt)>;

impl Region {
    pub fn whole() -> Self {
        Region { constraints: vec![], punctured: false, empty: false }
    }

    pub fn empty() -> Self {
        Region { constraints: vec![], punctured: false, empty: true }
    }

    /// `−1/2 ≤ Re z < 1/2`, `−1/2 ≤ Im z < 1/2`.
    pub fn fundamental() -> Self {
        Region::framed(vec![], false)
    }

    pub fn from_constraints(cs: Vec<Constraint>, punctured: bool) -> Self {
        Region::canonical(cs, punctured, &[])
    }

    /// Canonical form of a subset of 𝔉: the four sides are always kept. Without
    /// the frame, equal sets can end up with different irredundant descriptions.
    pub fn framed(cs: Vec<Constraint>, punctured: bool) -> Self {
        let frame: Vec<_> = fundamental_constraints().iter().map(Constraint::coeff_key).collect();
        let mut all = fundamental_constraints();
        all.extend(cs);
        Region::canonical(all, punctured, &frame)
    }

    fn canonical(cs: Vec<Constraint>, punctured: bool, pinned: &[(BigInt, BigInt, BigInt, BigInt)]) -> Self {
        let mut kept: Vec<Constraint> = Vec::new();
        for c in cs {
            let c = c.primitive();
            match c.kind() {
                ConstraintKind::Trivial => continue,
                ConstraintKind::Infeasible => return Region::empty(),
                _ => kept.push(c),
            }
        }
        kept.sort();
        let mut merged: Vec<Constraint> = Vec::new();
        for c in kept {
            match merged.last_mut() {
                Some(last) if last.coeff_key() == c.coeff_key() => last.strict |= c.strict,
                _ => merged.push(c),
            }
        }
        if open_set_empty(&merged) {
            return Region::empty();
        }
        let mut k = 0;
        while k < merged.len() {
            if pinned.contains(&merged[k].coeff_key()) {
                k += 1;
                continue;
            }
            let mut test: Vec<Constraint> =
                merged.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, c)| c.clone()).collect();
            test.push(merged[k].negated());
            if open_set_empty(&test) {
                merged.remove(k);
            } else {
                k += 1;
            }
        }
        Region { constraints: merged, punctured, empty: false }
    }

    pub fn is_empty_interior(&self) -> bool {
        self.empty
    }

    pub fn intersect(&self, other: &Region) -> Region {
        if self.empty || other.empty {
            return Region::empty();
        }
        let mut cs = self.constraints.clone();
        cs.extend(other.constraints.iter().cloned());
        Region::from_constraints(cs, self.punctured || other.punctured)
    }

    /// Image under `z ↦ 1/z`, punctured at the origin.
    pub fn inverted(&self) -> Region {
        if self.empty {
            return Region::empty();
        }
        Region::from_constraints(self.constraints.iter().map(Constraint::inverted).collect(), true)
    }

    /// `R + t`.
    pub fn translated(&self, t: &GaussianInt) -> Region {
        if self.empty {
            return Region::empty();
        }
        let neg = -t;
        let cs = self.constraints.iter().map(|c| c.shifted(&neg)).collect();
        Region { constraints: sorted(cs), punctured: self.punctured, empty: false }
    }

    /// `i·R`.
    pub fn rotated(&self) -> Region {
        if self.empty {
            return Region::empty();
        }
        let cs = self.constraints.iter().map(Constraint::rotated).collect();
        Region { constraints: sorted(cs), punctured: self.punctured, empty: false }
    }

    /// Feasible region of the next orbit value after digit `a`:
    /// `(1/R ∩ (a + 𝔉)) − a`.
    pub fn step(&self, a: &GaussianInt) -> Region {
        if self.empty {
            return Region::empty();
        }
        let inv = self.inverted();
        let cell = Region::fundamental().translated(a);
        let r = inv.intersect(&cell);
        if r.empty {
            return r;
        }
        let r = r.translated(&-a);
        Region::framed(r.constraints, r.punctured)
    }

    /// Does the open region contain a neighbourhood of 0?
    pub fn zero_is_interior(&self) -> bool {
        !self.empty && self.constraints.iter().all(|c| c.d.is_positive())
    }

    /// Shape up to rotation by powers of `i`, strictness ignored.
    pub fn shape_key(&self) -> ShapeKey {
        let mut best: Option<ShapeKey> = None;
        let mut r = self.clone();
        for _ in 0..4 {
            let key: ShapeKey = r.constraints.iter().map(Constraint::coeff_key).collect();
            let mut key = key;
            key.sort();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
            r = r.rotated();
        }
        if self.empty {
            return vec![];
        }
        best.unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "constraints": self.constraints.iter().map(Constraint::to_json).collect::<Vec<_>>(),
            "punctured": self.punctured,
            "empty": self.empty,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let cs = v
            .get("constraints")
            .and_then(|c| c.as_array())
            .ok_or_else(|| HcfError::Parse("region: missing constraints".into()))?
            .iter()
            .map(Constraint::from_json)
            .collect::<Result<Vec<_>>>()?;
        let punctured = v.get("punctured").and_then(|p| p.as_bool()).unwrap_or(false);
        Ok(Region::from_constraints(cs, punctured))
    }
}

fn sorted(mut cs: Vec<Constraint>) -> Vec<Constraint> {
    cs.sort();
    cs
}

pub fn fundamental_constraints() -> Vec<Constraint> {
    vec![
        Constraint::new(0, 2, 0, 1, false),
        Constraint::new(0, -2, 0, 1, true),
        Constraint::new(0, 0, 2, 1, false),
        Constraint::new(0, 0, -2, 1, true),
    ]
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::rat;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    /// Oracle: dense grid sampling of the open region.
    fn grid_hits(r: &Region, lo: i64, hi: i64, den: i64) -> bool {
        for x in lo * den..=hi * den {
            for y in lo * den..=hi * den {
                let z = RatGauss::from_parts(2 * x + 1, 2 * den, 2 * y + 1, 2 * den);
                if r.constraints.iter().all(|c| c.eval(&z).is_positive()) {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn inversion_examples() {
        // Re z ≥ 1/2 ↦ |w − 1| ≤ 1
        let h = Constraint::new(0, 2, 0, -1, false);
        let (c, r2) = h.inverted().circle().unwrap();
        assert_eq!((c, r2), (g(1, 0).to_rat(), rat(1, 1)));
        assert_eq!(h.inverted().kind(), ConstraintKind::DiskInterior);
        // unit circle fixed
        let u = Constraint::new(1, 0, 0, -1, false);
        assert_eq!(u.inverted().circle(), u.circle());
        // C(1+i, 1): |z|² − 2x − 2y + 1 ↦ center (1−i)/1, radius 1
        let k = Constraint::new(1, -2, -2, 1, false);
        assert_eq!(k.inverted().circle().unwrap(), (g(1, -1).to_rat(), rat(1, 1)));
    }

    #[test]
    fn fundamental_domain_shape() {
        let f = Region::fundamental();
        assert_eq!(f.constraints.len(), 4);
        assert!(!f.empty);
        assert!(f.zero_is_interior());
        assert_eq!(f.rotated().shape_key(), f.shape_key());
    }

    #[test]
    fn step_examples() {
        let f = Region::fundamental();
        assert!(f.step(&g(1, 0)).empty);
        assert!(f.step(&g(0, 0)).empty);
        assert_eq!(f.step(&g(2, 2)), f.step(&g(2, 2)).intersect(&f));
        let s = f.step(&g(3, 0));
        assert!(!s.empty);
        assert_eq!(s.constraints, f.constraints);
        let s = f.step(&g(1, 1));
        assert!(!s.empty && s != f);
        for c in &f.constraints {
            assert!(s.constraints.contains(c) || s.constraints.iter().all(|d| d.coeff_key() != c.coeff_key()));
        }
    }

    #[test]
    fn degenerate_constraints() {
        assert!(Region::from_constraints(vec![Constraint::new(-1, 0, 0, 0, false)], false).empty);
        assert!(!Region::from_constraints(vec![Constraint::new(1, 0, 0, 0, true)], false).empty);
        let c = Constraint::new(1, 0, 0, -1, false);
        assert!(Region::from_constraints(vec![c.clone(), c.negated()], false).empty);
        let l = Constraint::new(0, 1, 0, 0, false);
        assert!(Region::from_constraints(vec![l.clone(), l.negated()], false).empty);
    }

    #[test]
    fn redundancy_is_dropped() {
        let big = Constraint::new(-1, 0, 0, 100, false);
        let r = Region::from_constraints(fundamental_constraints().into_iter().chain([big]).collect(), false);
        assert_eq!(r, Region::fundamental());
    }

    #[test]
    fn json_round_trip() {
        let r = Region::fundamental().step(&g(1, 1));
        assert_eq!(Region::from_json(&r.to_json()).unwrap().constraints, r.constraints);
    }

    fn arb_constraint() -> impl Strategy<Value = Constraint> {
        (-2i64..3, -6i64..7, -6i64..7, -8i64..9).prop_map(|(a, b, c, d)| Constraint::new(a, b, c, d, false))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn emptiness_agrees_with_sampling(cs in proptest::collection::vec(arb_constraint(), 1..4)) {
            let box_ = vec![
                Constraint::new(0, 1, 0, 6, false), Constraint::new(0, -1, 0, 6, false),
                Constraint::new(0, 0, 1, 6, false), Constraint::new(0, 0, -1, 6, false),
            ];
            let all: Vec<Constraint> = cs.iter().cloned().chain(box_).collect();
            let r = Region::from_constraints(all.clone(), false);
            let raw = Region { constraints: all, punctured: false, empty: false };
            if grid_hits(&raw, -6, 6, 6) {
                prop_assert!(!r.empty);
            }
        }

        #[test]
        fn pruning_preserves_sampled_points(cs in proptest::collection::vec(arb_constraint(), 1..5)) {
            let full = cs.clone();
            let r = Region::from_constraints(cs, false);
            prop_assume!(!r.empty);
            for x in -12i64..=12 {
                for y in -12i64..=12 {
                    let z = RatGauss::from_parts(2 * x + 1, 4, 2 * y + 1, 4);
                    let a = full.iter().filter(|c| c.kind() != ConstraintKind::Trivial).all(|c| c.eval(&z).is_positive());
                    let b = r.constraints.iter().all(|c| c.eval(&z).is_positive());
                    if a {
                        prop_assert!(b);
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_digit_orbit_closes() {
        // 𝔉 minus the unit disk at 1 is its own image under the digit −2
        let r1 = Region::fundamental().step(&g(-2, 0));
        let r2 = r1.step(&g(-2, 0));
        assert_eq!(r1, r2);
        assert_eq!(r1.constraints.len(), 5);
    }

    #[test]
    fn framed_keeps_sides() {
        let far = Constraint::new(1, -4, 0, 3, false); // outside |z − 2| < 1, redundant in 𝔉
        let r = Region::framed(vec![far], false);
        assert_eq!(r, Region::fundamental());
    }
}
