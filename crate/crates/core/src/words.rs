//! Infinite digit words: generators, repetition function, W/U/V decompositions.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::error::{HcfError, Result};
use crate::gaussian::GaussianInt;

/// Length cap for scans that must find a repeat.
pub const SCAN_BUDGET: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Explicit(Vec<GaussianInt>),
    Periodic { preperiod: Vec<GaussianInt>, period: Vec<GaussianInt> },
    /// DFA reading the base-`base` digits of the index, most significant first.
    Automaton { base: usize, transitions: Vec<Vec<usize>>, outputs: Vec<GaussianInt> },
}

impl Word {
    pub fn periodic(preperiod: Vec<GaussianInt>, period: Vec<GaussianInt>) -> Result<Word> {
        if period.is_empty() {
            return Err(HcfError::InvalidArgument("empty period".into()));
        }
        Ok(Word::Periodic { preperiod, period })
    }

    pub fn automaton(base: usize, transitions: Vec<Vec<usize>>, outputs: Vec<GaussianInt>) -> Result<Word> {
        if base < 2 {
            return Err(HcfError::InvalidArgument("automaton base must be ≥ 2".into()));
        }
        if transitions.is_empty() || outputs.len() != transitions.len() {
            return Err(HcfError::InvalidArgument("need one output per state".into()));
        }
        for row in &transitions {
            if row.len() != base || row.iter().any(|&s| s >= transitions.len()) {
                return Err(HcfError::InvalidArgument("malformed transition table".into()));
            }
        }
        Ok(Word::Automaton { base, transitions, outputs })
    }

    /// Thue–Morse word `t_0 t_1 …` with `t_n = a` when the binary digit sum of `n` is even.
    pub fn thue_morse(a: GaussianInt, b: GaussianInt) -> Word {
        Word::Automaton { base: 2, transitions: vec![vec![0, 1], vec![1, 0]], outputs: vec![a, b] }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Word::Explicit(_))
    }

    pub fn get(&self, i: usize) -> Result<GaussianInt> {
        match self {
            Word::Explicit(v) => v.get(i).cloned().ok_or(HcfError::IndexOutOfRange { index: i, len: v.len() }),
            Word::Periodic { preperiod, period } => Ok(if i < preperiod.len() {
                preperiod[i].clone()
            } else {
                period[(i - preperiod.len()) % period.len()].clone()
            }),
            Word::Automaton { base, transitions, outputs } => {
                let mut ds = Vec::new();
                let mut k = i;
                while k > 0 {
                    ds.push(k % base);
                    k /= base;
                }
                let state = ds.iter().rev().fold(0, |s, &d| transitions[s][d]);
                Ok(outputs[state].clone())
            }
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Vec<GaussianInt>> {
        if let Word::Explicit(v) = self {
            if n > v.len() {
                return Err(HcfError::IndexOutOfRange { index: n - 1, len: v.len() });
            }
            return Ok(v[..n].to_vec());
        }
        (0..n).map(|i| self.get(i)).collect()
    }

    /// Available length: the explicit length, or `cap` for infinite words.
    fn available(&self, cap: usize) -> usize {
        match self {
            Word::Explicit(v) => v.len().min(cap),
            _ => cap,
        }
    }

    pub fn alphabet(&self) -> Vec<GaussianInt> {
        let mut a: Vec<GaussianInt> = match self {
            Word::Explicit(v) => v.clone(),
            Word::Periodic { preperiod, period } => preperiod.iter().chain(period).cloned().collect(),
            Word::Automaton { outputs, .. } => outputs.clone(),
        };
        a.sort_by(|x, y| (&x.re, &x.im).cmp(&(&y.re, &y.im)));
        a.dedup();
        a
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[GaussianInt]| v.iter().map(GaussianInt::to_json).collect::<Vec<_>>();
        match self {
            Word::Explicit(v) => json!({ "type": "explicit", "digits": list(v) }),
            Word::Periodic { preperiod, period } => {
                json!({ "type": "periodic", "preperiod": list(preperiod), "period": list(period) })
            }
            Word::Automaton { base, transitions, outputs } => {
                json!({ "type": "automaton", "base": base, "transitions": transitions, "outputs": list(outputs) })
            }
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Word> {
        let list = |k: &str| -> Result<Vec<GaussianInt>> {
            match v.get(k) {
                None => Ok(vec![]),
                Some(serde_json::Value::Array(a)) => a.iter().map(GaussianInt::from_json).collect(),
                Some(o) => Err(HcfError::Parse(format!("{k}: expected a list, got {o}"))),
            }
        };
        match v.get("type").and_then(|t| t.as_str()) {
            Some("explicit") => Ok(Word::Explicit(list("digits")?)),
            Some("periodic") => Word::periodic(list("preperiod")?, list("period")?),
            Some("thue-morse") => {
                let o = list("outputs")?;
                if o.len() != 2 {
                    return Err(HcfError::Parse("thue-morse needs two outputs".into()));
                }
                Ok(Word::thue_morse(o[0].clone(), o[1].clone()))
            }
            Some("automaton") => {
                let base = v.get("base").and_then(|b| b.as_u64()).ok_or_else(|| HcfError::Parse("missing base".into()))?;
                let transitions: Vec<Vec<usize>> = serde_json::from_value(
                    v.get("transitions").cloned().ok_or_else(|| HcfError::Parse("missing transitions".into()))?,
                )
                .map_err(|e| HcfError::Parse(e.to_string()))?;
                Word::automaton(base as usize, transitions, list("outputs")?)
            }
            other => Err(HcfError::Parse(format!("unknown word type {other:?}"))),
        }
    }
}

/// Digits replaced by dense symbol ids.
fn symbols(digits: &[GaussianInt]) -> Vec<u32> {
    let mut ids: HashMap<&GaussianInt, u32> = HashMap::new();
    digits
        .iter()
        .map(|d| {
            let next = ids.len() as u32;
            *ids.entry(d).or_insert(next)
        })
        .collect()
}

/// Online suffix automaton; after each push, `repeat_len` is the longest suffix
/// that also ends at an earlier position.
struct SuffixAutomaton {
    len: Vec<usize>,
    link: Vec<Option<usize>>,
    next: Vec<HashMap<u32, usize>>,
    last: usize,
}

impl SuffixAutomaton {
    fn new() -> Self {
        SuffixAutomaton { len: vec![0], link: vec![None], next: vec![HashMap::new()], last: 0 }
    }

    fn add_state(&mut self, len: usize, link: Option<usize>, next: HashMap<u32, usize>) -> usize {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        self.len.len() - 1
    }

    fn push(&mut self, c: u32) {
        let cur = self.add_state(self.len[self.last] + 1, None, HashMap::new());
        let mut p = Some(self.last);
        while let Some(s) = p {
            if self.next[s].contains_key(&c) {
                break;
            }
            self.next[s].insert(c, cur);
            p = self.link[s];
        }
        match p {
            None => self.link[cur] = Some(0),
            Some(s) => {
                let q = self.next[s][&c];
                if self.len[s] + 1 == self.len[q] {
                    self.link[cur] = Some(q);
                } else {
                    let clone = self.add_state(self.len[s] + 1, self.link[q], self.next[q].clone());
                    let mut t = Some(s);
                    while let Some(u) = t {
                        if self.next[u].get(&c) != Some(&q) {
                            break;
                        }
                        self.next[u].insert(c, clone);
                        t = self.link[u];
                    }
                    self.link[q] = Some(clone);
                    self.link[cur] = Some(clone);
                }
            }
        }
        self.last = cur;
    }

    fn repeat_len(&self) -> usize {
        self.link[self.last].map_or(0, |l| self.len[l])
    }
}

/// `r(n)` for `n = 1..=n_max`, scanning at most `budget` letters.
pub fn repetition_all(w: &Word, n_max: usize, budget: usize) -> Result<Vec<usize>> {
    if n_max == 0 {
        return Err(HcfError::InvalidArgument("n must be ≥ 1".into()));
    }
    let avail = w.available(budget);
    let mut ids: HashMap<GaussianInt, u32> = HashMap::new();
    let mut sa = SuffixAutomaton::new();
    let mut r = Vec::with_capacity(n_max);
    for m in 1..=avail {
        let d = w.get(m - 1)?;
        let next = ids.len() as u32;
        sa.push(*ids.entry(d).or_insert(next));
        let l = sa.repeat_len().min(n_max);
        while r.len() < l {
            r.push(m);
        }
        if r.len() == n_max {
            return Ok(r);
        }
    }
    let n = r.len() + 1;
    if w.is_finite() && avail < budget {
        Err(HcfError::IndexOutOfRange { index: avail, len: avail })
    } else {
        Err(HcfError::BudgetExhausted(format!("r({n}) exceeds {budget} letters")))
    }
}

/// `r(n) = min{m ≥ n+1 : the length-n suffix of a_1…a_m occurs earlier}`.
pub fn repetition(w: &Word, n: usize) -> Result<usize> {
    Ok(*repetition_all(w, n, SCAN_BUDGET)?.last().expect("n ≥ 1"))
}

/// Quadratic cross-check for `r(n)`, `n = 1..=n_max`, on a finite prefix: common-suffix
/// lengths `L(i, m)` by dynamic programming; `None` where the prefix is too short.
pub fn repetition_naive(digits: &[GaussianInt], n_max: usize) -> Vec<Option<usize>> {
    let mut r = vec![None; n_max];
    let mut prev = vec![0usize; digits.len() + 1];
    for m in 1..=digits.len() {
        let mut cur = vec![0usize; digits.len() + 1];
        let mut best = 0;
        for i in 1..m {
            if digits[i - 1] == digits[m - 1] {
                cur[i] = prev[i - 1] + 1;
                best = best.max(cur[i]);
            }
        }
        for slot in r.iter_mut().take(best.min(n_max)) {
            slot.get_or_insert(m);
        }
        prev = cur;
    }
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepProfile {
    /// `(n, r(n))` for `n = 1..=horizon`.
    pub n_values: Vec<(usize, usize)>,
    /// Running minimum of `r(n)/n` over `horizon/2 < n' ≤ n`.
    pub running_min: Vec<(usize, BigRational)>,
    /// Final running minimum; a finite-horizon value, not the liminf.
    pub estimate: BigRational,
}

impl RepProfile {
    pub fn estimate_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.estimate).unwrap_or(f64::NAN)
    }

    pub fn max_running_min(&self) -> BigRational {
        self.running_min.iter().map(|(_, v)| v.clone()).max().expect("nonempty")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n_values": self.n_values,
            "estimate": self.estimate.to_string(),
            "estimate_f64": self.estimate_f64(),
            "n_range": [self.running_min[0].0, self.n_values.len()],
            "note": "finite-horizon running minimum of r(n)/n",
        })
    }
}

pub fn rep_exponent_estimate(w: &Word, horizon: usize) -> Result<RepProfile> {
    if horizon < 4 {
        return Err(HcfError::InvalidArgument("horizon must be ≥ 4".into()));
    }
    let r = repetition_all(w, horizon, SCAN_BUDGET)?;
    let n_values: Vec<(usize, usize)> = r.iter().enumerate().map(|(i, &m)| (i + 1, m)).collect();
    let mut running_min = Vec::new();
    let mut best: Option<BigRational> = None;
    for &(n, m) in n_values.iter().filter(|(n, _)| *n > horizon / 2) {
        let v = BigRational::new(BigInt::from(m), BigInt::from(n));
        let b = match best {
            Some(b) if b <= v => b,
            _ => v,
        };
        running_min.push((n, b.clone()));
        best = Some(b);
    }
    Ok(RepProfile { n_values, running_min, estimate: best.expect("horizon ≥ 4") })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WuvMode {
    /// `W U V U` is a prefix.
    Square,
    /// `W U V Û` is a prefix, `Û` the reversal of `U`.
    Club,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub w: usize,
    pub u: usize,
    pub v: usize,
}

impl Triple {
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.w + self.v), BigInt::from(self.u))
    }

    /// `t = w + u + v`.
    pub fn t(&self) -> usize {
        self.w + self.u + self.v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WuvDecomposition {
    pub mode: WuvMode,
    pub horizon: usize,
    /// One triple per `u`, minimizing `w + v`, sorted by `u`.
    pub triples: Vec<Triple>,
}

impl WuvDecomposition {
    pub fn max_ratio(&self) -> Option<BigRational> {
        self.triples.iter().map(Triple::ratio).max()
    }

    pub fn u_strictly_increasing(&self) -> bool {
        self.triples.windows(2).all(|p| p[0].u < p[1].u)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "mode": format!("{:?}", self.mode).to_lowercase(),
            "horizon": self.horizon,
            "triples": self.triples.iter().map(|t| json!([t.w, t.u, t.v])).collect::<Vec<_>>(),
            "ratios": self.triples.iter().map(|t| t.ratio().to_string()).collect::<Vec<_>>(),
            "max_ratio": self.max_ratio().map(|r| r.to_string()),
            "u_strictly_increasing": self.u_strictly_increasing(),
        })
    }
}

/// Whether `W U V U` (or `W U V Û`) is a prefix of `digits`.
pub fn triple_holds(digits: &[GaussianInt], t: Triple, mode: WuvMode) -> bool {
    let s = t.t();
    if t.u == 0 || s + t.u > digits.len() {
        return false;
    }
    let first = &digits[t.w..t.w + t.u];
    let second = &digits[s..s + t.u];
    match mode {
        WuvMode::Square => first == second,
        WuvMode::Club => first.iter().eq(second.iter().rev()),
    }
}

/// For each `u`, the occurrence with the smallest `t = w + u + v`, then the smallest `w`.
pub fn find_wuv(w: &Word, horizon: usize, mode: WuvMode) -> Result<WuvDecomposition> {
    if horizon < 8 {
        return Err(HcfError::InvalidArgument("horizon must be ≥ 8".into()));
    }
    let digits = w.prefix(w.available(horizon))?;
    let sym = symbols(&digits);
    let h = sym.len();
    let per_u = |u: usize| -> Option<Triple> {
        let mut first: HashMap<Vec<u32>, usize> = HashMap::new();
        for s in u..=h.checked_sub(u)? {
            let j = s - u;
            let key: Vec<u32> = match mode {
                WuvMode::Square => sym[j..j + u].to_vec(),
                WuvMode::Club => sym[j..j + u].iter().rev().copied().collect(),
            };
            first.entry(key).or_insert(j);
            if let Some(&wi) = first.get(&sym[s..s + u]) {
                return Some(Triple { w: wi, u, v: s - wi - u });
            }
        }
        None
    };
    let triples: Vec<Triple> = crate::exec::Exec::default().map_range(h / 2, |k| per_u(k + 1)).into_iter().flatten().collect();
    debug_assert!(triples.iter().all(|&t| triple_holds(&digits, t, mode)));
    Ok(WuvDecomposition { mode, horizon, triples })
}

/// Smallest `(preperiod, period)` with at least three periods inside the prefix and
/// preperiod at most half of it.
pub fn detect_period(digits: &[GaussianInt]) -> Option<(usize, usize)> {
    let h = digits.len();
    for m in 1..=h / 3 {
        let mut p = h - m;
        while p > 0 && digits[p - 1] == digits[p - 1 + m] {
            p -= 1;
        }
        if p <= h / 2 && h - p >= 3 * m {
            return Some((p, m));
        }
    }
    None
}

/// A tail minimum `|W|` at or below this counts as a repeating bounded `W`.
pub const CASE_I_W_BOUND: usize = 8;
/// Ratio cap for calling a finite chain bounded.
pub const H3_RATIO_CAP: i64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Some bounded `W` recurs along the chain.
    CaseI,
    /// `|W_n|` grows and the occurrences cannot be extended to the left.
    CaseII,
    Insufficient,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranscendenceReport {
    pub h1_digits_at_least_sqrt8: bool,
    pub h2_aperiodic: bool,
    pub detected_period: Option<(usize, usize)>,
    pub h3_chain: bool,
    pub decomposition: WuvDecomposition,
    pub evidence: Evidence,
}

impl TranscendenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        let evidence = match &self.evidence {
            Evidence::CaseI => "case i evidence".to_string(),
            Evidence::CaseII => "case ii evidence".to_string(),
            Evidence::Insufficient => "insufficient".to_string(),
            Evidence::NotApplicable(why) => format!("not applicable ({why})"),
        };
        json!({
            "H1": self.h1_digits_at_least_sqrt8,
            "H2": self.h2_aperiodic,
            "detected_period": self.detected_period,
            "H3": self.h3_chain,
            "evidence": evidence,
            "case_i_w_bound": CASE_I_W_BOUND,
            "h3_ratio_cap": H3_RATIO_CAP,
            "decomposition": self.decomposition.to_json(),
            "note": "evidence on a finite prefix, not a proof",
        })
    }
}

pub fn transcendence_hypothesis_check(w: &Word, horizon: usize) -> Result<TranscendenceReport> {
    if horizon < 16 {
        return Err(HcfError::InvalidArgument("horizon must be ≥ 16".into()));
    }
    let digits = w.prefix(w.available(horizon))?;
    let eight = BigInt::from(8);
    let h1 = digits.iter().skip(1).all(|a| a.norm() >= eight);
    let detected_period = detect_period(&digits);
    let h2 = detected_period.is_none();
    let decomposition = find_wuv(w, horizon, WuvMode::Square)?;
    let cap = BigRational::from_integer(BigInt::from(H3_RATIO_CAP));
    let h3 = !decomposition.triples.is_empty()
        && decomposition.u_strictly_increasing()
        && decomposition.max_ratio().is_some_and(|r| r <= cap);
    let evidence = if !h1 {
        Evidence::NotApplicable("digit below √8: hypothesis √8 ≤ liminf |a_n| fails".into())
    } else if !h2 {
        Evidence::NotApplicable("ultimately periodic digits: the value is quadratic".into())
    } else if !h3 {
        Evidence::Insufficient
    } else {
        let u_max = decomposition.triples.last().expect("nonempty").u;
        let tail: Vec<&Triple> = decomposition.triples.iter().filter(|t| 2 * t.u >= u_max).collect();
        let min_w = tail.iter().map(|t| t.w).min().expect("nonempty");
        let left_maximal = tail.iter().all(|t| t.w >= 1 && digits[t.w - 1] != digits[t.t() - 1]);
        if min_w <= CASE_I_W_BOUND {
            Evidence::CaseI
        } else if left_maximal && tail.last().expect("nonempty").w > tail[0].w {
            Evidence::CaseII
        } else {
            Evidence::Insufficient
        }
    };
    Ok(TranscendenceReport {
        h1_digits_at_least_sqrt8: h1,
        h2_aperiodic: h2,
        detected_period,
        h3_chain: h3,
        decomposition,
        evidence,
    })
}
