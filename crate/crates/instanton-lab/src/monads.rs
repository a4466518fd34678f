//! Symbolic monad shapes and the multiplicity formulas that go with them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::choose;
use crate::chow::{ChowClass, Variety};
use crate::cohomology::{CohVector, CohomologyError, LineBundle, VarietyEntry};
use crate::rr::ChernData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonadError {
    #[error("negative multiplicity: {0}")]
    Negative(String),
    #[error("parity: {0}")]
    Parity(String),
    #[error("divisibility: {0}")]
    Divisibility(String),
    #[error("relation violated: {0}")]
    Relation(String),
    #[error("{0} is not flagged aCM")]
    NotAcm(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sheaf {
    /// A line bundle in the divisor basis of the variety.
    Line { coords: Vec<i64> },
    /// Ω^p(t) on Pⁿ.
    Omega { n: u32, p: u32, twist: i64 },
    /// A spinor bundle on a quadric, `which` is "", "'" or "''".
    Spinor { n: u32, which: String, twist: i64 },
    /// Any other named bundle; `rank` is None when only constraints are known.
    Named { name: String, rank: Option<u64> },
}

impl Sheaf {
    pub fn line(coords: &[i64]) -> Self {
        Sheaf::Line { coords: coords.to_vec() }
    }

    pub fn rank(&self) -> Option<u64> {
        match self {
            Sheaf::Line { .. } => Some(1),
            Sheaf::Omega { n, p, .. } => choose(*n as i64, *p as i64).to_u64(),
            Sheaf::Spinor { n, .. } => Some(spinor_rank(*n)),
            Sheaf::Named { rank, .. } => *rank,
        }
    }

    /// c1 on Pⁿ as a multiple of the hyperplane class.
    fn c1_pn(&self) -> Option<BigInt> {
        match self {
            Sheaf::Line { coords } if coords.len() == 1 => Some(coords[0].into()),
            Sheaf::Omega { n, p, twist } => {
                let (n, p) = (*n as i64, *p as i64);
                Some(choose(n, p) * twist - choose(n - 1, p - 1) * (n + 1))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw = |t: i64| if t == 0 { String::new() } else { format!("({t})") };
        match self {
            Sheaf::Line { coords } => {
                let c: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
                write!(f, "O({})", c.join(","))
            }
            Sheaf::Omega { p, twist, .. } => write!(f, "Ω^{p}{}", tw(*twist)),
            Sheaf::Spinor { which, twist, .. } => match twist {
                0 => write!(f, "S{which}"),
                1 => write!(f, "S{which}(h)"),
                t => write!(f, "S{which}({t}h)"),
            },
            Sheaf::Named { name, .. } => write!(f, "{name}"),
        }
    }
}

pub fn spinor_rank(n: u32) -> u64 {
    1 << ((n.max(1) - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sheaf: Sheaf,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonadShape {
    pub variety: String,
    /// M⁻¹, M⁰, M¹.
    pub terms: [Vec<Term>; 3],
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<Constraint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn term(sheaf: Sheaf, mult: i64, what: &str) -> Result<Term, MonadError> {
    let mult = u64::try_from(mult).map_err(|_| MonadError::Negative(format!("{what} = {mult}")))?;
    Ok(Term { sheaf, mult })
}

impl MonadShape {
    fn new(variety: impl Into<String>, terms: [Vec<Term>; 3]) -> Self {
        let mut shape = MonadShape { variety: variety.into(), terms, constraints: vec![], notes: vec![] };
        for side in shape.terms.iter_mut() {
            side.retain(|t| t.mult > 0);
        }
        shape
    }

    fn side_rank(side: &[Term]) -> Option<i64> {
        side.iter().map(|t| t.sheaf.rank().map(|r| (r * t.mult) as i64)).sum()
    }

    /// rk M⁰ − rk M⁻¹ − rk M¹, when every rank is known.
    pub fn rank(&self) -> Option<i64> {
        let [a, b, c] = &self.terms;
        Some(Self::side_rank(b)? - Self::side_rank(a)? - Self::side_rank(c)?)
    }

    pub fn c1_pn(&self) -> Option<BigInt> {
        let side = |s: &[Term]| -> Option<BigInt> { s.iter().map(|t| Some(t.sheaf.c1_pn()? * t.mult)).sum() };
        let [a, b, c] = &self.terms;
        Some(side(b)? - side(a)? - side(c)?)
    }

    pub fn mult(&self, i: usize, sheaf: &Sheaf) -> u64 {
        self.terms[i].iter().filter(|t| &t.sheaf == sheaf).map(|t| t.mult).sum()
    }

    /// Componentwise sum with terms of equal sheaf merged.
    pub fn direct_sum(&self, other: &MonadShape) -> MonadShape {
        let mut terms = self.terms.clone();
        for (side, extra) in terms.iter_mut().zip(other.terms.iter()) {
            for t in extra {
                match side.iter_mut().find(|s| s.sheaf == t.sheaf) {
                    Some(s) => s.mult += t.mult,
                    None => side.push(t.clone()),
                }
            }
        }
        MonadShape::new(self.variety.clone(), terms)
    }

    /// Twists every line bundle, Ω and spinor term on a Picard-rank-one variety.
    pub fn twisted(&self, t: i64) -> MonadShape {
        let shift = |s: &Sheaf| match s {
            Sheaf::Line { coords } if coords.len() == 1 => Sheaf::line(&[coords[0] + t]),
            Sheaf::Omega { n, p, twist } => Sheaf::Omega { n: *n, p: *p, twist: twist + t },
            Sheaf::Spinor { n, which, twist } => Sheaf::Spinor { n: *n, which: which.clone(), twist: twist + t },
            other => other.clone(),
        };
        let terms = self
            .terms
            .clone()
            .map(|side| side.into_iter().map(|x| Term { sheaf: shift(&x.sheaf), mult: x.mult }).collect());
        MonadShape::new(self.variety.clone(), terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("shapes serialize")
    }

    pub fn to_markdown(&self) -> String {
        let side = |s: &[Term]| {
            if s.is_empty() {
                return "0".to_string();
            }
            s.iter()
                .map(|t| if t.mult == 1 { t.sheaf.to_string() } else { format!("{}^{}", t.sheaf, t.mult) })
                .collect::<Vec<_>>()
                .join(" ⊕ ")
        };
        let mut out = format!(
            "on {}: 0 → {} → {} → {} → 0\n",
            self.variety,
            side(&self.terms[0]),
            side(&self.terms[1]),
            side(&self.terms[2])
        );
        for c in &self.constraints {
            out += &format!("- {} = {}\n", c.name, c.value);
        }
        for n in &self.notes {
            out += &format!("- note: {n}\n");
        }
        out
    }
}

impl fmt::Display for MonadShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_markdown().lines().next().unwrap_or_default())
    }
}

/// Beilinson-type monad on Pⁿ with respect to O(1).
pub fn monad_pn(
    n: u32,
    defect: u8,
    quantum: u64,
    chi0: i64,
    h0e: Option<u64>,
    hne: Option<u64>,
) -> Result<MonadShape, MonadError> {
    if n < 2 {
        return Err(MonadError::Invalid("monads on Pⁿ need n >= 2".into()));
    }
    let k = quantum as i64;
    let v = format!("p{n}");
    match defect {
        0 => {
            let terms = [
                vec![term(Sheaf::line(&[-1]), k, "k")?],
                vec![term(Sheaf::line(&[0]), chi0 + (n as i64 + 1) * k, "χ+(n+1)k")?],
                vec![term(Sheaf::line(&[1]), k, "k")?],
            ];
            Ok(MonadShape::new(v, terms))
        }
        1 => {
            let (b0, b1) = match (h0e, hne) {
                (Some(a), Some(b)) => (a as i64, b as i64),
                _ => return Err(MonadError::Invalid("defect 1 needs h⁰(E) and hⁿ(E(−n))".into())),
            };
            let mut middle = vec![
                term(Sheaf::line(&[0]), b0, "b₀")?,
                term(Sheaf::Omega { n, p: 1, twist: 1 }, k, "k")?,
            ];
            if n >= 3 {
                middle.push(term(Sheaf::Omega { n, p: n - 1, twist: n as i64 - 1 }, k, "k")?);
            }
            middle.push(term(Sheaf::line(&[-1]), b1, "b₁")?);
            let terms = [
                vec![term(Sheaf::line(&[-1]), b1 - chi0, "b₁−χ")?],
                middle,
                vec![term(Sheaf::line(&[0]), b0 - chi0, "b₀−χ")?],
            ];
            let mut shape = MonadShape::new(v, terms);
            shape.notes.push("b₀ = h⁰(E), b₁ = hⁿ(E(−n)) are the largest allowed values; isomorphic summands may cancel".into());
            Ok(shape)
        }
        _ => Err(MonadError::Invalid("defect must be 0 or 1".into())),
    }
}

fn h0_omega(entry: &VarietyEntry, t: i64) -> Result<u64, MonadError> {
    let l = LineBundle::new(&entry.canonical).plus(&entry.polarization, t);
    Ok(entry.line_cohomology(&l)?.h(0))
}

fn canonical_twist(entry: &VarietyEntry, t: i64) -> Sheaf {
    Sheaf::Line { coords: LineBundle::new(&entry.canonical).plus(&entry.polarization, t).coords }
}

/// Monad with aCM middle term B on an aCM variety, plus the constraints on B.
pub fn monad_acm(
    entry: &VarietyEntry,
    defect: u8,
    quantum: u64,
    h1e: u64,
    hn1e: u64,
) -> Result<MonadShape, MonadError> {
    let n = entry.dim() as i64;
    if n < 3 {
        return Err(MonadError::Invalid("needs dimension >= 3".into()));
    }
    if !entry.acm {
        return Err(MonadError::NotAcm(entry.variety.to_string()));
    }
    let d = defect as i64;
    let (q, a, c) = (quantum as i64, d * hn1e as i64, d * h1e as i64);
    let zero = vec![0; entry.polarization.len()];
    let terms = [
        vec![term(canonical_twist(entry, n - d), q, "q")?, term(canonical_twist(entry, n + 1 - d), a, "a")?],
        vec![Term { sheaf: Sheaf::Named { name: "B".into(), rank: None }, mult: 1 }],
        vec![term(Sheaf::line(&zero), c, "c")?, term(Sheaf::line(&entry.polarization), q, "q")?],
    ];
    let mut shape = MonadShape::new(entry.variety.to_string(), terms);
    let w1 = h0_omega(entry, n - 1 - d)? as i64;
    let w0 = h0_omega(entry, n - d)? as i64;
    let chi = |t: i64| -> Result<BigInt, MonadError> {
        Ok(entry.line_chi(&LineBundle::new(&zero).plus(&entry.polarization, t))?)
    };
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let bracket = chi(0)? - chi(-n)? * sign;
    let rhs: BigInt = bracket * BigInt::from(d * (c - a));
    shape.constraints = vec![
        Constraint { name: "a".into(), value: a },
        Constraint { name: "c".into(), value: c },
        Constraint { name: "h^0(B(-h))".into(), value: q * w1 + a * w0 },
        Constraint { name: format!("h^{n}(B({}h))", d - n), value: q * w1 + c * w0 },
        Constraint {
            name: "δ(χ(B) − (−1)^n χ(B(−nh)))".into(),
            value: rhs.to_i64().expect("constraint fits in i64"),
        },
    ];
    Ok(shape)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricSpinors {
    pub n: u32,
    /// s for odd n, s′ + s″ for even n.
    pub s: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<(u64, u64)>,
    pub shape: MonadShape,
}

/// h⁰ − h¹ of E⊗S′ and E⊗S″ for even n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorInputs {
    pub chi_s1: i64,
    pub chi_s2: i64,
}

fn spinor_terms(n: u32, s: u64, split: Option<(u64, u64)>) -> Vec<Term> {
    let sp = |which: &str, mult| Term { sheaf: Sheaf::Spinor { n, which: which.into(), twist: 1 }, mult };
    match (n % 2, split) {
        (1, _) => vec![sp("", s)],
        (_, Some((a, b))) => vec![sp("'", a), sp("''", b)],
        _ => vec![sp("' or ''", s)],
    }
}

pub fn monad_quadric_ordinary(
    n: u32,
    rank: u64,
    quantum: u64,
    spinor_inputs: Option<SpinorInputs>,
) -> Result<QuadricSpinors, MonadError> {
    if n < 3 {
        return Err(MonadError::Invalid("needs n >= 3".into()));
    }
    if rank % 2 == 1 {
        return Err(MonadError::Parity("c1 = rh/2 forces even rank".into()));
    }
    let sr = spinor_rank(n);
    let total = rank + 2 * quantum;
    if !total.is_multiple_of(sr) {
        return Err(MonadError::Divisibility(format!("{sr} does not divide r+2k = {total}")));
    }
    let s = total / sr;
    let split = match (n % 2, spinor_inputs) {
        (0, Some(inp)) => {
            let add = (sr * quantum) as i64;
            let (x, y) = if n.is_multiple_of(4) { (inp.chi_s1, inp.chi_s2) } else { (inp.chi_s2, inp.chi_s1) };
            let (s1, s2) = (x + add, y + add);
            if s1 < 0 || s2 < 0 || (s1 + s2) as u64 != s {
                return Err(MonadError::Relation(format!("s′ = {s1}, s″ = {s2}, expected sum {s}")));
            }
            Some((s1 as u64, s2 as u64))
        }
        _ => None,
    };
    let k = quantum;
    let shape = MonadShape::new(
        format!("q{n}"),
        [
            vec![Term { sheaf: Sheaf::line(&[0]), mult: k }],
            spinor_terms(n, s, split),
            vec![Term { sheaf: Sheaf::line(&[1]), mult: k }],
        ],
    );
    Ok(QuadricSpinors { n, s, split, shape })
}

/// Quasi-linear monad of a defect-one instanton on Pⁿ.
pub fn monad_space_nonordinary(n: u32, rank: u64, quantum: u64, a: i64, c: i64) -> Result<MonadShape, MonadError> {
    if n < 3 {
        return Err(MonadError::Invalid("needs n >= 3".into()));
    }
    if rank % 2 == 1 {
        return Err(MonadError::Parity("rank must be even".into()));
    }
    let k = quantum as i64;
    let half = rank as i64 / 2;
    let (b0, b1) = (half + k + a, half + k + c);
    Ok(MonadShape::new(
        format!("p{n}"),
        [
            vec![term(Sheaf::line(&[-2]), k, "k")?, term(Sheaf::line(&[-1]), a, "a")?],
            vec![term(Sheaf::line(&[-1]), b0, "b₀")?, term(Sheaf::line(&[0]), b1, "b₁")?],
            vec![term(Sheaf::line(&[0]), c, "c")?, term(Sheaf::line(&[1]), k, "k")?],
        ],
    ))
}

pub fn monad_quadric_nonordinary(
    n: u32,
    rank: u64,
    quantum: u64,
    a: u64,
    c: u64,
    b: u64,
) -> Result<(u64, MonadShape), MonadError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(MonadError::Invalid("needs odd n >= 3".into()));
    }
    let num = (rank + 2 * quantum + a + c) as i64 - b as i64;
    if num < 0 {
        return Err(MonadError::Negative(format!("r+2k+a+c−b = {num}")));
    }
    let den = 2 * spinor_rank(n) as i64;
    if num % den != 0 {
        return Err(MonadError::Divisibility(format!("{den} does not divide {num}")));
    }
    let s = (num / den) as u64;
    let k = quantum;
    let sp = |twist, mult| Term { sheaf: Sheaf::Spinor { n, which: String::new(), twist }, mult };
    let shape = MonadShape::new(
        format!("q{n}"),
        [
            vec![Term { sheaf: Sheaf::line(&[-1]), mult: k }, Term { sheaf: Sheaf::line(&[0]), mult: a }],
            vec![Term { sheaf: Sheaf::line(&[0]), mult: b }, sp(0, s), sp(1, s)],
            vec![Term { sheaf: Sheaf::line(&[0]), mult: c }, Term { sheaf: Sheaf::line(&[1]), mult: k }],
        ],
    );
    Ok((s, shape))
}

/// Cohomological inputs on a threefold scroll over P¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scroll3Inputs {
    /// h⁰ − h¹ of E(f − h).
    pub chi_f_minus_h: i64,
    /// h¹(E(f − 2h)).
    pub h1_f_minus_2h: u64,
    /// h³ − h² of E(−3h − f).
    pub top_minus_3h_f: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationCounts {
    pub s: Vec<u64>,
    pub shape: MonadShape,
}

fn nonneg(v: &[i64]) -> Result<Vec<u64>, MonadError> {
    v.iter()
        .enumerate()
        .map(|(i, x)| u64::try_from(*x).map_err(|_| MonadError::Negative(format!("s{} = {x}", i + 1))))
        .collect()
}

fn scroll_degrees(entry: &VarietyEntry, n: usize) -> Result<Vec<i64>, MonadError> {
    match &entry.variety {
        Variety::ScrollP1 { degrees } if degrees.len() == n => Ok(degrees.clone()),
        v => Err(MonadError::Invalid(format!("{v} is not a {n}-dimensional scroll over P1"))),
    }
}

/// h¹((Ω¹_{X|P¹})^∨(−h)) on a threefold scroll of degree d; all other groups vanish.
pub fn relative_tangent_h1(d: i64) -> i64 {
    d - 3
}

pub fn monad_scroll3(d: i64, rank: u64, quantum: u64, inp: Scroll3Inputs) -> Result<FiltrationCounts, MonadError> {
    if d < 3 {
        return Err(MonadError::Invalid("a threefold scroll over P1 has degree >= 3".into()));
    }
    let k = quantum as i64;
    let s = nonneg(&[inp.chi_f_minus_h + 2 * k, inp.h1_f_minus_2h as i64, inp.top_minus_3h_f + 2 * k])?;
    if s[0] + 2 * s[1] + s[2] != rank + 2 * quantum {
        return Err(MonadError::Relation(format!("s1+2s2+s3 = {} but r+2k = {}", s[0] + 2 * s[1] + s[2], rank + 2 * quantum)));
    }
    let named = |name: &str, rank, mult| Term { sheaf: Sheaf::Named { name: name.into(), rank: Some(rank) }, mult };
    let shape = MonadShape::new(
        format!("scroll d={d}"),
        [
            vec![Term { sheaf: Sheaf::line(&[0, d - 2]), mult: quantum }],
            vec![
                Term { sheaf: Sheaf::line(&[1, -1]), mult: s[0] },
                named("Ω¹_rel(2h-f)", 2, s[1]),
                Term { sheaf: Sheaf::line(&[0, d - 1]), mult: s[2] },
            ],
            vec![Term { sheaf: Sheaf::line(&[1, 0]), mult: quantum }],
        ],
    );
    Ok(FiltrationCounts { s, shape })
}

/// Inputs on P¹ × P³, read in the (h, f) basis of the scroll with degrees (1,1,1,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1P3Inputs {
    pub chi_f_minus_h: i64,
    pub h1_f_minus_2h: u64,
    pub h2_minus_3h_f: u64,
    /// h⁴ − h³ of E(−4h − f).
    pub top_minus_4h_f: i64,
}

pub fn monad_p1p3(rank: u64, quantum: u64, inp: P1P3Inputs) -> Result<FiltrationCounts, MonadError> {
    let k = quantum as i64;
    let s = nonneg(&[
        inp.chi_f_minus_h + 2 * k,
        inp.h1_f_minus_2h as i64,
        inp.h2_minus_3h_f as i64,
        inp.top_minus_4h_f + 2 * k,
    ])?;
    let lhs = s[0] + 3 * s[1] + 3 * s[2] + s[3];
    if lhs != rank + 2 * quantum {
        return Err(MonadError::Relation(format!("s1+3s2+3s3+s4 = {lhs} but r+2k = {}", rank + 2 * quantum)));
    }
    let named = |name: &str, mult| Term { sheaf: Sheaf::Named { name: name.into(), rank: Some(3) }, mult };
    let shape = MonadShape::new(
        "scroll-p1:1,1,1,1",
        [
            vec![Term { sheaf: Sheaf::line(&[0, 2]), mult: quantum }],
            vec![
                Term { sheaf: Sheaf::line(&[1, -1]), mult: s[0] },
                named("p*Ω¹(2h-f)", s[1]),
                named("p*Ω²(3h-f)", s[2]),
                Term { sheaf: Sheaf::line(&[0, 3]), mult: s[3] },
            ],
            vec![Term { sheaf: Sheaf::line(&[1, 0]), mult: quantum }],
        ],
    );
    Ok(FiltrationCounts { s, shape })
}

fn sum_cohomology(entry: &VarietyEntry, summands: &[LineBundle], shift: &[i64]) -> Result<CohVector, MonadError> {
    let mut acc = CohVector::zero(entry.dim());
    for l in summands {
        acc = acc.add(&entry.line_cohomology(&l.plus(shift, 1))?);
    }
    Ok(acc)
}

/// Reads the threefold-scroll inputs off a sum of line bundles.
pub fn scroll3_inputs(entry: &VarietyEntry, summands: &[LineBundle]) -> Result<Scroll3Inputs, MonadError> {
    scroll_degrees(entry, 3)?;
    let a = sum_cohomology(entry, summands, &[-1, 1])?;
    let b = sum_cohomology(entry, summands, &[-2, 1])?;
    let c = sum_cohomology(entry, summands, &[-3, -1])?;
    Ok(Scroll3Inputs {
        chi_f_minus_h: a.h(0) as i64 - a.h(1) as i64,
        h1_f_minus_2h: b.h(1),
        top_minus_3h_f: c.h(3) as i64 - c.h(2) as i64,
    })
}

pub fn p1p3_inputs(entry: &VarietyEntry, summands: &[LineBundle]) -> Result<P1P3Inputs, MonadError> {
    if scroll_degrees(entry, 4)? != [1, 1, 1, 1] {
        return Err(MonadError::Invalid("needs scroll-p1:1,1,1,1".into()));
    }
    let a = sum_cohomology(entry, summands, &[-1, 1])?;
    let b = sum_cohomology(entry, summands, &[-2, 1])?;
    let c = sum_cohomology(entry, summands, &[-3, -1])?;
    let d = sum_cohomology(entry, summands, &[-4, -1])?;
    Ok(P1P3Inputs {
        chi_f_minus_h: a.h(0) as i64 - a.h(1) as i64,
        h1_f_minus_2h: b.h(1),
        h2_minus_3h_f: c.h(2),
        top_minus_4h_f: d.h(4) as i64 - d.h(3) as i64,
    })
}

/// Chern data of the rank-two bundle in 0 → O(D) → E → I_Z(det − D) → 0.
pub fn serre_construction_chern(
    entry: &VarietyEntry,
    d: &ChowClass,
    det: &ChowClass,
    z: &ChowClass,
) -> Result<ChernData, MonadError> {
    for (name, x, w) in [("D", d, 1), ("det E", det, 1), ("Z", z, 2)] {
        if x.variety() != &entry.variety {
            return Err(MonadError::Invalid(format!("{name} lives on {}", x.variety())));
        }
        if !x.is_homogeneous(w) {
            return Err(MonadError::Invalid(format!("{name} must be homogeneous of degree {w}")));
        }
    }
    let c2 = &(d * &(det - d)) + z;
    Ok(ChernData::new(2, det.clone(), Some(c2), None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinary_pn() {
        for k in 0..6u64 {
            let chi = 2 - 2 * k as i64;
            let m = monad_pn(3, 0, k, chi, None, None).unwrap();
            assert_eq!(m.mult(1, &Sheaf::line(&[0])), 2 + 2 * k);
            assert_eq!(m.rank(), Some(2));
            assert_eq!(m.c1_pn(), Some(BigInt::from(0)));
        }
        let m = monad_pn(3, 0, 0, 5, None, None).unwrap();
        assert!(m.terms[0].is_empty() && m.terms[2].is_empty());
        assert_eq!(m.mult(1, &Sheaf::line(&[0])), 5);
        assert_eq!(monad_pn(3, 0, 2, -2, None, None).unwrap().to_string(), "on p3: 0 → O(-1)^2 → O(0)^6 → O(1)^2 → 0");
    }

    #[test]
    fn defect_one_pn_bookkeeping() {
        for n in 2..6u32 {
            for k in 0..4u64 {
                for chi in 0..3i64 {
                    let m = monad_pn(n, 1, k, chi, Some(chi as u64 + 1), Some(chi as u64 + 2)).unwrap();
                    let r = if n == 2 { 2 * k as i64 + 2 * chi } else { 2 * n as i64 * k as i64 + 2 * chi };
                    assert_eq!(m.rank(), Some(r));
                    assert_eq!(m.c1_pn(), Some(BigInt::from(-r / 2)));
                }
            }
        }
        assert!(monad_pn(3, 1, 1, 3, Some(1), Some(5)).is_err());
    }

    #[test]
    fn acm_ordinary_is_self_dual_shape() {
        let e = VarietyEntry::parse("q3").unwrap();
        let m = monad_acm(&e, 0, 3, 0, 0).unwrap();
        // ω(3h) on Q3 is O
        assert_eq!(m.terms[0], vec![Term { sheaf: Sheaf::line(&[0]), mult: 3 }]);
        assert_eq!(m.terms[2], vec![Term { sheaf: Sheaf::line(&[1]), mult: 3 }]);
        let p = VarietyEntry::parse("p3").unwrap();
        let m = monad_acm(&p, 1, 2, 1, 1).unwrap();
        assert_eq!(m.terms[0][0], Term { sheaf: Sheaf::line(&[-2]), mult: 2 });
        assert!(monad_acm(&VarietyEntry::parse("scroll:3,1,4").unwrap(), 0, 1, 0, 0).is_err());
    }

    #[test]
    fn quadric_spinors() {
        for k in 0..=10 {
            assert_eq!(monad_quadric_ordinary(3, 2, k, None).unwrap().s, k + 1);
        }
        assert_eq!(monad_quadric_ordinary(5, 2, 1, None).unwrap().s, 1);
        assert!(monad_quadric_ordinary(5, 2, 0, None).is_err());
        let even = monad_quadric_ordinary(4, 2, 1, Some(SpinorInputs { chi_s1: -1, chi_s2: -1 })).unwrap();
        assert_eq!((even.s, even.split), (2, Some((1, 1))));
        assert_eq!(even.shape.rank(), Some(2));
        let (s, shape) = monad_quadric_nonordinary(3, 2, 1, 0, 0, 0).unwrap();
        assert_eq!(s, 1);
        assert_eq!(shape.rank(), Some(2));
        assert!(monad_quadric_nonordinary(3, 2, 1, 0, 0, 5).is_err());
    }

    #[test]
    fn nonordinary_space_is_sum_of_shifted_jardim() {
        for k in 0..4u64 {
            let m = monad_space_nonordinary(3, 4, k, k as i64, k as i64).unwrap();
            let a = monad_pn(3, 0, k, 2 - 2 * k as i64, None, None).unwrap();
            assert_eq!(m, a.twisted(-1).direct_sum(&a));
            let m = monad_space_nonordinary(3, 2, k, 0, 0).unwrap();
            assert_eq!(m.mult(1, &Sheaf::line(&[-1])), 1 + k);
            assert_eq!(m.mult(1, &Sheaf::line(&[0])), 1 + k);
        }
        assert!(monad_space_nonordinary(3, 2, 1, -1, 0).is_err());
        assert!(monad_space_nonordinary(3, 3, 1, 0, 0).is_err());
    }

    #[test]
    fn scroll_ulrich_filtration() {
        for d in [(vec![1, 1, 1], 3), (vec![1, 1, 2], 4), (vec![1, 2, 3], 6)] {
            let e = VarietyEntry::new(&Variety::ScrollP1 { degrees: d.0.clone() }).unwrap();
            let ls = [LineBundle::new(&[0, d.1 - 1]), LineBundle::new(&[1, -1])];
            let inp = scroll3_inputs(&e, &ls).unwrap();
            let f = monad_scroll3(d.1, 2, 0, inp).unwrap();
            assert_eq!(f.s, vec![1, 0, 1]);
            assert_eq!(f.shape.rank(), Some(2));
            let inp = scroll3_inputs(&e, &ls[1..]).unwrap();
            assert_eq!(monad_scroll3(d.1, 1, 0, inp).unwrap().s, vec![1, 0, 0]);
        }
        assert_eq!(relative_tangent_h1(5), 2);
    }

    #[test]
    fn p1p3_relation() {
        let e = VarietyEntry::parse("scroll-p1:1,1,1,1").unwrap();
        let f = monad_p1p3(1, 0, p1p3_inputs(&e, &[LineBundle::new(&[0, 3])]).unwrap()).unwrap();
        assert_eq!(f.s, vec![0, 0, 0, 1]);
        let bad = P1P3Inputs { chi_f_minus_h: -3, h1_f_minus_2h: 0, h2_minus_3h_f: 0, top_minus_4h_f: 0 };
        assert!(matches!(monad_p1p3(1, 1, bad), Err(MonadError::Negative(_))));
    }

    #[test]
    fn serre_chern() {
        let e = VarietyEntry::parse("p1xp1xp1").unwrap();
        let r = &e.ring;
        let z = (&r.gen(1) * &r.gen(2)).scale(3);
        let c = serre_construction_chern(&e, &r.linear(&[1, 0, 3]), &r.linear(&[2, 2, 2]), &z).unwrap();
        assert_eq!(c.c1, e.h().scale(2));
        let zero = serre_construction_chern(&e, &r.zero(), &r.linear(&[1, 1, 1]), &r.zero()).unwrap();
        assert!(zero.c2.unwrap().is_zero());
        assert!(serre_construction_chern(&e, &z, &r.linear(&[1, 1, 1]), &r.zero()).is_err());
    }
}
