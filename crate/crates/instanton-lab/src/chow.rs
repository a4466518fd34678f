//! Graded Chow rings of the catalog varieties, presented by monomial rewrite rules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("unknown variety: {0}")]
    UnknownVariety(String),
    #[error("variety mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("degree mismatch: expected degree {expected}, got {got}")]
    Degree { expected: u32, got: u32 },
}

/// Cohomology model used on a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveModel {
    ExactP1,
    Generic,
}

/// Catalog key. Every entry carries enough data to rebuild its ring and engines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variety {
    ProjectiveSpace { n: u32 },
    /// Numerical model Z[H]/(H^{n+1}) with H^n = 2.
    Quadric { n: u32 },
    Flag3,
    TripleP1,
    /// P(O(a_0) + ... + O(a_{n-1})) over P^1.
    ScrollP1 { degrees: Vec<i64> },
    ScrollGeneric { n: u32, genus: u32, deg_g: i64 },
    /// `degree` is the degree of the polarization.
    Curve { genus: u32, degree: i64, model: CurveModel },
    /// Threefold with Pic = Z·H, K = -index·H and H^3 = degree.
    FanoThreefold { index: u32, degree: i64 },
}

impl Variety {
    pub fn dim(&self) -> u32 {
        match self {
            Variety::ProjectiveSpace { n } | Variety::Quadric { n } => *n,
            Variety::Flag3 | Variety::TripleP1 | Variety::FanoThreefold { .. } => 3,
            Variety::ScrollP1 { degrees } => degrees.len() as u32,
            Variety::ScrollGeneric { n, .. } => *n,
            Variety::Curve { .. } => 1,
        }
    }

    /// Length of a line-bundle coordinate tuple.
    pub fn picard_rank(&self) -> usize {
        match self {
            Variety::Flag3 => 2,
            Variety::TripleP1 => 3,
            Variety::ScrollP1 { .. } | Variety::ScrollGeneric { .. } => 2,
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<(), ChowError> {
        let bad = |why: &str| Err(ChowError::UnknownVariety(format!("{self}: {why}")));
        match self {
            Variety::ProjectiveSpace { n } if *n < 1 => bad("n >= 1 required"),
            Variety::Quadric { n } if *n < 2 => bad("n >= 2 required"),
            Variety::ScrollP1 { degrees } if degrees.len() < 2 => bad("at least two degrees"),
            Variety::ScrollP1 { degrees } if degrees.iter().any(|a| *a < 1) => bad("degrees must be >= 1"),
            Variety::ScrollGeneric { n, deg_g, .. } if *n < 2 || *deg_g < 1 => bad("n >= 2, deg >= 1"),
            Variety::Curve { degree, model, genus } => {
                if *degree < 1 {
                    bad("polarization degree >= 1")
                } else if *model == CurveModel::ExactP1 && *genus != 0 {
                    bad("exact_p1 model needs genus 0")
                } else {
                    Ok(())
                }
            }
            Variety::FanoThreefold { index, degree } if !(1..=4).contains(index) || *degree < 1 => {
                bad("index in 1..=4, degree >= 1")
            }
            Variety::FanoThreefold { index, .. } if 24 % index != 0 => bad("index must divide 24"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Variety::ProjectiveSpace { n } => write!(f, "p{n}"),
            Variety::Quadric { n } => write!(f, "q{n}"),
            Variety::Flag3 => write!(f, "flag3"),
            Variety::TripleP1 => write!(f, "p1xp1xp1"),
            Variety::ScrollP1 { degrees } => write!(f, "scroll-p1:{}", join(degrees)),
            Variety::ScrollGeneric { n, genus, deg_g } => write!(f, "scroll:{n},{genus},{deg_g}"),
            Variety::Curve { genus, degree, model } => {
                let m = match model {
                    CurveModel::ExactP1 => "exact_p1",
                    CurveModel::Generic => "generic",
                };
                write!(f, "curve:{genus},{degree},{m}")
            }
            Variety::FanoThreefold { index, degree } => write!(f, "fano:{index},{degree}"),
        }
    }
}

impl FromStr for Variety {
    type Err = ChowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let err = || ChowError::UnknownVariety(s.clone());
        let ints = |body: &str| -> Result<Vec<i64>, ChowError> {
            body.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| err())).collect()
        };
        let v = if s == "flag3" {
            Variety::Flag3
        } else if s == "p1xp1xp1" || s == "triple_p1" || s == "segre3" {
            Variety::TripleP1
        } else if let Some(body) = s.strip_prefix("scroll-p1:") {
            Variety::ScrollP1 { degrees: ints(body)? }
        } else if let Some(body) = s.strip_prefix("scroll:") {
            match ints(body)?.as_slice() {
                [n, g, d] if *n >= 0 && *g >= 0 => {
                    Variety::ScrollGeneric { n: *n as u32, genus: *g as u32, deg_g: *d }
                }
                _ => return Err(err()),
            }
        } else if let Some(body) = s.strip_prefix("curve:") {
            let parts: Vec<&str> = body.split(',').collect();
            let genus: u32 = parts.first().and_then(|x| x.trim().parse().ok()).ok_or_else(err)?;
            let degree: i64 = match parts.get(1) {
                Some(x) => x.trim().parse().map_err(|_| err())?,
                None => 1,
            };
            let model = match parts.get(2).map(|x| x.trim()) {
                Some("exact_p1") => CurveModel::ExactP1,
                Some("generic") => CurveModel::Generic,
                None if genus == 0 => CurveModel::ExactP1,
                None => CurveModel::Generic,
                _ => return Err(err()),
            };
            Variety::Curve { genus, degree, model }
        } else if let Some(body) = s.strip_prefix("fano:") {
            match ints(body)?.as_slice() {
                [i, d] if *i >= 0 => Variety::FanoThreefold { index: *i as u32, degree: *d },
                _ => return Err(err()),
            }
        } else if let Some(body) = s.strip_prefix("p:").or_else(|| s.strip_prefix('p')) {
            Variety::ProjectiveSpace { n: body.parse().map_err(|_| err())? }
        } else if let Some(body) = s.strip_prefix("q:").or_else(|| s.strip_prefix('q')) {
            Variety::Quadric { n: body.parse().map_err(|_| err())? }
        } else {
            return Err(err());
        };
        v.validate()?;
        Ok(v)
    }
}

impl Serialize for Variety {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Variety {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type Mono = Vec<u32>;
pub type Terms = BTreeMap<Mono, BigInt>;

#[derive(Debug, Clone)]
pub struct ChowRing {
    pub variety: Variety,
    pub names: Vec<String>,
    /// Grading weight of each generator (1 except for curve-class generators).
    pub weights: Vec<u32>,
    pub top: u32,
    /// `lhs -> rhs`; a monomial divisible by `lhs` is rewritten.
    pub rules: Vec<(Mono, Vec<(Mono, BigInt)>)>,
    pub degree_map: BTreeMap<Mono, BigInt>,
}

fn mono(e: &[u32]) -> Mono {
    e.to_vec()
}

fn rhs(items: &[(&[u32], i64)]) -> Vec<(Mono, BigInt)> {
    items.iter().map(|(m, c)| (mono(m), BigInt::from(*c))).collect()
}

/// Presentation of the Chow ring attached to a catalog variety.
pub fn preset_ring(v: &Variety) -> Result<Arc<ChowRing>, ChowError> {
    v.validate()?;
    let s = |x: &str| x.to_string();
    let ring = match v {
        Variety::ProjectiveSpace { n } | Variety::Quadric { n } => {
            let d = if matches!(v, Variety::Quadric { .. }) { 2 } else { 1 };
            ChowRing {
                variety: v.clone(),
                names: vec![s("H")],
                weights: vec![1],
                top: *n,
                rules: vec![],
                degree_map: [(vec![*n], BigInt::from(d))].into(),
            }
        }
        Variety::Flag3 => ChowRing {
            variety: v.clone(),
            names: vec![s("h1"), s("h2")],
            weights: vec![1, 1],
            top: 3,
            rules: vec![
                (mono(&[2, 0]), rhs(&[(&[1, 1], 1), (&[0, 2], -1)])),
                (mono(&[0, 3]), vec![]),
            ],
            degree_map: [(vec![1, 2], BigInt::one())].into(),
        },
        Variety::TripleP1 => ChowRing {
            variety: v.clone(),
            names: vec![s("h1"), s("h2"), s("h3")],
            weights: vec![1, 1, 1],
            top: 3,
            rules: vec![(mono(&[2, 0, 0]), vec![]), (mono(&[0, 2, 0]), vec![]), (mono(&[0, 0, 2]), vec![])],
            degree_map: [(vec![1, 1, 1], BigInt::one())].into(),
        },
        Variety::ScrollP1 { .. } | Variety::ScrollGeneric { .. } => {
            let (n, d) = match v {
                Variety::ScrollP1 { degrees } => (degrees.len() as u32, degrees.iter().sum::<i64>()),
                Variety::ScrollGeneric { n, deg_g, .. } => (*n, *deg_g),
                _ => unreachable!(),
            };
            ChowRing {
                variety: v.clone(),
                names: vec![s("h"), s("f")],
                weights: vec![1, 1],
                top: n,
                rules: vec![(mono(&[0, 2]), vec![]), (mono(&[n, 0]), rhs(&[(&[n - 1, 1], d)]))],
                degree_map: [(vec![n - 1, 1], BigInt::one())].into(),
            }
        }
        Variety::Curve { .. } => ChowRing {
            variety: v.clone(),
            names: vec![s("p")],
            weights: vec![1],
            top: 1,
            rules: vec![],
            degree_map: [(vec![1], BigInt::one())].into(),
        },
        Variety::FanoThreefold { degree, .. } => ChowRing {
            variety: v.clone(),
            names: vec![s("H"), s("L")],
            weights: vec![1, 2],
            top: 3,
            rules: vec![(mono(&[2, 0]), rhs(&[(&[0, 1], *degree)]))],
            degree_map: [(vec![1, 1], BigInt::one())].into(),
        },
    };
    Ok(Arc::new(ring))
}

impl ChowRing {
    pub fn weight(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    fn applicable(&self, m: &[u32]) -> Vec<usize> {
        self.rules
            .iter()
            .enumerate()
            .filter(|(_, (lhs, _))| lhs.iter().zip(m).all(|(a, b)| a <= b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Normal form of a monomial, choosing among applicable rules with `pick`.
    pub fn normalize_with(&self, m: &[u32], pick: &dyn Fn(&[usize]) -> usize) -> Terms {
        let mut out = Terms::new();
        if self.weight(m) > self.top {
            return out;
        }
        let rules = self.applicable(m);
        if rules.is_empty() {
            out.insert(m.to_vec(), BigInt::one());
            return out;
        }
        let (lhs, rhs) = &self.rules[rules[pick(&rules)]];
        for (r, c) in rhs {
            let next: Mono = m.iter().zip(lhs).zip(r).map(|((a, l), x)| a - l + x).collect();
            for (k, v) in self.normalize_with(&next, pick) {
                *out.entry(k).or_insert_with(BigInt::zero) += c * v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn normalize(&self, m: &[u32]) -> Terms {
        self.normalize_with(m, &|_| 0)
    }

    /// All monomials with weight at most `w`.
    pub fn monomials_up_to(&self, w: u32) -> Vec<Mono> {
        let mut out = vec![vec![0u32; self.names.len()]];
        for i in 0..self.names.len() {
            let mut next = Vec::new();
            for m in &out {
                let mut m = m.clone();
                while self.weight(&m) <= w {
                    next.push(m.clone());
                    m[i] += 1;
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    pub fn gen(self: &Arc<Self>, i: usize) -> ChowClass {
        let mut m = vec![0; self.names.len()];
        m[i] = 1;
        ChowClass::from_terms(self, self.normalize(&m))
    }

    pub fn gen_by_name(self: &Arc<Self>, name: &str) -> Option<ChowClass> {
        self.names.iter().position(|n| n == name).map(|i| self.gen(i))
    }

    pub fn one(self: &Arc<Self>) -> ChowClass {
        ChowClass::from_terms(self, [(vec![0; self.names.len()], BigInt::one())].into())
    }

    pub fn zero(self: &Arc<Self>) -> ChowClass {
        ChowClass::from_terms(self, Terms::new())
    }

    /// Integer combination of the generators.
    pub fn linear(self: &Arc<Self>, coeffs: &[i64]) -> ChowClass {
        coeffs.iter().enumerate().fold(self.zero(), |acc, (i, c)| &acc + &self.gen(i).scale(*c))
    }
}

#[derive(Debug, Clone)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    terms: Terms,
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.variety == other.ring.variety && self.terms == other.terms
    }
}
impl Eq for ChowClass {}

impl ChowClass {
    pub fn from_terms(ring: &Arc<ChowRing>, raw: Terms) -> Self {
        let mut terms = Terms::new();
        for (m, c) in raw {
            for (k, v) in ring.normalize(&m) {
                *terms.entry(k).or_insert_with(BigInt::zero) += &c * v;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ChowClass { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn variety(&self) -> &Variety {
        &self.ring.variety
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Homogeneous part of the given degree.
    pub fn component(&self, d: u32) -> ChowClass {
        let terms = self.terms.iter().filter(|(m, _)| self.ring.weight(m) == d);
        ChowClass { ring: self.ring.clone(), terms: terms.map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// True when every term has degree `d` (the zero class is homogeneous of every degree).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| self.ring.weight(m) == d)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> ChowClass {
        let c = c.into();
        let mut terms: Terms = self.terms.iter().map(|(m, v)| (m.clone(), v * &c)).collect();
        terms.retain(|_, c| !c.is_zero());
        ChowClass { ring: self.ring.clone(), terms }
    }

    fn check(&self, other: &ChowClass) -> Result<(), ChowError> {
        if self.ring.variety != other.ring.variety {
            return Err(ChowError::Mismatch(self.ring.variety.to_string(), other.ring.variety.to_string()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check(other)?;
        let mut raw = Terms::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let m: Mono = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if self.ring.weight(&m) <= self.ring.top {
                    *raw.entry(m).or_insert_with(BigInt::zero) += x * y;
                }
            }
        }
        Ok(ChowClass::from_terms(&self.ring, raw))
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(ChowClass { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        (0..e).fold(self.ring.one(), |acc, _| &acc * self)
    }

    /// Degree of the top-dimensional component.
    pub fn integrate(&self) -> BigInt {
        self.terms
            .iter()
            .filter_map(|(m, c)| self.ring.degree_map.get(m).map(|d| c * d))
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("chow classes on different varieties")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(-1)
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("chow classes on different varieties")
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest degree first reads more naturally
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| self.ring.weight(b.0).cmp(&self.ring.weight(a.0)).then(b.0.cmp(a.0)));
        for (m, c) in items {
            let body: Vec<String> = m
                .iter()
                .zip(&self.ring.names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            let body = body.join("*");
            let mag = c.abs();
            let piece = match (body.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => body,
                (false, false) => format!("{mag}*{body}"),
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{piece}")?,
                (true, true) => write!(f, "-{piece}")?,
                (false, false) => write!(f, " + {piece}")?,
                (false, true) => write!(f, " - {piece}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mono: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    variety: Variety,
    terms: Vec<TermRepr>,
}

// Coefficients travel as decimal strings so arbitrary precision survives JSON.
impl Serialize for ChowClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ClassRepr {
            variety: self.ring.variety.clone(),
            terms: self.terms.iter().map(|(m, c)| TermRepr { mono: m.clone(), coeff: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = ClassRepr::deserialize(d)?;
        let ring = preset_ring(&r.variety).map_err(D::Error::custom)?;
        let mut raw = Terms::new();
        for t in r.terms {
            if t.mono.len() != ring.names.len() {
                return Err(D::Error::custom("monomial length does not match the ring"));
            }
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            *raw.entry(t.mono).or_insert_with(BigInt::zero) += c;
        }
        Ok(ChowClass::from_terms(&ring, raw))
    }
}
