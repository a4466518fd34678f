//! Line-bundle cohomology engines and cohomology tables over twist windows.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binom, to_dim};
use crate::chow::{preset_ring, ChowClass, ChowError, ChowRing, CurveModel, Variety};
use crate::rr::ChernData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("bad line bundle: {0}")]
    BadBundle(String),
    #[error("theta model needs degree g-1 = {expected}, got {got}")]
    Theta { expected: i64, got: i64 },
    #[error("empty window {0}:{1}")]
    EmptyWindow(i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohVector {
    pub dims: Vec<u64>,
}

impl CohVector {
    pub fn zero(n: u32) -> Self {
        CohVector { dims: vec![0; n as usize + 1] }
    }

    pub fn single(n: u32, i: u32, value: u64) -> Self {
        let mut v = Self::zero(n);
        v.dims[i as usize] = value;
        v
    }

    pub fn dim(&self) -> u32 {
        self.dims.len() as u32 - 1
    }

    pub fn h(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }

    pub fn chi(&self) -> BigInt {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, d)| if i % 2 == 0 { BigInt::from(*d) } else { -BigInt::from(*d) })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.dims.iter().filter(|d| **d != 0).count()
    }

    pub fn add(&self, other: &CohVector) -> CohVector {
        CohVector { dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, m: u64) -> CohVector {
        CohVector { dims: self.dims.iter().map(|a| a * m).collect() }
    }
}

impl fmt::Display for CohVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn serre_dual_vector(v: &CohVector) -> CohVector {
    CohVector { dims: v.dims.iter().rev().copied().collect() }
}

pub fn coh_projective_space(n: u32, t: i64) -> CohVector {
    let n64 = n as i64;
    if t >= 0 {
        CohVector::single(n, 0, to_dim(binom(t + n64, n)))
    } else if t < -n64 {
        CohVector::single(n, n, to_dim(binom(-t - 1, n)))
    } else {
        CohVector::zero(n)
    }
}

/// Bott's formula for Ω^p(t) on P^n.
pub fn bott_pn(n: u32, p: u32, t: i64) -> CohVector {
    assert!(p <= n, "bott_pn needs 0 <= p <= n");
    let (n64, p64) = (n as i64, p as i64);
    if t > p64 {
        CohVector::single(n, 0, to_dim(binom(t + n64 - p64, t as u32) * binom(t - 1, p)))
    } else if t == 0 {
        CohVector::single(n, p, 1)
    } else if t < p64 - n64 {
        let s = -t;
        CohVector::single(n, n, to_dim(binom(s + p64, s as u32) * binom(s - 1, n - p)))
    } else {
        CohVector::zero(n)
    }
}

pub fn coh_quadric(n: u32, t: i64) -> CohVector {
    let n64 = n as i64;
    let h0 = |t: i64| to_dim(binom(t + n64 + 1, n + 1) - binom(t + n64 - 1, n + 1));
    if t >= 0 {
        CohVector::single(n, 0, h0(t))
    } else if t <= -n64 {
        CohVector::single(n, n, h0(-n64 - t))
    } else {
        CohVector::zero(n)
    }
}

/// Künneth product of O(t_i) on P^{n_i}.
pub fn coh_product(factors: &[(u32, i64)]) -> CohVector {
    assert!(!factors.is_empty(), "coh_product needs a factor");
    let mut acc = vec![1u64];
    for &(n, t) in factors {
        let v = coh_projective_space(n, t);
        let mut next = vec![0u64; acc.len() + n as usize];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in v.dims.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    CohVector { dims: acc }
}

/// Borel–Weil–Bott on the full flag variety of SL3, weight in the fundamental basis.
pub fn coh_flag3(a1: i64, a2: i64) -> CohVector {
    let (mut x, mut y) = (a1 + 1, a2 + 1);
    if x == 0 || y == 0 || x + y == 0 {
        return CohVector::zero(3);
    }
    let mut len = 0;
    while x < 0 || y < 0 {
        if x < 0 {
            (x, y) = (-x, x + y);
        } else {
            (x, y) = (x + y, -y);
        }
        len += 1;
    }
    let (m1, m2) = (x - 1, y - 1);
    let dim = BigInt::from(m1 + 1) * (m2 + 1) * (m1 + m2 + 2) / 2;
    CohVector::single(3, len, to_dim(dim))
}

/// Number of multisets of size `t` from `degrees`, bucketed by degree sum.
fn symmetric_power_degrees(degrees: &[i64], t: usize) -> Vec<(i64, BigInt)> {
    // counts[size] maps sum -> multiplicity, built one degree at a time
    let mut counts: Vec<std::collections::BTreeMap<i64, BigInt>> = vec![Default::default(); t + 1];
    counts[0].insert(0, BigInt::from(1));
    for &a in degrees {
        for size in 1..=t {
            let prev: Vec<(i64, BigInt)> =
                counts[size - 1].iter().map(|(s, c)| (*s, c.clone())).collect();
            for (s, c) in prev {
                *counts[size].entry(s + a).or_insert_with(BigInt::zero) += c;
            }
        }
    }
    counts.pop().unwrap().into_iter().collect()
}

/// O(t·h + a·f) on the scroll P(⊕O(a_j)) over P^1.
pub fn coh_scroll_p1(degrees: &[i64], t: i64, a: i64) -> CohVector {
    let n = degrees.len() as i64;
    assert!(n >= 2, "a scroll needs at least two degrees");
    if t >= 0 {
        let mut h0 = BigInt::zero();
        let mut h1 = BigInt::zero();
        for (s, c) in symmetric_power_degrees(degrees, t as usize) {
            let e = s + a;
            if e >= 0 {
                h0 += &c * (e + 1);
            } else if e <= -2 {
                h1 += &c * (-e - 1);
            }
        }
        let mut v = CohVector::zero(n as u32);
        v.dims[0] = to_dim(h0);
        v.dims[1] = to_dim(h1);
        v
    } else if t >= 1 - n {
        CohVector::zero(n as u32)
    } else {
        let d: i64 = degrees.iter().sum();
        serre_dual_vector(&coh_scroll_p1(degrees, -n - t, d - 2 - a))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveCohModel {
    ExactP1,
    Generic,
    Theta,
}

pub fn coh_curve(g: u32, d: i64, model: CurveCohModel) -> Result<CohVector, CohomologyError> {
    let g = g as i64;
    let dims = match model {
        CurveCohModel::ExactP1 => {
            if g != 0 {
                return Err(CohomologyError::Unsupported("exact_p1 model needs genus 0".into()));
            }
            vec![(d + 1).max(0), (-d - 1).max(0)]
        }
        CurveCohModel::Generic => vec![(d - g + 1).max(0), (g - 1 - d).max(0)],
        CurveCohModel::Theta => {
            if d != g - 1 {
                return Err(CohomologyError::Theta { expected: g - 1, got: d });
            }
            vec![0, 0]
        }
    };
    Ok(CohVector { dims: dims.into_iter().map(|x| x as u64).collect() })
}

/// χ(O(t·h + a·f)) on a scroll over a genus-g curve; exact for every t.
pub fn chi_scroll_generic(n: u32, g: u32, deg_g: i64, t: i64, a: i64) -> BigInt {
    let n64 = n as i64;
    let g64 = g as i64;
    if t >= 0 {
        // rank and degree of S^t G, then Riemann-Roch on the base
        let rank = binom(t + n64 - 1, n - 1);
        let deg = BigInt::from(deg_g) * binom(t + n64 - 1, n);
        &rank * (a + 1 - g64) + deg
    } else if t >= 1 - n64 {
        BigInt::zero()
    } else {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        chi_scroll_generic(n, g, deg_g, -n64 - t, deg_g + 2 * g64 - 2 - a) * sign
    }
}

/// A line bundle in the divisor basis of its variety. On curves `theta` shifts by a
/// fixed non-effective theta-characteristic, so the degree is `coords[0] + g - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineBundle {
    pub coords: Vec<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub theta: bool,
}

impl LineBundle {
    pub fn new(coords: &[i64]) -> Self {
        LineBundle { coords: coords.to_vec(), theta: false }
    }

    pub fn theta(shift: i64) -> Self {
        LineBundle { coords: vec![shift], theta: true }
    }

    pub fn plus(&self, other: &[i64], times: i64) -> LineBundle {
        LineBundle {
            coords: self.coords.iter().zip(other).map(|(a, b)| a + times * b).collect(),
            theta: self.theta,
        }
    }
}

impl fmt::Display for LineBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        if self.theta {
            write!(f, "O(theta{:+})", self.coords[0])
        } else {
            write!(f, "O({})", c.join(","))
        }
    }
}

/// A polarized catalog variety with its numerical invariants.
#[derive(Debug, Clone)]
pub struct VarietyEntry {
    pub variety: Variety,
    pub ring: Arc<ChowRing>,
    pub polarization: Vec<i64>,
    pub canonical: Vec<i64>,
    pub chi_o: BigInt,
    pub c2_omega: Option<ChowClass>,
    pub acm: bool,
}

impl VarietyEntry {
    pub fn new(variety: &Variety) -> Result<Self, CohomologyError> {
        let ring = preset_ring(variety)?;
        let n = variety.dim() as i64;
        let (polarization, canonical, chi_o, acm): (Vec<i64>, Vec<i64>, i64, bool) = match variety {
            Variety::ProjectiveSpace { .. } => (vec![1], vec![-n - 1], 1, true),
            Variety::Quadric { .. } => (vec![1], vec![-n], 1, true),
            Variety::Flag3 => (vec![1, 1], vec![-2, -2], 1, true),
            Variety::TripleP1 => (vec![1, 1, 1], vec![-2, -2, -2], 1, true),
            Variety::ScrollP1 { degrees } => (vec![1, 0], vec![-n, degrees.iter().sum::<i64>() - 2], 1, true),
            Variety::ScrollGeneric { genus, deg_g, .. } => {
                let g = *genus as i64;
                (vec![1, 0], vec![-n, deg_g + 2 * g - 2], 1 - g, false)
            }
            Variety::Curve { genus, degree, .. } => {
                let g = *genus as i64;
                (vec![*degree], vec![2 * g - 2], 1 - g, false)
            }
            Variety::FanoThreefold { index, .. } => (vec![1], vec![-(*index as i64)], 1, false),
        };
        let mut entry = VarietyEntry {
            variety: variety.clone(),
            ring: ring.clone(),
            polarization,
            canonical,
            chi_o: BigInt::from(chi_o),
            c2_omega: None,
            acm,
        };
        if n == 3 {
            entry.c2_omega = Some(entry.cotangent_c2());
        }
        Ok(entry)
    }

    pub fn parse(s: &str) -> Result<Self, CohomologyError> {
        Self::new(&s.parse()?)
    }

    pub fn dim(&self) -> u32 {
        self.variety.dim()
    }

    /// c2 of the cotangent sheaf, equal to c2 of the tangent sheaf.
    fn cotangent_c2(&self) -> ChowClass {
        let r = &self.ring;
        let n = self.dim() as i64;
        match &self.variety {
            Variety::ProjectiveSpace { .. } => r.gen(0).pow(2).scale(binom(n + 1, 2)),
            Variety::Quadric { .. } => r.gen(0).pow(2).scale(binom(n + 2, 2) - 2 * (n + 2) + 4),
            Variety::Flag3 => (&r.gen(0) * &r.gen(1)).scale(6),
            Variety::TripleP1 => {
                let (a, b, c) = (r.gen(0), r.gen(1), r.gen(2));
                (&(&(&a * &b) + &(&a * &c)) + &(&b * &c)).scale(4)
            }
            Variety::ScrollP1 { .. } | Variety::ScrollGeneric { .. } => {
                let (d, g) = self.scroll_data();
                let (h, f) = (r.gen(0), r.gen(1));
                &h.pow(2).scale(binom(n, 2)) + &(&h * &f).scale(n * (2 - 2 * g) - (n - 1) * d)
            }
            Variety::FanoThreefold { index, .. } => r.gen(1).scale(24 / *index as i64),
            Variety::Curve { .. } => r.zero(),
        }
    }

    /// (deg G, genus of the base) of a scroll.
    pub fn scroll_data(&self) -> (i64, i64) {
        match &self.variety {
            Variety::ScrollP1 { degrees } => (degrees.iter().sum(), 0),
            Variety::ScrollGeneric { genus, deg_g, .. } => (*deg_g, *genus as i64),
            _ => (0, 0),
        }
    }

    pub fn check_bundle(&self, l: &LineBundle) -> Result<(), CohomologyError> {
        if l.coords.len() != self.variety.picard_rank() {
            return Err(CohomologyError::BadBundle(format!(
                "{l} has {} coordinates, {} expects {}",
                l.coords.len(),
                self.variety,
                self.variety.picard_rank()
            )));
        }
        if l.theta && !matches!(self.variety, Variety::Curve { .. }) {
            return Err(CohomologyError::BadBundle("theta shifts only exist on curves".into()));
        }
        Ok(())
    }

    /// First Chern class of a line bundle.
    pub fn divisor(&self, l: &LineBundle) -> ChowClass {
        let r = &self.ring;
        match &self.variety {
            Variety::Curve { genus, .. } => {
                let shift = if l.theta { *genus as i64 - 1 } else { 0 };
                r.gen(0).scale(l.coords[0] + shift)
            }
            Variety::FanoThreefold { .. } => r.gen(0).scale(l.coords[0]),
            _ => r.linear(&l.coords),
        }
    }

    pub fn h(&self) -> ChowClass {
        self.divisor(&LineBundle::new(&self.polarization))
    }

    pub fn canonical_class(&self) -> ChowClass {
        self.divisor(&LineBundle::new(&self.canonical))
    }

    pub fn hn(&self) -> BigInt {
        self.h().pow(self.dim()).integrate()
    }

    pub fn line_cohomology(&self, l: &LineBundle) -> Result<CohVector, CohomologyError> {
        self.check_bundle(l)?;
        let c = &l.coords;
        Ok(match &self.variety {
            Variety::ProjectiveSpace { n } => coh_projective_space(*n, c[0]),
            Variety::Quadric { n } => coh_quadric(*n, c[0]),
            Variety::Flag3 => coh_flag3(c[0], c[1]),
            Variety::TripleP1 => coh_product(&[(1, c[0]), (1, c[1]), (1, c[2])]),
            Variety::ScrollP1 { degrees } => coh_scroll_p1(degrees, c[0], c[1]),
            Variety::Curve { genus, model, .. } => {
                let g = *genus as i64;
                if l.theta {
                    if c[0] == 0 {
                        coh_curve(*genus, g - 1, CurveCohModel::Theta)?
                    } else if g == 0 {
                        coh_curve(0, c[0] - 1, CurveCohModel::ExactP1)?
                    } else {
                        coh_curve(*genus, c[0] + g - 1, CurveCohModel::Generic)?
                    }
                } else {
                    let m = match model {
                        CurveModel::ExactP1 => CurveCohModel::ExactP1,
                        CurveModel::Generic => CurveCohModel::Generic,
                    };
                    coh_curve(*genus, c[0], m)?
                }
            }
            Variety::ScrollGeneric { .. } | Variety::FanoThreefold { .. } => {
                return Err(CohomologyError::Unsupported(format!(
                    "no cohomology engine on {}; only Euler characteristics",
                    self.variety
                )))
            }
        })
    }

    /// Euler characteristic of a line bundle, from the engine or from Riemann–Roch.
    pub fn line_chi(&self, l: &LineBundle) -> Result<BigInt, CohomologyError> {
        self.check_bundle(l)?;
        match &self.variety {
            Variety::ScrollGeneric { n, genus, deg_g } => {
                Ok(chi_scroll_generic(*n, *genus, *deg_g, l.coords[0], l.coords[1]))
            }
            Variety::FanoThreefold { .. } => {
                let c = ChernData::of_line_sum(self, std::slice::from_ref(l));
                crate::rr::chi(self, &c).map_err(|e| CohomologyError::Unsupported(e.to_string()))
            }
            _ => Ok(self.line_cohomology(l)?.chi()),
        }
    }

    pub fn is_curve_generic(&self) -> bool {
        matches!(self.variety, Variety::Curve { genus, .. } if genus > 0)
    }
}

/// A direct sum of line bundles, twisted along `polarization` (the catalog one when absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFamily {
    pub summands: Vec<LineBundle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Vec<i64>>,
}

impl BundleFamily {
    pub fn line(l: LineBundle) -> Self {
        BundleFamily { summands: vec![l], polarization: None }
    }

    pub fn sum(summands: Vec<LineBundle>) -> Self {
        BundleFamily { summands, polarization: None }
    }

    pub fn with_polarization(mut self, h: &[i64]) -> Self {
        self.polarization = Some(h.to_vec());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub tmin: i64,
    pub tmax: i64,
}

impl Window {
    pub fn new(tmin: i64, tmax: i64) -> Self {
        Window { tmin, tmax }
    }

    pub fn contains(&self, t: i64) -> bool {
        self.tmin <= t && t <= self.tmax
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub t: i64,
    pub h: CohVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub variety: String,
    pub rank: u64,
    pub window: Window,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chern: Option<ChernData>,
}

impl CohomologyTable {
    pub fn dim(&self) -> u32 {
        self.rows.first().map(|r| r.h.dim()).unwrap_or(0)
    }

    pub fn row(&self, t: i64) -> Option<&CohVector> {
        if !self.window.contains(t) {
            return None;
        }
        self.rows.get((t - self.window.tmin) as usize).map(|r| &r.h)
    }

    pub fn is_nonnegative(&self) -> bool {
        // dimensions are unsigned; the check is that row bookkeeping is intact
        self.rows.iter().enumerate().all(|(i, r)| r.t == self.window.tmin + i as i64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_markdown(&self) -> String {
        let n = self.dim() as usize;
        let mut s = format!("**{}**, rank {}\n\n| t |", self.variety, self.rank);
        for i in 0..=n {
            s += &format!(" h{i} |");
        }
        s += " chi |\n|---|";
        for _ in 0..=n + 1 {
            s += "---|";
        }
        s.push('\n');
        for r in &self.rows {
            s += &format!("| {} |", r.t);
            for d in &r.h.dims {
                s += &format!(" {d} |");
            }
            s += &format!(" {} |\n", r.h.chi());
        }
        s
    }
}

pub fn build_table(
    entry: &VarietyEntry,
    family: &BundleFamily,
    window: Window,
) -> Result<CohomologyTable, CohomologyError> {
    if window.tmin > window.tmax {
        return Err(CohomologyError::EmptyWindow(window.tmin, window.tmax));
    }
    if family.summands.is_empty() {
        return Err(CohomologyError::BadBundle("empty direct sum".into()));
    }
    let h = family.polarization.clone().unwrap_or_else(|| entry.polarization.clone());
    if h.len() != entry.variety.picard_rank() {
        return Err(CohomologyError::BadBundle("polarization has the wrong number of coordinates".into()));
    }
    for l in &family.summands {
        entry.check_bundle(l)?;
    }
    let n = entry.dim();
    let mut rows = Vec::new();
    for t in window.tmin..=window.tmax {
        let mut v = CohVector::zero(n);
        for l in &family.summands {
            v = v.add(&entry.line_cohomology(&l.plus(&h, t))?);
        }
        rows.push(Row { t, h: v });
    }
    let mut label = entry.variety.to_string();
    if h != entry.polarization {
        let hs: Vec<String> = h.iter().map(|x| x.to_string()).collect();
        label += &format!("@h={}", hs.join(","));
    }
    let chern = (n <= 3).then(|| ChernData::of_line_sum(entry, &family.summands));
    Ok(CohomologyTable { variety: label, rank: family.summands.len() as u64, window, rows, chern })
}

/// Parses `O`, `O:t`, `h:t` (multiples of the polarization), comma coordinates,
/// `theta` / `theta:s` on curves; `+` separates summands and `^m` repeats one.
pub fn parse_bundle(entry: &VarietyEntry, s: &str) -> Result<Vec<LineBundle>, CohomologyError> {
    let bad = |x: &str| CohomologyError::BadBundle(x.to_string());
    let mut out = Vec::new();
    let s = s.replace(' ', "");
    for part in s.split('+').map(str::to_string) {
        if part.is_empty() {
            return Err(bad(&s));
        }
        let (body, mult) = match part.split_once('^') {
            Some((b, m)) => (b.to_string(), m.parse::<usize>().map_err(|_| bad(&part))?),
            None => (part.clone(), 1),
        };
        let l = if body == "O" || body == "o" {
            LineBundle::new(&vec![0; entry.variety.picard_rank()])
        } else if let Some(t) = body.strip_prefix("O:").or_else(|| body.strip_prefix("h:")) {
            let t: i64 = t.parse().map_err(|_| bad(&body))?;
            LineBundle::new(&vec![0; entry.variety.picard_rank()]).plus(&entry.polarization, t)
        } else if body == "theta" {
            LineBundle::theta(0)
        } else if let Some(x) = body.strip_prefix("theta:") {
            LineBundle::theta(x.parse().map_err(|_| bad(&body))?)
        } else {
            let coords: Result<Vec<i64>, _> = body.split(',').map(|x| x.parse::<i64>()).collect();
            LineBundle::new(&coords.map_err(|_| bad(&body))?)
        };
        entry.check_bundle(&l)?;
        for _ in 0..mult {
            out.push(l.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(d: &[u64]) -> CohVector {
        CohVector { dims: d.to_vec() }
    }

    #[test]
    fn projective_space_examples() {
        assert_eq!(coh_projective_space(3, 2), v(&[10, 0, 0, 0]));
        assert_eq!(coh_projective_space(3, -2), v(&[0, 0, 0, 0]));
        assert_eq!(coh_projective_space(3, -4), v(&[0, 0, 0, 1]));
    }

    #[test]
    fn bott_examples() {
        assert_eq!(bott_pn(3, 1, 0), v(&[0, 1, 0, 0]));
        assert_eq!(bott_pn(3, 1, 1), v(&[0, 0, 0, 0]));
        assert_eq!(bott_pn(3, 2, 2), v(&[0, 0, 0, 0]));
        assert_eq!(bott_pn(3, 1, 2), v(&[6, 0, 0, 0]));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(coh_quadric(3, 1), v(&[5, 0, 0, 0]));
        assert_eq!(coh_quadric(3, -2), v(&[0, 0, 0, 0]));
        assert_eq!(coh_quadric(3, -3), v(&[0, 0, 0, 1]));
    }

    #[test]
    fn product_examples() {
        assert_eq!(coh_product(&[(1, 0), (1, 1), (1, -2)]), v(&[0, 2, 0, 0]));
        assert_eq!(coh_product(&[(1, 1), (1, 1), (1, 1)]), v(&[8, 0, 0, 0]));
        for b in -3..3 {
            for c in -3..3 {
                assert!(coh_product(&[(1, -1), (1, b), (1, c)]).is_zero());
            }
        }
    }

    #[test]
    fn flag_examples() {
        assert_eq!(coh_flag3(0, 0), v(&[1, 0, 0, 0]));
        assert_eq!(coh_flag3(-2, 2), v(&[0, 3, 0, 0]));
        assert_eq!(coh_flag3(1, 1), v(&[8, 0, 0, 0]));
        assert_eq!(coh_flag3(-2, -2), v(&[0, 0, 0, 1]));
    }

    #[test]
    fn scroll_examples() {
        assert_eq!(coh_scroll_p1(&[1, 1, 1], 1, 0), v(&[6, 0, 0, 0]));
        assert!(coh_scroll_p1(&[1, 1, 1], -1, 5).is_zero());
        assert!(coh_scroll_p1(&[1, 1, 1], 0, -1).is_zero());
        // canonical bundle
        assert_eq!(coh_scroll_p1(&[1, 1, 1], -3, 1), v(&[0, 0, 0, 1]));
    }

    #[test]
    fn curve_examples() {
        assert_eq!(coh_curve(0, 3, CurveCohModel::ExactP1).unwrap(), v(&[4, 0]));
        assert_eq!(coh_curve(2, 1, CurveCohModel::Theta).unwrap(), v(&[0, 0]));
        assert_eq!(coh_curve(3, 5, CurveCohModel::Generic).unwrap(), v(&[3, 0]));
        assert!(coh_curve(2, 0, CurveCohModel::Theta).is_err());
    }

    #[test]
    fn serre_vector() {
        assert_eq!(serre_dual_vector(&v(&[1, 0, 0, 0])), v(&[0, 0, 0, 1]));
        assert_eq!(serre_dual_vector(&v(&[0, 3, 0, 0])), v(&[0, 0, 3, 0]));
        assert_eq!(serre_dual_vector(&v(&[4, 7])), v(&[7, 4]));
    }

    #[test]
    fn tables() {
        let p3 = VarietyEntry::parse("p3").unwrap();
        let t = build_table(&p3, &BundleFamily::line(LineBundle::new(&[0])), Window::new(-4, 0)).unwrap();
        for r in &t.rows {
            assert_eq!(r.h, coh_projective_space(3, r.t));
        }
        let tri = VarietyEntry::parse("p1xp1xp1").unwrap();
        let t = build_table(&tri, &BundleFamily::line(LineBundle::new(&[-1, 1, 3])), Window::new(-3, 0)).unwrap();
        assert_eq!(t.row(-1).unwrap().h(1), 3);
        let json = t.to_json();
        let back: CohomologyTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn theta_family_on_a_curve() {
        let c = VarietyEntry::parse("curve:2,2,generic").unwrap();
        let fam = BundleFamily::sum(vec![LineBundle::theta(2), LineBundle::theta(0)]);
        let t = build_table(&c, &fam, Window::new(-1, 0)).unwrap();
        // O(theta+h)(-h) and O(theta) both vanish
        assert!(t.row(-1).unwrap().h(0) == 0 && t.row(0).unwrap().h(1) == 0);
        assert_eq!(t.row(-1).unwrap(), &v(&[0, 2]));
    }

    #[test]
    fn bundle_parsing() {
        let p3 = VarietyEntry::parse("p3").unwrap();
        assert_eq!(parse_bundle(&p3, "O:2").unwrap(), vec![LineBundle::new(&[2])]);
        assert_eq!(parse_bundle(&p3, "O^2+O:-1").unwrap().len(), 3);
        let f = VarietyEntry::parse("flag3").unwrap();
        assert_eq!(parse_bundle(&f, "-1,3").unwrap(), vec![LineBundle::new(&[-1, 3])]);
        assert_eq!(parse_bundle(&f, "h:-1").unwrap(), vec![LineBundle::new(&[-1, -1])]);
        assert!(parse_bundle(&f, "1").is_err());
    }
}
