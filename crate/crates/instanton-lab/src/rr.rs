//! Riemann–Roch, slopes and Chern-class arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binom, int_of, rat};
use crate::chow::{ChowClass, ChowError};
use crate::cohomology::{LineBundle, VarietyEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RrError {
    #[error("wrong dimension: expected {expected}, variety has {got}")]
    WrongDimension { expected: u32, got: u32 },
    #[error("no Riemann-Roch formula in dimension {0}")]
    Unsupported(u32),
    #[error("c2 of the cotangent sheaf is missing on {0}")]
    MissingC2Omega(String),
    #[error("missing Chern class c{0}")]
    MissingClass(u32),
    #[error("non-integral result {0}")]
    NonIntegral(String),
    #[error("parity: {0}")]
    Parity(String),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub rank: u64,
    pub c1: ChowClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<ChowClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c3: Option<ChowClass>,
}

impl ChernData {
    pub fn new(rank: u64, c1: ChowClass, c2: Option<ChowClass>, c3: Option<ChowClass>) -> Self {
        ChernData { rank, c1, c2, c3 }
    }

    /// Chern data of a direct sum of line bundles, read off from ∏(1 + D_i).
    pub fn of_line_sum(entry: &VarietyEntry, ls: &[LineBundle]) -> Self {
        let ring = &entry.ring;
        let total = ls.iter().fold(ring.one(), |acc, l| &acc * &(&ring.one() + &entry.divisor(l)));
        let n = entry.dim();
        ChernData {
            rank: ls.len() as u64,
            c1: total.component(1),
            c2: (n >= 2).then(|| total.component(2)),
            c3: (n >= 3).then(|| total.component(3)),
        }
    }

    fn c2_or_zero(&self) -> ChowClass {
        self.c2.clone().unwrap_or_else(|| self.c1.ring().zero())
    }

    fn c3_or_zero(&self) -> ChowClass {
        self.c3.clone().unwrap_or_else(|| self.c1.ring().zero())
    }

    /// Chern data of E ⊗ O(L).
    pub fn twist(&self, l: &ChowClass) -> ChernData {
        let r = self.rank as i64;
        let l2 = l * l;
        let c1 = &self.c1 + &l.scale(r);
        let c2 = self.c2.as_ref().map(|c2| {
            &(c2 + &(&self.c1 * l).scale(r - 1)) + &l2.scale(binom(r, 2))
        });
        let c3 = self.c3.as_ref().map(|c3| {
            let a = c3 + &(&self.c2_or_zero() * l).scale(r - 2);
            let b = &(&self.c1 * &l2).scale(binom(r - 1, 2)) + &(&l2 * l).scale(binom(r, 3));
            &a + &b
        });
        ChernData { rank: self.rank, c1, c2, c3 }
    }

    /// Chern data of the dual sheaf.
    pub fn dual(&self) -> ChernData {
        ChernData {
            rank: self.rank,
            c1: -&self.c1,
            c2: self.c2.clone(),
            c3: self.c3.as_ref().map(|c| -c),
        }
    }

    /// Chern data of E ⊗ E^∨ for rank 2 (c1 = 0, c2 = 4c2 − c1², c3 = 0).
    pub fn endomorphisms_rank2(&self) -> ChernData {
        let z = self.c1.ring().zero();
        let c2 = &self.c2_or_zero().scale(4) - &(&self.c1 * &self.c1);
        ChernData { rank: 4, c1: z.clone(), c2: Some(c2), c3: Some(z) }
    }
}

fn need_dim(entry: &VarietyEntry, d: u32) -> Result<(), RrError> {
    if entry.dim() != d {
        return Err(RrError::WrongDimension { expected: d, got: entry.dim() });
    }
    Ok(())
}

fn integral(x: BigRational) -> Result<BigInt, RrError> {
    int_of(&x).ok_or_else(|| RrError::NonIntegral(crate::arith::render_rational(&x)))
}

pub fn chi_curve(entry: &VarietyEntry, c: &ChernData) -> Result<BigInt, RrError> {
    need_dim(entry, 1)?;
    Ok(BigInt::from(c.rank) * &entry.chi_o + c.c1.integrate())
}

pub fn chi_surface(entry: &VarietyEntry, c: &ChernData) -> Result<BigInt, RrError> {
    need_dim(entry, 2)?;
    let k = entry.canonical_class();
    let c2 = c.c2.as_ref().ok_or(RrError::MissingClass(2))?;
    let twice = BigInt::from(2 * c.rank) * &entry.chi_o + (&c.c1 * &c.c1).integrate()
        - (&k * &c.c1).integrate()
        - c2.integrate() * 2;
    integral(rat(twice, 2))
}

pub fn chi_threefold(entry: &VarietyEntry, c: &ChernData) -> Result<BigInt, RrError> {
    need_dim(entry, 3)?;
    let c2o = entry.c2_omega.as_ref().ok_or_else(|| RrError::MissingC2Omega(entry.variety.to_string()))?;
    let k = entry.canonical_class();
    let c1 = &c.c1;
    let c2 = c.c2.as_ref().ok_or(RrError::MissingClass(2))?;
    let c3 = c.c3_or_zero();
    let i = |x: ChowClass| x.integrate();
    let c1sq = c1 * c1;
    // 12·χ = 12 r χ(O) + 2(c1³ − 3c1c2 + 3c3) − 3(ωc1² − 2ωc2) + (ω²c1 + c2(Ω)c1)
    let twelve = BigInt::from(12 * c.rank) * &entry.chi_o
        + (i(&c1sq * c1) - i(c1 * c2) * 3 + i(c3) * 3) * 2
        - (i(&k * &c1sq) - i(&k * c2) * 2) * 3
        + i(&(&k * &k) * c1)
        + i(c2o * c1);
    integral(rat(twelve, 12))
}

/// Dispatches on the dimension of the variety.
pub fn chi(entry: &VarietyEntry, c: &ChernData) -> Result<BigInt, RrError> {
    match entry.dim() {
        1 => chi_curve(entry, c),
        2 => chi_surface(entry, c),
        3 => chi_threefold(entry, c),
        d => Err(RrError::Unsupported(d)),
    }
}

fn c1_dot_hn1(entry: &VarietyEntry, c1: &ChowClass) -> BigInt {
    (c1 * &entry.h().pow(entry.dim() - 1)).integrate()
}

pub fn slope(entry: &VarietyEntry, c: &ChernData) -> BigRational {
    rat(c1_dot_hn1(entry, &c.c1), c.rank)
}

/// The unique t with −rk·hⁿ < c1(E(th))·h^{n−1} ≤ 0.
pub fn normalization_twist(entry: &VarietyEntry, c: &ChernData) -> i64 {
    let s = c1_dot_hn1(entry, &c.c1);
    let d = BigInt::from(c.rank) * entry.hn();
    let t = (-s).div_floor(&d);
    i64::try_from(t).expect("normalization twist fits in i64")
}

pub fn slope_condition(entry: &VarietyEntry, c: &ChernData, defect: u8) -> bool {
    let n = entry.dim();
    let lhs = c1_dot_hn1(entry, &c.c1) * 2;
    let kh = (&entry.canonical_class() * &entry.h().pow(n - 1)).integrate();
    let rhs = BigInt::from(c.rank) * (entry.hn() * (n as i64 + 1 - defect as i64) + kh);
    lhs == rhs
}

/// First Chern class of the Ulrich dual E^∨((n+1)h + K).
pub fn ulrich_dual_c1(entry: &VarietyEntry, c: &ChernData) -> ChowClass {
    let n = entry.dim() as i64;
    let shift = &entry.h().scale(n + 1) + &entry.canonical_class();
    &shift.scale(c.rank as i64) - &c.c1
}

/// With h = uH and ω = vH, c1 = εH when rk·(u(n+1−δ)+v) is even.
pub fn cyclic_c1(rank: u64, defect: u8, u: i64, v: i64, n: u32) -> Option<i64> {
    let x = rank as i64 * (u * (n as i64 + 1 - defect as i64) + v);
    (x % 2 == 0).then_some(x / 2)
}

type Series = Vec<BigInt>;

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// (1 + c·t)^e truncated, for any integer exponent.
fn binomial_series(c: i64, e: i64, len: usize) -> Series {
    (0..len).map(|k| binom(e, k as u32) * BigInt::from(c).pow(k as u32)).collect()
}

/// (c1, …, cn) of an instanton on Pⁿ, by expanding its Chern polynomial.
pub fn chern_poly_instanton_pn(n: u32, rank: u64, defect: u8, quantum: u64) -> Result<Vec<BigInt>, RrError> {
    if defect == 1 && rank % 2 == 1 {
        return Err(RrError::Parity("defect 1 needs even rank".into()));
    }
    let len = n as usize + 1;
    let (r, q) = (rank as i64, quantum as i64);
    let series = if defect == 0 {
        // 1/(1−t²)^q = (1−t)^{−q}(1+t)^{−q}
        series_mul(&binomial_series(-1, -q, len), &binomial_series(1, -q, len), len)
    } else if n >= 3 {
        let a = binomial_series(-1, r / 2 + q, len);
        let b = binomial_series(1, -q, len);
        let c = binomial_series(-2, -q, len);
        series_mul(&series_mul(&a, &b, len), &c, len)
    } else {
        let a = binomial_series(-1, r / 2, len);
        let b = series_mul(&binomial_series(-1, -q, len), &binomial_series(1, -q, len), len);
        series_mul(&a, &b, len)
    };
    Ok(series[1..].to_vec())
}

/// Closed-form (c1, c2) of an instanton on Pⁿ.
pub fn chern_closed_form_pn(n: u32, rank: u64, defect: u8, quantum: u64) -> (BigInt, BigInt) {
    let (r, q, d) = (BigInt::from(rank), BigInt::from(quantum), BigInt::from(defect));
    let eps = if n == 2 { BigInt::one() } else { BigInt::one() + &d };
    let c1 = -(&d * &r) / 2;
    let c2 = eps * q + &d * &r * (&r - 2) / 8;
    (c1, c2)
}

/// Solves the surface-section identity χ(O_S ⊗ E) = rk·hⁿ/(1+δ) − εq for q.
pub fn quantum_chern_identity(
    entry: &VarietyEntry,
    c: &ChernData,
    defect: u8,
    chi_list: &[BigInt],
) -> Result<BigInt, RrError> {
    let n = entry.dim();
    if n < 2 {
        return Err(RrError::Unsupported(n));
    }
    if chi_list.len() != n as usize - 1 {
        return Err(RrError::NonIntegral(format!("expected {} values of chi(O(-ih))", n - 1)));
    }
    let h = entry.h();
    let k = entry.canonical_class();
    let c2 = c.c2.as_ref().ok_or(RrError::MissingClass(2))?;
    let inner = &(&c.c1 - &k) - &h.scale(n as i64 - 2);
    let hn2 = h.pow(n - 2);
    let first = rat((c2 * &hn2).integrate() * 2 - (&(&c.c1 * &inner) * &hn2).integrate(), 2);
    let alt: BigInt = chi_list
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let s = binom(n as i64 - 2, i as u32) * x;
            if i % 2 == 0 { s } else { -s }
        })
        .sum();
    let second = (rat(entry.hn(), 1 + defect as i64) - BigRational::from_integer(alt))
        * BigRational::from_integer(BigInt::from(c.rank));
    let eps = if n == 2 { 1 } else { 1 + defect as i64 };
    let q = (first + second) / BigRational::from_integer(BigInt::from(eps));
    integral(q)
}

/// Euler characteristics χ(O(−ih)) for 0 ≤ i ≤ n−2.
pub fn structure_chi_list(entry: &VarietyEntry) -> Result<Vec<BigInt>, crate::cohomology::CohomologyError> {
    let n = entry.dim();
    (0..=n.saturating_sub(2))
        .map(|i| {
            let l = LineBundle::new(&vec![0; entry.variety.picard_rank()]).plus(&entry.polarization, -(i as i64));
            entry.line_chi(&l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom;
    use crate::cohomology::coh_projective_space;

    fn entry(s: &str) -> VarietyEntry {
        VarietyEntry::parse(s).unwrap()
    }

    #[test]
    fn chi_on_projective_spaces() {
        let p2 = entry("p2");
        let p3 = entry("p3");
        for t in -5..=5 {
            let c = ChernData::of_line_sum(&p2, &[LineBundle::new(&[t])]);
            assert_eq!(chi_surface(&p2, &c).unwrap(), binom(t + 2, 2));
        }
        for t in -6..=6 {
            let c = ChernData::of_line_sum(&p3, &[LineBundle::new(&[t])]);
            assert_eq!(chi_threefold(&p3, &c).unwrap(), coh_projective_space(3, t).chi());
        }
    }

    #[test]
    fn curve_chi() {
        let c = entry("curve:2,1,generic");
        let theta = ChernData::of_line_sum(&c, &[LineBundle::theta(0)]);
        assert_eq!(chi_curve(&c, &theta).unwrap(), BigInt::zero());
        let p1 = entry("p1");
        let o = ChernData::of_line_sum(&p1, &[LineBundle::new(&[0])]);
        assert_eq!(chi_curve(&p1, &o).unwrap(), BigInt::one());
    }

    #[test]
    fn ordinary_instanton_on_p3() {
        let p3 = entry("p3");
        let r = &p3.ring;
        for q in 0..6i64 {
            let c = ChernData::new(2, r.zero(), Some(r.gen(0).pow(2).scale(q)), Some(r.zero()));
            let twisted = c.twist(&r.gen(0).scale(-1));
            assert_eq!(chi_threefold(&p3, &twisted).unwrap(), BigInt::from(-q));
        }
    }

    #[test]
    fn slopes_and_twists() {
        let flag = entry("flag3");
        let c = ChernData::new(2, flag.h().scale(2), None, None);
        assert_eq!(slope(&flag, &c), rat(6, 1));
        let fano = entry("fano:1,4");
        let c = ChernData::new(2, fano.h().scale(3), None, None);
        assert_eq!(normalization_twist(&fano, &c), -2);
        for eps in -7..7 {
            let p3 = entry("p3");
            let c = ChernData::new(2, p3.h().scale(eps), None, None);
            assert_eq!(normalization_twist(&p3, &c), crate::arith::floor_div(-eps, 2));
        }
    }

    #[test]
    fn slope_conditions() {
        let p3 = entry("p3");
        assert!(slope_condition(&p3, &ChernData::new(2, p3.ring.zero(), None, None), 0));
        let q3 = entry("q3");
        assert!(slope_condition(&q3, &ChernData::new(2, q3.ring.zero(), None, None), 1));
        let flag = entry("flag3");
        for a in 0..5 {
            let c = ChernData::of_line_sum(&flag, &[LineBundle::new(&[-a, a + 2])]);
            assert!(slope_condition(&flag, &c, 0));
        }
    }

    #[test]
    fn cyclic_c1_examples() {
        assert_eq!(cyclic_c1(2, 0, 1, -1, 3), Some(3));
        assert_eq!(cyclic_c1(2, 0, 1, -3, 3), Some(1));
        assert_eq!(cyclic_c1(1, 0, 1, -1, 3), None);
    }

    #[test]
    fn chern_polynomials() {
        for n in 2..=4 {
            for r in [2u64, 4] {
                for q in 0..3 {
                    for d in 0..2u8 {
                        let s = chern_poly_instanton_pn(n, r, d, q).unwrap();
                        let (c1, c2) = chern_closed_form_pn(n, r, d, q);
                        assert_eq!((s[0].clone(), s[1].clone()), (c1, c2));
                    }
                }
            }
        }
        assert!(chern_poly_instanton_pn(3, 3, 1, 0).is_err());
    }

    #[test]
    fn quantum_identity() {
        let p3 = entry("p3");
        let chis = structure_chi_list(&p3).unwrap();
        let r = &p3.ring;
        for q in 0..4 {
            let c = ChernData::new(2, r.zero(), Some(r.gen(0).pow(2).scale(q)), None);
            assert_eq!(quantum_chern_identity(&p3, &c, 0, &chis).unwrap(), BigInt::from(q));
            let s = chern_poly_instanton_pn(3, 2, 1, q as u64).unwrap();
            let c = ChernData::new(2, r.gen(0).scale(s[0].clone()), Some(r.gen(0).pow(2).scale(s[1].clone())), None);
            assert_eq!(quantum_chern_identity(&p3, &c, 1, &chis).unwrap(), BigInt::from(q));
        }
    }
}
