//! The instanton-condition checker and the transforms and validators built on tables.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binom, rat};
use crate::cohomology::{CohVector, CohomologyTable, Row, VarietyEntry, Window};
use crate::rr::ChernData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstantonError {
    #[error("window too small: missing twists {0:?}")]
    Window(Vec<i64>),
    #[error("table mismatch: {0}")]
    Mismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Admissible {
    pub defect: u8,
    pub quantum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstantonVerdict {
    pub admissible: Vec<Admissible>,
    pub ulrich: bool,
    pub wic: bool,
    pub natural: bool,
    pub notes: Vec<String>,
}

impl InstantonVerdict {
    pub fn is_instanton(&self) -> bool {
        !self.admissible.is_empty()
    }

    pub fn quantum(&self, defect: u8) -> Option<u64> {
        self.admissible.iter().find(|a| a.defect == defect).map(|a| a.quantum)
    }

    pub fn to_markdown(&self) -> String {
        let pairs: Vec<String> =
            self.admissible.iter().map(|a| format!("(δ={}, q={})", a.defect, a.quantum)).collect();
        let mut s = format!(
            "- admissible: {}\n- ulrich: {}\n- without intermediate cohomology: {}\n- natural cohomology: {}\n",
            if pairs.is_empty() { "none".to_string() } else { pairs.join(", ") },
            self.ulrich,
            self.wic,
            self.natural
        );
        for n in &self.notes {
            s += &format!("- note: {n}\n");
        }
        s
    }
}

fn need_rows(table: &CohomologyTable, ts: impl IntoIterator<Item = i64>) -> Result<(), InstantonError> {
    let missing: BTreeSet<i64> = ts.into_iter().filter(|t| table.row(*t).is_none()).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(InstantonError::Window(missing.into_iter().collect()))
    }
}

fn h(table: &CohomologyTable, t: i64, i: i64) -> u64 {
    if i < 0 {
        return 0;
    }
    table.row(t).map(|r| r.h(i as usize)).unwrap_or(0)
}

fn chi_at(table: &CohomologyTable, t: i64) -> BigInt {
    table.row(t).map(CohVector::chi).unwrap_or_default()
}

/// Runs the finite list of conditions for one defect; returns q when all hold.
fn conditions(table: &CohomologyTable, defect: u8, notes: &mut Vec<String>) -> Option<u64> {
    let n = table.dim() as i64;
    let d = defect as i64;
    let mut ok = true;
    let mut vanish = |t: i64, i: i64, why: &str| {
        let x = h(table, t, i);
        if x != 0 {
            notes.push(format!("δ={defect}: h^{i}(E({t}h)) = {x}, expected 0 ({why})"));
            ok = false;
        }
    };
    vanish(-1, 0, "no sections of E(-h)");
    vanish(d - n, n, "top cohomology");
    for i in 1..=n - 2 {
        vanish(-(i + 1), i, "lower vanishing");
        vanish(d - n + i, n - i, "upper vanishing");
    }
    if defect == 1 {
        for i in 2..=n - 2 {
            vanish(-i, i, "defect-one vanishing");
        }
    }
    let q1 = h(table, -1, 1);
    let q2 = h(table, d - n, n - 1);
    if q1 != q2 {
        notes.push(format!("δ={defect}: h^1(E(-h)) = {q1} differs from h^{}(E({}h)) = {q2}", n - 1, d - n));
        ok = false;
    }
    if defect == 1 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let lhs: BigInt = chi_at(table, 0) - chi_at(table, -n) * BigInt::from(sign);
        if !lhs.is_zero() {
            notes.push(format!("δ=1: χ(E) − (−1)^n χ(E(−nh)) = {lhs}, expected 0"));
            ok = false;
        }
    }
    ok.then_some(q1)
}

pub fn check_instanton(table: &CohomologyTable) -> Result<InstantonVerdict, InstantonError> {
    let n = table.dim() as i64;
    if n < 1 {
        return Err(InstantonError::Invalid("table has no rows".into()));
    }
    need_rows(table, -n..=0)?;
    let mut notes = Vec::new();
    let mut admissible = Vec::new();
    for defect in 0..=1u8 {
        if let Some(q) = conditions(table, defect, &mut notes) {
            admissible.push(Admissible { defect, quantum: q });
        }
    }
    let ulrich = admissible.contains(&Admissible { defect: 0, quantum: 0 });
    let wic = admissible.iter().any(|a| {
        a.quantum == 0 && (a.defect == 0 || (h(table, 0, 1) == 0 && h(table, -n, n - 1) == 0))
    });
    let natural_defect = admissible.first().map(|a| a.defect).unwrap_or(0);
    let natural = natural_cohomology_window(table, natural_defect)?;
    Ok(InstantonVerdict { admissible, ulrich, wic, natural, notes })
}

/// At most one nonzero entry in each row with δ−n ≤ t ≤ −1.
pub fn natural_cohomology_window(table: &CohomologyTable, defect: u8) -> Result<bool, InstantonError> {
    let n = table.dim() as i64;
    let range = defect as i64 - n..=-1;
    need_rows(table, range.clone())?;
    Ok(range.into_iter().all(|t| table.row(t).map(|r| r.nonzero_count() <= 1).unwrap_or(false)))
}

/// χ(E(th)) of an instanton from (n, δ, q, χ(E)).
pub fn chi_polynomial(n: u32, defect: u8, quantum: &BigInt, chi0: &BigInt, t: i64) -> BigInt {
    let d = defect as i64;
    let q = quantum;
    if n == 1 {
        return chi0 * (t + 1 + d * t);
    }
    if n == 2 && defect == 1 {
        return (chi0 + q) * BigInt::from(t + 1).pow(2) - q;
    }
    let n64 = n as i64;
    let lead = chi0 + q * (n64 + 1);
    lead * (binom(t + n64, n) + binom(t + n64 - d, n) * d) - q * (binom(t + n64 + 1, n) + binom(t + n64 - 1 - d, n))
}

/// Rank of the push-forward to Pⁿ (rank times hⁿ) from (n, δ, q, χ(E)).
pub fn rank_from_chi(n: u32, defect: u8, quantum: &BigInt, chi0: &BigInt) -> BigRational {
    let n64 = n as i64;
    let r = match (defect, n) {
        (_, 1) => chi0 * (1 + defect as i64),
        (0, _) => chi0 + quantum * (n64 - 1),
        (_, 2) => chi0 * 2 + quantum * 2,
        _ => chi0 * 2 + quantum * (2 * n64),
    };
    BigRational::from_integer(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Restriction {
    pub defect: u8,
    pub quantum: u64,
    /// Whether the same numbers also describe extensions from the hyperplane section.
    pub extension_valid: bool,
}

pub fn restriction_transform(n: u32, defect: u8, quantum: u64) -> Result<Restriction, InstantonError> {
    if n <= 2 {
        return Err(InstantonError::Invalid("restriction needs n >= 3".into()));
    }
    let quantum = if n == 3 && defect == 1 { 2 * quantum } else { quantum };
    Ok(Restriction { defect, quantum, extension_valid: n >= 5 })
}

/// The same rows viewed on Pⁿ through a finite projection of degree hⁿ.
pub fn pushforward_model(table: &CohomologyTable, degree: u64) -> CohomologyTable {
    CohomologyTable {
        variety: format!("p{}", table.dim()),
        rank: table.rank * degree,
        window: table.window,
        rows: table.rows.clone(),
        chern: if degree == 1 && table.variety == format!("p{}", table.dim()) { table.chern.clone() } else { None },
    }
}

pub fn direct_sum(a: &CohomologyTable, b: &CohomologyTable) -> Result<CohomologyTable, InstantonError> {
    if a.variety != b.variety || a.dim() != b.dim() {
        return Err(InstantonError::Mismatch(format!("{} vs {}", a.variety, b.variety)));
    }
    let w = Window::new(a.window.tmin.max(b.window.tmin), a.window.tmax.min(b.window.tmax));
    if w.tmin > w.tmax {
        return Err(InstantonError::Mismatch("windows do not overlap".into()));
    }
    let rows = (w.tmin..=w.tmax)
        .map(|t| Row { t, h: a.row(t).unwrap().add(b.row(t).unwrap()) })
        .collect();
    let chern = match (&a.chern, &b.chern) {
        (Some(x), Some(y)) => Some(x.direct_sum(y)),
        _ => None,
    };
    Ok(CohomologyTable { variety: a.variety.clone(), rank: a.rank + b.rank, window: w, rows, chern })
}

/// Table of E^{U,h}(−δh) = E^∨((n+1−δ)h + K), by Serre duality from the rows of E.
pub fn ulrich_dual_table(
    table: &CohomologyTable,
    entry: Option<&VarietyEntry>,
    defect: u8,
) -> Result<CohomologyTable, InstantonError> {
    let n = table.dim() as i64;
    let d = defect as i64;
    need_rows(table, d - n - 1..=d - 1)?;
    let off = d - n - 1;
    let w = Window::new(off - table.window.tmax, off - table.window.tmin);
    let rows = (w.tmin..=w.tmax)
        .map(|t| Row { t, h: crate::cohomology::serre_dual_vector(table.row(off - t).unwrap()) })
        .collect();
    let chern = match (entry, &table.chern) {
        (Some(e), Some(c)) if e.variety.to_string() == table.variety => {
            let shift = &e.h().scale(n + 1 - d) + &e.canonical_class();
            Some(c.dual().twist(&shift))
        }
        _ => None,
    };
    Ok(CohomologyTable { variety: table.variety.clone(), rank: table.rank, window: w, rows, chern })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t", rename_all = "snake_case")]
pub enum VBound {
    Exact(i64),
    AtLeast(i64),
    AtMost(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub v: VBound,
    pub w: i64,
    pub reg_upper: Option<i64>,
    pub violations: Vec<String>,
    pub unverified: Vec<i64>,
}

pub fn regularity_report(table: &CohomologyTable, defect: u8) -> Result<RegularityReport, InstantonError> {
    let n = table.dim() as i64;
    let d = defect as i64;
    need_rows(table, [d - 1])?;
    let w = h(table, d - 1, 1) as i64 + d;
    let mut violations = Vec::new();
    let mut unverified = Vec::new();
    for i in 1..=n {
        let t = w - i;
        match table.row(t) {
            None => unverified.push(t),
            Some(r) if r.h(i as usize) != 0 => {
                violations.push(format!("h^{i}(E({t}h)) = {} contradicts reg(E) <= {w}", r.h(i as usize)))
            }
            _ => {}
        }
    }
    let first = table.rows.iter().find(|r| r.h.h(0) != 0).map(|r| r.t);
    let v = match first {
        Some(t) if t > table.window.tmin => VBound::Exact(t),
        Some(t) => VBound::AtMost(t),
        None => VBound::AtLeast(table.window.tmax + 1),
    };
    let reg_upper = violations.is_empty().then_some(w);
    Ok(RegularityReport { v, w, reg_upper, violations, unverified })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub p: u32,
    pub i: i64,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiShape {
    pub v: i64,
    pub w: i64,
    /// Dimension N of the ambient projective space.
    pub ambient: u32,
    pub beta: Vec<BettiEntry>,
}

pub fn betti_shape_check(shape: &BettiShape, chi_oracle: &dyn Fn(i64) -> BigInt) -> bool {
    let nn = shape.ambient as i64;
    let in_range = shape
        .beta
        .iter()
        .all(|b| b.value == 0 || (shape.v <= b.i && b.i <= shape.w && (b.p as i64) < nn));
    if !in_range {
        return false;
    }
    (0..nn + 2).all(|t| {
        let s: BigInt = shape
            .beta
            .iter()
            .map(|b| {
                let c = binom(t - b.i - b.p as i64 + nn, shape.ambient) * b.value;
                if b.p % 2 == 0 { c } else { -c }
            })
            .sum();
        s == chi_oracle(t)
    })
}

/// Column range a minimal resolution may use: [v, v+1] when every row from v on has
/// natural cohomology, [v, w] otherwise.
pub fn allowed_columns(table: &CohomologyTable, defect: u8) -> Result<(i64, i64), InstantonError> {
    let rep = regularity_report(table, defect)?;
    let v = match rep.v {
        VBound::Exact(v) | VBound::AtMost(v) => v,
        VBound::AtLeast(_) => return Err(InstantonError::Window(vec![table.window.tmax + 1])),
    };
    let natural = table.rows.iter().filter(|r| r.t >= v).all(|r| r.h.nonzero_count() <= 1);
    Ok(if natural { (v, v + 1) } else { (v, rep.w.max(v)) })
}

pub fn veronese_quantum(n: u32, rank: u64, d: i64, hn: &BigInt) -> Result<BigRational, InstantonError> {
    if !(1..=3).contains(&n) {
        return Err(InstantonError::Invalid("veronese needs 1 <= n <= 3".into()));
    }
    if ((n as i64 + 1) * (d - 1)) % 2 != 0 {
        return Err(InstantonError::Invalid("(n+1)(d-1) must be even".into()));
    }
    let fact: i64 = (1..=n as i64).product();
    let num = BigInt::from(n as i64 - 1).pow(n) * rank * (d * d - 1) * hn;
    let den = BigInt::from(2).pow(n) * fact;
    Ok(rat(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorrocksReport {
    pub forced_acm: bool,
    pub infeasible: bool,
    pub forced_ulrich: bool,
}

pub fn horrocks_gate(n: u32, rank: u64, hn: u64, quantum: u64, defect: u8) -> Result<HorrocksReport, InstantonError> {
    if n < 4 {
        return Err(InstantonError::Invalid("the gate needs n >= 4".into()));
    }
    let m = rank * hn;
    let forced_acm = m < 2 * (n as u64 / 2);
    let infeasible = (defect == 0 && quantum >= 1 && m < n as u64 - 1) || (forced_acm && quantum >= 1);
    let forced_ulrich = defect == 0 && m == n as u64 - 1 && n.is_multiple_of(2);
    Ok(HorrocksReport { forced_acm, infeasible, forced_ulrich })
}

/// −χ(E(−h)), which equals q for an instanton.
pub fn quantum_from_chi(table: &CohomologyTable) -> Option<BigInt> {
    table.row(-1).map(|r| -r.chi())
}

pub fn is_nonnegative(x: &BigInt) -> bool {
    !x.is_negative()
}

impl ChernData {
    /// Chern data of E ⊕ F from c(E)c(F).
    pub fn direct_sum(&self, other: &ChernData) -> ChernData {
        let ring = self.c1.ring();
        let total = |c: &ChernData| {
            let mut t = &ring.one() + &c.c1;
            if let Some(c2) = &c.c2 {
                t = &t + c2;
            }
            if let Some(c3) = &c.c3 {
                t = &t + c3;
            }
            t
        };
        let p = &total(self) * &total(other);
        ChernData {
            rank: self.rank + other.rank,
            c1: p.component(1),
            c2: self.c2.as_ref().map(|_| p.component(2)),
            c3: self.c3.as_ref().map(|_| p.component(3)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{build_table, BundleFamily, LineBundle};

    fn table(v: &str, coords: &[i64], w: (i64, i64)) -> CohomologyTable {
        let e = VarietyEntry::parse(v).unwrap();
        build_table(&e, &BundleFamily::line(LineBundle::new(coords)), Window::new(w.0, w.1)).unwrap()
    }

    #[test]
    fn paper_examples() {
        let t = table("p1xp1xp1", &[-1, 1, 3], (-3, 0));
        let v = check_instanton(&t).unwrap();
        assert_eq!(v.admissible, vec![Admissible { defect: 0, quantum: 3 }]);
        assert!(natural_cohomology_window(&t, 0).unwrap());
        let v = check_instanton(&table("p3", &[0], (-3, 0))).unwrap();
        assert!(v.admissible.contains(&Admissible { defect: 0, quantum: 0 }) && v.ulrich);
        let v = check_instanton(&table("q3", &[0], (-3, 0))).unwrap();
        assert!(v.admissible.contains(&Admissible { defect: 1, quantum: 0 }));
        assert!(!check_instanton(&table("p3", &[1], (-3, 0))).unwrap().is_instanton());
    }

    #[test]
    fn window_errors_name_twists() {
        let t = table("p3", &[0], (-2, 0));
        assert_eq!(check_instanton(&t), Err(InstantonError::Window(vec![-3])));
    }

    #[test]
    fn chi_polynomial_branches() {
        let q = BigInt::from(5);
        let chi = BigInt::from(-8);
        assert_eq!(chi_polynomial(3, 0, &q, &chi, -1), -q.clone());
        for t in -4..4 {
            assert_eq!(chi_polynomial(2, 1, &q, &chi, t), (&chi + &q) * BigInt::from(t + 1).pow(2) - &q);
            assert_eq!(chi_polynomial(1, 1, &q, &chi, t), &chi * (2 * t + 1));
        }
    }

    #[test]
    fn rank_formulas() {
        let z = BigInt::zero();
        assert_eq!(rank_from_chi(3, 0, &z, &BigInt::from(4)), BigRational::from_integer(4.into()));
        for q in 0..5i64 {
            let chi = BigInt::from(2 - 2 * q);
            assert_eq!(rank_from_chi(3, 0, &q.into(), &chi), BigRational::from_integer(2.into()));
        }
        assert_eq!(rank_from_chi(2, 1, &3.into(), &1.into()), BigRational::from_integer(8.into()));
    }

    #[test]
    fn restriction() {
        assert_eq!(restriction_transform(4, 0, 7).unwrap().quantum, 7);
        assert_eq!(restriction_transform(3, 1, 5).unwrap().quantum, 10);
        assert_eq!(restriction_transform(3, 0, 0).unwrap().quantum, 0);
        assert!(restriction_transform(2, 0, 0).is_err());
        assert!(restriction_transform(5, 0, 1).unwrap().extension_valid);
    }

    #[test]
    fn ulrich_dual_on_p3_is_trivial() {
        let e = VarietyEntry::parse("p3").unwrap();
        let t = table("p3", &[0], (-4, 0));
        let d = ulrich_dual_table(&t, Some(&e), 0).unwrap();
        for r in &d.rows {
            assert_eq!(r.h, crate::cohomology::coh_projective_space(3, r.t));
        }
        let back = ulrich_dual_table(&d, Some(&e), 0).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn regularity_of_ulrich_and_counter_table() {
        let t = table("p3", &[0], (-4, 2));
        let rep = regularity_report(&t, 0).unwrap();
        assert_eq!((rep.w, rep.reg_upper, rep.v), (0, Some(0), VBound::Exact(0)));
        let mut bad = t.clone();
        // h^1(E(-h)) = 0 so w = 0; plant h^2(E(-2h)) != 0
        bad.rows[2].h.dims[2] = 1;
        let rep = regularity_report(&bad, 0).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.reg_upper, None);
    }

    #[test]
    fn betti_shapes() {
        let p3 = |t: i64| crate::cohomology::coh_projective_space(3, t).chi();
        let shape = BettiShape { v: 0, w: 0, ambient: 3, beta: vec![BettiEntry { p: 0, i: 0, value: 1 }] };
        assert!(betti_shape_check(&shape, &p3));
        let out = BettiShape { v: 0, w: 0, ambient: 3, beta: vec![BettiEntry { p: 0, i: 1, value: 1 }] };
        assert!(!betti_shape_check(&out, &p3));
    }

    #[test]
    fn veronese_and_horrocks() {
        for r in 1..5u64 {
            for d in [1i64, 3, 5] {
                assert_eq!(veronese_quantum(2, r, d, &1.into()).unwrap(), rat(r as i64 * (d * d - 1), 8));
            }
        }
        assert_eq!(veronese_quantum(3, 2, 2, &2.into()).unwrap(), rat(2, 1));
        assert!(veronese_quantum(2, 1, 2, &1.into()).is_err());
        assert!(horrocks_gate(5, 2, 1, 1, 0).unwrap().infeasible);
        assert!(horrocks_gate(6, 5, 1, 0, 0).unwrap().forced_ulrich);
        assert_eq!(
            horrocks_gate(4, 100, 1, 3, 0).unwrap(),
            HorrocksReport { forced_acm: false, infeasible: false, forced_ulrich: false }
        );
    }
}
