//! Brute-force classifications, stability decisions and numerical checks of constructions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::choose;
use crate::chow::{ChowClass, Variety};
use crate::cohomology::{
    build_table, coh_product, BundleFamily, CohomologyError, LineBundle, VarietyEntry, Window,
};
use crate::instanton::{check_instanton, InstantonError, InstantonVerdict};
use crate::monads::{serre_construction_chern, MonadError};
use crate::rr::{chi, ChernData, RrError};

pub const DEFAULT_BOX: i64 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Rr(#[from] RrError),
    #[error(transparent)]
    Monad(#[from] MonadError),
    #[error(transparent)]
    Instanton(#[from] InstantonError),
}

fn big_i64(x: BigInt) -> i64 {
    x.to_i64().expect("value fits in i64")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Exact,
    Superset,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundEntry {
    pub coords: Vec<i64>,
    pub quantum: u64,
    /// The family parameter a when the entry has the family's shape (a = 0 included).
    pub family_a: Option<i64>,
    pub formula_quantum: Option<u64>,
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub variety: String,
    pub defect: u8,
    pub search_box: i64,
    pub found: Vec<FoundEntry>,
    pub expected_description: String,
    pub expected: Vec<Vec<i64>>,
    pub agreement: Agreement,
    pub extra: Vec<Vec<i64>>,
    pub missing: Vec<Vec<i64>>,
    pub formula_ok: bool,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let fmt = |c: &[i64]| format!("O({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let mut s = format!(
            "## {} line bundles, defect {}, box [-{b}, {b}]\n\nexpected: {}\n\n| bundle | q | a | formula q |\n|---|---|---|---|\n",
            self.variety,
            self.defect,
            self.expected_description,
            b = self.search_box
        );
        for e in &self.found {
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            s += &format!(
                "| {} | {} | {} | {} |\n",
                fmt(&e.coords),
                e.quantum,
                opt(e.family_a.map(|a| a.to_string())),
                opt(e.formula_quantum.map(|q| q.to_string()))
            );
        }
        s += &format!("\nagreement: {:?}\n", self.agreement).to_lowercase();
        for x in &self.extra {
            s += &format!("- found but not expected: {}\n", fmt(x));
        }
        for x in &self.missing {
            s += &format!("- expected but not found: {}\n", fmt(x));
        }
        for n in &self.notes {
            s += &format!("- {n}\n");
        }
        s
    }
}

fn lattice(dims: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|p| (-bound..=bound).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[cfg(feature = "parallel")]
fn filter_map_all<T, F>(items: Vec<Vec<i64>>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Vec<i64>) -> Option<T> + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn filter_map_all<T, F>(items: Vec<Vec<i64>>, f: F) -> Vec<T>
where
    F: Fn(Vec<i64>) -> Option<T>,
{
    items.into_iter().filter_map(f).collect()
}

fn line_verdict(entry: &VarietyEntry, coords: &[i64]) -> Result<InstantonVerdict, ClassifyError> {
    let n = entry.dim() as i64;
    let table = build_table(entry, &BundleFamily::line(LineBundle::new(coords)), Window::new(-n - 1, 0))?;
    Ok(check_instanton(&table)?)
}

/// Every canonical line bundle in the box with an admissible pair of the given defect.
fn search(
    entry: &VarietyEntry,
    bound: i64,
    defect: u8,
    canonical: fn(&[i64]) -> Vec<i64>,
) -> Result<Vec<(Vec<i64>, u64)>, ClassifyError> {
    let dims = entry.variety.picard_rank();
    let candidates: Vec<Vec<i64>> = lattice(dims, bound).into_iter().filter(|c| canonical(c) == *c).collect();
    let results = filter_map_all(candidates, |c| match line_verdict(entry, &c) {
        Ok(v) => v.quantum(defect).map(|q| Ok((c, q))),
        Err(e) => Some(Err(e)),
    });
    let mut found = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    found.sort();
    Ok(found)
}

fn swap_canonical(c: &[i64]) -> Vec<i64> {
    let swapped = vec![c[1], c[0]];
    if swapped < c.to_vec() {
        swapped
    } else {
        c.to_vec()
    }
}

fn sort_canonical(c: &[i64]) -> Vec<i64> {
    let mut v = c.to_vec();
    v.sort();
    v
}

struct Family {
    /// Member for parameter a, already canonical.
    member: fn(i64, u8) -> Vec<i64>,
    quantum: fn(i64, u8) -> u64,
    description: String,
}

fn compare(
    variety: &str,
    defect: u8,
    bound: i64,
    found: Vec<(Vec<i64>, u64)>,
    family: Option<Family>,
    mut notes: Vec<String>,
) -> ClassificationReport {
    let mut expected = Vec::new();
    let mut entries = Vec::new();
    let mut formula_ok = true;
    let in_box = |c: &[i64]| c.iter().all(|x| x.abs() <= bound);
    let description;
    match &family {
        Some(fam) => {
            description = fam.description.clone();
            let mut a = 1;
            while in_box(&(fam.member)(a, defect)) {
                expected.push((fam.member)(a, defect));
                a += 1;
            }
        }
        None => description = "no line bundles".to_string(),
    }
    for (coords, q) in &found {
        let mut entry =
            FoundEntry { coords: coords.clone(), quantum: *q, family_a: None, formula_quantum: None, boundary: false };
        if let Some(fam) = &family {
            if let Some(a) = (0..=2 * bound + 2).find(|a| (fam.member)(*a, defect) == *coords) {
                let fq = (fam.quantum)(a, defect);
                entry.family_a = Some(a);
                entry.formula_quantum = Some(fq);
                entry.boundary = a == 0;
                if fq != *q {
                    formula_ok = false;
                }
                if a == 0 {
                    notes.push(format!(
                        "boundary member a = 0, {coords:?}, passes the checker with q = {q}; the stated family starts at a = 1"
                    ));
                }
            }
        }
        entries.push(entry);
    }
    let found_set: BTreeSet<Vec<i64>> = found.iter().map(|(c, _)| c.clone()).collect();
    let expected_set: BTreeSet<Vec<i64>> = expected.iter().cloned().collect();
    let extra: Vec<Vec<i64>> = found_set.difference(&expected_set).cloned().collect();
    let missing: Vec<Vec<i64>> = expected_set.difference(&found_set).cloned().collect();
    let agreement = if !missing.is_empty() || !formula_ok {
        Agreement::Mismatch
    } else if extra.is_empty() {
        Agreement::Exact
    } else {
        Agreement::Superset
    };
    ClassificationReport {
        variety: variety.to_string(),
        defect,
        search_box: bound,
        found: entries,
        expected_description: description,
        expected,
        agreement,
        extra,
        missing,
        formula_ok,
        notes,
    }
}

fn check_box(bound: i64) -> Result<(), ClassifyError> {
    if bound < 1 {
        return Err(ClassifyError::Invalid("box must be >= 1".into()));
    }
    Ok(())
}

pub fn classify_flag_lines(bound: i64, defect: u8) -> Result<ClassificationReport, ClassifyError> {
    check_box(bound)?;
    let entry = VarietyEntry::new(&Variety::Flag3)?;
    let found = search(&entry, bound, defect, swap_canonical)?;
    let family = Family {
        member: |a, d| swap_canonical(&[-a, a + 2 - d as i64]),
        quantum: |a, d| ((2 - d as i64) * a * (a + 2 - d as i64) / 2) as u64,
        description: format!("O(-a h1 + (a+{}) h2) for a >= 1, up to swapping h1 and h2", 2 - defect),
    };
    Ok(compare("flag3", defect, bound, found, Some(family), vec![]))
}

pub fn classify_segre_lines(bound: i64, defect: u8) -> Result<ClassificationReport, ClassifyError> {
    check_box(bound)?;
    let entry = VarietyEntry::new(&Variety::TripleP1)?;
    let found = search(&entry, bound, defect, sort_canonical)?;
    let family = (defect == 0).then(|| Family {
        member: |a, _| sort_canonical(&[-a, 1, a + 2]),
        quantum: |a, _| (a * (a + 2)) as u64,
        description: "O(-a, 1, a+2) for a >= 1, up to permutation".into(),
    });
    Ok(compare("p1xp1xp1", defect, bound, found, family, vec![]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicLineDecision {
    pub n: u32,
    pub u: i64,
    pub v: i64,
    pub defect: u8,
    /// 1: Pⁿ with O(1) and L = O; 2: P³ with O(2) and L = O(1); 3: quadric with L = O.
    pub assertion: Option<u8>,
    /// L = O(wH) when an assertion holds.
    pub witness_w: Option<i64>,
    pub reason: String,
}

fn cyclic_valid(n: u32, u: i64, v: i64) -> Result<(), String> {
    if n < 2 {
        return Err("needs n >= 2".into());
    }
    if u < 1 {
        return Err("h = uH needs u >= 1".into());
    }
    if v < -(n as i64) - 1 {
        return Err("K = vH needs v >= -n-1".into());
    }
    if n == 2 && v == -2 {
        return Err("a surface with K = -2H is a quadric surface, which is not cyclic".into());
    }
    Ok(())
}

pub fn classify_cyclic_lines(n: u32, u: i64, v: i64, defect: u8) -> CyclicLineDecision {
    let mut out = CyclicLineDecision { n, u, v, defect, assertion: None, witness_w: None, reason: String::new() };
    if let Err(e) = cyclic_valid(n, u, v) {
        out.reason = e;
        return out;
    }
    let n64 = n as i64;
    let x = u * (n64 + 1 - defect as i64) + v;
    if x % 2 != 0 {
        out.reason = format!("u(n+1-δ)+v = {x} is odd, so L² = O((n+1-δ)h+K) has no square root");
        return out;
    }
    let w = x / 2;
    if w > u - 1 {
        out.reason = format!("L = O({w}H) has sections after twisting by -h = -{u}H");
        return out;
    }
    out.assertion = match (v == -n64 - 1, v == -n64 && n >= 3, defect) {
        (true, _, 0) if u == 1 && w == 0 => Some(1),
        (true, _, 1) if n == 3 && u == 2 && w == 1 => Some(2),
        (_, true, 1) if u == 1 && w == 0 => Some(3),
        _ => None,
    };
    match out.assertion {
        Some(_) => {
            out.witness_w = Some(w);
            out.reason = format!("L = O({w}H) satisfies parity and u(n-1-δ)+v <= -2");
        }
        None => out.reason = "no catalog variety realizes these numbers".into(),
    }
    out
}

/// Compares the decision with the checker on Pⁿ and quadrics; returns disagreements.
pub fn cross_validate_cyclic(n_max: u32, u_max: i64) -> Result<Vec<String>, ClassifyError> {
    let mut bad = Vec::new();
    for n in 2..=n_max {
        let mut kinds = vec![(Variety::ProjectiveSpace { n }, -(n as i64) - 1)];
        if n >= 3 {
            kinds.push((Variety::Quadric { n }, -(n as i64)));
        }
        for (var, v) in kinds {
            let entry = VarietyEntry::new(&var)?;
            for u in 1..=u_max {
                for w in -3 * u - n as i64..=3 * u + n as i64 {
                    let table = build_table(
                        &entry,
                        &BundleFamily::line(LineBundle::new(&[w])).with_polarization(&[u]),
                        Window::new(-(n as i64) - 1, 0),
                    )?;
                    let verdict = check_instanton(&table)?;
                    for defect in 0..=1u8 {
                        let d = classify_cyclic_lines(n, u, v, defect);
                        let predicted = d.witness_w == Some(w);
                        let actual = verdict.quantum(defect).is_some();
                        if predicted != actual {
                            bad.push(format!("{var} u={u} O({w}) δ={defect}: decision {predicted}, checker {actual}"));
                        }
                    }
                }
            }
        }
    }
    Ok(bad)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Stable,
    Semistable,
    StrictlySemistablePossible,
    UnstablePossible,
    Unstable,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: Stability,
    pub rule: String,
    pub semistable: Option<bool>,
    pub stable: Option<bool>,
}

/// Rank-two criterion on a cyclic variety, with c1 = εH.
pub fn hoppe_rank2_eps(epsilon: i64, h0_norm: u64, h0_norm_minus: u64) -> StabilityVerdict {
    let v = |status, rule: &str, ss, st| StabilityVerdict { status, rule: rule.into(), semistable: Some(ss), stable: Some(st) };
    if h0_norm == 0 {
        v(Stability::Stable, "rank 2 and h0(E_norm) = 0", true, true)
    } else if h0_norm_minus != 0 {
        v(Stability::Unstable, "semistable bundles have h0(E_norm(-H)) = 0", false, false)
    } else if epsilon % 2 == 0 {
        v(Stability::Semistable, "ε even and h0(E_norm(-H)) = 0; not stable since h0(E_norm) != 0", true, false)
    } else {
        v(Stability::Unstable, "ε odd: stable iff semistable, and h0(E_norm) != 0 rules out stability", false, false)
    }
}

pub fn hoppe_rank2(
    entry: &VarietyEntry,
    c: &ChernData,
    h0_norm: u64,
    h0_norm_minus: u64,
) -> Result<StabilityVerdict, ClassifyError> {
    if entry.variety.picard_rank() != 1 || matches!(entry.variety, Variety::Curve { .. }) {
        return Err(ClassifyError::Invalid(format!("{} is not a cyclic variety of dimension >= 2", entry.variety)));
    }
    if c.rank != 2 {
        return Err(ClassifyError::Invalid("needs rank 2".into()));
    }
    let n = entry.dim();
    let gen = entry.ring.gen(0);
    let num = (&c.c1 * &gen.pow(n - 1)).integrate();
    let den = gen.pow(n).integrate();
    if (&num % &den) != BigInt::zero() {
        return Err(ClassifyError::Invalid("c1 is not a multiple of H".into()));
    }
    Ok(hoppe_rank2_eps(big_i64(num / den), h0_norm, h0_norm_minus))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicStabilityReport {
    pub n: u32,
    pub u: i64,
    pub v: i64,
    pub defect: u8,
    pub epsilon: i64,
    pub t_norm: i64,
    pub semistable_guaranteed: bool,
    pub stable_guaranteed: bool,
    /// Labels 1a, 1b (semistability) and 2a, 2b, 2c (stability), or "unlisted".
    pub exceptions: Vec<String>,
    pub status: Stability,
}

pub fn cyclic_rank2_stability_cases(n: u32, u: i64, v: i64, defect: u8) -> Result<CyclicStabilityReport, ClassifyError> {
    cyclic_valid(n, u, v).map_err(ClassifyError::Invalid)?;
    let n64 = n as i64;
    let epsilon = u * (n64 + 1 - defect as i64) + v;
    let t_norm = (-epsilon).div_euclid(2);
    // h0(E(tH)) = 0 for t <= -u since h0(E(-h)) = 0
    let semistable_guaranteed = if epsilon % 2 == 0 { t_norm - 1 <= -u } else { t_norm <= -u };
    let stable_guaranteed = t_norm <= -u;
    let pn = v == -n64 - 1;
    let quadric = v == -n64 && n >= 3;
    let mut exceptions = Vec::new();
    if !semistable_guaranteed {
        if pn && u == 1 && defect == 1 {
            exceptions.push("1a".to_string());
        }
        if pn && n == 2 && defect == 1 {
            exceptions.push("1b".to_string());
        }
    } else if !stable_guaranteed {
        if pn && u == 1 && defect == 0 {
            exceptions.push("2a".to_string());
        }
        if pn && n == 3 && u == 2 && defect == 1 {
            exceptions.push("2b".to_string());
        }
        if quadric && u == 1 && defect == 1 {
            exceptions.push("2c".to_string());
        }
    }
    if (!semistable_guaranteed || !stable_guaranteed) && exceptions.is_empty() {
        exceptions.push("unlisted".to_string());
    }
    let status = if !semistable_guaranteed {
        Stability::UnstablePossible
    } else if !stable_guaranteed {
        Stability::StrictlySemistablePossible
    } else {
        Stability::Stable
    };
    Ok(CyclicStabilityReport { n, u, v, defect, epsilon, t_norm, semistable_guaranteed, stable_guaranteed, exceptions, status })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoBridge {
    pub index: u32,
    pub defect: u8,
    pub epsilon: u8,
    pub q_x_eps: i64,
    /// Twist taking E to its normalization.
    pub t_norm: i64,
    /// c1(E_norm) = −ε′h.
    pub norm_epsilon: i64,
    pub instanton_to_classical: String,
    pub instanton_to_classical_extra: Option<String>,
    pub classical_to_instanton: String,
    pub classical_to_instanton_extra: Option<String>,
}

pub fn fano_instanton_bridge(index: u32, defect: u8, epsilon: u8) -> Result<FanoBridge, ClassifyError> {
    if !(1..=4).contains(&index) || defect > 1 || epsilon > 1 {
        return Err(ClassifyError::Invalid("needs 1 <= i <= 4 and δ, ε in {0, 1}".into()));
    }
    let i = index as i64;
    let q = |e: i64| (i + 1 - e).div_euclid(2);
    let q_other = q(1 - defect as i64);
    let special = matches!((index, defect), (4, 0) | (4, 1) | (3, 1));
    let low = (index, defect) == (1, 0);
    Ok(FanoBridge {
        index,
        defect,
        epsilon,
        q_x_eps: q(epsilon as i64),
        t_norm: q_other - 2,
        norm_epsilon: i + defect as i64 - 2 * q_other,
        instanton_to_classical: if special { "1b" } else { "1a" }.into(),
        instanton_to_classical_extra: special.then(|| "h^0(E) = 0".to_string()),
        classical_to_instanton: if low { "2b" } else { "2a" }.into(),
        classical_to_instanton_extra: low.then(|| "h^0(E_norm(h)) = 0".to_string()),
    })
}

pub fn curve_quantum(rank: u64, degree: u64, defect: u8) -> Result<u64, ClassifyError> {
    let x = defect as u64 * rank * degree;
    if x % 2 == 1 {
        return Err(ClassifyError::Invalid("defect 1 on a curve needs rk·deg even".into()));
    }
    Ok(x / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEntry {
    pub sheaf: String,
    pub i: u32,
    pub value: i64,
    /// Independent check from the engines, when one is available.
    pub engine_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollReport {
    pub variety: String,
    pub k: u64,
    pub chern: ChernData,
    pub c2_h: i64,
    /// −χ(E(−h)) from the two sequences.
    pub quantum: i64,
    pub quantum_certified: bool,
    pub decomposable: bool,
    pub split_summands: Option<[Vec<i64>; 2]>,
    /// h¹(E⊗E^∨) for the indecomposable bundles with k ≥ 1.
    pub h1_end_ext: i64,
    /// h¹(E⊗E^∨) for non-split extensions of O((g+θ)f) by O(h+θf).
    pub h1_end_ext0: i64,
    pub chi_end: Option<i64>,
    /// h⁰ − χ of E⊗E^∨ for the bundle of the construction (h⁰ = 1 when k ≥ 1, 2 when split).
    pub h1_end_hrr: Option<i64>,
    /// 1 − χ(E⊗E^∨) at k = 0, for the simple non-split extensions.
    pub h1_end_ext0_hrr: Option<i64>,
    pub chain: Vec<DimEntry>,
}

pub fn scroll_construction_report(variety: &Variety, k: u64) -> Result<ScrollReport, ClassifyError> {
    if !matches!(variety, Variety::ScrollP1 { .. } | Variety::ScrollGeneric { .. }) {
        return Err(ClassifyError::Invalid(format!("{variety} is not a scroll")));
    }
    let entry = VarietyEntry::new(variety)?;
    let n = entry.dim() as i64;
    if n < 3 {
        return Err(ClassifyError::Invalid("needs n >= 3".into()));
    }
    let (d, g) = entry.scroll_data();
    let ki = k as i64;
    let r = &entry.ring;
    let (h, f) = (r.gen(0), r.gen(1));
    let sub = [0, d + g - 1];
    let quot = [1, g - 1];
    let det = r.linear(&[1, d + 2 * g - 2]);
    let z = (&h * &f).scale(ki);
    let chern = serre_construction_chern(&entry, &r.linear(&sub), &det, &z)?;
    let c2 = chern.c2.clone().expect("serre construction sets c2");
    let c2_h = big_i64((&c2 * &h.pow(n as u32 - 2)).integrate());
    let lchi = |c: &[i64]| entry.line_chi(&LineBundle::new(c));
    // E(−h): O(−h + (g+θ)f) and I_Z(θf); O_Z ⊗ O(θf) ≅ O_Z, each component a P^{n−2}
    let chi_e = lchi(&[-1, d + g - 1])? + lchi(&[0, g - 1])? - BigInt::from(ki);
    let quantum = big_i64(-chi_e);
    let (chi_end, h1_end_hrr, h1_end_ext0_hrr) = if n == 3 {
        let end = |c: &ChernData| -> Result<i64, ClassifyError> { Ok(big_i64(chi(&entry, &c.endomorphisms_rank2())?)) };
        let x = end(&chern)?;
        let split = ChernData::new(2, det.clone(), Some(&r.linear(&sub) * &r.linear(&quot)), None);
        let x0 = end(&split)?;
        (Some(x), Some(if k >= 1 { 1 - x } else { 2 - x }), Some(1 - x0))
    } else {
        (None, None, None)
    };
    let ext_base = (n - 1) * d + (n + 1) * (g - 1);
    let mut chain = vec![];
    if k >= 1 {
        chain.push(DimEntry { sheaf: "E(-h-θf)".into(), i: 1, value: ki - 1, engine_agrees: None });
    }
    let xhg = (n - 1) * d + n * (g - 1);
    let xhg_engine = match variety {
        Variety::ScrollP1 { .. } => entry.line_cohomology(&LineBundle::new(&[1, -d]))?.h(1) as i64,
        _ => big_i64(-lchi(&[1, -d])?),
    };
    chain.push(DimEntry { sheaf: "O(h-gf)".into(), i: 1, value: xhg, engine_agrees: Some(xhg == xhg_engine) });
    chain.push(DimEntry { sheaf: "O_Z(h-gf)".into(), i: 0, value: (n - 1) * ki, engine_agrees: None });
    let izhg = n * (g - 1) + (n - 1) * (d + ki);
    chain.push(DimEntry { sheaf: "I_Z(h-gf)".into(), i: 1, value: izhg, engine_agrees: None });
    // χ(E(−(g+θ)f)) = χ(O) + χ(O(h − gf)) − χ(O_Z(h − gf))
    let chi_egg = lchi(&[0, 0])? + lchi(&[1, -d])? - BigInt::from((n - 1) * ki);
    let egg1 = izhg + g;
    chain.push(DimEntry { sheaf: "E(-(g+θ)f)".into(), i: 0, value: 1, engine_agrees: None });
    chain.push(DimEntry {
        sheaf: "E(-(g+θ)f)".into(),
        i: 1,
        value: egg1,
        engine_agrees: Some(big_i64(chi_egg) == 1 - egg1),
    });
    chain.push(DimEntry {
        sheaf: "I_Z⊗E(-(g+θ)f), h1 - h0".into(),
        i: 1,
        value: ext_base + (2 * n - 1) * ki,
        engine_agrees: None,
    });
    Ok(ScrollReport {
        variety: variety.to_string(),
        k,
        chern,
        c2_h,
        quantum,
        quantum_certified: quantum == ki,
        decomposable: k == 0,
        split_summands: (k == 0).then(|| [sub.to_vec(), quot.to_vec()]),
        h1_end_ext: ext_base + 2 * n * ki,
        h1_end_ext0: ext_base + g,
        chi_end,
        h1_end_hrr,
        h1_end_ext0_hrr,
        chain,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceInvariants {
    /// deg D, χ(O_X), h², K·h.
    Mukai { deg_d: i64, chi_o: i64, h2: i64, kh: i64, defect: u8 },
    /// z, q(X) = h¹(O_X), h¹(O_X(h)), N with h⁰(O_X(h)) = N + 1.
    Genus0 { z: i64, defect: u8, irregularity: i64, h1_oh: i64, n: i64 },
}

pub fn surface_quantum(inv: SurfaceInvariants) -> Result<i64, ClassifyError> {
    let q = match inv {
        SurfaceInvariants::Mukai { deg_d, chi_o, h2, kh, defect } => {
            let d = defect as i64;
            let twice = (d * d - 4 * d + 5) * h2 + (3 - d) * kh;
            if twice % 2 != 0 {
                return Err(ClassifyError::Invalid("half-integral quantum number".into()));
            }
            deg_d - 2 * chi_o - twice / 2
        }
        SurfaceInvariants::Genus0 { z, defect, irregularity, h1_oh, n } => {
            let d = defect as i64;
            z + (1 + d) * (irregularity - 1) + (1 - d) * (h1_oh - n - 1)
        }
    };
    if q < 0 {
        return Err(ClassifyError::Invalid(format!("quantum number {q} < 0: infeasible invariants")));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFanoReport {
    pub genus: u32,
    pub k: u64,
    pub chern: ChernData,
    pub c2_h: i64,
    pub quantum: u64,
    pub chi_e_minus_h: i64,
    pub h1_end: i64,
    pub h1_end_hrr: i64,
}

pub fn prime_fano_family(genus: u32, k: u64) -> Result<PrimeFanoReport, ClassifyError> {
    if genus < 3 {
        return Err(ClassifyError::Invalid("needs g >= 3".into()));
    }
    let g = genus as i64;
    let entry = VarietyEntry::new(&Variety::FanoThreefold { index: 1, degree: 2 * g - 2 })?;
    let r = &entry.ring;
    let c2h = 5 * g - 1 + k as i64;
    let chern = ChernData::new(2, r.gen(0).scale(3), Some(r.gen(1).scale(c2h)), None);
    let chi_e = big_i64(chi(&entry, &chern.twist(&entry.h().scale(-1)))?);
    let chi_end = big_i64(chi(&entry, &chern.endomorphisms_rank2())?);
    Ok(PrimeFanoReport {
        genus,
        k,
        c2_h: big_i64((chern.c2.as_ref().unwrap() * &entry.h()).integrate()),
        chern,
        quantum: k,
        chi_e_minus_h: chi_e,
        h1_end: 4 + g + 2 * k as i64,
        h1_end_hrr: 1 - chi_end,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreStableReport {
    pub s: u64,
    pub chern: ChernData,
    /// −χ(E(−h)) from the defining sequence and the ideal sequence of Z.
    pub oracle_quantum: i64,
    /// −χ(E(−h)) from Riemann–Roch on the Chern data.
    pub hrr_quantum: i64,
    pub paper_claim: i64,
    /// Upper bounds for h⁰, h², h³ of E(−h).
    pub vanishing_bounds: [u64; 3],
    pub consistent: bool,
    pub split_obstruction_h1: u64,
}

/// The rank-two bundle 0 → O(h1+3h3) → E → I_Z(h1+2h2−h3) → 0 on P¹×P¹×P¹,
/// Z a union of s disjoint lines of class h2·h3.
pub fn segre_stable_example(s: u64) -> Result<SegreStableReport, ClassifyError> {
    let entry = VarietyEntry::new(&Variety::TripleP1)?;
    let r = &entry.ring;
    let z: ChowClass = (&r.gen(1) * &r.gen(2)).scale(s as i64);
    let chern = serre_construction_chern(&entry, &r.linear(&[1, 0, 3]), &r.linear(&[2, 2, 2]), &z)?;
    let a = coh_product(&[(1, 0), (1, -1), (1, 2)]);
    let b = coh_product(&[(1, 0), (1, 1), (1, -2)]);
    // O_Z ⊗ O(0,1,−2) restricts to degree 0 on each line: h⁰ = 1, h¹ = 0
    let (oz0, oz1) = (s, 0u64);
    let oracle = -(a.chi() + b.chi() - BigInt::from(oz0));
    let hrr = -chi(&entry, &chern.twist(&entry.h().scale(-1)))?;
    // h⁰(I_Z(L)) ≤ h⁰(L), h²(I_Z(L)) ≤ h¹(O_Z(L)) + h²(L), h³(I_Z(L)) = h³(L)
    let bounds = [a.h(0) + b.h(0), a.h(2) + oz1 + b.h(2), a.h(3) + b.h(3)];
    let oracle = big_i64(oracle);
    Ok(SegreStableReport {
        s,
        chern,
        oracle_quantum: oracle,
        hrr_quantum: big_i64(hrr),
        paper_claim: s as i64 - 2,
        vanishing_bounds: bounds,
        consistent: bounds == [0, 0, 0] && oracle >= 0,
        split_obstruction_h1: coh_product(&[(1, 0), (1, -2), (1, 4)]).h(1),
    })
}

/// h⁰ of O(a) on P¹, used by callers that enumerate Künneth factors.
pub fn p1_sections(a: i64) -> BigInt {
    choose(a + 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_family_small_box() {
        let r = classify_flag_lines(5, 0).unwrap();
        let e = r.found.iter().find(|e| e.coords == vec![-1, 3]).unwrap();
        assert_eq!(e.quantum, 3);
        let r = classify_flag_lines(5, 1).unwrap();
        let e = r.found.iter().find(|e| e.coords == vec![-1, 2]).unwrap();
        assert_eq!(e.quantum, 1);
    }

    #[test]
    fn segre_defect_one_empty() {
        let r = classify_segre_lines(4, 1).unwrap();
        assert!(r.found.is_empty());
        assert_eq!(r.agreement, Agreement::Exact);
        let r = classify_segre_lines(4, 0).unwrap();
        assert!(r.found.iter().any(|e| e.coords == vec![-1, 1, 3] && e.quantum == 3));
    }

    #[test]
    fn cyclic_witnesses() {
        for n in 2..6 {
            assert_eq!(classify_cyclic_lines(n, 1, -(n as i64) - 1, 0).assertion, Some(1));
        }
        assert_eq!(classify_cyclic_lines(3, 2, -4, 1).assertion, Some(2));
        assert_eq!(classify_cyclic_lines(3, 1, -3, 1).assertion, Some(3));
        assert_eq!(classify_cyclic_lines(2, 1, -2, 1).assertion, None);
        assert_eq!(cross_validate_cyclic(3, 3).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn hoppe_cases() {
        assert_eq!(hoppe_rank2_eps(0, 0, 0).status, Stability::Stable);
        assert_eq!(hoppe_rank2_eps(1, 1, 0).status, Stability::Unstable);
        assert_eq!(hoppe_rank2_eps(2, 3, 0).semistable, Some(true));
        let p3 = VarietyEntry::parse("p3").unwrap();
        let c = ChernData::of_line_sum(&p3, &[LineBundle::new(&[0]), LineBundle::new(&[0])]);
        assert_eq!(hoppe_rank2(&p3, &c, 2, 0).unwrap().status, Stability::Semistable);
    }

    #[test]
    fn cyclic_stability_exceptions() {
        for n in 2..=6u32 {
            let pn = -(n as i64) - 1;
            let has = |u, v, d, l: &str| cyclic_rank2_stability_cases(n, u, v, d).unwrap().exceptions.contains(&l.to_string());
            assert!(has(1, pn, 1, "1a"));
            assert!(has(1, pn, 0, "2a"));
            if n >= 3 {
                assert!(has(1, -(n as i64), 1, "2c"));
            }
        }
        assert!(cyclic_rank2_stability_cases(2, 3, -3, 1).unwrap().exceptions.contains(&"1b".to_string()));
        assert!(cyclic_rank2_stability_cases(3, 2, -4, 1).unwrap().exceptions.contains(&"2b".to_string()));
        for n in 2..=6u32 {
            for u in 1..=4 {
                for v in -(n as i64) - 1..=2 {
                    for d in 0..=1 {
                        if let Ok(r) = cyclic_rank2_stability_cases(n, u, v, d) {
                            assert!(!r.exceptions.contains(&"unlisted".to_string()), "{r:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fano_bridge() {
        assert_eq!(fano_instanton_bridge(1, 0, 1).unwrap().q_x_eps, 0);
        assert_eq!(fano_instanton_bridge(4, 0, 0).unwrap().q_x_eps, 2);
        let b = fano_instanton_bridge(1, 0, 0).unwrap();
        assert_eq!(b.classical_to_instanton, "2b");
        assert_eq!(b.t_norm, -2);
        assert!(fano_instanton_bridge(5, 0, 0).is_err());
    }

    #[test]
    fn curves() {
        assert_eq!(curve_quantum(2, 4, 1).unwrap(), 4);
        assert_eq!(curve_quantum(3, 5, 0).unwrap(), 0);
        assert!(curve_quantum(1, 3, 1).is_err());
    }

    #[test]
    fn scroll_reports() {
        let v = Variety::ScrollP1 { degrees: vec![1, 1, 1] };
        let r = scroll_construction_report(&v, 1).unwrap();
        assert_eq!((r.quantum, r.h1_end_ext, r.h1_end_hrr), (1, 8, Some(8)));
        assert!(r.chain.iter().all(|c| c.engine_agrees != Some(false)));
        let r = scroll_construction_report(&v, 0).unwrap();
        assert!(r.decomposable && r.quantum_certified);
        assert_eq!(r.h1_end_ext0, 2);
        for k in 0..4 {
            let g = Variety::ScrollGeneric { n: 3, genus: 2, deg_g: 5 };
            let r = scroll_construction_report(&g, k).unwrap();
            assert!(r.quantum_certified);
            assert_eq!(r.c2_h, 5 + 2 - 1 + k as i64);
            if k >= 1 {
                assert_eq!(r.h1_end_hrr, Some(r.h1_end_ext + 2));
            }
            assert_eq!(r.h1_end_ext0_hrr, Some(r.h1_end_ext0));
            assert!(r.chain.iter().all(|c| c.engine_agrees != Some(false)));
        }
    }

    #[test]
    fn surfaces() {
        let m = |deg_d, h2| SurfaceInvariants::Mukai { deg_d, chi_o: 2, h2, kh: 0, defect: 0 };
        assert_eq!(surface_quantum(m(20, 4)).unwrap(), 20 - 4 - 10);
        assert!(surface_quantum(m(20, 3)).is_err());
        let g = |defect, z| SurfaceInvariants::Genus0 { z, defect, irregularity: 1, h1_oh: 0, n: 5 };
        assert_eq!(surface_quantum(g(1, 4)).unwrap(), 4);
        let bad = SurfaceInvariants::Genus0 { z: 6, defect: 0, irregularity: 0, h1_oh: 0, n: 5 };
        assert!(surface_quantum(bad).is_err());
    }

    #[test]
    fn prime_fano() {
        let r = prime_fano_family(3, 0).unwrap();
        assert_eq!((r.h1_end, r.c2_h, r.h1_end_hrr), (7, 14, 7));
        for g in 3..12 {
            for k in 0..5 {
                let r = prime_fano_family(g, k).unwrap();
                assert_eq!(r.chi_e_minus_h, -(k as i64));
                assert_eq!(r.h1_end_hrr, r.h1_end);
                let next = prime_fano_family(g, k + 1).unwrap();
                assert_eq!((next.h1_end - r.h1_end, next.c2_h - r.c2_h), (2, 1));
            }
        }
    }

    #[test]
    fn segre_stable() {
        for s in 0..6 {
            let r = segre_stable_example(s).unwrap();
            assert_eq!(r.chern.c1, VarietyEntry::parse("p1xp1xp1").unwrap().h().scale(2));
            assert_eq!(r.oracle_quantum, r.hrr_quantum);
            assert!(r.consistent);
        }
        assert_eq!(segre_stable_example(0).unwrap().split_obstruction_h1, 5);
    }
}
