#![allow(dead_code)]

use instanton_lab::cohomology::{build_table, BundleFamily, LineBundle, VarietyEntry, Window};
use instanton_lab::instanton::check_instanton;
use instanton_lab::{CohomologyTable, InstantonVerdict};

/// Catalog entries with an exact cohomology engine.
pub const ENGINE_VARIETIES: &[&str] = &[
    "p1", "p2", "p3", "p4", "q2", "q3", "q4", "q5", "flag3", "p1xp1xp1", "scroll-p1:1,2", "scroll-p1:1,1,1",
    "scroll-p1:1,1,2", "curve:0,1",
];

pub fn entry(s: &str) -> VarietyEntry {
    VarietyEntry::parse(s).unwrap()
}

/// Every coordinate tuple of length `k` with entries in [−b, b].
pub fn boxed(k: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out.into_iter().flat_map(|p| (-b..=b).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Exponent box for an entry; smaller on varieties with more coordinates.
pub fn lines(e: &VarietyEntry, b: i64) -> Vec<LineBundle> {
    boxed(e.variety.picard_rank(), b).iter().map(|c| LineBundle::new(c)).collect()
}

pub fn table(e: &VarietyEntry, l: &LineBundle, tmin: i64, tmax: i64) -> CohomologyTable {
    build_table(e, &BundleFamily::line(l.clone()), Window::new(tmin, tmax)).unwrap()
}

pub fn verdict(e: &VarietyEntry, l: &LineBundle) -> (CohomologyTable, InstantonVerdict) {
    let n = e.dim() as i64;
    let t = table(e, l, -n - 1, 2);
    let v = check_instanton(&t).unwrap();
    (t, v)
}

/// Line-bundle instantons of the catalog in a box, with their tables on [−n−1, 2].
pub fn catalog_instantons(b: i64) -> Vec<(String, LineBundle, CohomologyTable, InstantonVerdict)> {
    let mut out = vec![];
    for v in ENGINE_VARIETIES {
        let e = entry(v);
        let bb = if e.variety.picard_rank() == 3 { b.min(4) } else { b };
        for l in lines(&e, bb) {
            let (t, verdict) = verdict(&e, &l);
            if verdict.is_instanton() {
                out.push((v.to_string(), l, t, verdict));
            }
        }
    }
    out
}
