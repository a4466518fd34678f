mod common;

use common::{catalog_instantons, entry};
use instanton_lab::instanton::{
    check_instanton, chi_polynomial, direct_sum, pushforward_model, rank_from_chi, ulrich_dual_table,
};
use instanton_lab::{CohomologyTable, InstantonVerdict, LineBundle};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn quantum_is_minus_chi_at_minus_h() {
    let found = catalog_instantons(4);
    assert!(found.len() > 20);
    for (v, l, t, verdict) in &found {
        for a in &verdict.admissible {
            assert_eq!(-t.row(-1).unwrap().chi(), BigInt::from(a.quantum), "{v} {:?}", l.coords);
        }
    }
}

#[test]
fn pushforward_rank_is_integral_and_right() {
    for (v, l, t, verdict) in catalog_instantons(4) {
        let e = entry(&v);
        for a in &verdict.admissible {
            let r = rank_from_chi(e.dim(), a.defect, &BigInt::from(a.quantum), &t.row(0).unwrap().chi());
            assert!(r.is_integer(), "{v} {:?}", l.coords);
            assert_eq!(r.to_integer(), e.hn(), "{v} {:?}", l.coords);
        }
    }
}

#[test]
fn transforms_preserve_verdicts() {
    for (v, l, t, verdict) in catalog_instantons(4) {
        let e = entry(&v);
        let pushed = check_instanton(&pushforward_model(&t, e.hn().try_into().unwrap())).unwrap();
        assert_eq!(pushed.admissible, verdict.admissible, "{v} {:?}", l.coords);
        for a in &verdict.admissible {
            let dual = ulrich_dual_table(&t, Some(&e), a.defect).unwrap();
            let dv = check_instanton(&dual).unwrap();
            assert_eq!(dv.quantum(a.defect), Some(a.quantum), "{v} {:?} δ={}", l.coords, a.defect);
            let back = ulrich_dual_table(&dual, Some(&e), a.defect).unwrap();
            for r in &t.rows {
                assert_eq!(back.row(r.t), Some(&r.h), "{v} {:?} t={}", l.coords, r.t);
            }
            assert_eq!(back.chern, t.chern);
        }
    }
}

#[test]
fn direct_sums_add_quanta() {
    let found = catalog_instantons(3);
    for (v1, _, t1, x) in &found {
        for (v2, _, t2, y) in &found {
            if v1 != v2 {
                continue;
            }
            let s = check_instanton(&direct_sum(t1, t2).unwrap()).unwrap();
            for d in 0..=1 {
                if let (Some(p), Some(q)) = (x.quantum(d), y.quantum(d)) {
                    assert_eq!(s.quantum(d), Some(p + q), "{v1}");
                }
            }
        }
    }
}

#[test]
fn defect_one_polynomial_symmetry() {
    for n in 1..=6u32 {
        for q in 0..=6 {
            for chi0 in -5..=8 {
                let (q, c) = (BigInt::from(q), BigInt::from(chi0));
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let p0 = chi_polynomial(n, 1, &q, &c, 0);
                assert_eq!(p0, c);
                if n >= 2 {
                    assert_eq!(p0, chi_polynomial(n, 1, &q, &c, -(n as i64)) * sign, "n={n}");
                }
            }
        }
    }
}

const VARIETIES: &[&str] = &["p2", "p3", "q3", "flag3", "p1xp1xp1", "scroll-p1:1,1,2"];

proptest! {
    #[test]
    fn table_and_verdict_json_round_trip(which in 0..VARIETIES.len(), c in prop::collection::vec(-5i64..=5, 3), extra in 0i64..=2) {
        let e = entry(VARIETIES[which]);
        let l = LineBundle::new(&c[..e.variety.picard_rank()]);
        let n = e.dim() as i64;
        let t = common::table(&e, &l, -n - 1, extra);
        let back: CohomologyTable = serde_json::from_str(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        let v = check_instanton(&t).unwrap();
        let vb: InstantonVerdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        prop_assert_eq!(vb, v);
    }

    #[test]
    fn verdict_is_twist_sensitive_only_through_rows(which in 0..VARIETIES.len(), c in prop::collection::vec(-5i64..=5, 3)) {
        let e = entry(VARIETIES[which]);
        let l = LineBundle::new(&c[..e.variety.picard_rank()]);
        let (t, v) = common::verdict(&e, &l);
        let mut stripped = t.clone();
        stripped.chern = None;
        stripped.variety = "anonymous".into();
        prop_assert_eq!(check_instanton(&stripped).unwrap(), v);
    }
}
