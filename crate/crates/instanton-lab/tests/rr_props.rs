mod common;

use common::{entry, lines, ENGINE_VARIETIES};
use instanton_lab::rr::{
    chern_closed_form_pn, chern_poly_instanton_pn, chi, normalization_twist, slope_condition, ulrich_dual_c1,
    ChernData,
};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn riemann_roch_matches_engines() {
    for v in ENGINE_VARIETIES {
        let e = entry(v);
        if e.dim() > 3 {
            continue;
        }
        let b = if e.variety.picard_rank() == 3 { 2 } else { 3 };
        for l in lines(&e, b) {
            for t in -6..=6 {
                let lt = l.plus(&e.polarization, t);
                let rr = chi(&e, &ChernData::of_line_sum(&e, std::slice::from_ref(&lt))).unwrap();
                assert_eq!(rr, e.line_cohomology(&lt).unwrap().chi(), "{v} {:?}", lt.coords);
            }
        }
    }
}

#[test]
fn ordinary_chern_polynomial_is_even() {
    for n in 2..=6 {
        for r in 1..=6 {
            for q in 0..=5 {
                let c = chern_poly_instanton_pn(n, r, 0, q).unwrap();
                for (i, x) in c.iter().enumerate() {
                    if i % 2 == 0 {
                        assert_eq!(*x, BigInt::from(0), "c{} for n={n} r={r} q={q}", i + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn chern_polynomial_matches_closed_form() {
    for n in 2..=5 {
        for r in [2, 4, 6] {
            for d in 0..=1 {
                for q in 0..=4 {
                    let series = chern_poly_instanton_pn(n, r, d, q).unwrap();
                    let (c1, c2) = chern_closed_form_pn(n, r, d, q);
                    assert_eq!((series[0].clone(), series[1].clone()), (c1, c2), "n={n} r={r} δ={d} q={q}");
                }
            }
        }
    }
}

const THREEFOLDS: &[&str] = &["p3", "q3", "flag3", "p1xp1xp1", "scroll-p1:1,1,2", "fano:1,8", "fano:2,3"];

proptest! {
    #[test]
    fn slope_condition_survives_ulrich_duality(which in 0..THREEFOLDS.len(), rank in 1u64..6, c in prop::collection::vec(-6i64..=6, 3), d in 0u8..=1) {
        let e = entry(THREEFOLDS[which]);
        let c1 = e.ring.linear(&c[..e.variety.picard_rank()]);
        let x = ChernData::new(rank, c1, None, None);
        let y = ChernData::new(rank, &ulrich_dual_c1(&e, &x) - &e.h().scale(rank as i64 * d as i64), None, None);
        prop_assert_eq!(slope_condition(&e, &x, d), slope_condition(&e, &y, d));
    }

    #[test]
    fn normalization_twist_is_equivariant(which in 0..THREEFOLDS.len(), rank in 1u64..6, c in prop::collection::vec(-6i64..=6, 3), s in -5i64..=5) {
        let e = entry(THREEFOLDS[which]);
        let c1 = e.ring.linear(&c[..e.variety.picard_rank()]);
        let x = ChernData::new(rank, c1.clone(), None, None);
        let y = ChernData::new(rank, &c1 + &e.h().scale(rank as i64 * s), None, None);
        prop_assert_eq!(normalization_twist(&e, &y), normalization_twist(&e, &x) - s);
    }

    #[test]
    fn twisting_twice_adds(which in 0..THREEFOLDS.len(), c in prop::collection::vec(-4i64..=4, 3), s in -3i64..=3, t in -3i64..=3) {
        let e = entry(THREEFOLDS[which]);
        let k = e.variety.picard_rank();
        let a = instanton_lab::LineBundle::new(&c[..k]);
        let b = instanton_lab::LineBundle::new(&vec![0; k]);
        let x = ChernData::of_line_sum(&e, &[a, b]);
        let h = e.h();
        prop_assert_eq!(x.twist(&h.scale(s)).twist(&h.scale(t)), x.twist(&h.scale(s + t)));
    }
}
