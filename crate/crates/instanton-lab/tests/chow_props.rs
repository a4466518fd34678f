mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use instanton_lab::chow::{ChowRing, Mono};
use instanton_lab::{preset_ring, ChowClass, Variety};
use num_bigint::BigInt;
use proptest::prelude::*;

const RINGS: &[&str] =
    &["p3", "q4", "flag3", "p1xp1xp1", "scroll-p1:1,1,2", "scroll:3,2,5", "fano:1,4", "fano:2,5", "curve:2,3"];

fn ring(s: &str) -> Arc<ChowRing> {
    preset_ring(&s.parse::<Variety>().unwrap()).unwrap()
}

fn monomial(r: &Arc<ChowRing>, m: &Mono) -> ChowClass {
    ChowClass::from_terms(r, BTreeMap::from([(m.clone(), BigInt::from(1))]))
}

#[test]
fn multiplication_commutes_and_associates() {
    for name in RINGS {
        let r = ring(name);
        let ms: Vec<ChowClass> = r.monomials_up_to(r.top).iter().map(|m| monomial(&r, m)).collect();
        for a in &ms {
            for b in &ms {
                assert_eq!(a * b, b * a, "{name}");
                assert_eq!((a * b).integrate(), (b * a).integrate());
                for c in ms.iter().take(12) {
                    assert_eq!(&(a * b) * c, a * &(b * c), "{name}");
                }
            }
        }
    }
}

#[test]
fn rewrite_order_does_not_matter() {
    for name in RINGS {
        let r = ring(name);
        for m in r.monomials_up_to(r.top + 1) {
            let first = r.normalize_with(&m, &|_| 0);
            let last = r.normalize_with(&m, &|rules| rules.len() - 1);
            assert_eq!(first, last, "{name} {m:?}");
        }
    }
}

#[test]
fn flag_intersection_numbers() {
    let r = ring("flag3");
    let (h1, h2) = (r.gen(0), r.gen(1));
    assert_eq!((&(&h1 * &h1) * &h2).integrate(), BigInt::from(1));
    assert_eq!((&(&h1 * &h2) * &h2).integrate(), BigInt::from(1));
    assert_eq!(h1.pow(3).integrate(), BigInt::from(0));
    assert_eq!(h2.pow(3).integrate(), BigInt::from(0));
}

fn linear(r: &Arc<ChowRing>, coeffs: &[i64]) -> ChowClass {
    r.linear(&coeffs[..r.names.len()])
}

proptest! {
    #[test]
    fn pairing_is_symmetric(which in 0..RINGS.len(), a in prop::collection::vec(-5i64..=5, 3), b in prop::collection::vec(-5i64..=5, 3), k in 0u32..3) {
        let r = ring(RINGS[which]);
        let x = linear(&r, &a).pow(k.min(r.top));
        let y = linear(&r, &b).pow(r.top - k.min(r.top));
        prop_assert_eq!((&x * &y).integrate(), (&y * &x).integrate());
    }

    #[test]
    fn distributive(which in 0..RINGS.len(), a in prop::collection::vec(-4i64..=4, 3), b in prop::collection::vec(-4i64..=4, 3), c in prop::collection::vec(-4i64..=4, 3)) {
        let r = ring(RINGS[which]);
        let (x, y, z) = (linear(&r, &a), linear(&r, &b), linear(&r, &c));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }
}
