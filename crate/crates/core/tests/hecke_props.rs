use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use hecke_core::gl_hecke::{gl_element_degree, gl_hecke_mul, GlDoubleCoset, GlHeckeElement, Locality};
use hecke_core::heis::{local_classes, HeisClass, HeisDoubleCoset, HeisLocalParams};
use hecke_core::heis_hecke::{AdelicCoset, AdelicHeckeElement, HeisHeckeElement, HeisRing, ProductMethod};
use hecke_core::Budget;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(41), failure_persistence: None, ..Config::default() }
}

fn classes(p: u64, e: u32) -> Vec<HeisLocalParams> {
    local_classes(p, e, &Budget::default()).unwrap()
}

fn global_classes() -> Vec<HeisDoubleCoset> {
    let mut ring = HeisRing::new(Budget::default());
    let mut out = Vec::new();
    for a in classes(2, 2).into_iter().chain(classes(3, 2)) {
        out.extend(ring.eta_fiber(&AdelicCoset::at(a).unwrap()).unwrap());
    }
    out.sort();
    out.dedup();
    out
}

fn combination(locality: Locality, keys: Vec<HeisClass>) -> impl Strategy<Value = HeisHeckeElement> {
    prop::collection::vec((0..keys.len(), -2i64..=2), 1..=2).prop_map(move |terms| {
        let mut x = HeisHeckeElement::zero(locality);
        for (i, n) in terms {
            x.add(keys[i], BigInt::from(n)).unwrap();
        }
        x
    })
}

fn local_element() -> impl Strategy<Value = HeisHeckeElement> {
    combination(Locality::Local { p: 2 }, classes(2, 2).into_iter().map(HeisClass::Local).collect())
}

fn global_element() -> impl Strategy<Value = HeisHeckeElement> {
    combination(Locality::Global, global_classes().into_iter().map(HeisClass::Global).collect())
}

fn sum(x: &HeisHeckeElement, y: &HeisHeckeElement) -> HeisHeckeElement {
    let mut s = x.clone();
    for (c, n) in y.terms() {
        s.add(*c, n.clone()).unwrap();
    }
    s
}

fn gl_element() -> impl Strategy<Value = GlHeckeElement> {
    let localities = vec![Locality::Local { p: 2 }, Locality::Local { p: 3 }, Locality::Global];
    (prop::sample::select(localities), prop::collection::vec((0u32..=2, 0u32..=2, 1u64..=6, -3i64..=3), 1..=2))
        .prop_map(|(loc, terms)| {
            let mut x = GlHeckeElement::zero(loc);
            for (a, b, g, n) in terms {
                let (d1, d2) = match loc {
                    Locality::Local { p } => (p.pow(a.min(1)), p.pow(a.min(1) + b)),
                    Locality::Global => (1 + (a as u64 % 2), (1 + (a as u64 % 2)) * g),
                };
                x.add(GlDoubleCoset::from_u64(d1, d2, loc).unwrap(), BigInt::from(n)).unwrap();
            }
            x
        })
}

fn adelic_element() -> impl Strategy<Value = AdelicHeckeElement> {
    let c2 = classes(2, 2);
    let c3 = classes(3, 1);
    (0..c2.len(), 0..c3.len(), -2i64..=2).prop_map(move |(i, j, n)| {
        let mut x = AdelicHeckeElement::default();
        x.add(AdelicCoset::new([c2[i], c3[j]]).unwrap(), BigInt::from(n.max(1)));
        x
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn local_ring_axioms(x in local_element(), y in local_element(), z in local_element()) {
        let mut r = HeisRing::new(Budget::default());
        let xy_z = { let xy = r.mul(&x, &y).unwrap(); r.mul(&xy, &z).unwrap() };
        let x_yz = { let yz = r.mul(&y, &z).unwrap(); r.mul(&x, &yz).unwrap() };
        prop_assert_eq!(xy_z, x_yz);
        let lhs = r.mul(&x, &sum(&y, &z)).unwrap();
        let rhs = sum(&r.mul(&x, &y).unwrap(), &r.mul(&x, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        let one = HeisHeckeElement::identity(x.locality());
        prop_assert_eq!(r.mul(&one, &x).unwrap(), r.normalize(&x).unwrap());
    }

    #[test]
    fn global_ring_axioms(x in global_element(), y in global_element(), z in global_element()) {
        let mut r = HeisRing::new(Budget::default());
        let xy_z = { let xy = r.mul(&x, &y).unwrap(); r.mul(&xy, &z).unwrap() };
        let x_yz = { let yz = r.mul(&y, &z).unwrap(); r.mul(&x, &yz).unwrap() };
        prop_assert_eq!(xy_z, x_yz);
        let lhs = r.mul(&sum(&x, &y), &z).unwrap();
        let rhs = sum(&r.mul(&x, &z).unwrap(), &r.mul(&y, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_is_multiplicative(x in local_element(), y in local_element(), seed in any::<u64>()) {
        let mut r = HeisRing::new(Budget::default());
        let xy = r.mul(&x, &y).unwrap();
        prop_assert_eq!(r.degree(&xy).unwrap(), r.degree(&x).unwrap() * r.degree(&y).unwrap());
        prop_assert_eq!(&r.mul_with(&x, &y, ProductMethod::Shuffled { seed }).unwrap(), &xy);
        prop_assert_eq!(&r.mul_with(&x, &y, ProductMethod::Membership).unwrap(), &xy);
    }

    #[test]
    fn gl_rings_are_commutative_with_multiplicative_degree(x in gl_element(), y in gl_element()) {
        prop_assume!(x.locality() == y.locality());
        let b = Budget::default();
        let xy = gl_hecke_mul(&x, &y, &b).unwrap();
        prop_assert_eq!(&xy, &gl_hecke_mul(&y, &x, &b).unwrap());
        prop_assert_eq!(gl_element_degree(&xy, &b).unwrap(), gl_element_degree(&x, &b).unwrap() * gl_element_degree(&y, &b).unwrap());
    }

    #[test]
    fn eta_star_is_multiplicative_and_degree_preserving(x in adelic_element(), y in adelic_element()) {
        let mut r = HeisRing::new(Budget::default());
        let xy = r.adelic_mul(&x, &y).unwrap();
        let lhs = r.eta_star(&xy).unwrap();
        let (ex, ey) = (r.eta_star(&x).unwrap(), r.eta_star(&y).unwrap());
        prop_assert_eq!(&lhs, &r.mul(&ex, &ey).unwrap());
        prop_assert_eq!(r.degree(&lhs).unwrap(), r.adelic_degree(&xy).unwrap());
    }
}
