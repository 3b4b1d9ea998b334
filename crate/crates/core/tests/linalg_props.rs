use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use hecke_core::linalg::{act_on_quotient, det, hnf_left, snf, IntMatrix, QuotientVector};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(17), failure_persistence: None, ..Config::default() }
}

fn m2(e: [i64; 4]) -> IntMatrix {
    IntMatrix::from_i64(&[&e[..2], &e[2..]])
}

fn nonsingular(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, n * n)
        .prop_map(move |e| IntMatrix::from_rows(e.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap())
        .prop_filter("singular", |m| !det(m).is_zero())
}

/// Products of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -4i64..=4, 0..3u8), 1..10).prop_map(move |ops| {
        let mut rows: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        for (a, b, t, kind) in ops {
            match kind {
                0 if a != b => {
                    for c in 0..n {
                        let v = &rows[b][c] * t;
                        rows[a][c] += v;
                    }
                }
                1 => rows.swap(a, b),
                _ => rows[a].iter_mut().for_each(|x| *x = -x.clone()),
            }
        }
        IntMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn snf_round_trip_and_chain(m in (2usize..=3).prop_flat_map(|n| nonsingular(n, 50))) {
        let s = snf(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.diag_matrix());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert!(s.d.iter().all(|d| d.is_positive()));
        prop_assert!(s.d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn snf_is_a_two_sided_invariant((m, x, y) in (2usize..=3).prop_flat_map(|n| (nonsingular(n, 50), unimodular(n), unimodular(n)))) {
        prop_assert_eq!(snf(&x.mul(&m).mul(&y)).unwrap().d, snf(&m).unwrap().d);
    }

    #[test]
    fn hnf_is_idempotent_and_a_left_coset_invariant(m in nonsingular(2, 50), x in unimodular(2)) {
        let h = hnf_left(&m).unwrap();
        prop_assert_eq!(&hnf_left(&h).unwrap(), &h);
        prop_assert_eq!(&hnf_left(&x.mul(&m)).unwrap(), &h);
        prop_assert!(h.get(1, 0).is_zero() && h.get(0, 0).is_positive() && h.get(1, 1).is_positive());
        prop_assert!(!h.get(0, 1).is_negative() && h.get(0, 1) < h.get(1, 1));
    }

    #[test]
    fn det_is_multiplicative(a in nonsingular(3, 20), b in nonsingular(3, 20)) {
        prop_assert_eq!(det(&a.mul(&b)), det(&a) * det(&b));
    }

    #[test]
    fn quotient_action_is_a_monoid_action(
        (d1, r) in (1u64..=12, 1u64..=6),
        e1 in prop::array::uniform4(-9i64..=9),
        e2 in prop::array::uniform4(-9i64..=9),
        v in prop::array::uniform2(-50i64..=50),
    ) {
        let d2 = d1 * r;
        let fix = |mut e: [i64; 4]| { e[2] *= r as i64; m2(e) };
        let (a, b) = (fix(e1), fix(e2));
        let q = QuotientVector::from_u64((d1, d2), (v[0], v[1])).unwrap();
        let lhs = act_on_quotient(&a.mul(&b), &q).unwrap();
        let rhs = act_on_quotient(&a, &act_on_quotient(&b, &q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
