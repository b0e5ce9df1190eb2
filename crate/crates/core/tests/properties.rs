//! Property-based invariants: vector-space laws, the lift isomorphism,
//! canonical norm laws, and operator composition against the lifted
//! matrix product.

use proptest::prelude::*;

use softnorm_core::{
    canonical_norm, induced_dist, lincomb, CanonicalSoftNorm, SoftLinearOperator64,
    SoftScalar64, SoftVector64,
};

const DIM: usize = 3;

fn coord() -> impl Strategy<Value = f64> {
    -100.0..100.0f64
}

fn soft_vector() -> impl Strategy<Value = SoftVector64> {
    (prop::collection::vec(coord(), DIM), coord())
        .prop_map(|(x, e)| SoftVector64::new(x, e).unwrap())
}

fn operator(in_dim: usize, out_dim: usize) -> impl Strategy<Value = SoftLinearOperator64> {
    (
        prop::collection::vec(prop::collection::vec(-10.0..10.0f64, in_dim), out_dim),
        prop::collection::vec(-10.0..10.0f64, out_dim),
        prop::collection::vec(-10.0..10.0f64, in_dim),
        -10.0..10.0f64,
    )
        .prop_map(|(a, b, c, lam)| SoftLinearOperator64::new(a, b, c, lam).unwrap())
}

fn close(a: &SoftVector64, b: &SoftVector64, tol: f64) -> bool {
    a.lift()
        .iter()
        .zip(b.lift())
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

proptest! {
    #[test]
    fn addition_commutes_and_associates(u in soft_vector(), v in soft_vector(), w in soft_vector()) {
        let uv = u.add(&v).unwrap();
        let vu = v.add(&u).unwrap();
        prop_assert!(close(&uv, &vu, 0.0));
        let left = uv.add(&w).unwrap();
        let right = u.add(&v.add(&w).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn zero_and_negation(v in soft_vector()) {
        prop_assert!(close(&v.add(&SoftVector64::zero(DIM)).unwrap(), &v, 0.0));
        prop_assert!(v.add(&v.neg()).unwrap().is_zero());
    }

    #[test]
    fn scalar_laws(v in soft_vector(), r in -50.0..50.0f64, s in -50.0..50.0f64) {
        let rs = v.scale(r * s).unwrap();
        let nested = v.scale(s).unwrap().scale(r).unwrap();
        prop_assert!(close(&rs, &nested, 1e-12));
        let distributed = v.scale(r + s).unwrap();
        let sum = v.scale(r).unwrap().add(&v.scale(s).unwrap()).unwrap();
        prop_assert!(close(&distributed, &sum, 1e-12));
    }

    #[test]
    fn lift_is_a_bijection(v in soft_vector()) {
        let back = SoftVector64::from_lift(&v.lift()).unwrap();
        prop_assert!(close(&back, &v, 0.0));
    }

    #[test]
    fn lift_respects_operations(u in soft_vector(), v in soft_vector(), r in -50.0..50.0f64) {
        let sum_lift = u.add(&v).unwrap().lift();
        let lifted_sum: Vec<f64> = u.lift().iter().zip(v.lift()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum_lift, lifted_sum);
        let scale_lift = u.scale(r).unwrap().lift();
        let lifted_scale: Vec<f64> = u.lift().iter().map(|a| a * r).collect();
        prop_assert_eq!(scale_lift, lifted_scale);
    }

    #[test]
    fn lincomb_matches_manual(u in soft_vector(), v in soft_vector(), a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let combo = lincomb(
            &[SoftScalar64::new(a).unwrap(), SoftScalar64::new(b).unwrap()],
            &[u.clone(), v.clone()],
        )
        .unwrap();
        let manual = u.scale(a).unwrap().add(&v.scale(b).unwrap()).unwrap();
        prop_assert!(close(&combo, &manual, 1e-12));
    }

    #[test]
    fn canonical_norm_laws(u in soft_vector(), v in soft_vector(), r in -50.0..50.0f64) {
        for p in [1.0, 2.0, f64::INFINITY] {
            let nu = canonical_norm(&u, p).unwrap();
            prop_assert!(nu >= 0.0);
            let scaled = canonical_norm(&u.scale(r).unwrap(), p).unwrap();
            prop_assert!((scaled - r.abs() * nu).abs() <= 1e-9 * (1.0 + nu));
            let sum = canonical_norm(&u.add(&v).unwrap(), p).unwrap();
            prop_assert!(sum <= nu + canonical_norm(&v, p).unwrap() + 1e-9);
        }
    }

    #[test]
    fn induced_metric_is_translation_invariant(
        u in soft_vector(), v in soft_vector(), w in soft_vector()
    ) {
        let norm = CanonicalSoftNorm::new(DIM, 2.0).unwrap();
        let d = induced_dist(&norm, &u, &v).unwrap();
        let shifted = induced_dist(&norm, &u.add(&w).unwrap(), &v.add(&w).unwrap()).unwrap();
        prop_assert!((d - shifted).abs() <= 1e-9 * (1.0 + d));
    }

    #[test]
    fn operator_application_is_linear(
        t in operator(DIM, 2), u in soft_vector(), v in soft_vector(), r in -10.0..10.0f64
    ) {
        let additive = t.apply(&u.add(&v).unwrap()).unwrap();
        let split = t.apply(&u).unwrap().add(&t.apply(&v).unwrap()).unwrap();
        prop_assert!(close(&additive, &split, 1e-9));
        let homogeneous = t.apply(&u.scale(r).unwrap()).unwrap();
        let scaled = t.apply(&u).unwrap().scale(r).unwrap();
        prop_assert!(close(&homogeneous, &scaled, 1e-9));
    }

    #[test]
    fn composition_matches_sequential_application(
        s in operator(2, 2), t in operator(DIM, 2), v in soft_vector()
    ) {
        let st = s.compose(&t).unwrap();
        let direct = st.apply(&v).unwrap();
        let sequential = s.apply(&t.apply(&v).unwrap()).unwrap();
        prop_assert!(close(&direct, &sequential, 1e-9));
    }

    #[test]
    fn lifted_round_trip(t in operator(DIM, 2)) {
        let back = SoftLinearOperator64::from_lifted(&t.lifted_matrix()).unwrap();
        prop_assert_eq!(back, t);
    }
}
