use lrkit_core::catalog;
use lrkit_core::coeffring::{Mode, Polynomial, Ring};
use lrkit_core::enveloping::{Enveloping, Rewriter, Strategy};
use lrkit_core::sample::Sampler;
use proptest::prelude::*;

fn algebra(k: usize) -> Enveloping {
    let (_, p) = catalog::test_algebras().swap_remove(k);
    Enveloping::new(p).unwrap()
}

fn xy() -> Ring {
    Ring::new(vec!["x".into(), "y".into()], Mode::Polynomial)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gcd_divides_and_recovers_common_factor(seed in any::<u64>()) {
        let ring = xy();
        let mut s = Sampler::new(seed);
        let f = s.nonzero_polynomial(2, 2);
        let g = s.nonzero_polynomial(2, 3);
        let h = s.nonzero_polynomial(2, 3);
        let a = &f * &g;
        let b = &f * &h;
        let d = a.gcd(&b);
        prop_assert!(a.div_exact(&d).is_some(), "{}", d.display(ring.vars()));
        prop_assert!(b.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&f.monic()).is_some());
        prop_assert!(d.leading_coefficient() == Polynomial::one(2).leading_coefficient());
    }

    #[test]
    fn fraction_field_round_trips(seed in any::<u64>()) {
        let ring = xy().with_mode(Mode::FractionField);
        let mut s = Sampler::new(seed);
        let a = s.scalar(&ring, 3);
        let b = s.nonzero_scalar(&ring, 2);
        let c = s.nonzero_scalar(&ring, 2);
        let q = a.div(&b).unwrap();
        prop_assert_eq!(&q * &b, a.clone());
        let lhs = &q + &a.div(&c).unwrap();
        let rhs = a.div(&(&b * &c).div(&(&b + &c)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let printed = ring.display(&q);
        prop_assert_eq!(ring.parse(&printed).unwrap(), q);
    }

    #[test]
    fn multiplication_is_associative_and_matches_rewriting(seed in any::<u64>(), k in 0usize..4) {
        let env = algebra(k);
        let mut s = Sampler::new(seed);
        let (u, v, w) = (s.uelement(&env, 2, 1), s.uelement(&env, 2, 1), s.uelement(&env, 2, 1));
        let uv = env.multiply(&u, &v).unwrap();
        prop_assert_eq!(
            env.multiply(&uv, &w).unwrap(),
            env.multiply(&u, &env.multiply(&v, &w).unwrap()).unwrap()
        );
        let rw = Rewriter::new(env.presentation(), Strategy::Leftmost);
        prop_assert_eq!(rw.multiply(&u, &v), uv);
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>(), k in 0usize..4) {
        let env = algebra(k);
        let mut s = Sampler::new(seed);
        let u = s.uelement(&env, 3, 2);
        let text = env.render(&u);
        prop_assert_eq!(env.parse(&text).unwrap(), u);
    }

    #[test]
    fn coproduct_laws(seed in any::<u64>(), k in 0usize..4) {
        let env = algebra(k);
        let mut s = Sampler::new(seed);
        let (u, v) = (s.uelement(&env, 2, 2), s.uelement(&env, 2, 2));
        let du = env.coproduct(&u).unwrap();
        prop_assert_eq!(du.swap(), du.clone());
        prop_assert_eq!(env.counit_slot(&du, 0).unwrap(), u.clone());
        prop_assert_eq!(
            env.coproduct(&env.multiply(&u, &v).unwrap()).unwrap(),
            env.tensor_mul(&du, &env.coproduct(&v).unwrap()).unwrap()
        );
        prop_assert!(env.bar_tensor_check(&du, &env.probe_monomials(3)).unwrap());
    }

    #[test]
    fn symbol_is_multiplicative(seed in any::<u64>(), k in 0usize..4) {
        let env = algebra(k);
        let mut s = Sampler::new(seed);
        let (u, v) = (s.uelement(&env, 3, 1), s.uelement(&env, 3, 1));
        let lhs = env.symbol(&env.multiply(&u, &v).unwrap()).unwrap();
        let rhs = env.symbol(&u).unwrap().s_multiply(&env.symbol(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn primitive_degree_matches_pbw_degree(seed in any::<u64>(), k in 0usize..4) {
        let env = algebra(k);
        let mut s = Sampler::new(seed);
        let u = s.augmented(&env, 3, 2);
        prop_assert_eq!(env.primitive_filtration_degree(&u).unwrap(), env.pbw_degree(&u).unwrap());
    }
}
