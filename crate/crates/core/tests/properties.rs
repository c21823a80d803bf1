use std::sync::Arc;

use khacoha::chern::{ch, TildeCheck};
use khacoha::coha::{g_mult_h, CohElement};
use khacoha::gen::{invariant_laurent, invariant_polynomial, laurent, permutation, rng_for, unit_series};
use khacoha::kha::{g_mult_r, LaurentElement};
use khacoha::quiver::{act_permutation, is_invariant, Block, DimVector, Quiver, VarContext};
use khacoha::todd::{twist, TwistFlavor};
use proptest::prelude::*;

fn ctx(loops: u32, d: u32) -> Arc<VarContext> {
    VarContext::new(Arc::new(Quiver::one_vertex(loops)), DimVector::new(vec![d])).unwrap()
}

fn two_vertex(d1: u32, d2: u32) -> Arc<VarContext> {
    let q = Quiver::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
    VarContext::new(Arc::new(q), DimVector::new(vec![d1, d2])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ch_is_multiplicative(seed in any::<u64>(), d in 1u32..=3) {
        let c = ctx(1, d);
        let mut rng = rng_for(seed, 0);
        let f = LaurentElement::new(&c, laurent(&mut rng, &c, 3)).unwrap();
        let g = LaurentElement::new(&c, laurent(&mut rng, &c, 3)).unwrap();
        let order = 5;
        prop_assert_eq!(ch(&f.mul(&g).unwrap(), order), ch(&f, order).mul(&ch(&g, order)).unwrap());
    }

    #[test]
    fn ch_is_additive(seed in any::<u64>()) {
        let c = two_vertex(1, 1);
        let mut rng = rng_for(seed, 1);
        let f = LaurentElement::new(&c, laurent(&mut rng, &c, 4)).unwrap();
        let g = LaurentElement::new(&c, laurent(&mut rng, &c, 4)).unwrap();
        prop_assert_eq!(ch(&f.add(&g).unwrap(), 4), ch(&f, 4).add(&ch(&g, 4)).unwrap());
    }

    #[test]
    fn sqrt_squares_back(seed in any::<u64>(), n in 1usize..=3) {
        let c = VarContext::anonymous(n);
        let mut rng = rng_for(seed, 2);
        let s = unit_series(&mut rng, &c, 6, 4);
        let r = s.sqrt().unwrap();
        prop_assert_eq!(r.mul(&r).unwrap(), s);
        prop_assert!(r.constant_term() == khacoha::Rational::from_integer(1.into()));
    }

    #[test]
    fn shuffle_products_are_invariant(seed in any::<u64>(), loops in 0u32..=2, d1 in 1u32..=2, d2 in 1u32..=2) {
        let (c1, c2) = (ctx(loops, d1), ctx(loops, d2));
        let mut rng = rng_for(seed, 3);
        let f1 = LaurentElement::new(&c1, invariant_laurent(&mut rng, &c1)).unwrap();
        let f2 = LaurentElement::new(&c2, invariant_laurent(&mut rng, &c2)).unwrap();
        let r = g_mult_r(&f1, &f2).unwrap();
        prop_assert!(is_invariant(&r));
        let h1 = CohElement::exact(&c1, invariant_polynomial(&mut rng, &c1, 2)).unwrap();
        let h2 = CohElement::exact(&c2, invariant_polynomial(&mut rng, &c2, 2)).unwrap();
        let h = g_mult_h(&h1, &h2).unwrap();
        prop_assert!(is_invariant(&h));
    }

    #[test]
    fn permutations_act_as_a_group(seed in any::<u64>(), d in 2u32..=3) {
        let c = ctx(1, d);
        let mut rng = rng_for(seed, 4);
        let f = LaurentElement::new(&c, laurent(&mut rng, &c, 4)).unwrap();
        let (s, t) = (permutation(&mut rng, c.dim()), permutation(&mut rng, c.dim()));
        let lhs = act_permutation(&s.compose(&t), &f).unwrap();
        let a = act_permutation(&t, &f).unwrap();
        let b = act_permutation(&s, &a).unwrap();
        let a2 = act_permutation(&s, &f).unwrap();
        let b2 = act_permutation(&t, &a2).unwrap();
        prop_assert!(lhs.poly() == b.poly() || lhs.poly() == b2.poly());
    }

    #[test]
    fn twist_times_inverse_is_one(tau1 in 0u32..=2, tau2 in 0u32..=2, d1 in 0u32..=2, d2 in 0u32..=2, k in 0usize..4) {
        let c = two_vertex(d1, d2);
        let flavor = [TwistFlavor::BTilde, TwistFlavor::D, TwistFlavor::CTilde, TwistFlavor::C][k];
        let t = twist(flavor, &Block::whole(&c), &DimVector::new(vec![tau1, tau2]), 4).unwrap();
        let inv = t.inverse().unwrap();
        let prod = t.series().mul(inv.series()).unwrap();
        prop_assert_eq!(prod, khacoha::Series::one(&c, 4));
    }

    #[test]
    fn jordan_comparison_map_is_a_morphism(seed in any::<u64>(), d1 in 1u32..=2, d2 in 1u32..=2) {
        let q = Arc::new(Quiver::jordan());
        let (g1, g2) = (DimVector::new(vec![d1]), DimVector::new(vec![d2]));
        let check = TildeCheck::new(&q, &g1, &g2, 4).unwrap();
        let (c1, c2) = (check.split().first().clone(), check.split().second().clone());
        let mut rng = rng_for(seed, 5);
        let f1 = LaurentElement::new(&c1, laurent(&mut rng, &c1, 3)).unwrap();
        let f2 = LaurentElement::new(&c2, laurent(&mut rng, &c2, 3)).unwrap();
        let report = check.run(&f1, &f2).unwrap();
        prop_assert!(report.pass, "{:?}", report.mismatch_monomial());
    }
}
