mod common;

use common::{ctx, poly};
use leafalg::{Ideal, MonomialOrder, Polynomial};
use proptest::prelude::*;

fn ideal_strategy() -> impl Strategy<Value = (Vec<Polynomial>, MonomialOrder)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(poly(ctx(n), 3, 3), 1..=3),
            prop_oneof![Just(MonomialOrder::Grevlex), Just(MonomialOrder::Lex)],
        )
    })
}

fn reducible(ideal: &Ideal) -> bool {
    let order = ideal.order();
    let basis = ideal.groebner_basis();
    basis.iter().enumerate().any(|(i, g)| {
        basis.iter().enumerate().any(|(j, h)| {
            i != j && {
                let lm = ideal.leading_monomial(h).unwrap();
                g.terms().any(|(m, _)| lm.divides(m))
            }
        }) || g.leading_term(order).map(|(_, c)| *c != common::q(1)).unwrap_or(true)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_is_idempotent_and_congruent((gens, order) in ideal_strategy(), seed in 0usize..3) {
        let c = gens[0].ctx().clone();
        let ideal = Ideal::with_order(&c, gens.clone(), order).unwrap();
        let f = &gens[seed % gens.len()] * &gens[0] + Polynomial::var(&c, 0);
        let nf = ideal.normal_form(&f).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(ideal.contains(&(&f - &nf)).unwrap());
        for g in &gens {
            prop_assert!(ideal.contains(g).unwrap());
        }
    }

    #[test]
    fn quotient_multiplication(((gens, order), f, g) in (1usize..=3).prop_flat_map(|n| (
        (prop::collection::vec(poly(ctx(n), 3, 3), 1..=3), prop_oneof![Just(MonomialOrder::Grevlex), Just(MonomialOrder::Lex)]),
        poly(ctx(n), 2, 3),
        poly(ctx(n), 2, 3),
    ))) {
        let ideal = Ideal::with_order(f.ctx(), gens, order).unwrap();
        let lhs = ideal.normal_form(&(&f * &g)).unwrap();
        let rhs = ideal.normal_form(&(&ideal.normal_form(&f).unwrap() * &ideal.normal_form(&g).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduced_basis_ignores_generator_order((gens, order) in ideal_strategy()) {
        let c = gens[0].ctx().clone();
        let a = Ideal::with_order(&c, gens.clone(), order).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = Ideal::with_order(&c, rev, order).unwrap();
        prop_assert_eq!(a.groebner_basis(), b.groebner_basis());
        prop_assert!(!reducible(&a));
    }
}
