mod common;

use common::{ctx, form, monomial_multivector, multivector, sign};
use leafalg::tensor::{exterior_derivative, interior_product, lie_derivative, schouten_bracket};
use leafalg::{Form, Multivector};
use proptest::prelude::*;

fn mv() -> impl Strategy<Value = Multivector> {
    monomial_multivector(ctx(3), 2, 2)
}

/// `[L_X, i_Y] ω` as a graded commutator.
fn lie_interior_commutator(x: &Multivector, y: &Multivector, omega: &Form) -> Form {
    let (p, q) = (x.grade(), y.grade());
    let a = lie_derivative(x, &interior_product(y, omega).unwrap()).unwrap();
    let b = interior_product(y, &lie_derivative(x, omega).unwrap()).unwrap();
    let s = sign(((p + 1) * q) % 2 == 0);
    a.checked_sub(&b.scale(&s)).unwrap()
}

/// Sum of the nonzero terms, `None` when it vanishes. A bracket of two functions has grade −1 and is
/// stored as a zero function, so zero terms may carry a nominal grade that
/// differs from the others.
fn sum_nonzero(terms: &[Multivector]) -> Option<Multivector> {
    terms
        .iter()
        .filter(|t| !t.is_zero())
        .fold(None, |acc: Option<Multivector>, t| match acc {
            None => Some(t.clone()),
            Some(a) => Some(a.checked_add(t).expect("nonzero terms share a grade")),
        })
        .filter(|s| !s.is_zero())
}

fn same(a: &Multivector, b: &Multivector) -> bool {
    sum_nonzero(std::slice::from_ref(a)) == sum_nonzero(std::slice::from_ref(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graded_symmetry(u in mv(), v in mv()) {
        let lhs = schouten_bracket(&u, &v).unwrap();
        let rhs = schouten_bracket(&v, &u).unwrap().scale(&sign((u.grade() * v.grade()) % 2 == 0));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn graded_leibniz(u in mv(), v in mv(), w in mv()) {
        let lhs = schouten_bracket(&u, &v.wedge(&w).unwrap()).unwrap();
        let a = schouten_bracket(&u, &v).unwrap().wedge(&w).unwrap();
        let b = v.wedge(&schouten_bracket(&u, &w).unwrap()).unwrap();
        let s = sign(((u.grade() + 1) * v.grade()) % 2 == 0);
        prop_assert_eq!(sum_nonzero(&[lhs]), sum_nonzero(&[a, b.scale(&s)]));
    }

    #[test]
    fn graded_jacobi(u in mv(), v in mv(), w in mv()) {
        let (a, b, c) = (u.grade(), v.grade(), w.grade());
        let t1 = schouten_bracket(&u, &schouten_bracket(&v, &w).unwrap()).unwrap();
        let t2 = schouten_bracket(&v, &schouten_bracket(&w, &u).unwrap()).unwrap();
        let t3 = schouten_bracket(&w, &schouten_bracket(&u, &v).unwrap()).unwrap();
        let e = |x: usize, y: usize| sign((x * (y + 1)) % 2 == 0);
        let sum = sum_nonzero(&[t1.scale(&e(a, c)), t2.scale(&e(b, a)), t3.scale(&e(c, b))]);
        prop_assert!(sum.is_none());
    }

    #[test]
    fn lie_derivative_and_interior(x in mv(), y in mv(), w in form(ctx(3), 3, 1)) {
        prop_assume!(x.grade() >= 1);
        let lhs = lie_interior_commutator(&x, &y, &w);
        let bracket = schouten_bracket(&x, &y).unwrap();
        let i = interior_product(&bracket, &w).unwrap();
        if x.grade() % 2 == 1 {
            prop_assert_eq!(lhs.clone(), i.clone());
        }
        // holds for every grade once the sign (−1)^{|X|+1} is included
        prop_assert_eq!(lhs, i.scale(&sign(x.grade() % 2 == 1)));
    }

    #[test]
    fn d_squared_vanishes(w in form(ctx(3), 1, 3)) {
        prop_assert!(exterior_derivative(&exterior_derivative(&w)).is_zero());
    }

    #[test]
    fn vector_lie_derivative_is_cartan(x in multivector(ctx(3), 1, 2), w in form(ctx(3), 2, 2)) {
        let cartan = interior_product(&x, &exterior_derivative(&w)).unwrap()
            .checked_add(&exterior_derivative(&interior_product(&x, &w).unwrap())).unwrap();
        prop_assert_eq!(lie_derivative(&x, &w).unwrap(), cartan);
    }

    #[test]
    fn interior_of_wedge_composes(x in multivector(ctx(3), 1, 1), y in multivector(ctx(3), 1, 1), w in form(ctx(3), 2, 1)) {
        let xy = x.wedge(&y).unwrap();
        let composed = interior_product(&x, &interior_product(&y, &w).unwrap()).unwrap();
        prop_assert_eq!(interior_product(&xy, &w).unwrap(), composed);
    }
}
