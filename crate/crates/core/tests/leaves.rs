mod common;

use common::{ctx, form, multivector, poly, q};
use leafalg::connection::{ConormalForm, LeafContext};
use leafalg::tensor::{apply_vector, exterior_derivative, IndexSubset};
use leafalg::{
    parse_form, parse_multivector, parse_polynomial, Form, Ideal, Multivector, Polynomial,
    PoissonStructure, Rational,
};
use proptest::prelude::*;

fn vanishing_at_origin(p: Polynomial) -> Polynomial {
    let c = Polynomial::constant(p.ctx(), p.constant_term());
    &p - &c
}

fn planar(phi: &Polynomial) -> PoissonStructure {
    let c = phi.ctx();
    let base = parse_multivector("d/dx ^ d/dy", c).unwrap();
    PoissonStructure::new(base.mul_poly(phi)).unwrap()
}

fn point_leaf(phi: &Polynomial) -> LeafContext<Rational> {
    let c = phi.ctx();
    let ideal = Ideal::vanishing_ideal_of_point(c, &[q(0), q(0)]).unwrap();
    LeafContext::new(planar(phi), ideal, Some(vec![q(0), q(0)])).unwrap()
}

/// `π = g(z) ∂x∧∂y` with the leaf `z = c` through `(a, b, c)`, where `g(c) ≠ 0`.
fn slab_leaf(g: &Polynomial, a: i64, b: i64, c: i64) -> Option<LeafContext<Rational>> {
    let cx = g.ctx();
    let pt = vec![q(a), q(b), q(c)];
    if g.evaluate(&pt).unwrap() == q(0) {
        return None;
    }
    let pi = parse_multivector("d/dx ^ d/dy", cx).unwrap().mul_poly(g);
    let h = &Polynomial::var(cx, 2) - &Polynomial::constant(cx, q(c));
    let ideal = Ideal::new(cx, vec![h]).unwrap();
    Some(LeafContext::new(PoissonStructure::new(pi).unwrap(), ideal, Some(pt)).unwrap())
}

fn z_only(p: Polynomial) -> Polynomial {
    let c = p.ctx().clone();
    Polynomial::from_terms(
        &c,
        p.terms()
            .map(|(m, x)| (leafalg::Monomial::from_exponents(vec![0, 0, m.degree()]), x.clone())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn planar_bivectors_are_poisson(phi in poly(ctx(2), 3, 4)) {
        prop_assert!(planar(&phi).is_poisson());
    }

    #[test]
    fn bracket_is_a_poisson_bracket(f in poly(ctx(3), 2, 3), g in poly(ctx(3), 2, 3), h in poly(ctx(3), 2, 3)) {
        let c = ctx(3);
        let so3 = PoissonStructure::verified(
            parse_multivector("z * d/dx ^ d/dy + x * d/dy ^ d/dz - y * d/dx ^ d/dz", &c).unwrap(),
        ).unwrap();
        let b = |u: &Polynomial, v: &Polynomial| so3.bracket(u, v).unwrap();
        prop_assert_eq!(b(&f, &g), -b(&g, &f));
        prop_assert_eq!(b(&f, &(&g * &h)), &(&b(&f, &g) * &h) + &(&g * &b(&f, &h)));
        let jac = &(&b(&f, &b(&g, &h)) + &b(&g, &b(&h, &f))) + &b(&h, &b(&f, &g));
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn anchor_is_module_linear(phi in poly(ctx(2), 2, 3), p in poly(ctx(2), 2, 3), a in form(ctx(2), 1, 2)) {
        let pi = planar(&phi);
        prop_assert_eq!(pi.anchor(&a.mul_poly(&p)).unwrap(), pi.anchor(&a).unwrap().mul_poly(&p));
    }

    #[test]
    fn duality_on_point_leaves(
        phi in poly(ctx(2), 3, 3),
        a in form(ctx(2), 1, 2),
        w in form(ctx(2), 1, 2),
        s in multivector(ctx(2), 1, 2),
    ) {
        let leaf = point_leaf(&vanishing_at_origin(phi));
        let omega = ConormalForm::new(&leaf, w).unwrap();
        prop_assert!(leaf.duality_residual(&a, &omega, &s).unwrap().is_zero());
        prop_assert!(leaf.duality_check(&a, &omega, &s).unwrap());
    }

    #[test]
    fn duality_on_planar_leaves_in_space(
        g in poly(ctx(3), 2, 3),
        (x0, y0, z0) in (-2i64..=2, -2i64..=2, -2i64..=2),
        a in form(ctx(3), 1, 2),
        h in poly(ctx(3), 2, 2),
        w in form(ctx(3), 1, 1),
        s in multivector(ctx(3), 1, 2),
    ) {
        let g = &z_only(g) + &Polynomial::one(&ctx(3));
        let Some(leaf) = slab_leaf(&g, x0, y0, z0) else { return Ok(()); };
        let c = ctx(3);
        let k = &Polynomial::var(&c, 2) - &Polynomial::constant(&c, q(z0));
        let dz = Form::coordinate(&c, 2);
        let omega_raw = dz.mul_poly(&h).checked_add(&w.mul_poly(&k)).unwrap();
        let omega = ConormalForm::new(&leaf, omega_raw).unwrap();
        prop_assert!(leaf.duality_check(&a, &omega, &s).unwrap());
    }

    #[test]
    fn classes_ignore_extensions(
        phi in poly(ctx(2), 3, 3),
        a in form(ctx(2), 1, 2),
        b in form(ctx(2), 1, 1),
        s in multivector(ctx(2), 1, 2),
        w in multivector(ctx(2), 1, 1),
        m1 in poly(ctx(2), 1, 2),
        m2 in poly(ctx(2), 1, 2),
    ) {
        let leaf = point_leaf(&vanishing_at_origin(phi));
        let c = ctx(2);
        let k = &(&m1 * &Polynomial::var(&c, 0)) + &(&m2 * &Polynomial::var(&c, 1));
        let origin = [q(0), q(0)];
        let base = leaf.covariant_derivative_transversal(&a, &s).unwrap();
        let moved = leaf
            .covariant_derivative_transversal(
                &a.checked_add(&b.mul_poly(&k)).unwrap(),
                &s.checked_add(&w.mul_poly(&k)).unwrap(),
            )
            .unwrap();
        prop_assert_eq!(
            leaf.reduce_mod_tangent(base.representative(), &origin).unwrap(),
            leaf.reduce_mod_tangent(moved.representative(), &origin).unwrap()
        );
    }

    #[test]
    fn grade_one_extension_agrees(phi in poly(ctx(2), 3, 3), a in form(ctx(2), 1, 2), s in multivector(ctx(2), 1, 2)) {
        let leaf = point_leaf(&vanishing_at_origin(phi));
        prop_assert_eq!(
            leaf.covariant_derivative_multivector(&a, &s).unwrap(),
            leaf.covariant_derivative_transversal(&a, &s).unwrap()
        );
    }

    /// `∇_{df}(V) = −V(φ)(0)·X_f(0)` at the point leaf, with `X_f` taken for `∂x∧∂y`.
    #[test]
    fn point_leaf_connection_value(phi in poly(ctx(2), 3, 4), f in poly(ctx(2), 2, 3), (u, v) in (-3i64..=3, -3i64..=3)) {
        let phi = vanishing_at_origin(phi);
        let c = ctx(2);
        let leaf = point_leaf(&phi);
        let origin = [q(0), q(0)];
        let vec_field = Multivector::from_point_values(&c, 1, &[q(u), q(v)]);
        let alpha = exterior_derivative(&Form::scalar(f.clone()));
        let got = leaf.covariant_derivative_transversal(&alpha, &vec_field).unwrap();
        let got = leaf.reduce_mod_tangent(got.representative(), &origin).unwrap();
        let v_phi = apply_vector(&vec_field, &phi).unwrap().evaluate(&origin).unwrap();
        let xf = planar(&Polynomial::one(&c)).hamiltonian_field(&f).unwrap().evaluate(&origin).unwrap();
        let expected: Vec<Rational> = xf.iter().map(|x| -(x * &v_phi)).collect();
        prop_assert_eq!(got, expected);
    }

    /// `∇_α(U∧V) = −X_α∧(U(φ)V − V(φ)U)` at the point leaf.
    #[test]
    fn point_leaf_wedge_value(phi in poly(ctx(2), 3, 4), a in form(ctx(2), 1, 0), u in multivector(ctx(2), 1, 0), v in multivector(ctx(2), 1, 0)) {
        let phi = vanishing_at_origin(phi);
        let c = ctx(2);
        let origin = [q(0), q(0)];
        let leaf = point_leaf(&phi);
        let uv = u.wedge(&v).unwrap();
        let got = leaf.covariant_derivative_multivector(&a, &uv).unwrap();
        let got = leaf.reduce_mod_tangent(got.representative(), &origin).unwrap();
        let x = planar(&Polynomial::one(&c)).anchor(&a).unwrap();
        let u_phi = apply_vector(&u, &phi).unwrap().evaluate(&origin).unwrap();
        let v_phi = apply_vector(&v, &phi).unwrap().evaluate(&origin).unwrap();
        let inner = v.scale(&u_phi).checked_sub(&u.scale(&v_phi)).unwrap();
        let rhs = x.wedge(&inner).unwrap().scale(&q(-1)).evaluate(&origin).unwrap();
        prop_assert_eq!(got, rhs);
    }
}

#[test]
fn flatness_tracks_the_differential_of_phi() {
    let c = ctx(2);
    let flat = point_leaf(&parse_polynomial("x^2 + y^2", &c).unwrap());
    let s = flat.flat_sections_at_point().unwrap();
    assert_eq!((s.transversal_dim, s.basis.len()), (2, 2));
    let curved = point_leaf(&parse_polynomial("x", &c).unwrap());
    let s = curved.flat_sections_at_point().unwrap();
    assert_eq!(s.basis, vec![vec![q(0), q(1)]]);
}

#[test]
fn wedge_solutions_for_phi_equal_x() {
    let c = ctx(2);
    let leaf = point_leaf(&parse_polynomial("x", &c).unwrap());
    let dx = parse_form("dx", &c).unwrap();
    let dy = parse_form("dy", &c).unwrap();
    // X_dx = ∂y lies in ker dφ, so every U∧V is a solution
    let sol = leaf.parallel_sections_at_point(&[dx], 2).unwrap();
    assert_eq!(sol.basis, vec![vec![q(1)]]);
    // X_dy = −∂x does not, so only zero solves
    let sol = leaf.parallel_sections_at_point(&[dy], 2).unwrap();
    assert!(sol.basis.is_empty());
    assert_eq!(IndexSubset::all(2, 2).len(), sol.transversal_dim);
}

#[test]
fn non_poisson_family_defect() {
    let c = leafalg::VarContext::new(["x1", "x2", "x3"]).unwrap();
    for k in [-3i64, -1, 1, 2, 5] {
        let pi = parse_multivector(&format!("x3 * d/dx1 ^ d/dx2 + {k} * x2 * d/dx2 ^ d/dx3"), &c).unwrap();
        let p = PoissonStructure::new(pi).unwrap();
        let expected = parse_multivector(&format!("{} * x3 * d/dx1 ^ d/dx2 ^ d/dx3", -2 * k), &c).unwrap();
        assert_eq!(p.jacobi_defect(), &expected);
        assert!(LeafContext::new(p, Ideal::zero(&c), None).is_err());
    }
}
