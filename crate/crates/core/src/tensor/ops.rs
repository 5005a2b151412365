use super::{Form, IndexSubset, Multivector};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Exterior derivative `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
pub fn exterior_derivative<F: Scalar>(omega: &Form<F>) -> Form<F> {
    let n = omega.ctx().len();
    let mut out = Form::zero(omega.ctx(), omega.grade() + 1);
    for (s, p) in omega.components() {
        for j in 0..n {
            let Some((neg, t)) = IndexSubset::singleton(j).wedge(s) else {
                continue;
            };
            let dp = p.partial(j);
            out.add_component(t, if neg { -dp } else { dp });
        }
    }
    out
}

/// Contracts `∂_J` into `dx_I` one factor at a time, the last factor of `J`
/// first: `i_{X1∧…∧Xk} = i_{X1} ∘ … ∘ i_{Xk}`.
fn contract_basis(j: &IndexSubset, i: &IndexSubset) -> Option<(bool, IndexSubset)> {
    let mut cur = i.clone();
    let mut neg = false;
    for &idx in j.indices().iter().rev() {
        let pos = cur.position(idx)?;
        if pos % 2 == 1 {
            neg = !neg;
        }
        cur = cur.without_position(pos);
    }
    Some((neg, cur))
}

fn contract<F: Scalar>(x: &Multivector<F>, omega: &Form<F>) -> Option<Form<F>> {
    if x.grade() > omega.grade() {
        return None;
    }
    let mut out = Form::zero(omega.ctx(), omega.grade() - x.grade());
    for (sj, f) in x.components() {
        for (si, g) in omega.components() {
            if let Some((neg, rest)) = contract_basis(sj, si) {
                let c = f * g;
                out.add_component(rest, if neg { -c } else { c });
            }
        }
    }
    Some(out)
}

/// Interior product `i_X ω` of a multivector field into a form.
pub fn interior_product<F: Scalar>(x: &Multivector<F>, omega: &Form<F>) -> Result<Form<F>> {
    x.ctx().check_same(omega.ctx())?;
    contract(x, omega).ok_or(Error::GradeDeficit {
        field: x.grade(),
        form: omega.grade(),
    })
}

/// Generalized Lie derivative `L_X = i_X ∘ d − (−1)^{|X|} d ∘ i_X`.
///
/// When `|X| = |ω| + 1` the second term vanishes; larger grades are an error.
///
/// With [`schouten_bracket`](super::schouten_bracket) and the contraction
/// order of [`interior_product`], the graded commutator
/// `[L_X, i_Y] = L_X i_Y − (−1)^{(|X|−1)|Y|} i_Y L_X` equals
/// `(−1)^{|X|+1} i_{[X,Y]}`.
pub fn lie_derivative<F: Scalar>(x: &Multivector<F>, omega: &Form<F>) -> Result<Form<F>> {
    x.ctx().check_same(omega.ctx())?;
    if x.grade() > omega.grade() + 1 {
        return Err(Error::GradeDeficit {
            field: x.grade(),
            form: omega.grade() + 1,
        });
    }
    let first = contract(x, &exterior_derivative(omega)).expect("grade checked above");
    match contract(x, omega) {
        None => Ok(first),
        Some(inner) => {
            let second = exterior_derivative(&inner);
            if x.grade() % 2 == 0 {
                first.checked_sub(&second)
            } else {
                first.checked_add(&second)
            }
        }
    }
}

/// `X(f) = Σ X^i ∂_i f` for a vector field `X`.
pub fn apply_vector<F: Scalar>(x: &Multivector<F>, f: &Polynomial<F>) -> Result<Polynomial<F>> {
    x.require_grade(1)?;
    x.ctx().check_same(f.ctx())?;
    let mut out = Polynomial::zero(f.ctx());
    for (s, c) in x.components() {
        out = &out + &(c * &f.partial(s.indices()[0]));
    }
    Ok(out)
}

/// Coordinate Lie bracket of vector fields, `[X,Y]^i = X(Y^i) − Y(X^i)`.
pub fn vector_bracket<F: Scalar>(x: &Multivector<F>, y: &Multivector<F>) -> Result<Multivector<F>> {
    x.require_grade(1)?;
    y.require_grade(1)?;
    x.ctx().check_same(y.ctx())?;
    let n = x.ctx().len();
    let coeffs = (0..n)
        .map(|i| Ok(&apply_vector(x, &y.coefficient(i))? - &apply_vector(y, &x.coefficient(i))?))
        .collect::<Result<Vec<_>>>()?;
    Multivector::from_coefficients(x.ctx(), coeffs)
}

/// Pairing `ω(X)` of a 1-form with a vector field.
pub fn pairing<F: Scalar>(omega: &Form<F>, x: &Multivector<F>) -> Result<Polynomial<F>> {
    omega.require_grade(1)?;
    x.require_grade(1)?;
    Ok(interior_product(x, omega)?.as_scalar())
}

/// Contracts a 1-form into the first slot of a multivector:
/// `i_α(∂_{i1} ∧ … ∧ ∂_{ik}) = Σ_r (−1)^{r−1} α_{ir} ∂_{i1} ∧ … ∂̂_{ir} … ∧ ∂_{ik}`.
pub fn contract_covector<F: Scalar>(
    alpha: &Form<F>,
    u: &Multivector<F>,
) -> Result<Multivector<F>> {
    alpha.require_grade(1)?;
    alpha.ctx().check_same(u.ctx())?;
    if u.grade() == 0 {
        return Err(Error::GradeDeficit { field: 1, form: 0 });
    }
    let mut out = Multivector::zero(u.ctx(), u.grade() - 1);
    for (s, p) in u.components() {
        for (r, &i) in s.indices().iter().enumerate() {
            let a = alpha.coefficient(i);
            if a.is_zero() {
                continue;
            }
            let c = p * &a;
            out.add_component(s.without_position(r), if r % 2 == 1 { -c } else { c });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_form, parse_multivector, parse_polynomial, Rational, VarContext};

    fn ctx() -> VarContext {
        VarContext::new(["x", "y"]).unwrap()
    }

    fn v(s: &str) -> Multivector<Rational> {
        parse_multivector(s, &ctx()).unwrap()
    }

    fn w(s: &str) -> Form<Rational> {
        parse_form(s, &ctx()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        assert!(v("d/dx").wedge(&v("d/dx")).unwrap().is_zero());
        assert_eq!(v("d/dx").wedge(&v("d/dy")).unwrap(), v("d/dx ^ d/dy"));
        assert_eq!(
            v("x*d/dx").wedge(&v("y*d/dy + d/dx")).unwrap(),
            v("x*y * d/dx ^ d/dy")
        );
        assert_eq!(v("d/dy").wedge(&v("d/dx")).unwrap(), v("-d/dx ^ d/dy"));
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = Form::scalar(parse_polynomial::<Rational>("5", &ctx()).unwrap());
        assert!(exterior_derivative(&c).is_zero());
        assert_eq!(exterior_derivative(&w("x * dy")), w("dx ^ dy"));
        assert_eq!(
            exterior_derivative(&w("x^2*y * dx + x^3 * dy")),
            w("2*x^2 * dx ^ dy")
        );
    }

    #[test]
    fn interior_product_examples() {
        let one = |f: Form<Rational>| f.as_scalar();
        assert_eq!(
            one(interior_product(&v("d/dx"), &w("dx")).unwrap()),
            parse_polynomial("1", &ctx()).unwrap()
        );
        assert!(interior_product(&v("d/dx"), &w("dy")).unwrap().is_zero());
        // last factor contracted first: i_{∂x∧∂y}(dx∧dy) = i_{∂x}(i_{∂y}(dx∧dy)) = i_{∂x}(-dx) = -1
        assert_eq!(
            one(interior_product(&v("d/dx ^ d/dy"), &w("dx ^ dy")).unwrap()),
            parse_polynomial("-1", &ctx()).unwrap()
        );
        assert!(matches!(
            interior_product(&v("d/dx ^ d/dy"), &w("dx")),
            Err(Error::GradeDeficit { field: 2, form: 1 })
        ));
    }

    #[test]
    fn lie_derivative_examples() {
        assert!(lie_derivative(&v("d/dx"), &w("dx")).unwrap().is_zero());
        assert_eq!(lie_derivative(&v("x*d/dx"), &w("dx")).unwrap(), w("dx"));
    }

    #[test]
    fn covector_contraction_first_slot() {
        let pi = v("d/dx ^ d/dy");
        assert_eq!(contract_covector(&w("dx"), &pi).unwrap(), v("d/dy"));
        assert_eq!(contract_covector(&w("dy"), &pi).unwrap(), v("-d/dx"));
    }

    #[test]
    fn vector_bracket_example() {
        assert_eq!(vector_bracket(&v("x*d/dx"), &v("d/dx")).unwrap(), v("-d/dx"));
    }
}
