//! Schouten–Nijenhuis bracket on multivector fields.
//!
//! Each component `f ∂_{i1} ∧ … ∧ ∂_{ip}` is read as the decomposable
//! product `(f ∂_{i1}) ∧ ∂_{i2} ∧ … ∧ ∂_{ip}` and the bracket is expanded
//! with the monomial formula
//!
//! ```text
//! [X1∧…∧Xm, Y1∧…∧Yn] = (−1)^{m+1} Σ_{i,j} (−1)^{i+j} [Xi,Yj] ∧ X1…X̂i…Xm ∧ Y1…Ŷj…Yn
//! ```
//!
//! With this normalization the bracket satisfies
//! `[U,V] = (−1)^{|U||V|} [V,U]`, the graded Leibniz rule
//! `[U, V∧W] = [U,V]∧W + (−1)^{(|U|+1)|V|} V∧[U,W]`, and the matching graded
//! Jacobi identity. Brackets with functions follow from the Leibniz rule:
//! `[X1∧…∧Xp, g] = Σ_i (−1)^{i+1} Xi(g) X1…X̂i…Xp = [g, X1∧…∧Xp]`.

use super::ops::{apply_vector, vector_bracket};
use super::{IndexSubset, Multivector};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Factor list of one component: `[f ∂_{i1}, ∂_{i2}, …]`.
fn factors<F: Scalar>(u: &Multivector<F>, s: &IndexSubset, f: &Polynomial<F>) -> Vec<Multivector<F>> {
    s.indices()
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let basis = Multivector::coordinate(u.ctx(), i);
            if k == 0 {
                basis.mul_poly(f)
            } else {
                basis
            }
        })
        .collect()
}

fn wedge_all<F: Scalar>(
    seed: Multivector<F>,
    rest: impl IntoIterator<Item = Multivector<F>>,
) -> Result<Multivector<F>> {
    rest.into_iter().try_fold(seed, |acc, x| acc.wedge(&x))
}

fn except<T: Clone>(items: &[T], skip: usize) -> impl Iterator<Item = T> + '_ {
    items
        .iter()
        .enumerate()
        .filter(move |(k, _)| *k != skip)
        .map(|(_, x)| x.clone())
}

/// `[X1∧…∧Xp, g]` for a decomposable field and a function.
fn bracket_with_function<F: Scalar>(
    xs: &[Multivector<F>],
    g: &Polynomial<F>,
) -> Result<Multivector<F>> {
    let ctx = g.ctx();
    let mut out = Multivector::zero(ctx, xs.len() - 1);
    for (i, x) in xs.iter().enumerate() {
        let xg = apply_vector(x, g)?;
        if xg.is_zero() {
            continue;
        }
        let term = wedge_all(Multivector::scalar(xg), except(xs, i))?;
        // (−1)^{i+1} with 1-based i
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    Ok(out)
}

fn bracket_decomposable<F: Scalar>(
    xs: &[Multivector<F>],
    ys: &[Multivector<F>],
) -> Result<Multivector<F>> {
    let ctx = xs[0].ctx();
    let (m, n) = (xs.len(), ys.len());
    let mut out = Multivector::zero(ctx, m + n - 1);
    for i in 0..m {
        for j in 0..n {
            let b = vector_bracket(&xs[i], &ys[j])?;
            if b.is_zero() {
                continue;
            }
            let term = wedge_all(wedge_all(b, except(xs, i))?, except(ys, j))?;
            // (−1)^{i+j} is unchanged by the shift to 0-based indices
            out = if (i + j) % 2 == 0 { &out + &term } else { &out - &term };
        }
    }
    // overall (−1)^{m+1}
    Ok(if m % 2 == 1 { out } else { -&out })
}

/// Schouten–Nijenhuis bracket `[U, V]`, of grade `|U| + |V| − 1`.
///
/// The bracket of two functions has grade −1 and is returned as the zero
/// function.
pub fn schouten_bracket<F: Scalar>(u: &Multivector<F>, v: &Multivector<F>) -> Result<Multivector<F>> {
    u.ctx().check_same(v.ctx())?;
    let ctx = u.ctx();
    let (p, q) = (u.grade(), v.grade());
    if p == 0 && q == 0 {
        return Ok(Multivector::zero(ctx, 0));
    }
    if q == 0 {
        let g = v.as_scalar();
        let mut out = Multivector::zero(ctx, p - 1);
        for (s, f) in u.components() {
            out = &out + &bracket_with_function(&factors(u, s, f), &g)?;
        }
        return Ok(out);
    }
    if p == 0 {
        return schouten_bracket(v, u);
    }
    let mut out = Multivector::zero(ctx, p + q - 1);
    for (su, f) in u.components() {
        let xs = factors(u, su, f);
        for (sv, g) in v.components() {
            let ys = factors(v, sv, g);
            out = &out + &bracket_decomposable(&xs, &ys)?;
        }
    }
    Ok(out)
}
