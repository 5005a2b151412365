//! Ideals of finite-dimensional Lie algebras, the module `H_V = V/[V,V]`,
//! projection forms and the characteristic class in `H²(L/V, H_V)`.
//!
//! Coefficients are scalars, so the invariants algebra `A_V` is the scalar
//! field and the complement ideal `V'` is always `V` itself.

use crate::error::{Error, Result};
use crate::lie::{ce_coboundary, coboundary_matrix, image_space, kernel_space, Cochain, LieAlgebra, LieModule};
use crate::linalg::{is_zero_vec, unit, Matrix, SubQuotient, Subspace};
use crate::scalar::Scalar;
use crate::tensor::IndexSubset;

/// A subspace `V ⊆ L` with `[L, V] ⊆ V`.
#[derive(Clone, Debug)]
pub struct LieIdeal<F: Scalar> {
    ambient: LieAlgebra<F>,
    basis: Vec<Vec<F>>,
    space: Subspace<F>,
}

/// Validates independence of `basis` and the ideal condition. The error names
/// the first ambient basis element `x` and ideal vector `v` with `[x, v] ∉ V`.
pub fn check_ideal<F: Scalar>(ambient: &LieAlgebra<F>, basis: Vec<Vec<F>>) -> Result<LieIdeal<F>> {
    let n = ambient.dim();
    if let Some(b) = basis.iter().find(|b| b.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let space = Subspace::span(n, basis.iter().cloned());
    if space.dim() != basis.len() {
        return Err(Error::DependentBasis);
    }
    for i in 0..n {
        for v in &basis {
            if !space.contains(&ambient.bracket(&unit(n, i), v)) {
                return Err(Error::NotAnIdeal {
                    ambient: ambient.labels()[i].clone(),
                    element: ambient.format(v),
                });
            }
        }
    }
    Ok(LieIdeal {
        ambient: ambient.clone(),
        basis,
        space,
    })
}

impl<F: Scalar> LieIdeal<F> {
    pub fn ambient(&self) -> &LieAlgebra<F> {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn subspace(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `[V, V]`, spanned by brackets of basis pairs.
    pub fn derived(&self) -> Subspace<F> {
        let mut brackets = Vec::new();
        for (a, u) in self.basis.iter().enumerate() {
            for v in &self.basis[a + 1..] {
                brackets.push(self.ambient.bracket(u, v));
            }
        }
        Subspace::span(self.ambient.dim(), brackets)
    }
}

/// The minimal `A_V`-submodule containing `V`, with the completeness verdict.
#[derive(Clone, Debug)]
pub struct Complement<F> {
    pub subspace: Subspace<F>,
    pub complete: bool,
}

/// With scalar coefficients `A_V` is the scalar field, so `V' = V`.
pub fn complement_ideal<F: Scalar>(ideal: &LieIdeal<F>) -> Complement<F> {
    Complement {
        subspace: ideal.space.clone(),
        complete: true,
    }
}

/// `H_V = H_1(V) = V/[V,V]`, with representatives in ambient coordinates.
#[derive(Clone, Debug)]
pub struct FirstHomology<F> {
    quotient: SubQuotient<F>,
}

impl<F: Scalar> FirstHomology<F> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        self.quotient.representatives()
    }

    pub fn derived(&self) -> &Subspace<F> {
        self.quotient.inner()
    }

    /// Class of `v ∈ V`; `None` when `v` lies outside `V`.
    pub fn class_of(&self, v: &[F]) -> Option<Vec<F>> {
        self.quotient.coordinates(v)
    }
}

pub fn h1_of_ideal<F: Scalar>(ideal: &LieIdeal<F>) -> FirstHomology<F> {
    FirstHomology {
        quotient: SubQuotient::new(&ideal.space, ideal.derived()),
    }
}

/// `L` acting on `H_V` by `X·[v] = [[X, v]]`, one matrix per basis element of `L`.
pub fn action_on_h1<F: Scalar>(ideal: &LieIdeal<F>) -> Result<LieModule<F>> {
    let h = h1_of_ideal(ideal);
    action_with(ideal, &h)
}

fn action_with<F: Scalar>(ideal: &LieIdeal<F>, h: &FirstHomology<F>) -> Result<LieModule<F>> {
    let l = &ideal.ambient;
    let n = l.dim();
    let d = h.dim();
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = Matrix::zeros(d, d);
        for (c, r) in h.representatives().iter().enumerate() {
            let image = h
                .class_of(&l.bracket(&unit(n, i), r))
                .ok_or_else(|| Error::Invariant("bracket with the ideal left it".into()))?;
            for (row, x) in image.into_iter().enumerate() {
                m[(row, c)] = x;
            }
        }
        mats.push(m);
    }
    LieModule::new(l, d, mats)
}

/// A linear map `α: L → V` fixing `V` pointwise, as an ambient `n×n` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionOperator<F: Scalar> {
    matrix: Matrix<F>,
}

impl<F: Scalar> ProjectionOperator<F> {
    pub fn new(ideal: &LieIdeal<F>, matrix: Matrix<F>) -> Result<Self> {
        let n = ideal.ambient.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!("projection must be {n}×{n}")));
        }
        for c in 0..n {
            if !ideal.space.contains(&matrix.column(c)) {
                return Err(Error::NotProjection(format!(
                    "image of {} leaves the ideal",
                    ideal.ambient.labels()[c]
                )));
            }
        }
        for v in &ideal.basis {
            if matrix.mul_vec(v) != *v {
                return Err(Error::NotProjection(format!(
                    "{} is not fixed",
                    ideal.ambient.format(v)
                )));
            }
        }
        Ok(ProjectionOperator { matrix })
    }

    /// Projection along the unit vectors at the non-pivot coordinates of `V`.
    pub fn coordinate(ideal: &LieIdeal<F>) -> Self {
        let n = ideal.ambient.dim();
        let mut matrix = Matrix::zeros(n, n);
        for c in 0..n {
            let e = unit(n, c);
            let r = ideal.space.reduce(&e);
            for (row, (a, b)) in e.into_iter().zip(r).enumerate() {
                matrix[(row, c)] = a - b;
            }
        }
        ProjectionOperator { matrix }
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        self.matrix.mul_vec(x)
    }
}

/// `α̃(X) = [α(X)]`, a 1-cochain on `L` with values in `H_V`.
pub fn projection_form<F: Scalar>(ideal: &LieIdeal<F>, alpha: &ProjectionOperator<F>) -> Result<Cochain<F>> {
    projection_form_with(ideal, &h1_of_ideal(ideal), alpha)
}

fn projection_form_with<F: Scalar>(
    ideal: &LieIdeal<F>,
    h: &FirstHomology<F>,
    alpha: &ProjectionOperator<F>,
) -> Result<Cochain<F>> {
    let n = ideal.ambient.dim();
    let entries = (0..n)
        .map(|i| {
            let v = h
                .class_of(&alpha.apply(&unit(n, i)))
                .ok_or_else(|| Error::NotProjection("image leaves the ideal".into()))?;
            Ok((IndexSubset::singleton(i), v))
        })
        .collect::<Result<Vec<_>>>()?;
    Cochain::from_values(n, h.dim(), 1, entries)
}

/// `L/K` for an ideal `K`, with basis the classes of the unit vectors at the
/// non-pivot coordinates of `K`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<F: Scalar> {
    algebra: LieAlgebra<F>,
    kernel: Subspace<F>,
    complement: Vec<usize>,
}

impl<F: Scalar> QuotientAlgebra<F> {
    pub fn new(ideal: &LieIdeal<F>) -> Result<Self> {
        let l = &ideal.ambient;
        let kernel = ideal.space.clone();
        let complement = kernel.complement_indices();
        let n = l.dim();
        let mut constants = Vec::with_capacity(complement.len());
        for &a in &complement {
            let mut row = Vec::with_capacity(complement.len());
            for &b in &complement {
                row.push(kernel.quotient_coordinates(l.bracket_basis(a, b)));
            }
            constants.push(row);
        }
        let labels = complement.iter().map(|&c| l.labels()[c].clone()).collect();
        let algebra = LieAlgebra::new(labels, constants)?;
        let q = QuotientAlgebra {
            algebra,
            kernel,
            complement,
        };
        // well defined on cosets: shifting a representative by the kernel
        // must not change the class of the bracket
        for k in q.kernel.basis() {
            for i in 0..n {
                let b = l.bracket(k, &unit(n, i));
                if !is_zero_vec(&q.project(&b)) {
                    return Err(Error::Invariant("quotient bracket depends on representatives".into()));
                }
            }
        }
        Ok(q)
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    /// Ambient indices whose classes form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, x: &[F]) -> Vec<F> {
        self.kernel.quotient_coordinates(x)
    }

    /// Representative supported on the complement coordinates.
    pub fn lift(&self, y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.kernel.ambient_dim()];
        for (&c, a) in self.complement.iter().zip(y) {
            out[c] = a.clone();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CharClassResult<F: Scalar> {
    /// Representatives of the `H_V` basis in ambient coordinates.
    pub h_v_basis: Vec<Vec<F>>,
    pub quotient: QuotientAlgebra<F>,
    /// `L/V` acting on `H_V`.
    pub module: LieModule<F>,
    /// `dα̃` descended to `L/V`.
    pub cocycle: Cochain<F>,
    /// Class coordinates in the induced basis of `H²(L/V, H_V)`.
    pub class: Vec<F>,
    classes: SubQuotient<F>,
}

impl<F: Scalar> CharClassResult<F> {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.class)
    }

    pub fn cohomology_dim(&self) -> usize {
        self.classes.dim()
    }

    /// Class of another 2-cocycle on `L/V` with values in `H_V`.
    pub fn class_of(&self, cocycle: &Cochain<F>) -> Option<Vec<F>> {
        self.classes.coordinates(cocycle.coordinates())
    }
}

/// The class `[dα̃] ∈ H²(L/V, H_V)`.
///
/// Fails with [`Error::Invariant`] if `dα̃` does not descend to `L/V` or the
/// descended form is not closed.
pub fn characteristic_class<F: Scalar>(
    ideal: &LieIdeal<F>,
    alpha: &ProjectionOperator<F>,
) -> Result<CharClassResult<F>> {
    let l = &ideal.ambient;
    let h = h1_of_ideal(ideal);
    let module_l = action_with(ideal, &h)?;
    let tilde = projection_form_with(ideal, &h, alpha)?;
    let d = ce_coboundary(l, &module_l, &tilde)?;
    for v in &ideal.basis {
        if !d.contract(v).is_zero() {
            return Err(Error::Invariant(format!(
                "dα̃ does not vanish on {}",
                l.format(v)
            )));
        }
    }
    let quotient = QuotientAlgebra::new(ideal)?;
    let actions = quotient
        .complement
        .iter()
        .map(|&c| module_l.action(c).clone())
        .collect();
    let module = LieModule::new(&quotient.algebra, h.dim(), actions)?;
    let qd = quotient.algebra.dim();
    let entries = IndexSubset::all(qd, 2).into_iter().map(|s| {
        let (a, b) = (s.indices()[0], s.indices()[1]);
        let v = d.eval_basis(&[quotient.complement[a], quotient.complement[b]]);
        (s, v)
    });
    let cocycle = Cochain::from_values(qd, h.dim(), 2, entries.collect::<Vec<_>>())?;
    if !ce_coboundary(&quotient.algebra, &module, &cocycle)?.is_zero() {
        return Err(Error::Invariant("descended form is not closed".into()));
    }
    let classes = degree_two_classes(&quotient.algebra, &module);
    let class = classes
        .coordinates(cocycle.coordinates())
        .ok_or_else(|| Error::Invariant("descended form is not a cocycle".into()))?;
    Ok(CharClassResult {
        h_v_basis: h.representatives().to_vec(),
        quotient,
        module,
        cocycle,
        class,
        classes,
    })
}

fn degree_two_classes<F: Scalar>(alg: &LieAlgebra<F>, module: &LieModule<F>) -> SubQuotient<F> {
    let n = alg.dim();
    let size = IndexSubset::all(n, 2).len() * module.dim();
    let cocycles = kernel_space(&coboundary_matrix(alg, module, 2), size);
    let coboundaries = image_space(&coboundary_matrix(alg, module, 1), size);
    SubQuotient::new(&cocycles, coboundaries)
}

/// `L̃ = L/[V,V]` with the abelian ideal `Ṽ = V/[V,V]`.
#[derive(Clone, Debug)]
pub struct Abelianization<F: Scalar> {
    pub quotient: QuotientAlgebra<F>,
    pub ideal: LieIdeal<F>,
}

pub fn abelianize<F: Scalar>(ideal: &LieIdeal<F>) -> Result<Abelianization<F>> {
    let derived = ideal.derived();
    let derived_ideal = check_ideal(&ideal.ambient, derived.basis().to_vec())?;
    let quotient = QuotientAlgebra::new(&derived_ideal)?;
    let images = Subspace::span(
        quotient.algebra.dim(),
        ideal.basis.iter().map(|v| quotient.project(v)),
    );
    let tilde = check_ideal(&quotient.algebra, images.basis().to_vec())?;
    Ok(Abelianization {
        quotient,
        ideal: tilde,
    })
}

impl<F: Scalar> Abelianization<F> {
    /// Carries the descended cocycle of `V ⊆ L` along `L̃/Ṽ ≅ L/V` and
    /// `H_V ≅ Ṽ`, returning its class in `target`, which must be a result
    /// computed for `Ṽ ⊆ L̃`.
    pub fn transport_class(&self, source: &CharClassResult<F>, target: &CharClassResult<F>) -> Result<Vec<F>> {
        let tq = &target.quotient;
        let sq = &source.quotient;
        let qd = tq.algebra.dim();
        if qd != sq.algebra.dim() {
            return Err(Error::Dimension("quotients differ in dimension".into()));
        }
        let target_h = h1_of_ideal(&self.ideal);
        // H_V → H_Ṽ on basis representatives, as columns
        let value_map: Vec<Vec<F>> = source
            .h_v_basis
            .iter()
            .map(|r| {
                target_h
                    .class_of(&self.quotient.project(r))
                    .ok_or_else(|| Error::Invariant("representative leaves the ideal".into()))
            })
            .collect::<Result<_>>()?;
        let arg = |k: usize| -> Vec<F> {
            let in_tilde = tq.lift(&unit(qd, k));
            sq.project(&self.quotient.lift(&in_tilde))
        };
        let td = target_h.dim();
        let entries = IndexSubset::all(qd, 2).into_iter().map(|s| {
            let w = source
                .cocycle
                .eval(&[arg(s.indices()[0]), arg(s.indices()[1])]);
            let mut v = vec![F::zero(); td];
            for (c, coef) in w.iter().enumerate() {
                crate::linalg::axpy(&mut v, coef, &value_map[c]);
            }
            (s, v)
        });
        let moved = Cochain::from_values(qd, td, 2, entries.collect::<Vec<_>>())?;
        target
            .class_of(&moved)
            .ok_or_else(|| Error::Invariant("transported form is not a cocycle".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn ideal_checks() {
        let h3 = LieAlgebra::<Rational>::heisenberg();
        assert!(check_ideal(&h3, vec![v(&[0, 0, 1])]).is_ok());
        let sl2 = LieAlgebra::<Rational>::sl2();
        let err = check_ideal(&sl2, vec![v(&[1, 0, 0])]).unwrap_err();
        assert_eq!(
            err,
            Error::NotAnIdeal {
                ambient: "f".into(),
                element: "e".into()
            }
        );
        assert!(check_ideal(&sl2, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).is_ok());
        assert_eq!(
            check_ideal(&h3, vec![v(&[0, 0, 1]), v(&[0, 0, 2])]).unwrap_err(),
            Error::DependentBasis
        );
    }

    #[test]
    fn first_homology() {
        let sl2 = LieAlgebra::<Rational>::sl2();
        let all = check_ideal(&sl2, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(h1_of_ideal(&all).dim(), 0);
        let h3 = LieAlgebra::<Rational>::heisenberg();
        let eh = check_ideal(&h3, vec![v(&[1, 0, 0]), v(&[0, 0, 1])]).unwrap();
        let h = h1_of_ideal(&eh);
        assert_eq!(h.dim(), 2);
        let m = action_on_h1(&eh).unwrap();
        // f·[e] = [[f,e]] = −[h]
        let f = m.action(1);
        let ce = h.class_of(&v(&[1, 0, 0])).unwrap();
        let ch = h.class_of(&v(&[0, 0, 1])).unwrap();
        let minus_h: Vec<Rational> = ch.iter().map(|x| -x.clone()).collect();
        assert_eq!(f.mul_vec(&ce), minus_h);
        assert!(is_zero_vec(&f.mul_vec(&ch)));
        assert!(m.action(0).is_zero() && m.action(2).is_zero());
    }

    #[test]
    fn projections() {
        let h3 = LieAlgebra::<Rational>::heisenberg();
        let center = check_ideal(&h3, vec![v(&[0, 0, 1])]).unwrap();
        let p = ProjectionOperator::coordinate(&center);
        let form = projection_form(&center, &p).unwrap();
        assert_eq!(form.coordinates(), &v(&[0, 0, 1])[..]);
        assert!(ProjectionOperator::new(&center, Matrix::identity(3)).is_err());
        assert!(ProjectionOperator::new(&center, Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn heisenberg_center_class() {
        let h3 = LieAlgebra::<Rational>::heisenberg();
        let center = check_ideal(&h3, vec![v(&[0, 0, 1])]).unwrap();
        let r = characteristic_class(&center, &ProjectionOperator::coordinate(&center)).unwrap();
        assert_eq!(r.cocycle.eval_basis(&[0, 1]), v(&[-1]));
        assert_eq!(r.cohomology_dim(), 1);
        assert!(!r.is_zero());
    }

    #[test]
    fn split_extension_class_vanishes() {
        let l = LieAlgebra::<Rational>::sl2().direct_sum(&LieAlgebra::abelian(2)).unwrap();
        let basis = (0..3).map(|i| unit(5, i)).collect();
        let ideal = check_ideal(&l, basis).unwrap();
        let r = characteristic_class(&ideal, &ProjectionOperator::coordinate(&ideal)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn abelianization_dimensions() {
        let h3 = LieAlgebra::heisenberg().with_labels(["p", "q", "z"]).unwrap();
        let l = LieAlgebra::<Rational>::sl2().direct_sum(&h3).unwrap();
        let mut basis: Vec<Vec<Rational>> = (0..3).map(|i| unit(6, i)).collect();
        basis.push(unit(6, 5));
        let ideal = check_ideal(&l, basis).unwrap();
        let ab = abelianize(&ideal).unwrap();
        assert_eq!(ab.quotient.algebra().dim(), 3);
        assert_eq!(ab.ideal.dim(), 1);
        let before = characteristic_class(&ideal, &ProjectionOperator::coordinate(&ideal)).unwrap();
        let after = characteristic_class(&ab.ideal, &ProjectionOperator::coordinate(&ab.ideal)).unwrap();
        assert!(!before.is_zero());
        assert_eq!(ab.transport_class(&before, &after).unwrap(), after.class);
    }
}
