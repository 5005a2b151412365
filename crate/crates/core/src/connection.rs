//! The Bott connection of a symplectic leaf, given by an integral ideal of a
//! Poisson structure.
//!
//! Symbolic results are representatives with coefficients in normal form
//! modulo the ideal. Classes are compared pointwise: at a point of the leaf the
//! transversal space is the quotient of the coordinate space by the span of
//! the evaluated Hamiltonian fields, with complement basis given by the
//! non-pivot coordinates of that span.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::{Matrix, Subspace};
use crate::poisson::PoissonStructure;
use crate::poly::{Polynomial, VarContext};
use crate::scalar::Scalar;
use crate::tensor::{
    apply_vector, interior_product, lie_derivative, pairing, schouten_bracket, vector_bracket,
    Form, Graded, IndexSubset, Multivector, Variance,
};

/// A verified Poisson structure with an integral ideal and an optional base
/// point on its zero set.
#[derive(Clone, Debug)]
pub struct LeafContext<F: Scalar> {
    poisson: PoissonStructure<F>,
    ideal: Ideal<F>,
    base_point: Option<Vec<F>>,
}

/// Representative of a section of `∧^k V(N)`; grade 1 gives `V(N)` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalMultivector<F: Scalar> {
    representative: Multivector<F>,
}

pub type TransversalVector<F> = TransversalMultivector<F>;

/// A 1-form whose pairing with every tangent generator lies in the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConormalForm<F: Scalar> {
    representative: Form<F>,
}

/// Flat transversal sections at a point, in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatSections<F> {
    pub transversal_dim: usize,
    pub basis: Vec<Vec<F>>,
}

impl<F: Scalar> TransversalMultivector<F> {
    pub fn representative(&self) -> &Multivector<F> {
        &self.representative
    }

    pub fn grade(&self) -> usize {
        self.representative.grade()
    }
}

impl<F: Scalar> ConormalForm<F> {
    /// Checks the conormal condition against the tangent generators of `leaf`.
    pub fn new(leaf: &LeafContext<F>, omega: Form<F>) -> Result<Self> {
        omega.require_grade(1)?;
        omega.ctx().check_same(leaf.ctx())?;
        for t in leaf.tangent_generators() {
            let p = pairing(&omega, &t)?;
            if !leaf.ideal.contains(&p)? {
                return Err(Error::NotConormal {
                    field: t.to_string(),
                    pairing: p.to_string(),
                });
            }
        }
        Ok(ConormalForm {
            representative: leaf.normal_form(&omega)?,
        })
    }

    pub fn representative(&self) -> &Form<F> {
        &self.representative
    }
}

impl<F: Scalar> LeafContext<F> {
    /// Verifies the Jacobi identity, that `ideal` is an integral, and that the
    /// base point annihilates every generator.
    pub fn new(
        poisson: PoissonStructure<F>,
        ideal: Ideal<F>,
        base_point: Option<Vec<F>>,
    ) -> Result<Self> {
        ideal.ctx().check_same(poisson.ctx())?;
        poisson.verify()?;
        if let Some((i, h, b)) = poisson.integral_witness(&ideal)? {
            return Err(Error::NotIntegral(format!(
                "{{{}, {h}}} = {b} is not in the ideal",
                poisson.ctx().name(i)
            )));
        }
        let leaf = LeafContext {
            poisson,
            ideal,
            base_point: None,
        };
        if let Some(p) = &base_point {
            leaf.check_point(p)?;
        }
        Ok(LeafContext { base_point, ..leaf })
    }

    pub fn ctx(&self) -> &VarContext {
        self.poisson.ctx()
    }

    pub fn poisson(&self) -> &PoissonStructure<F> {
        &self.poisson
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn base_point(&self) -> Option<&[F]> {
        self.base_point.as_deref()
    }

    fn require_base_point(&self) -> Result<&[F]> {
        self.base_point().ok_or(Error::MissingBasePoint)
    }

    /// Fails unless every generator of the ideal vanishes at `point`.
    pub fn check_point(&self, point: &[F]) -> Result<()> {
        if point.len() != self.ctx().len() {
            return Err(Error::LengthMismatch {
                expected: self.ctx().len(),
                got: point.len(),
            });
        }
        for g in self.ideal.generators() {
            let v = g.evaluate(point)?;
            if !v.is_zero() {
                return Err(Error::PointNotOnLeaf {
                    generator: g.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Reduces every coefficient modulo the ideal.
    pub fn normal_form<V: Variance>(&self, t: &Graded<F, V>) -> Result<Graded<F, V>> {
        t.try_map_coefficients(|p| self.ideal.normal_form(p))
    }

    /// Hamiltonian fields of the coordinates, `X_{x_1}, …, X_{x_n}`.
    pub fn tangent_generators(&self) -> Vec<Multivector<F>> {
        (0..self.ctx().len())
            .map(|i| {
                self.poisson
                    .hamiltonian_field(&Polynomial::var(self.ctx(), i))
                    .expect("same context")
            })
            .collect()
    }

    /// Span of `T(N) ∧ ∧^{k−1} T(M)` at `point`, in the coordinates of
    /// `IndexSubset::all(n, k)`.
    pub fn tangent_span_at(&self, k: usize, point: &[F]) -> Result<Subspace<F>> {
        self.check_point(point)?;
        let n = self.ctx().len();
        let ambient = IndexSubset::all(n, k).len();
        if k == 0 {
            return Ok(Subspace::zero(ambient));
        }
        let mut vectors = Vec::new();
        for t in self.tangent_generators() {
            let t0 = Multivector::from_point_values(self.ctx(), 1, &t.evaluate(point)?);
            if t0.is_zero() {
                continue;
            }
            for s in IndexSubset::all(n, k - 1) {
                let w = t0.wedge(&Multivector::basis(self.ctx(), s))?;
                vectors.push(w.evaluate(point)?);
            }
        }
        Ok(Subspace::span(ambient, vectors))
    }

    /// Dimension of `∧^k V(N)` at `point`.
    pub fn transversal_dim_at(&self, k: usize, point: &[F]) -> Result<usize> {
        let span = self.tangent_span_at(k, point)?;
        Ok(span.ambient_dim() - span.dim())
    }

    /// Class of `u(point)` in `∧^k V(N)` at `point`, in complement coordinates.
    pub fn reduce_mod_tangent(&self, u: &Multivector<F>, point: &[F]) -> Result<Vec<F>> {
        u.ctx().check_same(self.ctx())?;
        let span = self.tangent_span_at(u.grade(), point)?;
        Ok(span.quotient_coordinates(&u.evaluate(point)?))
    }

    /// `∇_α(s) = ρ([X_α, s])` for a vector field `s`.
    pub fn covariant_derivative_transversal(
        &self,
        alpha: &Form<F>,
        s: &Multivector<F>,
    ) -> Result<TransversalVector<F>> {
        s.require_grade(1)?;
        let x = self.poisson.anchor(alpha)?;
        Ok(TransversalMultivector {
            representative: self.normal_form(&vector_bracket(&x, s)?)?,
        })
    }

    /// `∇_α(U) = ρ([X_α, U])` with the Schouten bracket, for `|U| ≥ 1`.
    pub fn covariant_derivative_multivector(
        &self,
        alpha: &Form<F>,
        u: &Multivector<F>,
    ) -> Result<TransversalMultivector<F>> {
        if u.grade() == 0 {
            return Err(Error::WrongGrade {
                expected: 1,
                got: 0,
            });
        }
        let x = self.poisson.anchor(alpha)?;
        Ok(TransversalMultivector {
            representative: self.normal_form(&schouten_bracket(&x, u)?)?,
        })
    }

    /// `∇_α(ω) = L_{X_α} ω`, normal-formed; the result is again conormal.
    pub fn covariant_derivative_conormal(
        &self,
        alpha: &Form<F>,
        omega: &ConormalForm<F>,
    ) -> Result<ConormalForm<F>> {
        let x = self.poisson.anchor(alpha)?;
        let l = lie_derivative(&x, &omega.representative)?;
        ConormalForm::new(self, l)
    }

    /// `⟨∇_α ω, s⟩ − X_α(ω(s)) + ω(∇_α s)`, reduced modulo the ideal.
    pub fn duality_residual(
        &self,
        alpha: &Form<F>,
        omega: &ConormalForm<F>,
        s: &Multivector<F>,
    ) -> Result<Polynomial<F>> {
        let x = self.poisson.anchor(alpha)?;
        let lhs = interior_product(s, self.covariant_derivative_conormal(alpha, omega)?.representative())?
            .as_scalar();
        let ws = pairing(omega.representative(), s)?;
        let nabla_s = self.covariant_derivative_transversal(alpha, s)?;
        let rhs = &apply_vector(&x, &ws)? - &pairing(omega.representative(), nabla_s.representative())?;
        self.ideal.normal_form(&(&lhs - &rhs))
    }

    /// Whether the duality identity holds modulo the ideal and at the base point.
    pub fn duality_check(
        &self,
        alpha: &Form<F>,
        omega: &ConormalForm<F>,
        s: &Multivector<F>,
    ) -> Result<bool> {
        let point = self.require_base_point()?;
        let r = self.duality_residual(alpha, omega, s)?;
        Ok(r.is_zero() && r.evaluate(point)?.is_zero())
    }

    /// Matrix of `U ↦ ∇_α(U)` on `∧^k V(N)` at `point`, in complement coordinates.
    /// Constant multivectors serve as extensions.
    pub fn connection_matrix_at(&self, alpha: &Form<F>, k: usize, point: &[F]) -> Result<Matrix<F>> {
        let n = self.ctx().len();
        let span = self.tangent_span_at(k, point)?;
        let subsets = IndexSubset::all(n, k);
        let comp = span.complement_indices();
        let mut m = Matrix::zeros(comp.len(), comp.len());
        for (col, &c) in comp.iter().enumerate() {
            let u = Multivector::basis(self.ctx(), subsets[c].clone());
            let d = self.covariant_derivative_multivector(alpha, &u)?;
            let v = span.quotient_coordinates(&d.representative.evaluate(point)?);
            for (row, x) in v.into_iter().enumerate() {
                m[(row, col)] = x;
            }
        }
        Ok(m)
    }

    /// Joint kernel of `∇_α` on `∧^k V(N)` at the base point over `alphas`,
    /// returned as ambient coordinate vectors of constant representatives.
    pub fn parallel_sections_at_point(&self, alphas: &[Form<F>], k: usize) -> Result<FlatSections<F>> {
        let point = self.require_base_point()?.to_vec();
        let n = self.ctx().len();
        let span = self.tangent_span_at(k, &point)?;
        let comp = span.complement_indices();
        let mut rows = Vec::new();
        for a in alphas {
            rows.extend(self.connection_matrix_at(a, k, &point)?.to_rows());
        }
        let kernel = if rows.is_empty() {
            (0..comp.len()).map(|i| crate::linalg::unit(comp.len(), i)).collect()
        } else {
            Matrix::from_rows(comp.len(), rows).nullspace()
        };
        let ambient = IndexSubset::all(n, k).len();
        let basis = kernel
            .into_iter()
            .map(|v| {
                let mut full = vec![F::zero(); ambient];
                for (x, &c) in v.into_iter().zip(&comp) {
                    full[c] = x;
                }
                full
            })
            .collect();
        Ok(FlatSections {
            transversal_dim: comp.len(),
            basis,
        })
    }

    /// Transversal vectors at the base point killed by `∇_{dx_i}` for every
    /// coordinate covector.
    pub fn flat_sections_at_point(&self) -> Result<FlatSections<F>> {
        let alphas: Vec<Form<F>> = (0..self.ctx().len())
            .map(|i| Form::coordinate(self.ctx(), i))
            .collect();
        self.parallel_sections_at_point(&alphas, 1)
    }
}
