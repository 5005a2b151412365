//! Poisson bivectors, Hamiltonian fields and the anchor map.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::poly::{Polynomial, VarContext};
use crate::scalar::Scalar;
use crate::tensor::{
    apply_vector, contract_covector, exterior_derivative, schouten_bracket, Form, IndexSubset,
    Multivector,
};

/// `[π, π]`; zero exactly when `π` is Poisson.
pub fn jacobi_defect<F: Scalar>(pi: &Multivector<F>) -> Result<Multivector<F>> {
    pi.require_grade(2)?;
    schouten_bracket(pi, pi)
}

/// A bivector field together with a cached Jacobi check.
pub struct PoissonStructure<F> {
    pi: Multivector<F>,
    defect: OnceLock<Multivector<F>>,
}

impl<F: Scalar> Clone for PoissonStructure<F> {
    fn clone(&self) -> Self {
        let defect = OnceLock::new();
        if let Some(d) = self.defect.get() {
            let _ = defect.set(d.clone());
        }
        PoissonStructure {
            pi: self.pi.clone(),
            defect,
        }
    }
}

impl<F: Scalar> std::fmt::Debug for PoissonStructure<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PoissonStructure({})", self.pi)
    }
}

impl<F: Scalar> PoissonStructure<F> {
    /// Wraps a bivector without checking Jacobi; see [`Self::verify`].
    pub fn new(pi: Multivector<F>) -> Result<Self> {
        pi.require_grade(2)?;
        Ok(PoissonStructure {
            pi,
            defect: OnceLock::new(),
        })
    }

    /// Builds `Σ_{i<j} π^{ij} ∂_i ∧ ∂_j` from `(i, j, π^{ij})` entries.
    /// Entries with `i > j` are stored with the opposite sign.
    pub fn from_entries<I>(ctx: &VarContext, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial<F>)>,
    {
        let mut comps = Vec::new();
        for (i, j, p) in entries {
            if i == j {
                return Err(Error::Dimension(format!("diagonal bivector entry ({i}, {i})")));
            }
            let (neg, s) = IndexSubset::singleton(i)
                .wedge(&IndexSubset::singleton(j))
                .expect("distinct indices");
            comps.push((s, if neg { -p } else { p }));
        }
        Self::new(Multivector::from_components(ctx, 2, comps)?)
    }

    /// Checks the Jacobi identity, failing with the defect as witness.
    pub fn verified(pi: Multivector<F>) -> Result<Self> {
        let s = Self::new(pi)?;
        s.verify()?;
        Ok(s)
    }

    pub fn ctx(&self) -> &VarContext {
        self.pi.ctx()
    }

    pub fn bivector(&self) -> &Multivector<F> {
        &self.pi
    }

    /// `π^{ij}` for any pair of indices.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial<F> {
        if i == j {
            return Polynomial::zero(self.ctx());
        }
        let (neg, s) = IndexSubset::singleton(i)
            .wedge(&IndexSubset::singleton(j))
            .expect("distinct indices");
        let p = self.pi.component(&s);
        if neg {
            -p
        } else {
            p
        }
    }

    pub fn jacobi_defect(&self) -> &Multivector<F> {
        self.defect
            .get_or_init(|| jacobi_defect(&self.pi).expect("grade checked at construction"))
    }

    pub fn is_poisson(&self) -> bool {
        self.jacobi_defect().is_zero()
    }

    pub fn verify(&self) -> Result<()> {
        let d = self.jacobi_defect();
        if d.is_zero() {
            Ok(())
        } else {
            Err(Error::NotPoisson {
                defect: d.to_string(),
            })
        }
    }

    /// `X_α`, the contraction of `α` into the first slot of `π`.
    pub fn anchor(&self, alpha: &Form<F>) -> Result<Multivector<F>> {
        contract_covector(alpha, &self.pi)
    }

    /// `X_f = X_{df}`.
    pub fn hamiltonian_field(&self, f: &Polynomial<F>) -> Result<Multivector<F>> {
        f.ctx().check_same(self.ctx())?;
        self.anchor(&exterior_derivative(&Form::scalar(f.clone())))
    }

    /// `{f, g} = X_f(g)`; with this anchor `{x, y} = 1` for `∂x ∧ ∂y`.
    pub fn bracket(&self, f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
        apply_vector(&self.hamiltonian_field(f)?, g)
    }

    /// Rank of the matrix `(π^{ij}(point))`.
    pub fn rank_at(&self, point: &[F]) -> Result<usize> {
        Ok(self.matrix_at(point)?.rank())
    }

    pub fn matrix_at(&self, point: &[F]) -> Result<Matrix<F>> {
        let n = self.ctx().len();
        if point.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let mut m = Matrix::zeros(n, n);
        for (s, p) in self.pi.components() {
            let (i, j) = (s.indices()[0], s.indices()[1]);
            let v = p.evaluate(point)?;
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
        Ok(m)
    }

    /// First pair `(x_i, h)` with `{x_i, h} ∉ I`, if any.
    pub fn integral_witness(&self, ideal: &Ideal<F>) -> Result<Option<(usize, Polynomial<F>, Polynomial<F>)>> {
        ideal.ctx().check_same(self.ctx())?;
        for h in ideal.generators() {
            for i in 0..self.ctx().len() {
                let b = self.bracket(&Polynomial::var(self.ctx(), i), h)?;
                if !ideal.contains(&b)? {
                    return Ok(Some((i, h.clone(), b)));
                }
            }
        }
        Ok(None)
    }

    /// Whether every Hamiltonian field maps `I` into itself.
    pub fn is_integral_ideal(&self, ideal: &Ideal<F>) -> Result<bool> {
        Ok(self.integral_witness(ideal)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_multivector, parse_polynomial, Rational};

    fn ctx() -> VarContext {
        VarContext::new(["x", "y"]).unwrap()
    }

    fn ps(s: &str) -> PoissonStructure<Rational> {
        PoissonStructure::new(parse_multivector(s, &ctx()).unwrap()).unwrap()
    }

    fn p(s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, &ctx()).unwrap()
    }

    fn v(s: &str) -> Multivector<Rational> {
        parse_multivector(s, &ctx()).unwrap()
    }

    #[test]
    fn two_dimensional_bivectors_are_poisson() {
        assert!(ps("d/dx ^ d/dy").is_poisson());
        assert!(ps("x * d/dx ^ d/dy").is_poisson());
    }

    #[test]
    fn three_dimensional_defects() {
        let c3 = VarContext::new(["x1", "x2", "x3"]).unwrap();
        let lin = PoissonStructure::new(
            parse_multivector::<Rational>("x3 * d/dx1 ^ d/dx2 + x1 * d/dx2 ^ d/dx3", &c3).unwrap(),
        )
        .unwrap();
        assert!(lin.is_poisson());
        let bad = PoissonStructure::new(
            parse_multivector::<Rational>("x3 * d/dx1 ^ d/dx2 + 3 * x2 * d/dx2 ^ d/dx3", &c3)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(
            bad.jacobi_defect(),
            &parse_multivector("-6 * x3 * d/dx1 ^ d/dx2 ^ d/dx3", &c3).unwrap()
        );
        assert!(matches!(bad.verify(), Err(Error::NotPoisson { .. })));
    }

    #[test]
    fn hamiltonian_fields_and_anchor() {
        let pi = ps("d/dx ^ d/dy");
        assert!(pi.hamiltonian_field(&p("7")).unwrap().is_zero());
        assert_eq!(pi.hamiltonian_field(&p("y")).unwrap(), v("-d/dx"));
        assert_eq!(pi.hamiltonian_field(&p("x")).unwrap(), v("d/dy"));
        assert_eq!(pi.bracket(&p("x"), &p("y")).unwrap(), p("1"));
        let phi = ps("x * d/dx ^ d/dy");
        assert_eq!(phi.hamiltonian_field(&p("y")).unwrap(), v("-x * d/dx"));
        let dx = crate::parse_form::<Rational>("dx", &ctx()).unwrap();
        assert_eq!(pi.anchor(&dx).unwrap(), v("d/dy"));
    }

    #[test]
    fn ranks() {
        let zero = [Rational::from_int(0), Rational::from_int(0)];
        let one = [Rational::from_int(1), Rational::from_int(0)];
        assert_eq!(ps("d/dx ^ d/dy").rank_at(&zero).unwrap(), 2);
        assert_eq!(ps("x * d/dx ^ d/dy").rank_at(&zero).unwrap(), 0);
        assert_eq!(ps("x * d/dx ^ d/dy").rank_at(&one).unwrap(), 2);
    }

    #[test]
    fn integral_ideals() {
        let max = Ideal::new(&ctx(), vec![p("x"), p("y")]).unwrap();
        assert!(ps("x * d/dx ^ d/dy").is_integral_ideal(&max).unwrap());
        assert!(!ps("d/dx ^ d/dy").is_integral_ideal(&max).unwrap());
        assert!(ps("d/dx ^ d/dy").is_integral_ideal(&Ideal::zero(&ctx())).unwrap());
    }

    #[test]
    fn from_entries_matches_parser() {
        let s = PoissonStructure::from_entries(&ctx(), vec![(1, 0, p("x"))]).unwrap();
        assert_eq!(s.bivector(), &v("-x * d/dx ^ d/dy"));
        assert_eq!(s.entry(1, 0), p("x"));
    }
}
