use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use super::IndexSubset;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarContext};
use crate::scalar::Scalar;

/// Marker distinguishing multivector fields from differential forms.
pub trait Variance: Copy + fmt::Debug + Eq + Send + Sync + 'static {
    /// Text for the basis element of coordinate `name`.
    fn basis_symbol(name: &str) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contravariant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Covariant;

impl Variance for Contravariant {
    fn basis_symbol(name: &str) -> String {
        format!("d/d{name}")
    }
}

impl Variance for Covariant {
    fn basis_symbol(name: &str) -> String {
        format!("d{name}")
    }
}

/// Homogeneous antisymmetric tensor field of a fixed grade with polynomial
/// coefficients, stored sparsely over sorted index subsets.
pub struct Graded<F, V> {
    ctx: VarContext,
    grade: usize,
    comps: BTreeMap<IndexSubset, Polynomial<F>>,
    _variance: PhantomData<V>,
}

/// Multivector field `Σ f_I ∂_I`.
pub type Multivector<F> = Graded<F, Contravariant>;
/// Differential form `Σ g_I dx_I`.
pub type Form<F> = Graded<F, Covariant>;

impl<F: Clone, V> Clone for Graded<F, V> {
    fn clone(&self) -> Self {
        Graded {
            ctx: self.ctx.clone(),
            grade: self.grade,
            comps: self.comps.clone(),
            _variance: PhantomData,
        }
    }
}

impl<F: PartialEq, V> PartialEq for Graded<F, V> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.grade == other.grade && self.comps == other.comps
    }
}

impl<F: Eq, V> Eq for Graded<F, V> {}

impl<F: Scalar, V: Variance> Graded<F, V> {
    pub fn zero(ctx: &VarContext, grade: usize) -> Self {
        Graded {
            ctx: ctx.clone(),
            grade,
            comps: BTreeMap::new(),
            _variance: PhantomData,
        }
    }

    /// Grade-0 field holding a single function.
    pub fn scalar(p: Polynomial<F>) -> Self {
        let ctx = p.ctx().clone();
        Self::zero(&ctx, 0).with_term(IndexSubset::empty(), p)
    }

    pub fn basis(ctx: &VarContext, subset: IndexSubset) -> Self {
        let grade = subset.grade();
        Self::zero(ctx, grade).with_term(subset, Polynomial::one(ctx))
    }

    /// `∂_i` or `dx_i`.
    pub fn coordinate(ctx: &VarContext, i: usize) -> Self {
        Self::basis(ctx, IndexSubset::singleton(i))
    }

    /// Grade-1 field from a coefficient list, one entry per variable.
    pub fn from_coefficients(ctx: &VarContext, coeffs: Vec<Polynomial<F>>) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::LengthMismatch {
                expected: ctx.len(),
                got: coeffs.len(),
            });
        }
        let mut out = Self::zero(ctx, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            c.ctx().check_same(ctx)?;
            out.add_component(IndexSubset::singleton(i), c);
        }
        Ok(out)
    }

    pub fn from_components<I>(ctx: &VarContext, grade: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IndexSubset, Polynomial<F>)>,
    {
        let mut out = Self::zero(ctx, grade);
        for (s, p) in comps {
            if s.grade() != grade {
                return Err(Error::WrongGrade {
                    expected: grade,
                    got: s.grade(),
                });
            }
            if s.indices().last().is_some_and(|&i| i >= ctx.len()) {
                return Err(Error::Dimension(format!(
                    "index subset {s:?} exceeds {} variables",
                    ctx.len()
                )));
            }
            p.ctx().check_same(ctx)?;
            out.add_component(s, p);
        }
        Ok(out)
    }

    fn with_term(mut self, s: IndexSubset, p: Polynomial<F>) -> Self {
        self.add_component(s, p);
        self
    }

    pub(crate) fn add_component(&mut self, s: IndexSubset, p: Polynomial<F>) {
        debug_assert_eq!(s.grade(), self.grade);
        if p.is_zero() {
            return;
        }
        match self.comps.remove(&s) {
            None => {
                self.comps.insert(s, p);
            }
            Some(old) => {
                let sum = &old + &p;
                if !sum.is_zero() {
                    self.comps.insert(s, sum);
                }
            }
        }
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexSubset, &Polynomial<F>)> {
        self.comps.iter()
    }

    pub fn component(&self, s: &IndexSubset) -> Polynomial<F> {
        self.comps
            .get(s)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ctx))
    }

    /// Coefficient of `∂_i` (or `dx_i`) of a grade-1 field.
    pub fn coefficient(&self, i: usize) -> Polynomial<F> {
        self.component(&IndexSubset::singleton(i))
    }

    /// The function carried by a grade-0 field.
    pub fn as_scalar(&self) -> Polynomial<F> {
        self.component(&IndexSubset::empty())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        if self.grade != other.grade {
            return Err(Error::WrongGrade {
                expected: self.grade,
                got: other.grade,
            });
        }
        let mut out = self.clone();
        for (s, p) in &other.comps {
            out.add_component(s.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Multiplies every coefficient by a function.
    pub fn mul_poly(&self, f: &Polynomial<F>) -> Self {
        self.map_coefficients(|c| c * f)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map_coefficients(|p| p.scale(c))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Polynomial<F>) -> Polynomial<F>) -> Self {
        let mut out = Self::zero(&self.ctx, self.grade);
        for (s, p) in &self.comps {
            out.add_component(s.clone(), f(p));
        }
        out
    }

    /// Fallible coefficient map, for operations such as reduction mod an ideal.
    pub fn try_map_coefficients(
        &self,
        mut f: impl FnMut(&Polynomial<F>) -> Result<Polynomial<F>>,
    ) -> Result<Self> {
        let mut out = Self::zero(&self.ctx, self.grade);
        for (s, p) in &self.comps {
            out.add_component(s.clone(), f(p)?);
        }
        Ok(out)
    }

    /// Exterior product; grades add.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Self::zero(&self.ctx, self.grade + other.grade);
        for (sa, pa) in &self.comps {
            for (sb, pb) in &other.comps {
                if let Some((neg, s)) = sa.wedge(sb) {
                    let prod = pa * pb;
                    out.add_component(s, if neg { -prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    /// Values at a point, in the order of `IndexSubset::all(n, grade)`.
    pub fn evaluate(&self, point: &[F]) -> Result<Vec<F>> {
        IndexSubset::all(self.ctx.len(), self.grade)
            .iter()
            .map(|s| self.component(s).evaluate(point))
            .collect()
    }

    /// Rebuilds a constant-coefficient field from point values laid out as in
    /// [`Self::evaluate`].
    pub fn from_point_values(ctx: &VarContext, grade: usize, values: &[F]) -> Self {
        let subsets = IndexSubset::all(ctx.len(), grade);
        assert_eq!(subsets.len(), values.len());
        let mut out = Self::zero(ctx, grade);
        for (s, v) in subsets.into_iter().zip(values) {
            out.add_component(s, Polynomial::constant(ctx, v.clone()));
        }
        out
    }

    pub fn max_coefficient_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Polynomial::degree).max()
    }

    pub(crate) fn require_grade(&self, grade: usize) -> Result<()> {
        if self.grade == grade {
            Ok(())
        } else {
            Err(Error::WrongGrade {
                expected: grade,
                got: self.grade,
            })
        }
    }
}

impl<F: Scalar, V: Variance> fmt::Display for Graded<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("0");
        }
        for (k, (s, p)) in self.comps.iter().enumerate() {
            let basis: Vec<String> = s
                .indices()
                .iter()
                .map(|&i| V::basis_symbol(self.ctx.name(i)))
                .collect();
            let basis = basis.join(" ^ ");
            // pull the sign of a single-term coefficient out front
            let (neg, body) = match p.terms().next() {
                Some((_, c)) if p.num_terms() == 1 && c.is_negative() => (true, -p),
                _ => (false, p.clone()),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if basis.is_empty() {
                if body.num_terms() > 1 && k > 0 {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if body == Polynomial::one(&self.ctx) {
                f.write_str(&basis)?;
            } else if body.num_terms() == 1 {
                write!(f, "{body} * {basis}")?;
            } else {
                write!(f, "({body}) * {basis}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar, V: Variance> fmt::Debug for Graded<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graded<{}>({})", self.grade, self)
    }
}

impl<F: Scalar, V: Variance> Add for &Graded<F, V> {
    type Output = Graded<F, V>;
    fn add(self, rhs: Self) -> Graded<F, V> {
        self.checked_add(rhs).expect("tensor grade or context mismatch")
    }
}

impl<F: Scalar, V: Variance> Sub for &Graded<F, V> {
    type Output = Graded<F, V>;
    fn sub(self, rhs: Self) -> Graded<F, V> {
        self.checked_sub(rhs).expect("tensor grade or context mismatch")
    }
}

impl<F: Scalar, V: Variance> Neg for &Graded<F, V> {
    type Output = Graded<F, V>;
    fn neg(self) -> Graded<F, V> {
        self.map_coefficients(|p| -p)
    }
}
