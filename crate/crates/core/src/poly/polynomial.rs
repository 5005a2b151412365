use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Monomial, MonomialOrder, VarContext};
use crate::error::{Error, Result};
use crate::scalar::{is_zero, Scalar};

/// Multivariate polynomial with exact coefficients over a [`VarContext`].
///
/// Terms are kept in a map keyed by exponent vector (grevlex order) with no
/// zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    ctx: VarContext,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(ctx: &VarContext) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &VarContext, c: F) -> Self {
        Self::monomial(ctx, Monomial::one(ctx.len()), c)
    }

    pub fn one(ctx: &VarContext) -> Self {
        Self::constant(ctx, F::one())
    }

    pub fn var(ctx: &VarContext, i: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), i), F::one())
    }

    pub fn monomial(ctx: &VarContext, m: Monomial, c: F) -> Self {
        assert_eq!(m.exponents().len(), ctx.len(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ctx: &VarContext, terms: I) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ctx.len(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Monomial::one(self.ctx.len()))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        match order {
            MonomialOrder::Grevlex => self.terms.iter().next_back(),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.compare(a.0, b.0)),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_same(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if is_zero(c) {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if is_zero(c) {
            return Self::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the `i`-th variable.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(i) {
                out.add_term(lowered, c.clone() * F::from_int(e as i64));
            }
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self> {
        Ok(self.partial(self.ctx.require(var)?))
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        if point.len() != self.ctx.len() {
            return Err(Error::LengthMismatch {
                expected: self.ctx.len(),
                got: point.len(),
            });
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Moves the polynomial into another context with the same variables.
    pub fn with_context(&self, ctx: &VarContext) -> Result<Self> {
        self.ctx.check_same(ctx)?;
        Ok(Polynomial {
            ctx: ctx.clone(),
            terms: self.terms.clone(),
        })
    }
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mono = format_monomial(&self.ctx, m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn format_monomial(ctx: &VarContext, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ctx.name(i).to_string()
            } else {
                format!("{}^{}", ctx.name(i), e)
            }
        })
        .collect();
    parts.join("*")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Scalar> $tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }

        impl<F: Scalar> $tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_polynomial, Rational};

    fn ctx() -> VarContext {
        VarContext::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial<Rational> {
        parse_polynomial(s, &ctx()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x^2 + y") + &p("0"), p("x^2 + y"));
        assert_eq!(&p("x") * &p("y"), p("x*y"));
        assert_eq!(&p("x + 1") * &p("x - 1"), p("x^2 - 1"));
        assert_eq!(p("x + 1").pow(3), p("x^3 + 3*x^2 + 3*x + 1"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let other = VarContext::new(["x", "z"]).unwrap();
        let q = Polynomial::<Rational>::var(&other, 0);
        assert_eq!(p("x").checked_add(&q), Err(Error::ContextMismatch));
    }

    #[test]
    fn derivative_examples() {
        assert!(p("7/3").partial(0).is_zero());
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert_eq!(
            p("(x+y)^3").partial_derivative("y").unwrap(),
            p("3*(x+y)^2")
        );
        assert!(p("x").partial_derivative("z").is_err());
    }

    #[test]
    fn evaluate_examples() {
        let half = Rational::from_ratio(1, 2);
        let third = Rational::from_ratio(1, 3);
        assert_eq!(p("0").evaluate(&[half.clone(), third.clone()]).unwrap(), Rational::from_int(0));
        assert_eq!(
            p("x^2 + y^2").evaluate(&[Rational::from_int(0), Rational::from_int(0)]).unwrap(),
            Rational::from_int(0)
        );
        assert_eq!(
            p("x^2 + y^2").evaluate(&[half, third]).unwrap(),
            Rational::from_ratio(13, 36)
        );
        assert!(matches!(
            p("x").evaluate(&[Rational::from_int(1)]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("y + x^2").to_string(), "x^2 + y");
        assert_eq!(p("-3/2*x*y^2 + 1 - y").to_string(), "-3/2*x*y^2 - y + 1");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
    }
}
