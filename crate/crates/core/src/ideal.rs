//! Polynomial ideals with reduced Gröbner bases.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VarContext};
use crate::scalar::Scalar;

/// Ideal given by generators; the reduced Gröbner basis is computed on first
/// use and cached.
pub struct Ideal<F> {
    ctx: VarContext,
    generators: Vec<Polynomial<F>>,
    order: MonomialOrder,
    groebner: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Scalar> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let groebner = OnceLock::new();
        if let Some(g) = self.groebner.get() {
            let _ = groebner.set(g.clone());
        }
        Ideal {
            ctx: self.ctx.clone(),
            generators: self.generators.clone(),
            order: self.order,
            groebner,
        }
    }
}

impl<F: Scalar> Ideal<F> {
    /// Ideal generated by `generators` under grevlex. Zero generators are
    /// dropped, so an empty or all-zero list gives the zero ideal.
    pub fn new(ctx: &VarContext, generators: Vec<Polynomial<F>>) -> Result<Self> {
        Self::with_order(ctx, generators, MonomialOrder::Grevlex)
    }

    pub fn with_order(
        ctx: &VarContext,
        generators: Vec<Polynomial<F>>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for g in &generators {
            g.ctx().check_same(ctx)?;
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
            groebner: OnceLock::new(),
        })
    }

    pub fn zero(ctx: &VarContext) -> Self {
        Self::with_order(ctx, Vec::new(), MonomialOrder::Grevlex).expect("no generators")
    }

    /// Maximal ideal `(x1 − a1, …, xn − an)` of a point.
    pub fn vanishing_ideal_of_point(ctx: &VarContext, point: &[F]) -> Result<Self> {
        if point.len() != ctx.len() {
            return Err(Error::LengthMismatch {
                expected: ctx.len(),
                got: point.len(),
            });
        }
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, a)| &Polynomial::var(ctx, i) - &Polynomial::constant(ctx, a.clone()))
            .collect();
        Self::new(ctx, gens)
    }

    pub fn ctx(&self) -> &VarContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis, monic and sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial<F>] {
        self.groebner.get_or_init(|| {
            let basis = buchberger(&self.generators, self.order);
            debug_assert!(self
                .generators
                .iter()
                .all(|g| reduce(g, &basis, self.order).is_zero()));
            basis
        })
    }

    /// Remainder of multivariate division by the Gröbner basis.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        p.ctx().check_same(&self.ctx)?;
        if self.generators.is_empty() {
            return Ok(p.clone());
        }
        Ok(reduce(p, self.groebner_basis(), self.order))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(Polynomial::is_constant)
    }

    /// Leading monomial of `p` under this ideal's order.
    pub fn leading_monomial(&self, p: &Polynomial<F>) -> Option<Monomial> {
        p.leading_term(self.order).map(|(m, _)| m.clone())
    }
}

impl<F: Scalar> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl<F: Scalar> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn lead<F: Scalar>(p: &Polynomial<F>, order: MonomialOrder) -> (Monomial, F) {
    let (m, c) = p.leading_term(order).expect("nonzero polynomial");
    (m.clone(), c.clone())
}

/// Full reduction of `p` by `divisors`.
fn reduce<F: Scalar>(p: &Polynomial<F>, divisors: &[Polynomial<F>], order: MonomialOrder) -> Polynomial<F> {
    let leads: Vec<(Monomial, F)> = divisors.iter().map(|g| lead(g, order)).collect();
    let mut rest = p.clone();
    let mut rem = Polynomial::zero(p.ctx());
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let (lm, lc) = &leads[k];
                let q = lm.quotient_of(&m);
                rest = &rest - &divisors[k].mul_term(&q, &(c / lc.clone()));
            }
            None => {
                let t = Polynomial::monomial(p.ctx(), m, c);
                rest = &rest - &t;
                rem = &rem + &t;
            }
        }
    }
    rem
}

fn s_polynomial<F: Scalar>(f: &Polynomial<F>, g: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
    let (mf, cf) = lead(f, order);
    let (mg, cg) = lead(g, order);
    let l = mf.lcm(&mg);
    &f.mul_term(&mf.quotient_of(&l), &cf.inv()) - &g.mul_term(&mg.quotient_of(&l), &cg.inv())
}

fn monic<F: Scalar>(p: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
    let (_, c) = lead(p, order);
    p.scale(&c.inv())
}

fn buchberger<F: Scalar>(generators: &[Polynomial<F>], order: MonomialOrder) -> Vec<Polynomial<F>> {
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            basis.push(monic(&r, order));
        }
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let lm = |p: &Polynomial<F>| lead(p, order).0;
    while !pairs.is_empty() {
        // normal selection strategy: smallest lcm first
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = lm(&basis[a.0]).lcm(&lm(&basis[a.1]));
                let lb = lm(&basis[b.0]).lcm(&lm(&basis[b.1]));
                order.compare(&la, &lb).then(a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let (mi, mj) = (lm(&basis[i]), lm(&basis[j]));
        if mi.is_coprime(&mj) {
            continue;
        }
        let l = mi.lcm(&mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if r.is_zero() {
            continue;
        }
        let n = basis.len();
        basis.push(monic(&r, order));
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    interreduce(basis, order)
}

fn interreduce<F: Scalar>(basis: Vec<Polynomial<F>>, order: MonomialOrder) -> Vec<Polynomial<F>> {
    let leads: Vec<Monomial> = basis.iter().map(|p| lead(p, order).0).collect();
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, m)| {
            j != k && m.divides(&leads[k]) && (m != &leads[k] || j < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial<F>> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p.clone())
                .collect();
            let (m, c) = lead(&minimal[k], order);
            let tail = &minimal[k] - &Polynomial::monomial(minimal[k].ctx(), m.clone(), c.clone());
            let t = &Polynomial::monomial(minimal[k].ctx(), m, c) + &reduce(&tail, &others, order);
            monic(&t, order)
        })
        .collect();
    reduced.sort_by(|a, b| order.compare(&lead(a, order).0, &lead(b, order).0));
    reduced
}
