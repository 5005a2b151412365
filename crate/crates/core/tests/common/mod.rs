#![allow(dead_code)]

use leafalg::tensor::IndexSubset;
use leafalg::{Form, Monomial, Multivector, Polynomial, Rational, Scalar, VarContext};
use proptest::prelude::*;

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn ctx(n: usize) -> VarContext {
    VarContext::new(["x", "y", "z"].into_iter().take(n)).unwrap()
}

/// Random polynomial with at most `terms` terms of total degree ≤ `deg`.
pub fn poly(ctx: VarContext, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = ctx.len();
    prop::collection::vec((prop::collection::vec(0..=deg, n), -4i64..=4), 0..=terms).prop_map(move |ts| {
        Polynomial::from_terms(
            &ctx,
            ts.into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .map(|(e, c)| (Monomial::from_exponents(e), q(c))),
        )
    })
}

pub fn subset(n: usize, grade: usize) -> impl Strategy<Value = IndexSubset> {
    let all = IndexSubset::all(n, grade);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// `c·m ∂_I` with a single monomial coefficient of degree ≤ `deg`.
pub fn monomial_multivector(ctx: VarContext, max_grade: usize, deg: u32) -> impl Strategy<Value = Multivector> {
    let n = ctx.len();
    (0..=max_grade.min(n))
        .prop_flat_map(move |g| (Just(g), subset(n, g), prop::collection::vec(0..=deg, n), -3i64..=3))
        .prop_map(move |(g, s, e, c)| {
            let e: Vec<u32> = if e.iter().sum::<u32>() <= deg { e } else { vec![0; e.len()] };
            let p = Polynomial::monomial(&ctx, Monomial::from_exponents(e), q(c));
            Multivector::from_components(&ctx, g, [(s, p)]).unwrap()
        })
}

pub fn multivector(ctx: VarContext, grade: usize, deg: u32) -> impl Strategy<Value = Multivector> {
    let all = IndexSubset::all(ctx.len(), grade);
    prop::collection::vec(poly(ctx.clone(), deg, 2), all.len())
        .prop_map(move |ps| Multivector::from_components(&ctx, grade, all.clone().into_iter().zip(ps)).unwrap())
}

pub fn form(ctx: VarContext, grade: usize, deg: u32) -> impl Strategy<Value = Form> {
    let all = IndexSubset::all(ctx.len(), grade);
    prop::collection::vec(poly(ctx.clone(), deg, 2), all.len())
        .prop_map(move |ps| Form::from_components(&ctx, grade, all.clone().into_iter().zip(ps)).unwrap())
}

pub fn sign(even: bool) -> Rational {
    if even {
        q(1)
    } else {
        q(-1)
    }
}
