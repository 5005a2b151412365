//! Derivations preserving an ideal, and the integral predicates for
//! distributions, computed on degree-truncated slices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::{Matrix, Subspace};
use crate::poly::{Monomial, Polynomial, VarContext};
use crate::scalar::Scalar;
use crate::tensor::{apply_vector, IndexSubset, Multivector};

/// Bound on the total degree of vector-field coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TruncationParams {
    pub degree_bound: u32,
}

impl TruncationParams {
    pub fn new(degree_bound: u32) -> Self {
        TruncationParams { degree_bound }
    }
}

impl Default for TruncationParams {
    fn default() -> Self {
        TruncationParams { degree_bound: 3 }
    }
}

/// Outcome of the regularity test `D₀ = I·D` on a truncated slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity<F: Scalar> {
    /// Holds in every degree; only certified for the zero ideal.
    Regular,
    /// `D₀ = I·D` up to `truncated_at`, unknown above.
    Inconclusive { truncated_at: u32 },
    /// `witness ∈ D₀` is not in the truncated slice of `I·D`.
    NotRegular {
        witness: Multivector<F>,
        truncated_at: u32,
    },
}

/// Whether `X(g) ∈ I` for every generator `g`.
pub fn preserves_ideal<F: Scalar>(x: &Multivector<F>, ideal: &Ideal<F>) -> Result<bool> {
    x.require_grade(1)?;
    x.ctx().check_same(ideal.ctx())?;
    for g in ideal.generators() {
        if !ideal.contains(&apply_vector(x, g)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every coefficient of `X` lies in `I`, i.e. `X(A) ⊆ I`.
pub fn maps_into_ideal<F: Scalar>(x: &Multivector<F>, ideal: &Ideal<F>) -> Result<bool> {
    x.require_grade(1)?;
    x.ctx().check_same(ideal.ctx())?;
    for (_, c) in x.components() {
        if !ideal.contains(c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates on vector fields with coefficients of degree ≤ d: one slot per
/// (variable, monomial), variable-major.
struct FieldSpace {
    ctx: VarContext,
    monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl FieldSpace {
    fn new(ctx: &VarContext, degree: u32) -> Self {
        let monomials = Monomial::all_up_to(ctx.len(), degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        FieldSpace {
            ctx: ctx.clone(),
            monomials,
            index,
        }
    }

    fn dim(&self) -> usize {
        self.ctx.len() * self.monomials.len()
    }

    fn basis_field<F: Scalar>(&self, slot: usize) -> Multivector<F> {
        let (i, k) = (slot / self.monomials.len(), slot % self.monomials.len());
        let p = Polynomial::monomial(&self.ctx, self.monomials[k].clone(), F::one());
        Multivector::coordinate(&self.ctx, i).mul_poly(&p)
    }

    /// `None` when some coefficient exceeds the degree bound.
    fn coordinates<F: Scalar>(&self, x: &Multivector<F>) -> Option<Vec<F>> {
        let mut v = vec![F::zero(); self.dim()];
        for (s, c) in x.components() {
            let i = s.indices()[0];
            for (m, a) in c.terms() {
                let k = *self.index.get(m)?;
                v[i * self.monomials.len() + k] = a.clone();
            }
        }
        Some(v)
    }

    fn field<F: Scalar>(&self, v: &[F]) -> Multivector<F> {
        let mut out = Multivector::zero(&self.ctx, 1);
        for (slot, a) in v.iter().enumerate() {
            if !a.is_zero() {
                out = &out + &self.basis_field::<F>(slot).scale(a);
            }
        }
        out
    }
}

/// Solves `NF(ℓ(v)) = 0` for a family of polynomials `ℓ` linear in the
/// unknowns, given the images of the unknown basis vectors.
fn kernel_of_normal_forms<F: Scalar>(
    ideal: &Ideal<F>,
    images: &[Vec<Polynomial<F>>],
) -> Result<Vec<Vec<F>>> {
    let unknowns = images.len();
    let mut rows: BTreeMap<(usize, Monomial), Vec<F>> = BTreeMap::new();
    for (u, polys) in images.iter().enumerate() {
        for (j, p) in polys.iter().enumerate() {
            for (m, c) in ideal.normal_form(p)?.terms() {
                rows.entry((j, m.clone()))
                    .or_insert_with(|| vec![F::zero(); unknowns])[u] = c.clone();
            }
        }
    }
    if rows.is_empty() {
        return Ok((0..unknowns).map(|i| crate::linalg::unit(unknowns, i)).collect());
    }
    Ok(Matrix::from_rows(unknowns, rows.into_values().collect()).nullspace())
}

/// Basis of the vector fields with coefficients of degree ≤ d that preserve `I`.
pub fn der_i_basis<F: Scalar>(ideal: &Ideal<F>, t: TruncationParams) -> Result<Vec<Multivector<F>>> {
    let space = FieldSpace::new(ideal.ctx(), t.degree_bound);
    let images = (0..space.dim())
        .map(|slot| {
            let x = space.basis_field::<F>(slot);
            ideal
                .generators()
                .iter()
                .map(|g| apply_vector(&x, g))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = kernel_of_normal_forms(ideal, &images)?;
    // present the basis in reduced echelon form for stable output
    let span = Subspace::span(space.dim(), kernel);
    Ok(span.basis().iter().map(|v| space.field(v)).collect())
}

/// Truncated slice of the module generated by `gens`, scaled by `scale`:
/// the span of `m·g·X` with `g ∈ scale`, `X ∈ gens`, and total degree ≤ d.
fn module_slice<F: Scalar>(
    space: &FieldSpace,
    gens: &[Multivector<F>],
    scale: &[Polynomial<F>],
    d: u32,
) -> Subspace<F> {
    let mut vectors = Vec::new();
    for x in gens {
        let Some(dx) = x.max_coefficient_degree() else {
            continue;
        };
        for g in scale {
            let dg = g.degree().unwrap_or(0);
            if dx + dg > d {
                continue;
            }
            for m in Monomial::all_up_to(space.ctx.len(), d - dx - dg) {
                let f = g.mul_term(&m, &F::one());
                if let Some(v) = space.coordinates(&x.mul_poly(&f)) {
                    vectors.push(v);
                }
            }
        }
    }
    Subspace::span(space.dim(), vectors)
}

/// Tests `D₀ = I·D` for the distribution generated by `d_gens`, where `D₀` is
/// the part of `D` mapping `A` into `I`.
///
/// The slice of `D` in degree ≤ d is spanned by the products `m·X_k` that fit
/// in the bound, and the slice of `I·D` by `m·g·X_k` with `g` running over the
/// Gröbner basis.
pub fn is_regular_integral<F: Scalar>(
    d_gens: &[Multivector<F>],
    ideal: &Ideal<F>,
    t: TruncationParams,
) -> Result<Regularity<F>> {
    for x in d_gens {
        if !preserves_ideal(x, ideal)? {
            return Err(Error::NotIntegral(format!(
                "{x} does not preserve the ideal {ideal}"
            )));
        }
    }
    if ideal.is_zero_ideal() {
        return Ok(Regularity::Regular);
    }
    let d = t.degree_bound;
    let space = FieldSpace::new(ideal.ctx(), d);
    let one = [Polynomial::one(ideal.ctx())];
    let dslice = module_slice(&space, d_gens, &one, d);
    let id_slice = module_slice(&space, d_gens, ideal.groebner_basis(), d);

    // D₀ slice: elements of the D slice whose coefficients reduce to zero
    let images: Vec<Vec<Polynomial<F>>> = dslice
        .basis()
        .iter()
        .map(|v| {
            let x = space.field(v);
            (0..ideal.ctx().len()).map(|i| x.coefficient(i)).collect()
        })
        .collect();
    let combos = kernel_of_normal_forms(ideal, &images)?;
    for c in combos {
        let mut v = vec![F::zero(); space.dim()];
        for (a, b) in c.iter().zip(dslice.basis()) {
            crate::linalg::axpy(&mut v, a, b);
        }
        if !id_slice.contains(&v) {
            return Ok(Regularity::NotRegular {
                witness: space.field(&v),
                truncated_at: d,
            });
        }
    }
    Ok(Regularity::Inconclusive { truncated_at: d })
}

/// Coordinate fields `∂_i` as grade-1 multivectors.
pub fn coordinate_fields<F: Scalar>(ctx: &VarContext) -> Vec<Multivector<F>> {
    (0..ctx.len())
        .map(|i| Multivector::basis(ctx, IndexSubset::singleton(i)))
        .collect()
}
