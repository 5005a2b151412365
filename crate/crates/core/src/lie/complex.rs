use std::collections::BTreeMap;

use super::{LieAlgebra, LieModule};
use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, Matrix, SubQuotient, Subspace};
use crate::scalar::Scalar;
use crate::tensor::IndexSubset;

/// Element of `∧^m g`, stored over increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainElement<F> {
    dim: usize,
    grade: usize,
    comps: BTreeMap<IndexSubset, F>,
}

impl<F: Scalar> ChainElement<F> {
    pub fn zero(dim: usize, grade: usize) -> Self {
        ChainElement {
            dim,
            grade,
            comps: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, subset: IndexSubset) -> Self {
        let mut out = Self::zero(dim, subset.grade());
        out.add(subset, F::one());
        out
    }

    /// A grade-1 chain from a coordinate vector.
    pub fn vector(v: &[F]) -> Self {
        let mut out = Self::zero(v.len(), 1);
        for (i, a) in v.iter().enumerate() {
            out.add(IndexSubset::singleton(i), a.clone());
        }
        out
    }

    /// Coordinates laid out as `IndexSubset::all(dim, grade)`.
    pub fn from_coordinates(dim: usize, grade: usize, v: &[F]) -> Self {
        let mut out = Self::zero(dim, grade);
        for (s, a) in IndexSubset::all(dim, grade).into_iter().zip(v) {
            out.add(s, a.clone());
        }
        out
    }

    pub fn coordinates(&self) -> Vec<F> {
        IndexSubset::all(self.dim, self.grade)
            .iter()
            .map(|s| self.coefficient(s))
            .collect()
    }

    fn add(&mut self, s: IndexSubset, a: F) {
        if a.is_zero() {
            return;
        }
        let v = self.comps.remove(&s).map_or(a.clone(), |b| b + a);
        if !v.is_zero() {
            self.comps.insert(s, v);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coefficient(&self, s: &IndexSubset) -> F {
        self.comps.get(s).cloned().unwrap_or_else(F::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&IndexSubset, &F)> {
        self.comps.iter()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.dim, self.grade);
        for (s, a) in &self.comps {
            out.add(s.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.grade != other.grade {
            return Err(Error::Dimension(format!(
                "cannot add chains of shape ({}, {}) and ({}, {})",
                self.dim, self.grade, other.dim, other.grade
            )));
        }
        let mut out = self.clone();
        for (s, a) in &other.comps {
            out.add(s.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-F::one()))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension("chains over different algebras".into()));
        }
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        for (sa, a) in &self.comps {
            for (sb, b) in &other.comps {
                if let Some((neg, s)) = sa.wedge(sb) {
                    let p = a.clone() * b.clone();
                    out.add(s, if neg { -p } else { p });
                }
            }
        }
        Ok(out)
    }
}

/// `δ(x_1∧…∧x_m) = Σ_{i<j} (−1)^{i+j} [x_i,x_j] ∧ x_1…x̂_i…x̂_j…x_m`, with `δ = 0`
/// in grades 0 and 1.
pub fn boundary_delta<F: Scalar>(alg: &LieAlgebra<F>, u: &ChainElement<F>) -> Result<ChainElement<F>> {
    if u.dim != alg.dim() {
        return Err(Error::Dimension("chain does not belong to this algebra".into()));
    }
    let m = u.grade;
    if m <= 1 {
        return Ok(ChainElement::zero(u.dim, m.saturating_sub(1)));
    }
    let mut out = ChainElement::zero(u.dim, m - 1);
    for (s, a) in &u.comps {
        let idx = s.indices();
        for i in 0..m {
            for j in i + 1..m {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, &x)| x)
                    .collect();
                let rest = ChainElement::basis(u.dim, IndexSubset::new(rest));
                let b = ChainElement::vector(alg.bracket_basis(idx[i], idx[j]));
                let term = b.wedge(&rest)?.scale(a);
                // (−1)^{i+j} is unchanged by 0-based indexing
                out = if (i + j) % 2 == 0 {
                    out.checked_add(&term)?
                } else {
                    out.checked_sub(&term)?
                };
            }
        }
    }
    Ok(out)
}

/// `[u, v] = δ(u)∧v + (−1)^m u∧δ(v) − δ(u∧v)` for `u` of grade `m`.
pub fn supercommutator<F: Scalar>(
    alg: &LieAlgebra<F>,
    u: &ChainElement<F>,
    v: &ChainElement<F>,
) -> Result<ChainElement<F>> {
    let grade = (u.grade + v.grade).saturating_sub(1);
    let zero = ChainElement::zero(u.dim, grade);
    let first = if u.grade == 0 { zero.clone() } else { boundary_delta(alg, u)?.wedge(v)? };
    let second = if v.grade == 0 { zero.clone() } else { u.wedge(&boundary_delta(alg, v)?)? };
    let uv = u.wedge(v)?;
    let third = if uv.grade == 0 { zero } else { boundary_delta(alg, &uv)? };
    let s = if u.grade % 2 == 0 { first.checked_add(&second)? } else { first.checked_sub(&second)? };
    s.checked_sub(&third)
}

/// Matrix of `δ: ∧^m g → ∧^{m−1} g` in the bases `IndexSubset::all`.
pub fn boundary_matrix<F: Scalar>(alg: &LieAlgebra<F>, m: usize) -> Matrix<F> {
    let n = alg.dim();
    let src = IndexSubset::all(n, m);
    let rows = IndexSubset::all(n, m.saturating_sub(1)).len();
    let mut out = Matrix::zeros(rows, src.len());
    if m == 0 {
        return Matrix::zeros(0, src.len());
    }
    for (c, s) in src.into_iter().enumerate() {
        let b = boundary_delta(alg, &ChainElement::basis(n, s)).expect("same algebra");
        for (r, x) in b.coordinates().into_iter().enumerate() {
            out[(r, c)] = x;
        }
    }
    out
}

/// One graded piece of (co)homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup<F> {
    pub grade: usize,
    pub dim: usize,
    /// Coordinates of cycle (or cocycle) representatives of a basis.
    pub representatives: Vec<Vec<F>>,
}

pub(crate) fn kernel_space<F: Scalar>(m: &Matrix<F>, cols: usize) -> Subspace<F> {
    if m.rows() == 0 {
        return Subspace::full(cols);
    }
    Subspace::span(cols, m.nullspace())
}

pub(crate) fn image_space<F: Scalar>(m: &Matrix<F>, rows: usize) -> Subspace<F> {
    if m.cols() == 0 || m.rows() == 0 {
        return Subspace::zero(rows);
    }
    Subspace::span(rows, m.transpose().to_rows())
}

/// `H_m(g)` for `m = 0…dim g`, with cycle representatives.
pub fn homology<F: Scalar>(alg: &LieAlgebra<F>) -> Vec<HomologyGroup<F>> {
    let n = alg.dim();
    (0..=n)
        .map(|m| {
            let size = IndexSubset::all(n, m).len();
            let cycles = kernel_space(&boundary_matrix(alg, m), size);
            let boundaries = if m < n {
                image_space(&boundary_matrix(alg, m + 1), size)
            } else {
                Subspace::zero(size)
            };
            let q = SubQuotient::new(&cycles, boundaries);
            HomologyGroup {
                grade: m,
                dim: q.dim(),
                representatives: q.representatives().to_vec(),
            }
        })
        .collect()
}

/// Solves `δ(w) = u`; `None` when `u` is not a boundary.
pub fn boundary_preimage<F: Scalar>(alg: &LieAlgebra<F>, u: &ChainElement<F>) -> Option<ChainElement<F>> {
    let m = boundary_matrix(alg, u.grade + 1);
    if m.cols() == 0 {
        return u.is_zero().then(|| ChainElement::zero(u.dim, u.grade + 1));
    }
    m.solve(&u.coordinates())
        .map(|w| ChainElement::from_coordinates(u.dim, u.grade + 1, &w))
}

/// Alternating `m`-cochain on a Lie algebra with values in a module, stored
/// densely: one module vector per increasing index tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain<F> {
    dim: usize,
    module_dim: usize,
    grade: usize,
    values: Vec<F>,
}

impl<F: Scalar> Cochain<F> {
    pub fn zero(dim: usize, module_dim: usize, grade: usize) -> Self {
        let len = IndexSubset::all(dim, grade).len() * module_dim;
        Cochain {
            dim,
            module_dim,
            grade,
            values: vec![F::zero(); len],
        }
    }

    /// Coordinates laid out tuple-major, module index minor.
    pub fn from_coordinates(dim: usize, module_dim: usize, grade: usize, v: Vec<F>) -> Result<Self> {
        let expected = IndexSubset::all(dim, grade).len() * module_dim;
        if v.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: v.len(),
            });
        }
        Ok(Cochain {
            dim,
            module_dim,
            grade,
            values: v,
        })
    }

    /// Cochain with the given values on increasing index tuples.
    pub fn from_values<I>(dim: usize, module_dim: usize, grade: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IndexSubset, Vec<F>)>,
    {
        let mut out = Self::zero(dim, module_dim, grade);
        let all = IndexSubset::all(dim, grade);
        for (s, v) in entries {
            let Some(pos) = all.iter().position(|t| *t == s) else {
                return Err(Error::Dimension(format!("index tuple {s:?} out of range")));
            };
            if v.len() != module_dim {
                return Err(Error::LengthMismatch {
                    expected: module_dim,
                    got: v.len(),
                });
            }
            out.values[pos * module_dim..(pos + 1) * module_dim].clone_from_slice(&v);
        }
        Ok(out)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn coordinates(&self) -> &[F] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    /// Value on increasing index tuple number `pos` of `IndexSubset::all`.
    fn slot(&self, pos: usize) -> &[F] {
        &self.values[pos * self.module_dim..(pos + 1) * self.module_dim]
    }

    /// `ω(e_{i1}, …, e_{im})` for arbitrary (unsorted, possibly repeated) indices.
    pub fn eval_basis(&self, indices: &[usize]) -> Vec<F> {
        assert_eq!(indices.len(), self.grade, "argument count");
        let mut sorted = indices.to_vec();
        let mut neg = false;
        // bubble sort tracks the permutation sign
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    neg = !neg;
                }
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return vec![F::zero(); self.module_dim];
        }
        let pos = rank_subset(self.dim, &sorted);
        let v = self.slot(pos);
        if neg {
            v.iter().map(|x| -x.clone()).collect()
        } else {
            v.to_vec()
        }
    }

    /// `ω(v_1, …, v_m)` for coordinate vectors, by multilinear expansion.
    pub fn eval(&self, args: &[Vec<F>]) -> Vec<F> {
        assert_eq!(args.len(), self.grade, "argument count");
        let mut out = vec![F::zero(); self.module_dim];
        let mut idx = vec![0usize; self.grade];
        self.eval_rec(args, 0, F::one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, args: &[Vec<F>], k: usize, coef: F, idx: &mut Vec<usize>, out: &mut [F]) {
        if k == args.len() {
            axpy(out, &coef, &self.eval_basis(idx));
            return;
        }
        for (i, a) in args[k].iter().enumerate() {
            if a.is_zero() || idx[..k].contains(&i) {
                continue;
            }
            idx[k] = i;
            self.eval_rec(args, k + 1, coef.clone() * a.clone(), idx, out);
        }
    }

    /// `i_v ω`, the contraction in the first slot.
    pub fn contract(&self, v: &[F]) -> Cochain<F> {
        assert!(self.grade >= 1, "cannot contract a 0-cochain");
        let mut out = Cochain::zero(self.dim, self.module_dim, self.grade - 1);
        for (pos, s) in IndexSubset::all(self.dim, self.grade - 1).into_iter().enumerate() {
            let mut acc = vec![F::zero(); self.module_dim];
            for (i, a) in v.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut args = vec![i];
                args.extend_from_slice(s.indices());
                axpy(&mut acc, a, &self.eval_basis(&args));
            }
            out.values[pos * self.module_dim..(pos + 1) * self.module_dim].clone_from_slice(&acc);
        }
        out
    }
}

/// Position of an increasing tuple in `IndexSubset::all(n, k)` (lexicographic).
fn rank_subset(n: usize, sorted: &[usize]) -> usize {
    let k = sorted.len();
    let mut rank = 0;
    let mut prev = 0;
    for (t, &x) in sorted.iter().enumerate() {
        for y in prev..x {
            rank += binomial(n - y - 1, k - t - 1);
        }
        prev = x + 1;
    }
    rank
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Koszul differential
/// `(dω)(X_0,…,X_m) = Σ_i (−1)^i X_i·ω(…X̂_i…) + Σ_{i<j} (−1)^{i+j} ω([X_i,X_j], …X̂_i…X̂_j…)`.
pub fn ce_coboundary<F: Scalar>(
    alg: &LieAlgebra<F>,
    module: &LieModule<F>,
    omega: &Cochain<F>,
) -> Result<Cochain<F>> {
    if omega.dim != alg.dim() || omega.module_dim != module.dim() {
        return Err(Error::Dimension("cochain does not match algebra and module".into()));
    }
    let n = alg.dim();
    let m = omega.grade;
    let md = module.dim();
    let mut out = Cochain::zero(n, md, m + 1);
    for (pos, s) in IndexSubset::all(n, m + 1).into_iter().enumerate() {
        let idx = s.indices();
        let mut acc = vec![F::zero(); md];
        for i in 0..=m {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x).collect();
            let w = omega.eval_basis(&rest);
            let act = module.action(idx[i]).mul_vec(&w);
            let sign = if i % 2 == 0 { F::one() } else { -F::one() };
            axpy(&mut acc, &sign, &act);
        }
        for i in 0..=m {
            for j in i + 1..=m {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i && *k != j)
                    .map(|(_, &x)| x)
                    .collect();
                let b = alg.bracket_basis(idx[i], idx[j]);
                let sign = if (i + j) % 2 == 0 { F::one() } else { -F::one() };
                for (l, c) in b.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![l];
                    args.extend_from_slice(&rest);
                    axpy(&mut acc, &(sign.clone() * c.clone()), &omega.eval_basis(&args));
                }
            }
        }
        out.values[pos * md..(pos + 1) * md].clone_from_slice(&acc);
    }
    Ok(out)
}

/// Matrix of `d: Ω^m → Ω^{m+1}` in the dense cochain coordinates.
pub fn coboundary_matrix<F: Scalar>(alg: &LieAlgebra<F>, module: &LieModule<F>, m: usize) -> Matrix<F> {
    let n = alg.dim();
    let md = module.dim();
    let src = IndexSubset::all(n, m).len() * md;
    let dst = IndexSubset::all(n, m + 1).len() * md;
    let mut out = Matrix::zeros(dst, src);
    for c in 0..src {
        let unit = Cochain::from_coordinates(n, md, m, crate::linalg::unit(src, c)).expect("shape");
        let d = ce_coboundary(alg, module, &unit).expect("shape");
        for (r, x) in d.values.into_iter().enumerate() {
            out[(r, c)] = x;
        }
    }
    out
}

/// `H^m(g, S)` for `m = 0…dim g`, with cocycle representatives.
pub fn cohomology<F: Scalar>(alg: &LieAlgebra<F>, module: &LieModule<F>) -> Vec<HomologyGroup<F>> {
    let n = alg.dim();
    let md = module.dim();
    (0..=n)
        .map(|m| {
            let size = IndexSubset::all(n, m).len() * md;
            let cocycles = if m < n {
                kernel_space(&coboundary_matrix(alg, module, m), size)
            } else {
                Subspace::full(size)
            };
            let coboundaries = if m > 0 {
                image_space(&coboundary_matrix(alg, module, m - 1), size)
            } else {
                Subspace::zero(size)
            };
            let q = SubQuotient::new(&cocycles, coboundaries);
            HomologyGroup {
                grade: m,
                dim: q.dim(),
                representatives: q.representatives().to_vec(),
            }
        })
        .collect()
}

/// Checks `(dω)(…, a·X_k, …) = a·(dω)(…, X_k, …)` in every slot, for the
/// given arguments and scalars.
pub fn lemma_equivalence_probe<F: Scalar>(
    alg: &LieAlgebra<F>,
    module: &LieModule<F>,
    omega: &Cochain<F>,
    args: &[Vec<F>],
    scalars: &[F],
) -> Result<bool> {
    let d = ce_coboundary(alg, module, omega)?;
    if args.len() != d.grade {
        return Err(Error::LengthMismatch {
            expected: d.grade,
            got: args.len(),
        });
    }
    let base = d.eval(args);
    for a in scalars {
        for k in 0..args.len() {
            let mut scaled = args.to_vec();
            scaled[k] = scaled[k].iter().map(|x| x.clone() * a.clone()).collect();
            let lhs = d.eval(&scaled);
            let rhs: Vec<F> = base.iter().map(|x| x.clone() * a.clone()).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
