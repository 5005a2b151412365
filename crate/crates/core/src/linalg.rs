//! Dense exact linear algebra: row reduction, kernels, and subspaces with
//! deterministic pivot choices.
//!
//! Pivots are always taken in increasing column order, so every basis the
//! crate reports (kernel bases, quotient complements, homology
//! representatives) is reproducible run to run.

use std::fmt;

use crate::scalar::{is_zero, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !is_zero(b) {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn sub(&self, other: &Matrix<F>) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(is_zero)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !is_zero(&m[(i, c)])) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i == r || is_zero(&m[(i, c)]) {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let delta = factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -red[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !is_zero(*x) && !is_zero(*y))
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(is_zero)
}

pub fn unit<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn axpy<F: Scalar>(acc: &mut [F], a: &F, x: &[F]) {
    if is_zero(a) {
        return;
    }
    for (t, xi) in acc.iter_mut().zip(x) {
        if !is_zero(xi) {
            *t = t.clone() + a.clone() * xi.clone();
        }
    }
}

/// A linear subspace of `F^n`, stored as the nonzero rows of its RREF.
///
/// The complement spanned by the unit vectors at non-pivot coordinates is the
/// canonical complement used for every quotient in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let rows: Vec<Vec<F>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (red, pivots) = Matrix::from_rows(ambient, rows).rref();
        let basis = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates, in increasing order.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Subtracts the subspace component so every pivot coordinate becomes zero.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if is_zero(&out[p]) {
                continue;
            }
            let a = -out[p].clone();
            axpy(&mut out, &a, row);
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates with respect to [`Self::basis`], if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Class of `v` in the quotient by this subspace, in the canonical
    /// complement coordinates.
    pub fn quotient_coordinates(&self, v: &[F]) -> Vec<F> {
        let r = self.reduce(v);
        self.complement_indices()
            .into_iter()
            .map(|c| r[c].clone())
            .collect()
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        Self::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }
}

/// `outer / inner` for nested subspaces `inner ⊆ outer`.
///
/// Representatives are the RREF rows of `outer` after reduction by `inner`,
/// so their pivots are disjoint from those of `inner`.
#[derive(Clone, Debug)]
pub struct SubQuotient<F> {
    inner: Subspace<F>,
    reps: Subspace<F>,
}

impl<F: Scalar> SubQuotient<F> {
    pub fn new(outer: &Subspace<F>, inner: Subspace<F>) -> Self {
        let reduced: Vec<Vec<F>> = outer.basis().iter().map(|b| inner.reduce(b)).collect();
        let reps = Subspace::span(outer.ambient_dim(), reduced);
        SubQuotient { inner, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn representatives(&self) -> &[Vec<F>] {
        self.reps.basis()
    }

    pub fn inner(&self) -> &Subspace<F> {
        &self.inner
    }

    /// Class coordinates of `v`; `None` when `v` is outside `outer`.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        self.reps.coordinates(&self.inner.reduce(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (red, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(red.row(0), &[q(1), q(0), q(1)]);
        assert_eq!(red.row(1), &[q(0), q(1), q(1)]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn subspace_quotient_coordinates() {
        let w = Subspace::span(3, vec![vec![q(1), q(1), q(0)]]);
        assert_eq!(w.complement_indices(), vec![1, 2]);
        assert_eq!(w.quotient_coordinates(&[q(1), q(1), q(0)]), vec![q(0), q(0)]);
        assert_eq!(w.quotient_coordinates(&[q(1), q(0), q(0)]), vec![q(-1), q(0)]);
        assert!(w.contains(&[q(-2), q(-2), q(0)]));
    }

    #[test]
    fn sub_quotient() {
        let outer = Subspace::span(3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let inner = Subspace::span(3, vec![vec![q(1), q(1), q(0)]]);
        let sq = SubQuotient::new(&outer, inner);
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.coordinates(&[q(1), q(1), q(0)]), Some(vec![q(0)]));
        assert!(sq.coordinates(&[q(0), q(0), q(1)]).is_none());
        let c = sq.coordinates(&[q(0), q(1), q(0)]).unwrap();
        assert_eq!(c.len(), 1);
        assert_ne!(c[0], q(0));
    }
}
