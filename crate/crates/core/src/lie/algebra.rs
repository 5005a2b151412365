use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, Matrix};
use crate::poly::is_identifier;
use crate::scalar::Scalar;

/// Finite-dimensional Lie algebra given by structure constants,
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra<F> {
    labels: Vec<String>,
    constants: Vec<Vec<Vec<F>>>,
}

impl<F: Scalar> fmt::Debug for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra{:?}", self.labels)
    }
}

fn format_vector<F: Scalar>(labels: &[String], v: &[F]) -> String {
    let mut out = String::new();
    for (x, l) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let a = x.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Scalar> LieAlgebra<F> {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = labels.len();
        for l in &labels {
            if !is_identifier(l) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("invalid basis label `{l}`"),
                });
            }
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::DuplicateVariable(l.clone()));
            }
        }
        let shape_ok = constants.len() == n
            && constants
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(Error::Dimension(format!(
                "structure constants must be {n}×{n}×{n}"
            )));
        }
        let alg = LieAlgebra { labels, constants };
        for i in 0..n {
            for j in 0..n {
                let sum: Vec<F> = alg.constants[i][j]
                    .iter()
                    .zip(&alg.constants[j][i])
                    .map(|(a, b)| a.clone() + b.clone())
                    .collect();
                if !is_zero_vec(&sum) {
                    return Err(Error::NotLieAlgebra(format!(
                        "[{a},{b}] + [{b},{a}] = {}",
                        alg.format(&sum),
                        a = alg.labels[i],
                        b = alg.labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |x: usize| crate::linalg::unit::<F>(n, x);
                    let t1 = alg.bracket(&alg.bracket(&e(i), &e(j)), &e(k));
                    let t2 = alg.bracket(&alg.bracket(&e(j), &e(k)), &e(i));
                    let t3 = alg.bracket(&alg.bracket(&e(k), &e(i)), &e(j));
                    let mut s = t1;
                    axpy(&mut s, &F::one(), &t2);
                    axpy(&mut s, &F::one(), &t3);
                    if !is_zero_vec(&s) {
                        return Err(Error::NotLieAlgebra(format!(
                            "Jacobiator of ({}, {}, {}) is {}",
                            alg.labels[i],
                            alg.labels[j],
                            alg.labels[k],
                            alg.format(&s)
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Builds the algebra from relations `[e_i, e_j] = v`; unlisted brackets
    /// vanish and `[e_j, e_i] = −v` is implied.
    pub fn from_brackets<I>(labels: Vec<String>, relations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<F>)>,
    {
        let n = labels.len();
        let mut c = vec![vec![vec![F::zero(); n]; n]; n];
        let mut set = vec![vec![false; n]; n];
        for (i, j, v) in relations {
            if i >= n || j >= n || v.len() != n {
                return Err(Error::Dimension(format!(
                    "bracket relation ({i}, {j}) outside a {n}-dimensional algebra"
                )));
            }
            let neg: Vec<F> = v.iter().map(|x| -x.clone()).collect();
            if i == j && !is_zero_vec(&v) {
                return Err(Error::NotLieAlgebra(format!(
                    "[{l},{l}] must vanish",
                    l = labels[i]
                )));
            }
            if set[i][j] && c[i][j] != v {
                return Err(Error::NotLieAlgebra(format!(
                    "conflicting values for [{},{}]",
                    labels[i], labels[j]
                )));
            }
            set[i][j] = true;
            set[j][i] = true;
            c[i][j] = v;
            c[j][i] = neg;
        }
        Self::new(labels, c)
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("a{i}")).collect();
        Self::new(labels, vec![vec![vec![F::zero(); n]; n]; n]).expect("abelian")
    }

    fn from_int_table(labels: &[&str], table: &[(usize, usize, &[i64])]) -> Self {
        let rel = table
            .iter()
            .map(|(i, j, v)| (*i, *j, v.iter().map(|&x| F::from_int(x)).collect()));
        Self::from_brackets(labels.iter().map(|s| s.to_string()).collect(), rel)
            .expect("standard algebra")
    }

    /// Heisenberg algebra, `[e, f] = h` with `h` central.
    pub fn heisenberg() -> Self {
        Self::from_int_table(&["e", "f", "h"], &[(0, 1, &[0, 0, 1])])
    }

    /// `sl₂` with `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f`.
    pub fn sl2() -> Self {
        Self::from_int_table(
            &["e", "f", "h"],
            &[(0, 1, &[0, 0, 1]), (2, 0, &[2, 0, 0]), (2, 1, &[0, -2, 0])],
        )
    }

    /// `so₃` with `[x,y] = z` and cyclic permutations.
    pub fn so3() -> Self {
        Self::from_int_table(
            &["x", "y", "z"],
            &[(0, 1, &[0, 0, 1]), (1, 2, &[1, 0, 0]), (2, 0, &[0, 1, 0])],
        )
    }

    /// Same structure constants under new basis labels.
    pub fn with_labels<S: Into<String>, I: IntoIterator<Item = S>>(&self, labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: labels.len(),
            });
        }
        Self::new(labels, self.constants.clone())
    }

    /// Direct sum; labels of the second summand must be distinct from the first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (n, m) = (self.dim(), other.dim());
        let labels: Vec<String> = self.labels.iter().chain(&other.labels).cloned().collect();
        let mut c = vec![vec![vec![F::zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.constants[i][j][k].clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    c[n + i][n + j][n + k] = other.constants[i][j][k].clone();
                }
            }
        }
        Self::new(labels, c)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<F>>] {
        &self.constants
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[F] {
        &self.constants[i][j]
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                axpy(&mut out, &(x[i].clone() * y[j].clone()), &self.constants[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad(x)`.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let cols: Vec<Vec<F>> = (0..n)
            .map(|j| self.bracket(x, &crate::linalg::unit(n, j)))
            .collect();
        Matrix::from_rows(n, cols).transpose()
    }

    /// Readable linear combination of basis labels.
    pub fn format(&self, v: &[F]) -> String {
        format_vector(&self.labels, v)
    }
}

/// Finite-dimensional representation, one matrix `ψ(e_i)` per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule<F: Scalar> {
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Scalar> LieModule<F> {
    /// Checks `ψ([e_i, e_j]) = [ψ(e_i), ψ(e_j)]` for all basis pairs.
    pub fn new(algebra: &LieAlgebra<F>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::LengthMismatch {
                expected: algebra.dim(),
                got: action.len(),
            });
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Dimension(format!("action matrices must be {dim}×{dim}")));
        }
        let module = LieModule { dim, action };
        let n = algebra.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = module.act(algebra.bracket_basis(i, j));
                let rhs = module.action[i]
                    .mul(&module.action[j])
                    .sub(&module.action[j].mul(&module.action[i]));
                if lhs != rhs {
                    return Err(Error::NotLieModule(format!(
                        "ψ([{a},{b}]) ≠ [ψ({a}), ψ({b})]",
                        a = algebra.labels()[i],
                        b = algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(module)
    }

    pub fn trivial(algebra: &LieAlgebra<F>, dim: usize) -> Self {
        LieModule {
            dim,
            action: vec![Matrix::zeros(dim, dim); algebra.dim()],
        }
    }

    pub fn adjoint(algebra: &LieAlgebra<F>) -> Self {
        let n = algebra.dim();
        LieModule {
            dim: n,
            action: (0..n)
                .map(|i| algebra.ad(&crate::linalg::unit(n, i)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// `ψ(x)` for a coordinate vector `x`.
    pub fn act(&self, x: &[F]) -> Matrix<F> {
        let mut out: Matrix<F> = Matrix::zeros(self.dim, self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for r in 0..self.dim {
                for c in 0..self.dim {
                    let v = out[(r, c)].clone() + a.clone() * self.action[i][(r, c)].clone();
                    out[(r, c)] = v;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn standard_algebras_validate() {
        let sl2 = LieAlgebra::<Rational>::sl2();
        assert_eq!(sl2.bracket_basis(0, 1), &[q(0), q(0), q(1)]);
        assert_eq!(sl2.bracket_basis(1, 0), &[q(0), q(0), q(-1)]);
        assert_eq!(sl2.bracket_basis(0, 2), &[q(-2), q(0), q(0)]);
        LieAlgebra::<Rational>::so3();
        LieAlgebra::<Rational>::heisenberg();
        assert_eq!(LieAlgebra::<Rational>::abelian(2).dim(), 2);
    }

    #[test]
    fn rejects_bad_constants() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi
        let r = LieAlgebra::<Rational>::from_brackets(
            labels,
            vec![(0, 1, vec![q(1), q(0), q(0)]), (0, 2, vec![q(0), q(1), q(0)])],
        );
        assert!(matches!(r, Err(Error::NotLieAlgebra(_))));
    }

    #[test]
    fn modules() {
        let sl2 = LieAlgebra::<Rational>::sl2();
        LieModule::new(&sl2, 3, LieModule::adjoint(&sl2).actions().to_vec()).unwrap();
        let mut bad = LieModule::adjoint(&sl2).actions().to_vec();
        bad[0] = Matrix::identity(3);
        assert!(matches!(
            LieModule::new(&sl2, 3, bad),
            Err(Error::NotLieModule(_))
        ));
        assert_eq!(sl2.format(&[q(1), q(-2), q(0)]), "e - 2*f");
    }
}
