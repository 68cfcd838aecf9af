//! Dense exact matrices, the three factors of `p = D_a * C * V * m`, and the
//! solvers used to invert them.
//!
//! Three solvers are provided. [`solve_exact`] is plain Gaussian elimination
//! and serves as the ground truth. [`solve_upper_triangular`] is back
//! substitution for `C`. [`solve_dual_vandermonde`] inverts `V` in O(n^2)
//! scalar operations with the Björck–Pereyra scheme.

use std::collections::HashSet;
use std::fmt;
use std::ops::Index;

use num_traits::{One, Zero};

use crate::algebra::{binomial, rational_pow, Polynomial, Rational};
use crate::error::{Error, Result};

pub type Vector = Vec<Rational>;

/// Square dense rational matrix, row-major, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    /// Exact matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * rhs.get(k, j);
                    out.entries[i * n + j] += prod;
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Tally of scalar additions, subtractions, multiplications and divisions.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCount(pub u64);

impl OpCount {
    fn add(&mut self, n: u64) {
        self.0 += n;
    }
}

/// `D_a = diag(1, a, a^2, ..., a^n)`.
pub fn build_dilation_matrix(a: &Rational, n: usize) -> Result<Matrix> {
    if a.is_zero() {
        return Err(Error::ZeroDilation);
    }
    Ok(Matrix::diagonal(
        (0..=n).map(|i| rational_pow(a, i)).collect(),
    ))
}

/// Upper triangular `C` with `C[i][j] = p_{n-j+i} * binom(n-j+i, i)` for `i <= j`.
///
/// The lower binomial index is the row index. Row `i` collects the
/// contribution of every `p_k (a x - l)^k` to the coefficient of `x^i`, and
/// that contribution carries `binom(k, i)` with `k = n - j + i`.
/// The diagonal is `p_n * binom(n, i)`, so `C` is always invertible.
pub fn build_coefficient_matrix(p: &Polynomial) -> Matrix {
    let n = p.degree();
    let coeffs = p.coeffs();
    let mut c = Matrix::zeros(n + 1);
    for i in 0..=n {
        for j in i..=n {
            let k = n - j + i;
            c.set(i, j, &coeffs[k] * Rational::from_integer(binomial(k, i)));
        }
    }
    c
}

/// Power-indexed Vandermonde matrix `V[i][j] = nodes[j]^(n-i)`; the bottom row is all ones.
///
/// No distinctness check; see [`build_vandermonde_matrix`].
pub fn vandermonde(nodes: &[Rational]) -> Matrix {
    let dim = nodes.len();
    let mut v = Matrix::zeros(dim);
    for (j, x) in nodes.iter().enumerate() {
        let mut pow = Rational::one();
        for i in (0..dim).rev() {
            v.set(i, j, pow.clone());
            pow *= x;
        }
    }
    v
}

/// `V[i][j] = (-shifts[j])^(n-i)`, with `0^0 = 1`.
pub fn build_vandermonde_matrix(shifts: &[i64]) -> Result<Matrix> {
    if shifts.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    check_distinct_shifts(shifts)?;
    Ok(vandermonde(&shift_nodes(shifts)))
}

pub(crate) fn check_distinct_shifts(shifts: &[i64]) -> Result<()> {
    let mut seen = HashSet::with_capacity(shifts.len());
    for &s in shifts {
        if !seen.insert(s) {
            return Err(Error::DuplicateShifts(s));
        }
    }
    Ok(())
}

/// Vandermonde nodes `-shift` for each shift.
pub fn shift_nodes(shifts: &[i64]) -> Vec<Rational> {
    shifts
        .iter()
        .map(|&s| Rational::from_integer((-i128::from(s)).into()))
        .collect()
}

pub fn mat_vec_mul(m: &Matrix, v: &[Rational]) -> Result<Vector> {
    if m.dim() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            actual: v.len(),
        });
    }
    Ok(m.rows()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, _)| !a.is_zero())
                .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
        })
        .collect())
}

/// Solves `m * x = b` by exact Gaussian elimination.
///
/// The pivot in each column is the first nonzero entry at or below the diagonal.
pub fn solve_exact(m: &Matrix, b: &[Rational]) -> Result<Vector> {
    solve_exact_counted(m, b).map(|(x, _)| x)
}

/// [`solve_exact`] together with the number of scalar operations it performed.
pub fn solve_exact_counted(m: &Matrix, b: &[Rational]) -> Result<(Vector, OpCount)> {
    let n = m.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let mut ops = OpCount::default();
    let mut a: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    let mut rhs = b.to_vec();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix(col))?;
        if pivot != col {
            a.swap(pivot, col);
            rhs.swap(pivot, col);
        }
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for (offset, row) in lower.iter_mut().enumerate() {
            let factor = &row[col] / &pivot_row[col];
            ops.add(1);
            row[col] = Rational::zero();
            for k in col + 1..n {
                let t = &factor * &pivot_row[k];
                row[k] -= t;
            }
            let t = &factor * &rhs[col];
            rhs[col + 1 + offset] -= t;
            ops.add(2 * (n - col - 1) as u64 + 2);
        }
    }

    let x = back_substitute(&a, rhs, &mut ops);
    Ok((x, ops))
}

fn back_substitute<R: AsRef<[Rational]>>(u: &[R], mut rhs: Vector, ops: &mut OpCount) -> Vector {
    let n = rhs.len();
    for i in (0..n).rev() {
        let row = u[i].as_ref();
        let mut acc = std::mem::take(&mut rhs[i]);
        for j in i + 1..n {
            acc -= &row[j] * &rhs[j];
        }
        rhs[i] = acc / &row[i];
        ops.add(2 * (n - i - 1) as u64 + 1);
    }
    rhs
}

/// Back substitution for an upper triangular system, O(n^2).
pub fn solve_upper_triangular(u: &Matrix, b: &[Rational]) -> Result<Vector> {
    let n = u.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    for i in 0..n {
        if let Some(j) = (0..i).find(|&j| !u.get(i, j).is_zero()) {
            return Err(Error::NotTriangular(i, j));
        }
    }
    if let Some(i) = (0..n).find(|&i| u.get(i, i).is_zero()) {
        return Err(Error::SingularMatrix(i));
    }
    let rows: Vec<&[Rational]> = u.rows().collect();
    Ok(back_substitute(&rows, b.to_vec(), &mut OpCount::default()))
}

/// Solves `V * m = b` where `V[i][j] = nodes[j]^(n-i)`, in O(n^2) operations.
///
/// Reversing `b` turns the system into the moment form
/// `sum_j nodes[j]^k * m_j = f_k`, which the Björck–Pereyra scheme solves in
/// place: a Newton-form elimination sweep followed by divided differences.
pub fn solve_dual_vandermonde(nodes: &[Rational], b: &[Rational]) -> Result<Vector> {
    solve_dual_vandermonde_counted(nodes, b).map(|(x, _)| x)
}

/// [`solve_dual_vandermonde`] together with its scalar operation count.
pub fn solve_dual_vandermonde_counted(
    nodes: &[Rational],
    b: &[Rational],
) -> Result<(Vector, OpCount)> {
    if nodes.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            actual: b.len(),
        });
    }
    let mut seen = HashSet::with_capacity(nodes.len());
    if !nodes.iter().all(|x| seen.insert(x)) {
        return Err(Error::DuplicateNodes);
    }
    let mut ops = OpCount::default();
    let mut f: Vector = b.iter().rev().cloned().collect();
    if f.is_empty() {
        return Ok((f, ops));
    }
    let n = f.len() - 1;

    for (k, node) in nodes.iter().enumerate().take(n) {
        for i in (k + 1..=n).rev() {
            let t = node * &f[i - 1];
            f[i] -= t;
            ops.add(2);
        }
    }
    for k in (0..n).rev() {
        for i in k + 1..=n {
            let d = &nodes[i] - &nodes[i - k - 1];
            f[i] /= d;
            ops.add(2);
        }
        for i in k..n {
            let t = f[i + 1].clone();
            f[i] -= t;
            ops.add(1);
        }
    }
    Ok((f, ops))
}
