//! Small dense linear algebra: the systems here never exceed a handful of
//! unknowns, so clarity wins over blocking or SIMD.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "matrix row",
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix data",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut p = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    p[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(p)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let my = self.mul_vec(y)?;
        if x.len() != my.len() {
            return Err(Error::DimensionMismatch {
                context: "bilinear form",
                expected: my.len(),
                found: x.len(),
            });
        }
        Ok(dot(x, &my))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest `|a_ij − a_ji|`; infinite for non-square input.
    pub fn symmetry_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..i {
                dev = dev.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        dev
    }

    pub fn require_symmetric(&self, context: &'static str, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.rows,
                found: self.cols,
            });
        }
        let deviation = self.symmetry_deviation();
        if deviation > tol {
            return Err(Error::NotSymmetric { context, deviation });
        }
        Ok(())
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(v: &[f64]) -> f64 {
    libm::sqrt(dot(v, v))
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
///
/// A pivot with `|p| <= 1e-12 * max|a_ij|` is reported as singular.
pub fn solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            context: "linear solve",
            expected: n,
            found: a.cols(),
        });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            context: "linear solve rhs",
            expected: n,
            found: b.len(),
        });
    }
    if !a.all_finite() || b.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            context: "linear solve",
        });
    }
    let threshold = 1e-12 * a.max_abs();
    let mut m = a.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let mut p = k;
        for i in k + 1..n {
            if m[(i, k)].abs() > m[(p, k)].abs() {
                p = i;
            }
        }
        let pivot = m[(p, k)];
        if pivot.abs() <= threshold || pivot == 0.0 {
            return Err(Error::Singular {
                context: "linear solve",
                step: k,
                pivot,
            });
        }
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            x.swap(k, p);
        }
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = x[k];
        for j in k + 1..n {
            s -= m[(k, j)] * x[j];
        }
        x[k] = s / m[(k, k)];
    }
    Ok(x)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector of `values[k]`.
    pub vectors: Matrix,
}

pub fn sym_eigen(a: &Matrix) -> Result<SymEigen> {
    let n = a.rows();
    a.require_symmetric("eigendecomposition", 1e-8 * (1.0 + a.max_abs()))?;
    if !a.all_finite() {
        return Err(Error::NonFinite {
            context: "eigendecomposition",
        });
    }
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if libm::sqrt(off) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, i)];
        }
    }
    Ok(SymEigen { values, vectors })
}

/// Smallest eigenvalue of a symmetric matrix; `+inf` for the empty matrix.
pub fn min_eigenvalue(a: &Matrix) -> Result<f64> {
    Ok(sym_eigen(a)?
        .values
        .first()
        .copied()
        .unwrap_or(f64::INFINITY))
}

pub fn max_eigenvalue(a: &Matrix) -> Result<f64> {
    Ok(sym_eigen(a)?
        .values
        .last()
        .copied()
        .unwrap_or(f64::NEG_INFINITY))
}

/// Symmetric square root `R` with `R R = A` of a positive semidefinite
/// matrix. Eigenvalues in `[-1e-8, 0]` are lifted by a `1e-12` jitter;
/// anything more negative is an error.
pub fn sqrt_psd(a: &Matrix, context: &'static str) -> Result<Matrix> {
    let eig = sym_eigen(a)?;
    let n = a.rows();
    let mut root = Matrix::zeros(n, n);
    for (k, &lambda) in eig.values.iter().enumerate() {
        if lambda < -1e-8 {
            return Err(Error::NotPositiveDefinite {
                context,
                min_eigenvalue: lambda,
            });
        }
        let s = if lambda <= 0.0 {
            libm::sqrt(1e-12)
        } else {
            libm::sqrt(lambda)
        };
        for i in 0..n {
            for j in 0..n {
                root[(i, j)] += s * eig.vectors[(i, k)] * eig.vectors[(j, k)];
            }
        }
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn solves_a_small_system() {
        let a = Matrix::from_rows(&[[2.0, -0.25], [-0.25, 1.0]]).unwrap();
        let x = solve(&a, &[-1.0, -1.0]).unwrap();
        assert!((x[0] + 0.645_161_290_3).abs() < 1e-9);
        assert!((x[1] + 1.161_290_322_6).abs() < 1e-9);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(solve(&a, &[3.0, 4.0]).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn singular_system_is_reported() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert!(matches!(
            solve(&a, &[1.0, 1.0]),
            Err(Error::Singular { step: 1, .. })
        ));
    }

    #[test]
    fn eigenvalues_of_known_matrix() {
        let a = Matrix::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let e = sym_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_of_rank_one_matrix() {
        let a = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let r = sqrt_psd(&a, "test").unwrap();
        let back = r.mul(&r).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-10);
            }
        }
        let bad = Matrix::from_rows(&[[1.0, 0.0], [0.0, -1.0]]).unwrap();
        assert!(sqrt_psd(&bad, "test").is_err());
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eigen(&a), Err(Error::NotSymmetric { .. })));
    }

    fn spd(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
            let g = Matrix::from_vec(n, n, v).unwrap();
            g.mul(&g.transpose())
                .unwrap()
                .add(&Matrix::identity(n).scale(0.1))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn solve_inverts_products(a in spd(5), x in proptest::collection::vec(-3.0f64..3.0, 5)) {
            let b = a.mul_vec(&x).unwrap();
            let y = solve(&a, &b).unwrap();
            for (u, v) in x.iter().zip(&y) {
                prop_assert!((u - v).abs() < 1e-8);
            }
        }

        #[test]
        fn eigen_reconstructs(a in spd(4)) {
            let e = sym_eigen(&a).unwrap();
            let mut back = Matrix::zeros(4, 4);
            for k in 0..4 {
                for i in 0..4 {
                    for j in 0..4 {
                        back[(i, j)] += e.values[k] * e.vectors[(i, k)] * e.vectors[(j, k)];
                    }
                }
            }
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-10);
                }
            }
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
