//! Expected quadratic cost `E[uᵀBu + 2uᵀSξ]` of linear policies, reduced to
//! `J(θ) = θᵀHθ + 2gᵀθ + c` over free gain coefficients.
//!
//! Each coefficient `θ_k` multiplies one scalar feature `f_kᵀz` inside one
//! decision `u_{d_k}`, where `z` stacks the environment `ξ` and any
//! independent randomness. Then
//! `H_kl = B[d_k,d_l] · f_kᵀΣ_z f_l` and `g_k = (S Σ_{ξz} f_k)[d_k]`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// One free coefficient: which decision it drives and the feature it scales.
#[derive(Clone, Debug, PartialEq)]
pub struct Feature {
    pub decision: usize,
    /// Weights over the stacked vector `z`.
    pub loading: Vec<f64>,
}

impl Feature {
    pub fn coordinate(decision: usize, coord: usize, dim: usize) -> Self {
        let mut loading = vec![0.0; dim];
        loading[coord] = 1.0;
        Feature { decision, loading }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic {
    pub h: Matrix,
    pub g: Vec<f64>,
    pub c: f64,
}

impl Quadratic {
    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn value(&self, theta: &[f64]) -> f64 {
        let ht = self
            .h
            .mul_vec(theta)
            .expect("dimension checked at assembly");
        linalg::dot(theta, &ht) + 2.0 * linalg::dot(&self.g, theta) + self.c
    }

    /// `Hθ + g`, half the gradient.
    pub fn residual_vector(&self, theta: &[f64]) -> Vec<f64> {
        let mut r = self
            .h
            .mul_vec(theta)
            .expect("dimension checked at assembly");
        r.iter_mut().zip(&self.g).for_each(|(a, b)| *a += b);
        r
    }

    pub fn residual(&self, theta: &[f64]) -> f64 {
        linalg::norm(&self.residual_vector(theta))
    }
}

/// `cov_z` is the covariance of `z`; `s` maps `z` into the linear term, with
/// zero columns for randomness that does not enter the cost.
pub fn assemble(b: &Matrix, s: &Matrix, cov_z: &Matrix, features: &[Feature]) -> Result<Quadratic> {
    let m = b.rows();
    let nz = cov_z.rows();
    if !b.is_square() {
        return Err(Error::DimensionMismatch {
            context: "cost curvature",
            expected: m,
            found: b.cols(),
        });
    }
    if s.rows() != m || s.cols() != nz {
        return Err(Error::DimensionMismatch {
            context: "cost coupling",
            expected: m * nz,
            found: s.rows() * s.cols(),
        });
    }
    let mut sig_f = Vec::with_capacity(features.len());
    for f in features {
        if f.decision >= m {
            return Err(Error::IndexOutOfBounds {
                context: "feature decision",
                index: f.decision,
                len: m,
            });
        }
        if f.loading.len() != nz {
            return Err(Error::DimensionMismatch {
                context: "feature loading",
                expected: nz,
                found: f.loading.len(),
            });
        }
        sig_f.push(cov_z.mul_vec(&f.loading)?);
    }
    let k = features.len();
    let mut h = Matrix::zeros(k, k);
    let mut g = vec![0.0; k];
    for a in 0..k {
        for c in 0..k {
            h[(a, c)] = b[(features[a].decision, features[c].decision)]
                * linalg::dot(&features[a].loading, &sig_f[c]);
        }
        g[a] = linalg::dot(s.row(features[a].decision), &sig_f[a]);
    }
    Ok(Quadratic { h, g, c: 0.0 })
}

/// Gain matrix `K` (decisions × `z`) of coefficients `theta`.
pub fn gain_matrix(m: usize, nz: usize, features: &[Feature], theta: &[f64]) -> Matrix {
    let mut k = Matrix::zeros(m, nz);
    for (f, &t) in features.iter().zip(theta) {
        for (j, &w) in f.loading.iter().enumerate() {
            k[(f.decision, j)] += t * w;
        }
    }
    k
}

/// `Tr[KᵀBKΣ_z + 2KᵀSΣ_z]` evaluated directly.
pub fn trace_cost(
    b: &Matrix,
    s: &Matrix,
    cov_z: &Matrix,
    features: &[Feature],
    theta: &[f64],
) -> Result<f64> {
    let k = gain_matrix(b.rows(), cov_z.rows(), features, theta);
    let kt = k.transpose();
    let quad = kt.mul(b)?.mul(&k)?.mul(cov_z)?.trace();
    let lin = kt.mul(s)?.mul(cov_z)?.trace();
    Ok(quad + 2.0 * lin)
}

/// Minimizer of a convex quadratic.
#[derive(Clone, Debug, PartialEq)]
pub struct Minimizer {
    pub theta: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    /// Coefficients whose feature has zero variance; fixed at 0.
    pub pinned: Vec<bool>,
    /// Smallest eigenvalue of `H` on the unpinned coefficients.
    pub min_eigenvalue: f64,
}

/// Solves `Hθ = −g` after pinning zero-variance coefficients. `H` must be
/// positive definite on the rest (smallest eigenvalue above `1e-10`).
pub fn minimize(q: &Quadratic, context: &'static str) -> Result<Minimizer> {
    let k = q.dim();
    let scale = 1.0 + q.h.max_abs();
    let pinned: Vec<bool> = (0..k)
        .map(|i| q.h[(i, i)].abs() <= 1e-14 * scale && q.g[i].abs() <= 1e-14 * scale)
        .collect();
    let free: Vec<usize> = (0..k).filter(|&i| !pinned[i]).collect();
    let hf = q.h.principal(&free);
    let min_eigenvalue = linalg::min_eigenvalue(&hf)?;
    if min_eigenvalue <= 1e-10 {
        return Err(Error::NotPositiveDefinite {
            context,
            min_eigenvalue,
        });
    }
    let rhs: Vec<f64> = free.iter().map(|&i| -q.g[i]).collect();
    let sol = linalg::solve(&hf, &rhs)?;
    let mut theta = vec![0.0; k];
    for (&i, x) in free.iter().zip(sol) {
        theta[i] = x;
    }
    Ok(Minimizer {
        value: q.value(&theta),
        residual: q.residual(&theta),
        theta,
        pinned,
        min_eigenvalue,
    })
}
