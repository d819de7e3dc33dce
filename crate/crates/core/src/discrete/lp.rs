//! Mixed-strategy value of a matrix game by the primal simplex method.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matrix::PayoffMatrix;
use crate::error::{Error, Result};

/// Largest side accepted by [`minimax_joint`].
pub const LP_MAX_SIDE: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct MinimaxSolution {
    pub value: f64,
    /// Over rows (minimizing team profiles).
    pub minimizer: Vec<f64>,
    /// Over columns (maximizing team profiles).
    pub maximizer: Vec<f64>,
    /// `max_j (xᵀA)_j − min_i (Ay)_i` at the returned strategies.
    pub gap: f64,
}

/// Optimal joint (correlated within each team) strategies and the value.
///
/// After shifting `A` to be positive, the minimizer's problem is
/// `max Σx' s.t. Aᵀx' ≤ 1, x' ≥ 0` with value `1/Σx'`; the maximizer's
/// strategy is read off the slack reduced costs. The answer is rejected
/// unless the duality gap is at most `1e-9`.
pub fn minimax_joint(m: &PayoffMatrix) -> Result<MinimaxSolution> {
    let (nr, nc) = (m.nrows(), m.ncols());
    if nr > LP_MAX_SIDE || nc > LP_MAX_SIDE {
        return Err(Error::CapExceeded {
            context: "matrix game",
            count: nr.max(nc) as u128,
            cap: LP_MAX_SIDE as u128,
        });
    }
    let min_entry = (0..nr)
        .flat_map(|r| m.row(r).iter().cloned())
        .fold(f64::INFINITY, f64::min);
    let shift = 1.0 - min_entry;

    // One constraint row per column of A, objective in row `nc`. Variables
    // are the rows of A followed by the slacks.
    let width = nr + nc + 1;
    let rhs = width - 1;
    let mut t = vec![0.0; (nc + 1) * width];
    for c in 0..nc {
        for r in 0..nr {
            t[c * width + r] = m.get(r, c) + shift;
        }
        t[c * width + nr + c] = 1.0;
        t[c * width + rhs] = 1.0;
    }
    for r in 0..nr {
        t[nc * width + r] = -1.0;
    }
    let mut basis: Vec<usize> = (nr..nr + nc).collect();

    let eps = 1e-12;
    let max_iter = 50 * (nr + nc) + 1000;
    let mut done = false;
    for _ in 0..max_iter {
        // Bland: lowest-index improving variable, lowest-index leaving variable.
        let Some(enter) = (0..nr + nc).find(|&v| t[nc * width + v] < -eps) else {
            done = true;
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for c in 0..nc {
            let a = t[c * width + enter];
            if a > eps {
                let ratio = t[c * width + rhs] / a;
                let better = ratio < best_ratio - 1e-15
                    || ((ratio - best_ratio).abs() <= 1e-15
                        && leave.map_or(true, |l| basis[c] < basis[l]));
                if better {
                    best_ratio = ratio;
                    leave = Some(c);
                }
            }
        }
        let Some(p) = leave else {
            return Err(Error::NumericalFailure("unbounded matrix-game LP".into()));
        };
        let pivot = t[p * width + enter];
        for j in 0..width {
            t[p * width + j] /= pivot;
        }
        for c in 0..=nc {
            if c == p {
                continue;
            }
            let f = t[c * width + enter];
            if f == 0.0 {
                continue;
            }
            for j in 0..width {
                t[c * width + j] -= f * t[p * width + j];
            }
        }
        basis[p] = enter;
    }
    if !done {
        return Err(Error::NumericalFailure(
            "simplex iteration limit reached".into(),
        ));
    }

    let z = t[nc * width + rhs];
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "degenerate LP objective {z}"
        )));
    }
    let mut x = vec![0.0; nr];
    for (c, &b) in basis.iter().enumerate() {
        if b < nr {
            x[b] = t[c * width + rhs].max(0.0);
        }
    }
    let mut y: Vec<f64> = (0..nc).map(|c| t[nc * width + nr + c].max(0.0)).collect();
    normalize(&mut x)?;
    normalize(&mut y)?;

    let upper = (0..nc)
        .map(|c| (0..nr).map(|r| x[r] * m.get(r, c)).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    let lower = (0..nr)
        .map(|r| m.row(r).iter().zip(&y).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let gap = upper - lower;
    if !(gap <= 1e-9) {
        return Err(Error::NumericalFailure(format!(
            "matrix-game duality gap {gap:e} exceeds 1e-9"
        )));
    }
    Ok(MinimaxSolution {
        value: 1.0 / z - shift,
        minimizer: x,
        maximizer: y,
        gap: gap.max(0.0),
    })
}

fn normalize(p: &mut [f64]) -> Result<()> {
    let s: f64 = p.iter().sum();
    if !(s > 0.0) {
        return Err(Error::NumericalFailure(
            "LP produced an empty strategy".into(),
        ));
    }
    p.iter_mut().for_each(|x| *x /= s);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{pure_saddle, security_levels};
    use proptest::prelude::*;

    #[test]
    fn matching_pennies() {
        let m = PayoffMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let s = minimax_joint(&m).unwrap();
        assert!((s.value - 0.5).abs() < 1e-12);
        for p in s.minimizer.iter().chain(&s.maximizer) {
            assert!((p - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_matrix() {
        let m = PayoffMatrix::from_rows(&[[-2.5, -2.5, -2.5], [-2.5, -2.5, -2.5]]).unwrap();
        assert!((minimax_joint(&m).unwrap().value + 2.5).abs() < 1e-12);
    }

    #[test]
    fn rock_paper_scissors() {
        let m = PayoffMatrix::from_rows(&[[0.0, 1.0, -1.0], [-1.0, 0.0, 1.0], [1.0, -1.0, 0.0]])
            .unwrap();
        let s = minimax_joint(&m).unwrap();
        assert!(s.value.abs() < 1e-12);
        assert!(s.maximizer.iter().all(|p| (p - 1.0 / 3.0).abs() < 1e-9));
    }

    fn matrix(max_side: usize) -> impl Strategy<Value = PayoffMatrix> {
        (1..=max_side, 1..=max_side).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-10i32..=10, r * c).prop_map(move |v| {
                let rows: Vec<Vec<f64>> = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&x| x as f64 / 2.0).collect())
                    .collect();
                PayoffMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn value_lies_between_security_levels(m in matrix(7)) {
            let s = minimax_joint(&m).unwrap();
            let l = security_levels(&m).unwrap();
            prop_assert!(l.lower - 1e-9 <= s.value && s.value <= l.upper + 1e-9);
            prop_assert!(s.gap <= 1e-9);
            if let Some(saddle) = pure_saddle(&m) {
                prop_assert!((saddle.value - s.value).abs() <= 1e-9);
            }
        }
    }
}
