use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct GridResult {
    pub theta: Vec<f64>,
    pub value: f64,
}

/// Nested grid search for a minimum of `f` over a box.
///
/// Each level evaluates `points` values per coordinate, then recentres a
/// box five times narrower on the best point. Landing on an edge of the
/// original box is reported as [`Error::BoundaryExhausted`] since the
/// minimum probably lies outside.
pub fn grid_refine<F: Fn(&[f64]) -> f64>(
    f: F,
    bounds: &[(f64, f64)],
    levels: usize,
    points: usize,
) -> Result<GridResult> {
    let k = bounds.len();
    if k == 0 || k > 5 {
        return Err(Error::OutOfRange {
            name: "grid dimension",
            value: k as f64,
        });
    }
    if levels == 0 {
        return Err(Error::OutOfRange {
            name: "grid levels",
            value: 0.0,
        });
    }
    if points < 2 {
        return Err(Error::OutOfRange {
            name: "grid points",
            value: points as f64,
        });
    }
    if bounds
        .iter()
        .any(|(lo, hi)| !(lo < hi) || !lo.is_finite() || !hi.is_finite())
    {
        return Err(Error::InvalidStructure(
            "grid bounds must be finite with lo < hi".into(),
        ));
    }
    let mut boxes: Vec<(f64, f64)> = bounds.to_vec();
    let mut best_theta = vec![0.0; k];
    let mut best = f64::INFINITY;
    let mut idx = vec![0usize; k];
    let mut point = vec![0.0; k];
    for _ in 0..levels {
        idx.iter_mut().for_each(|i| *i = 0);
        let mut best_idx = vec![0usize; k];
        let mut level_best = f64::INFINITY;
        loop {
            for d in 0..k {
                let (lo, hi) = boxes[d];
                point[d] = lo + (hi - lo) * idx[d] as f64 / (points - 1) as f64;
            }
            let v = f(&point);
            if v < level_best {
                level_best = v;
                best_idx.copy_from_slice(&idx);
                best_theta.copy_from_slice(&point);
            }
            let mut d = 0;
            while d < k {
                idx[d] += 1;
                if idx[d] < points {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == k {
                break;
            }
        }
        if level_best < best {
            best = level_best;
        }
        for d in 0..k {
            let (olo, ohi) = bounds[d];
            let on_edge = (best_idx[d] == 0 && boxes[d].0 <= olo)
                || (best_idx[d] == points - 1 && boxes[d].1 >= ohi);
            if on_edge {
                return Err(Error::BoundaryExhausted { coordinate: d });
            }
            let half = (boxes[d].1 - boxes[d].0) / 10.0;
            let c = best_theta[d];
            boxes[d] = ((c - half).max(olo), (c + half).min(ohi));
        }
    }
    Ok(GridResult {
        theta: best_theta,
        value: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_parabola() {
        let r = grid_refine(|t| t[0] * t[0], &[(-3.0, 2.0)], 8, 11).unwrap();
        assert!(r.theta[0].abs() < 1e-5);
    }

    #[test]
    fn minimum_outside_box_is_reported() {
        let e = grid_refine(
            |t| (t[0] - 10.0).powi(2) + t[1] * t[1],
            &[(-1.0, 1.0), (-1.0, 1.0)],
            3,
            11,
        );
        assert_eq!(e, Err(Error::BoundaryExhausted { coordinate: 0 }));
    }

    #[test]
    fn never_below_true_minimum() {
        let f = |t: &[f64]| {
            2.0 * t[0] * t[0] - 0.5 * t[0] * t[1] + t[1] * t[1] + 2.0 * t[0] + 2.0 * t[1]
        };
        let r = grid_refine(f, &[(-5.0, 5.0), (-5.0, 5.0)], 6, 11).unwrap();
        let exact = -56.0 / 31.0;
        assert!(r.value >= exact - 1e-9);
        assert!(r.value - exact < 1e-4);
    }
}
