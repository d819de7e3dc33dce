use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::Side;

/// Expected payoffs with rows for the minimizing team and columns for the
/// maximizing team.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffMatrix {
    nrows: usize,
    ncols: usize,
    values: Vec<f64>,
    exact: Option<Vec<Rational>>,
    row_radix: Vec<usize>,
    col_radix: Vec<usize>,
}

impl PayoffMatrix {
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidStructure("empty payoff matrix".into()));
        }
        let mut values = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    context: "payoff matrix row",
                    expected: ncols,
                    found: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "payoff matrix",
            });
        }
        Ok(PayoffMatrix {
            nrows,
            ncols,
            values,
            exact: None,
            row_radix: vec![nrows],
            col_radix: vec![ncols],
        })
    }

    /// Row-major entries; the matrix is exact iff every entry is.
    pub fn from_scalars(nrows: usize, ncols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidStructure("empty payoff matrix".into()));
        }
        if entries.len() != nrows * ncols {
            return Err(Error::DimensionMismatch {
                context: "payoff matrix",
                expected: nrows * ncols,
                found: entries.len(),
            });
        }
        let values: Vec<f64> = entries.iter().map(|s| s.value()).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "payoff matrix",
            });
        }
        let exact = entries.iter().map(|s| s.as_exact()).collect();
        Ok(PayoffMatrix {
            nrows,
            ncols,
            values,
            exact,
            row_radix: vec![nrows],
            col_radix: vec![ncols],
        })
    }

    pub(crate) fn with_radix(mut self, row_radix: Vec<usize>, col_radix: Vec<usize>) -> Self {
        self.row_radix = row_radix;
        self.col_radix = col_radix;
        self
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.values[r * self.ncols + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        match &self.exact {
            Some(e) => Scalar::exact(e[r * self.ncols + c]),
            None => Scalar::approx(self.get(r, c)),
        }
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.values[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Per-member rule counts of the row team (first member fastest).
    pub fn row_radix(&self) -> &[usize] {
        &self.row_radix
    }

    pub fn col_radix(&self) -> &[usize] {
        &self.col_radix
    }

    /// Per-member rule indices of a row.
    pub fn row_label(&self, r: usize) -> Vec<usize> {
        decode(r, &self.row_radix)
    }

    pub fn col_label(&self, c: usize) -> Vec<usize> {
        decode(c, &self.col_radix)
    }

    /// Keeps the listed rows and columns, in the listed order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PayoffMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                if r >= self.nrows || c >= self.ncols {
                    return Err(Error::IndexOutOfBounds {
                        context: "submatrix",
                        index: r.max(c),
                        len: self.nrows.max(self.ncols),
                    });
                }
                entries.push(self.entry(r, c));
            }
        }
        PayoffMatrix::from_scalars(rows.len(), cols.len(), entries)
    }
}

fn decode(mut idx: usize, radix: &[usize]) -> Vec<usize> {
    radix
        .iter()
        .map(|&k| {
            let d = idx % k;
            idx /= k;
            d
        })
        .collect()
}

/// Pure-strategy security levels: `lower = max_j min_i a_ij` is what the
/// maximizer can guarantee, `upper = min_i max_j a_ij` what the minimizer
/// can hold the payoff to.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SecurityLevels {
    pub lower: f64,
    pub upper: f64,
    pub lower_exact: Option<Rational>,
    pub upper_exact: Option<Rational>,
}

fn extreme(items: impl Iterator<Item = Scalar>, want: Ordering) -> Scalar {
    let mut best: Option<Scalar> = None;
    for x in items {
        if best.as_ref().map_or(true, |b| x.compare(b) == want) {
            best = Some(x);
        }
    }
    best.expect("nonempty matrix")
}

pub fn security_levels(m: &PayoffMatrix) -> Result<SecurityLevels> {
    let col_mins =
        (0..m.ncols).map(|c| extreme((0..m.nrows).map(|r| m.entry(r, c)), Ordering::Less));
    let lower = extreme(col_mins, Ordering::Greater);
    let row_maxes =
        (0..m.nrows).map(|r| extreme((0..m.ncols).map(|c| m.entry(r, c)), Ordering::Greater));
    let upper = extreme(row_maxes, Ordering::Less);
    Ok(SecurityLevels {
        lower: lower.value(),
        upper: upper.value(),
        lower_exact: lower.as_exact(),
        upper_exact: upper.as_exact(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Saddle {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

/// A cell that is the maximum of its row and the minimum of its column,
/// if the security levels coincide. Lowest `(row, col)` wins ties.
pub fn pure_saddle(m: &PayoffMatrix) -> Option<Saddle> {
    let levels = security_levels(m).ok()?;
    let equal = match (levels.lower_exact, levels.upper_exact) {
        (Some(a), Some(b)) => a == b,
        _ => (levels.upper - levels.lower).abs() <= 1e-12,
    };
    if !equal {
        return None;
    }
    let tol = 1e-12;
    for r in 0..m.nrows {
        let row_max = m.row(r).iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        for c in 0..m.ncols {
            let v = m.get(r, c);
            let col_min = (0..m.nrows)
                .map(|i| m.get(i, c))
                .fold(f64::INFINITY, f64::min);
            if v >= row_max - tol && v <= col_min + tol {
                return Some(Saddle {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
    }
    None
}

/// How a team randomizes over its rule profiles.
#[derive(Clone, Debug, PartialEq)]
pub enum StrategyKind {
    /// Independent per-member distributions over each member's rules.
    Product(Vec<Vec<f64>>),
    /// One distribution over the team's rule profiles.
    Joint(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MixedTeamStrategy {
    pub side: Side,
    pub kind: StrategyKind,
}

fn check_distribution(p: &[f64], context: &'static str) -> Result<()> {
    if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::NotADistribution {
            context,
            total: f64::NAN,
        });
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::NotADistribution { context, total });
    }
    Ok(())
}

impl MixedTeamStrategy {
    pub fn joint(side: Side, p: Vec<f64>) -> Result<Self> {
        check_distribution(&p, "joint team strategy")?;
        Ok(MixedTeamStrategy {
            side,
            kind: StrategyKind::Joint(p),
        })
    }

    pub fn product(side: Side, per_member: Vec<Vec<f64>>) -> Result<Self> {
        for p in &per_member {
            check_distribution(p, "private member strategy")?;
        }
        Ok(MixedTeamStrategy {
            side,
            kind: StrategyKind::Product(per_member),
        })
    }

    /// All mass on one team profile.
    pub fn point(side: Side, index: usize, count: usize) -> Result<Self> {
        if index >= count {
            return Err(Error::IndexOutOfBounds {
                context: "pure profile",
                index,
                len: count,
            });
        }
        let mut p = vec![0.0; count];
        p[index] = 1.0;
        Ok(MixedTeamStrategy {
            side,
            kind: StrategyKind::Joint(p),
        })
    }

    /// Distribution over team profiles (first member fastest).
    pub fn profile_distribution(&self, radix: &[usize]) -> Result<Vec<f64>> {
        let count: usize = radix.iter().product();
        match &self.kind {
            StrategyKind::Joint(p) => {
                if p.len() != count {
                    return Err(Error::DimensionMismatch {
                        context: "joint team strategy",
                        expected: count,
                        found: p.len(),
                    });
                }
                Ok(p.clone())
            }
            StrategyKind::Product(per) => {
                if per.len() != radix.len() {
                    return Err(Error::DimensionMismatch {
                        context: "team members",
                        expected: radix.len(),
                        found: per.len(),
                    });
                }
                for (p, &k) in per.iter().zip(radix) {
                    if p.len() != k {
                        return Err(Error::DimensionMismatch {
                            context: "member strategy",
                            expected: k,
                            found: p.len(),
                        });
                    }
                }
                Ok((0..count)
                    .map(|idx| {
                        decode(idx, radix)
                            .iter()
                            .zip(per)
                            .map(|(&r, p)| p[r])
                            .product()
                    })
                    .collect())
            }
        }
    }
}

fn side_distribution(m: &PayoffMatrix, s: &MixedTeamStrategy) -> Result<Vec<f64>> {
    match s.side {
        Side::Minimizer => s.profile_distribution(&m.row_radix),
        Side::Maximizer => s.profile_distribution(&m.col_radix),
    }
}

/// `xᵀ M y` for the minimizer's distribution `x` and the maximizer's `y`.
pub fn mixed_payoff(
    m: &PayoffMatrix,
    min: &MixedTeamStrategy,
    max: &MixedTeamStrategy,
) -> Result<f64> {
    if min.side != Side::Minimizer || max.side != Side::Maximizer {
        return Err(Error::InvalidStructure(
            "strategies passed for the wrong sides".into(),
        ));
    }
    let x = side_distribution(m, min)?;
    let y = side_distribution(m, max)?;
    let mut total = 0.0;
    for (r, &xr) in x.iter().enumerate() {
        if xr == 0.0 {
            continue;
        }
        total += xr * m.row(r).iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
    }
    Ok(total)
}

/// Payoff of each pure profile of the free team against a fixed mixture.
pub fn response_payoffs(m: &PayoffMatrix, fixed: &MixedTeamStrategy) -> Result<Vec<f64>> {
    let p = side_distribution(m, fixed)?;
    Ok(match fixed.side {
        Side::Maximizer => (0..m.nrows)
            .map(|r| m.row(r).iter().zip(&p).map(|(a, b)| a * b).sum())
            .collect(),
        Side::Minimizer => (0..m.ncols)
            .map(|c| (0..m.nrows).map(|r| p[r] * m.get(r, c)).sum())
            .collect(),
    })
}

/// Best pure reply of the other team: the minimizer's lowest-payoff row
/// against a fixed maximizer mixture, or the maximizer's highest-payoff
/// column against a fixed minimizer mixture. Near-ties (within
/// `1e-12·(1+|v|)`) go to the lowest index.
pub fn best_response(m: &PayoffMatrix, fixed: &MixedTeamStrategy) -> Result<(usize, f64)> {
    let payoffs = response_payoffs(m, fixed)?;
    let sign = match fixed.side {
        Side::Maximizer => 1.0,
        Side::Minimizer => -1.0,
    };
    let mut best = 0;
    for (i, &v) in payoffs.iter().enumerate().skip(1) {
        let b = payoffs[best];
        if sign * (v - b) < -1e-12 * (1.0 + b.abs()) {
            best = i;
        }
    }
    Ok((best, payoffs[best]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn security_levels_small_cases() {
        let one = PayoffMatrix::from_rows(&[[3.5]]).unwrap();
        let l = security_levels(&one).unwrap();
        assert_eq!((l.lower, l.upper), (3.5, 3.5));
        let pennies = PayoffMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let l = security_levels(&pennies).unwrap();
        assert_eq!((l.lower, l.upper), (0.0, 1.0));
        assert!(pure_saddle(&pennies).is_none());
    }

    #[test]
    fn saddle_found_by_definition() {
        // Column minima are -1 and 1, row maxima 1 and 2: the saddle is the
        // top-right cell.
        let m = PayoffMatrix::from_rows(&[[0.0, 1.0], [-1.0, 2.0]]).unwrap();
        assert_eq!(
            pure_saddle(&m),
            Some(Saddle {
                row: 0,
                col: 1,
                value: 1.0
            })
        );
        let c = PayoffMatrix::from_rows(&[[4.0, 4.0], [4.0, 4.0]]).unwrap();
        assert_eq!(
            pure_saddle(&c),
            Some(Saddle {
                row: 0,
                col: 0,
                value: 4.0
            })
        );
    }

    #[test]
    fn product_expands_first_member_fastest() {
        let s = MixedTeamStrategy::product(Side::Minimizer, vec![vec![0.25, 0.75], vec![0.5, 0.5]])
            .unwrap();
        assert_eq!(
            s.profile_distribution(&[2, 2]).unwrap(),
            vec![0.125, 0.375, 0.125, 0.375]
        );
    }

    #[test]
    fn invalid_distributions_rejected() {
        assert!(MixedTeamStrategy::joint(Side::Minimizer, vec![0.5, 0.6]).is_err());
        assert!(MixedTeamStrategy::joint(Side::Minimizer, vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn point_masses_reduce_to_entries() {
        let m = PayoffMatrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]).unwrap();
        let x = MixedTeamStrategy::point(Side::Minimizer, 1, 2).unwrap();
        let y = MixedTeamStrategy::point(Side::Maximizer, 2, 3).unwrap();
        assert_eq!(mixed_payoff(&m, &x, &y).unwrap(), 6.0);
        assert_eq!(best_response(&m, &x).unwrap(), (2, 6.0));
        assert_eq!(best_response(&m, &y).unwrap(), (0, 3.0));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let m = PayoffMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        let y = MixedTeamStrategy::joint(Side::Maximizer, vec![0.5, 0.5]).unwrap();
        assert_eq!(best_response(&m, &y).unwrap(), (0, 0.5));
    }
}
