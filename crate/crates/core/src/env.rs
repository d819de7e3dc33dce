//! Environments and information maps.
//!
//! Coordinates are indexed from 0. For the worked instances the order is
//! always `(μ₁, s₁, s₂)`: the maximizing team's private state first, then
//! the two minimizers' states.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::{Rational, Scalar};

/// A finite distribution over symbol vectors of fixed length.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteEnv {
    arity: usize,
    outcomes: Vec<(Vec<u32>, Scalar)>,
}

impl FiniteEnv {
    pub fn new(arity: usize, outcomes: Vec<(Vec<u32>, Scalar)>) -> Result<Self> {
        let mut total = Scalar::zero();
        for (i, (symbols, p)) in outcomes.iter().enumerate() {
            if symbols.len() != arity {
                return Err(Error::DimensionMismatch {
                    context: "outcome symbol vector",
                    expected: arity,
                    found: symbols.len(),
                });
            }
            if !p.value().is_finite() || p.value() < 0.0 {
                return Err(Error::NotADistribution {
                    context: "finite environment",
                    total: p.value(),
                });
            }
            if outcomes[..i].iter().any(|(s, _)| s == symbols) {
                return Err(Error::DuplicateOutcome);
            }
            total = total + *p;
        }
        let ok = match total.as_exact() {
            Some(r) => r == Rational::from_integer(1),
            None => (total.value() - 1.0).abs() <= 1e-12,
        };
        if !ok {
            return Err(Error::NotADistribution {
                context: "finite environment",
                total: total.value(),
            });
        }
        Ok(FiniteEnv { arity, outcomes })
    }

    /// All mass on one outcome.
    pub fn point_mass(symbols: Vec<u32>) -> Self {
        FiniteEnv {
            arity: symbols.len(),
            outcomes: vec![(symbols, Scalar::one())],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outcomes(&self) -> &[(Vec<u32>, Scalar)] {
        &self.outcomes
    }

    /// Outcomes with strictly positive probability.
    pub fn support(&self) -> impl Iterator<Item = &(Vec<u32>, Scalar)> {
        self.outcomes.iter().filter(|(_, p)| !p.is_zero())
    }

    pub fn probability(&self, symbols: &[u32]) -> Scalar {
        self.outcomes
            .iter()
            .find(|(s, _)| s == symbols)
            .map_or(Scalar::zero(), |(_, p)| *p)
    }

    /// Distinct values taken by coordinate `coord`, ascending.
    pub fn alphabet(&self, coord: usize) -> Vec<u32> {
        let mut a: Vec<u32> = self.outcomes.iter().map(|(s, _)| s[coord]).collect();
        a.sort_unstable();
        a.dedup();
        a
    }
}

fn check_unit(name: &'static str, x: &Scalar) -> Result<()> {
    let v = x.value();
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::OutOfRange { name, value: v });
    }
    Ok(())
}

/// The three-bit chain: `μ₁ ~ Bernoulli(p1)`; given `μ₁ = 1`, `s₁ ~
/// Bernoulli(p)`; `s₂` is Bernoulli(q) when `s₁ = 0`, and when `s₁ = 1`
/// it equals 0 with probability `q`. `μ₁ = 0` forces `s₁ = 0`; `μ₁ = 1,
/// s₁ = 0` forces `s₂ = 0`.
///
/// All eight outcomes are listed, including the zero-probability ones.
pub fn binary_chain_env(p1: Scalar, p: Scalar, q: Scalar) -> Result<FiniteEnv> {
    check_unit("p1", &p1)?;
    check_unit("p", &p)?;
    check_unit("q", &q)?;
    let one = Scalar::one();
    let zero = Scalar::zero();
    let outcomes = vec![
        (vec![0, 0, 0], (one - p1) * (one - q)),
        (vec![0, 0, 1], (one - p1) * q),
        (vec![0, 1, 0], zero),
        (vec![0, 1, 1], zero),
        (vec![1, 0, 0], p1 * (one - p)),
        (vec![1, 0, 1], zero),
        (vec![1, 1, 0], p1 * p * q),
        (vec![1, 1, 1], p1 * p * (one - q)),
    ];
    FiniteEnv::new(3, outcomes)
}

/// A zero-mean Gaussian environment, stored by its covariance.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianEnv {
    covariance: Matrix,
}

impl GaussianEnv {
    pub fn new(covariance: Matrix) -> Result<Self> {
        if covariance.rows() == 0 {
            return Err(Error::InvalidStructure("empty covariance".into()));
        }
        if !covariance.all_finite() {
            return Err(Error::NonFinite {
                context: "covariance",
            });
        }
        covariance.require_symmetric("covariance", 1e-10)?;
        let min_eigenvalue = linalg::min_eigenvalue(&covariance)?;
        if min_eigenvalue < -1e-8 {
            return Err(Error::NotPositiveDefinite {
                context: "covariance",
                min_eigenvalue,
            });
        }
        Ok(GaussianEnv { covariance })
    }

    pub fn dim(&self) -> usize {
        self.covariance.rows()
    }

    pub fn covariance(&self) -> &Matrix {
        &self.covariance
    }
}

/// One decision maker's information function.
#[derive(Clone, Debug, PartialEq)]
pub enum ObsEntry {
    CoordinateSelect(Vec<usize>),
    LinearMix(Vec<f64>),
    /// Prior knowledge only.
    Null,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservationMap {
    entries: Vec<ObsEntry>,
}

impl ObservationMap {
    /// Validates every entry against an environment with `dim` coordinates.
    pub fn new(entries: Vec<ObsEntry>, dim: usize) -> Result<Self> {
        for e in &entries {
            match e {
                ObsEntry::CoordinateSelect(idx) => {
                    if let Some(&i) = idx.iter().find(|&&i| i >= dim) {
                        return Err(Error::IndexOutOfBounds {
                            context: "observed coordinate",
                            index: i,
                            len: dim,
                        });
                    }
                }
                ObsEntry::LinearMix(w) => {
                    if w.len() != dim {
                        return Err(Error::DimensionMismatch {
                            context: "mixing weights",
                            expected: dim,
                            found: w.len(),
                        });
                    }
                    if w.iter().any(|x| !x.is_finite()) {
                        return Err(Error::NonFinite {
                            context: "mixing weights",
                        });
                    }
                }
                ObsEntry::Null => {}
            }
        }
        Ok(ObservationMap { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, dm: usize) -> Result<&ObsEntry> {
        self.entries.get(dm).ok_or(Error::IndexOutOfBounds {
            context: "decision maker",
            index: dm,
            len: self.entries.len(),
        })
    }

    pub fn entries(&self) -> &[ObsEntry] {
        &self.entries
    }
}

/// What a decision maker sees.
#[derive(Clone, Debug)]
pub enum Signal {
    Symbols(Vec<u32>),
    Value(f64),
    Constant,
}

impl PartialEq for Signal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Signal {}

impl PartialOrd for Signal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Signal {
    fn cmp(&self, other: &Self) -> Ordering {
        use Signal::*;
        match (self, other) {
            (Constant, Constant) => Ordering::Equal,
            (Constant, _) => Ordering::Less,
            (_, Constant) => Ordering::Greater,
            (Symbols(a), Symbols(b)) => a.cmp(b),
            (Symbols(_), Value(_)) => Ordering::Less,
            (Value(_), Symbols(_)) => Ordering::Greater,
            (Value(a), Value(b)) => a.total_cmp(b),
        }
    }
}

/// Observation of decision maker `dm` for a symbolic outcome.
pub fn observe(outcome: &[u32], map: &ObservationMap, dm: usize) -> Result<Signal> {
    Ok(match map.entry(dm)? {
        ObsEntry::CoordinateSelect(idx) => {
            Signal::Symbols(idx.iter().map(|&i| outcome[i]).collect())
        }
        ObsEntry::LinearMix(w) => {
            Signal::Value(w.iter().zip(outcome).map(|(w, &s)| w * s as f64).sum())
        }
        ObsEntry::Null => Signal::Constant,
    })
}

/// Observation of decision maker `dm` for a real-valued draw, as a vector
/// (empty for the null map).
pub fn observe_real(xi: &[f64], map: &ObservationMap, dm: usize) -> Result<Vec<f64>> {
    Ok(match map.entry(dm)? {
        ObsEntry::CoordinateSelect(idx) => idx.iter().map(|&i| xi[i]).collect(),
        ObsEntry::LinearMix(w) => vec![linalg::dot(w, xi)],
        ObsEntry::Null => Vec::new(),
    })
}

/// Second moments of `ω = φᵀξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMoments {
    pub variance: f64,
    /// `Cov(ξ_i, ω)` for every coordinate `i`.
    pub cross: Vec<f64>,
}

pub fn induced_moments(phi: &[f64], cov: &Matrix) -> Result<InducedMoments> {
    if phi.len() != cov.rows() {
        return Err(Error::DimensionMismatch {
            context: "mixing weights vs covariance",
            expected: cov.rows(),
            found: phi.len(),
        });
    }
    let cross = cov.mul_vec(phi)?;
    let variance = linalg::dot(phi, &cross);
    Ok(InducedMoments { variance, cross })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i128, d: i128) -> Scalar {
        Scalar::ratio(n, d).unwrap()
    }

    #[test]
    fn chain_env_at_reference_parameters() {
        let env = binary_chain_env(r(1, 4), r(1, 3), r(2, 3)).unwrap();
        assert_eq!(env.outcomes().len(), 8);
        assert_eq!(
            env.probability(&[0, 0, 0]).as_exact(),
            Some(Rational::new(1, 4))
        );
        assert_eq!(
            env.probability(&[1, 0, 0]).as_exact(),
            Some(Rational::new(1, 6))
        );
        assert_eq!(
            env.probability(&[1, 1, 1]).as_exact(),
            Some(Rational::new(1, 36))
        );
        assert_eq!(
            env.probability(&[1, 1, 0]).as_exact(),
            Some(Rational::new(1, 18))
        );
        for z in [[0, 1, 0], [0, 1, 1], [1, 0, 1]] {
            assert!(env.probability(&z).is_zero());
        }
        assert_eq!(env.support().count(), 5);
    }

    #[test]
    fn chain_env_degenerate_prior() {
        let env = binary_chain_env(Scalar::one(), r(2, 5), r(1, 7)).unwrap();
        let mass = env
            .support()
            .filter(|(s, _)| s[0] == 1)
            .fold(Scalar::zero(), |a, (_, p)| a + *p);
        assert_eq!(mass.as_exact(), Some(Rational::from_integer(1)));
        assert!(binary_chain_env(r(5, 4), r(1, 2), r(1, 2)).is_err());
    }

    #[test]
    fn finite_env_rejects_bad_input() {
        let half = Scalar::approx(0.5);
        assert_eq!(
            FiniteEnv::new(1, vec![(vec![0], half), (vec![0], half)]),
            Err(Error::DuplicateOutcome)
        );
        assert!(matches!(
            FiniteEnv::new(1, vec![(vec![0], half)]),
            Err(Error::NotADistribution { .. })
        ));
        assert!(matches!(
            FiniteEnv::new(2, vec![(vec![0], Scalar::one())]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(FiniteEnv::new(
            1,
            vec![
                (vec![0], Scalar::approx(1.5)),
                (vec![1], Scalar::approx(-0.5))
            ]
        )
        .is_err());
    }

    #[test]
    fn observation_maps() {
        let map = ObservationMap::new(
            vec![
                ObsEntry::CoordinateSelect(vec![1]),
                ObsEntry::LinearMix(vec![0.0, 0.5, 0.5]),
                ObsEntry::Null,
            ],
            3,
        )
        .unwrap();
        assert_eq!(
            observe(&[1, 0, 1], &map, 0).unwrap(),
            Signal::Symbols(vec![0])
        );
        assert_eq!(observe(&[1, 0, 1], &map, 1).unwrap(), Signal::Value(0.5));
        assert_eq!(observe(&[1, 0, 1], &map, 2).unwrap(), Signal::Constant);
        assert_eq!(observe(&[0, 1, 1], &map, 2).unwrap(), Signal::Constant);
        assert_eq!(observe_real(&[0.3, 1.0, 2.0], &map, 1).unwrap(), vec![1.5]);
        assert!(matches!(
            observe(&[0, 0, 0], &map, 3),
            Err(Error::IndexOutOfBounds { .. })
        ));
        assert!(ObservationMap::new(vec![ObsEntry::CoordinateSelect(vec![3])], 3).is_err());
    }

    fn zs_sigma() -> Matrix {
        Matrix::from_rows(&[[2.0, 0.25, 0.25], [0.25, 1.0, 0.5], [0.25, 0.5, 1.0]]).unwrap()
    }

    #[test]
    fn mole_and_consultant_moments() {
        let m = induced_moments(&[0.5, 0.0, 0.0], &zs_sigma()).unwrap();
        assert!((m.variance - 0.5).abs() < 1e-15);
        assert_eq!(m.cross, vec![1.0, 0.125, 0.125]);
        let c = induced_moments(&[0.0, 0.5, 0.5], &zs_sigma()).unwrap();
        assert!((c.variance - 0.75).abs() < 1e-15);
        assert_eq!(c.cross, vec![0.25, 0.75, 0.75]);
        let z = induced_moments(&[0.0; 3], &zs_sigma()).unwrap();
        assert_eq!((z.variance, z.cross), (0.0, vec![0.0; 3]));
        assert!(induced_moments(&[1.0], &zs_sigma()).is_err());
    }

    #[test]
    fn gaussian_env_validation() {
        assert!(GaussianEnv::new(zs_sigma()).is_ok());
        let bad = Matrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        assert!(matches!(
            GaussianEnv::new(bad),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let asym = Matrix::from_rows(&[[1.0, 0.1], [0.0, 1.0]]).unwrap();
        assert!(matches!(
            GaussianEnv::new(asym),
            Err(Error::NotSymmetric { .. })
        ));
    }

    proptest! {
        #[test]
        fn chain_env_is_a_distribution_with_bernoulli_marginal(
            a in 0i128..=12, b in 0i128..=12, c in 0i128..=12
        ) {
            let (p1, p, q) = (r(a, 12), r(b, 12), r(c, 12));
            let env = binary_chain_env(p1, p, q).unwrap();
            let mut total = Scalar::zero();
            let mut top = Scalar::zero();
            for (s, pr) in env.outcomes() {
                prop_assert!(pr.value() >= 0.0);
                total = total + *pr;
                if s[0] == 1 {
                    top = top + *pr;
                }
            }
            prop_assert_eq!(total.as_exact(), Some(Rational::from_integer(1)));
            prop_assert_eq!(top.as_exact(), p1.as_exact());
        }

        #[test]
        fn induced_moments_obey_cauchy_schwarz(
            g in proptest::collection::vec(-1.0f64..1.0, 9),
            phi in proptest::collection::vec(-2.0f64..2.0, 3),
        ) {
            let g = Matrix::from_vec(3, 3, g).unwrap();
            let cov = g.mul(&g.transpose()).unwrap();
            let m = induced_moments(&phi, &cov).unwrap();
            prop_assert!(m.variance >= -1e-12);
            for i in 0..3 {
                prop_assert!(m.cross[i].abs() <= libm::sqrt(cov[(i, i)] * m.variance.max(0.0)) + 1e-9);
            }
        }
    }
}
