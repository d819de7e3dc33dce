//! Static LQG teams: cost `E[uᵀBu + 2uᵀSξ]`, `ξ ~ N(0, Σ)`, each decision
//! linear in what its decision maker sees.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::quadratic::{self, Feature, Quadratic};

/// Extra randomness available to the decision makers.
#[derive(Clone, Debug, PartialEq)]
pub enum Randomness {
    None,
    /// Decision `i` sees its own independent `N(0, variances[i])` draw.
    PrivateIndep {
        variances: Vec<f64>,
    },
    /// Every decision sees the whole vector `ω ~ N(0, cov)`, independent of `ξ`.
    CommonIndep {
        cov: Matrix,
    },
    /// `ω_r = phi[r]ᵀξ`; decision `i` sees the components listed in `access[i]`.
    Dependent {
        phi: Vec<Vec<f64>>,
        access: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LqgTeamSpec {
    pub b: Matrix,
    pub s: Matrix,
    pub sigma: Matrix,
    /// `structure[i]`: coordinates of `ξ` observed by decision `i`.
    pub structure: Vec<Vec<usize>>,
    pub randomness: Randomness,
}

impl LqgTeamSpec {
    /// Each decision observes the coordinate with its own index.
    pub fn diagonal(b: Matrix, s: Matrix, sigma: Matrix) -> Self {
        let structure = (0..b.rows()).map(|i| vec![i]).collect();
        LqgTeamSpec {
            b,
            s,
            sigma,
            structure,
            randomness: Randomness::None,
        }
    }

    /// Every decision observes all of `ξ`.
    pub fn centralized(b: Matrix, s: Matrix, sigma: Matrix) -> Self {
        let n = sigma.rows();
        let structure = (0..b.rows()).map(|_| (0..n).collect()).collect();
        LqgTeamSpec {
            b,
            s,
            sigma,
            structure,
            randomness: Randomness::None,
        }
    }

    pub fn with_randomness(mut self, randomness: Randomness) -> Self {
        self.randomness = randomness;
        self
    }

    pub fn decisions(&self) -> usize {
        self.b.rows()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.b.rows();
        let n = self.sigma.rows();
        self.b.require_symmetric("B", 1e-10)?;
        let min_eigenvalue = linalg::min_eigenvalue(&self.b)?;
        if min_eigenvalue <= 1e-10 {
            return Err(Error::NotPositiveDefinite {
                context: "B",
                min_eigenvalue,
            });
        }
        self.sigma.require_symmetric("Σ", 1e-10)?;
        let min_eigenvalue = linalg::min_eigenvalue(&self.sigma)?;
        if min_eigenvalue < -1e-8 {
            return Err(Error::NotPositiveDefinite {
                context: "Σ",
                min_eigenvalue,
            });
        }
        if self.s.rows() != m || self.s.cols() != n {
            return Err(Error::DimensionMismatch {
                context: "S",
                expected: m * n,
                found: self.s.rows() * self.s.cols(),
            });
        }
        if self.structure.len() != m {
            return Err(Error::DimensionMismatch {
                context: "information structure",
                expected: m,
                found: self.structure.len(),
            });
        }
        for feed in &self.structure {
            if let Some(&c) = feed.iter().find(|&&c| c >= n) {
                return Err(Error::IndexOutOfBounds {
                    context: "observed coordinate",
                    index: c,
                    len: n,
                });
            }
        }
        match &self.randomness {
            Randomness::None => {}
            Randomness::PrivateIndep { variances } => {
                if variances.len() != m {
                    return Err(Error::DimensionMismatch {
                        context: "private variances",
                        expected: m,
                        found: variances.len(),
                    });
                }
                if let Some(&v) = variances.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
                    return Err(Error::NotPositiveDefinite {
                        context: "private randomness",
                        min_eigenvalue: v,
                    });
                }
            }
            Randomness::CommonIndep { cov } => {
                cov.require_symmetric("common randomness covariance", 1e-10)?;
                let min_eigenvalue = linalg::min_eigenvalue(cov)?;
                if min_eigenvalue < -1e-8 {
                    return Err(Error::NotPositiveDefinite {
                        context: "common randomness covariance",
                        min_eigenvalue,
                    });
                }
            }
            Randomness::Dependent { phi, access } => {
                for row in phi {
                    if row.len() != n {
                        return Err(Error::DimensionMismatch {
                            context: "mixing row",
                            expected: n,
                            found: row.len(),
                        });
                    }
                    if row.iter().any(|x| !x.is_finite()) {
                        return Err(Error::NonFinite {
                            context: "mixing row",
                        });
                    }
                }
                if access.len() != m {
                    return Err(Error::DimensionMismatch {
                        context: "randomness access",
                        expected: m,
                        found: access.len(),
                    });
                }
                for a in access {
                    if let Some(&r) = a.iter().find(|&&r| r >= phi.len()) {
                        return Err(Error::IndexOutOfBounds {
                            context: "randomness source",
                            index: r,
                            len: phi.len(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// What a gain coefficient multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    /// Coordinate `component` of `ξ` in decision `decision`.
    Observation { decision: usize, component: usize },
    /// Randomness component `source` in decision `decision`.
    Randomness { decision: usize, source: usize },
}

/// The problem flattened to the stacked vector `z = (ξ, independent ω)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LqgModel {
    pub b: Matrix,
    /// `[S | 0]`.
    pub s: Matrix,
    pub cov_z: Matrix,
    pub coefficients: Vec<Coefficient>,
    pub features: Vec<Feature>,
}

impl LqgModel {
    pub fn gain(&self, theta: &[f64]) -> Matrix {
        quadratic::gain_matrix(self.b.rows(), self.cov_z.rows(), &self.features, theta)
    }
}

fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.rows() + b.rows();
    let mut m = Matrix::zeros(n, n);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            m[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            m[(a.rows() + i, a.cols() + j)] = b[(i, j)];
        }
    }
    m
}

/// Observation coefficients first (decision-major), then randomness ones.
pub fn model(spec: &LqgTeamSpec) -> Result<LqgModel> {
    spec.validate()?;
    let m = spec.decisions();
    let n = spec.sigma.rows();
    let indep = match &spec.randomness {
        Randomness::PrivateIndep { variances } => Matrix::diagonal(variances),
        Randomness::CommonIndep { cov } => cov.clone(),
        _ => Matrix::zeros(0, 0),
    };
    let nz = n + indep.rows();
    let cov_z = block_diag(&spec.sigma, &indep);
    let mut s = Matrix::zeros(m, nz);
    for i in 0..m {
        for j in 0..n {
            s[(i, j)] = spec.s[(i, j)];
        }
    }
    let mut coefficients = Vec::new();
    let mut features = Vec::new();
    for (i, feed) in spec.structure.iter().enumerate() {
        for &c in feed {
            coefficients.push(Coefficient::Observation {
                decision: i,
                component: c,
            });
            features.push(Feature::coordinate(i, c, nz));
        }
    }
    match &spec.randomness {
        Randomness::None => {}
        Randomness::PrivateIndep { .. } => {
            for i in 0..m {
                coefficients.push(Coefficient::Randomness {
                    decision: i,
                    source: i,
                });
                features.push(Feature::coordinate(i, n + i, nz));
            }
        }
        Randomness::CommonIndep { cov } => {
            for i in 0..m {
                for j in 0..cov.rows() {
                    coefficients.push(Coefficient::Randomness {
                        decision: i,
                        source: j,
                    });
                    features.push(Feature::coordinate(i, n + j, nz));
                }
            }
        }
        Randomness::Dependent { phi, access } => {
            for (i, rows) in access.iter().enumerate() {
                for &r in rows {
                    coefficients.push(Coefficient::Randomness {
                        decision: i,
                        source: r,
                    });
                    features.push(Feature {
                        decision: i,
                        loading: phi[r].clone(),
                    });
                }
            }
        }
    }
    Ok(LqgModel {
        b: spec.b.clone(),
        s,
        cov_z,
        coefficients,
        features,
    })
}

pub fn assemble_quadratic(spec: &LqgTeamSpec) -> Result<Quadratic> {
    let md = model(spec)?;
    quadratic::assemble(&md.b, &md.s, &md.cov_z, &md.features)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearPolicy {
    pub coefficients: Vec<Coefficient>,
    pub theta: Vec<f64>,
}

impl LinearPolicy {
    pub fn get(&self, c: Coefficient) -> Option<f64> {
        self.coefficients
            .iter()
            .position(|&x| x == c)
            .map(|i| self.theta[i])
    }

    /// Randomness coefficients only.
    pub fn randomness_gains(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.theta)
            .filter(|(c, _)| matches!(c, Coefficient::Randomness { .. }))
            .map(|(_, &t)| t)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Moments derived from `Σ` and `Φ`.
    Corrected,
    /// The typeset four-coefficient system of the two-DM example.
    PaperFaithful,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TeamSolution {
    pub policy: LinearPolicy,
    pub value: f64,
    /// `‖Hθ + g‖` (or the typeset system's residual).
    pub residual: f64,
    pub mode: SolveMode,
    /// Coefficients fixed at 0 because their feature carries no variance.
    pub pinned: Vec<bool>,
}

pub fn solve_team(spec: &LqgTeamSpec) -> Result<TeamSolution> {
    let md = model(spec)?;
    let q = quadratic::assemble(&md.b, &md.s, &md.cov_z, &md.features)?;
    let sol = quadratic::minimize(&q, "team cost curvature")?;
    let tol = 1e-9 * (1.0 + linalg::norm(&q.g));
    if !(sol.residual <= tol) {
        return Err(Error::NumericalFailure(format!(
            "stationarity residual {:e} above {:e}",
            sol.residual, tol
        )));
    }
    Ok(TeamSolution {
        policy: LinearPolicy {
            coefficients: md.coefficients,
            theta: sol.theta,
        },
        value: sol.value,
        residual: sol.residual,
        mode: SolveMode::Corrected,
        pinned: sol.pinned,
    })
}

/// Outcome of adding randomness that is independent of `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndependentReport {
    pub j_base: f64,
    /// Optimal randomness gains (all zero).
    pub c_star: Vec<f64>,
    pub j_total: f64,
    /// Smallest eigenvalue of the randomness block of the curvature.
    pub block_min_eigenvalue: f64,
}

/// Solves the observation part, then certifies that the randomness block
/// decouples (no cross curvature, no linear term, PSD) so its minimum is 0
/// at zero gains. Works for rank-deficient randomness covariances.
pub fn independent_randomness_report(spec: &LqgTeamSpec) -> Result<IndependentReport> {
    if !matches!(
        spec.randomness,
        Randomness::PrivateIndep { .. } | Randomness::CommonIndep { .. }
    ) {
        return Err(Error::InvalidStructure(
            "expected independent randomness".into(),
        ));
    }
    let base = solve_team(&spec.clone().with_randomness(Randomness::None))?;
    let md = model(spec)?;
    let q = quadratic::assemble(&md.b, &md.s, &md.cov_z, &md.features)?;
    let k_obs = base.policy.theta.len();
    let k = q.dim();
    let rand_idx: Vec<usize> = (k_obs..k).collect();
    for &i in &rand_idx {
        if q.g[i] != 0.0 {
            return Err(Error::NumericalFailure(
                "independent randomness has a linear cost term".into(),
            ));
        }
        for j in 0..k_obs {
            if q.h[(i, j)] != 0.0 {
                return Err(Error::NumericalFailure(
                    "independent randomness couples to observations".into(),
                ));
            }
        }
    }
    let block = q.h.principal(&rand_idx);
    let block_min_eigenvalue = linalg::min_eigenvalue(&block)?;
    if block_min_eigenvalue < -1e-10 {
        return Err(Error::NotPositiveDefinite {
            context: "randomness curvature",
            min_eigenvalue: block_min_eigenvalue,
        });
    }
    let c_star = vec![0.0; rand_idx.len()];
    let mut theta = base.policy.theta.clone();
    theta.extend_from_slice(&c_star);
    Ok(IndependentReport {
        j_base: base.value,
        c_star,
        j_total: q.value(&theta),
        block_min_eigenvalue,
    })
}

pub fn dependent_randomness_solve(spec: &LqgTeamSpec) -> Result<TeamSolution> {
    if !matches!(spec.randomness, Randomness::Dependent { .. }) {
        return Err(Error::InvalidStructure(
            "expected environment-dependent randomness".into(),
        ));
    }
    solve_team(spec)
}

/// `−Tr[SᵀB⁻¹SΣ]`: the optimum when every decision sees all of `ξ`.
pub fn centralized_bound(b: &Matrix, s: &Matrix, sigma: &Matrix) -> Result<f64> {
    let mut binv_s = Matrix::zeros(s.rows(), s.cols());
    for j in 0..s.cols() {
        let col: Vec<f64> = (0..s.rows()).map(|i| s[(i, j)]).collect();
        let x = linalg::solve(b, &col)?;
        for i in 0..s.rows() {
            binv_s[(i, j)] = x[i];
        }
    }
    Ok(-s.transpose().mul(&binv_s)?.mul(sigma)?.trace())
}

/// Mixing weights of the two-DM example, `ω₁ = φ₁₁y₁ + φ₁₂y₂` for DM 1 and
/// `ω₂ = φ₂₁y₁ + φ₂₂y₂` for DM 2.
pub fn two_dm_mixing(phi: [f64; 4]) -> Randomness {
    Randomness::Dependent {
        phi: vec![vec![phi[0], phi[1]], vec![phi[2], phi[3]]],
        access: vec![vec![0], vec![1]],
    }
}

struct Printed {
    m: Matrix,
    r: Vec<f64>,
    d: [f64; 9],
}

fn printed_system(phi: [f64; 4], sigma: &Matrix) -> Printed {
    let [p11, p12, p21, p22] = phi;
    let (s1, s2, s12) = (sigma[(0, 0)], sigma[(1, 1)], sigma[(0, 1)]);
    // δ₃, δ₄ and δ₅ carry the first variance where a derivation from Σ
    // would put the second; kept as typeset.
    let d1 = p11 * s1 + p12 * s12;
    let d2 = p21 * s1 + p22 * s12;
    let d3 = p11 * s12 + p12 * s1;
    let d4 = p21 * s12 + p22 * s1;
    let d5 = p11 * p11 * s1 + p12 * p12 * s2 + p11 * p12 * s12;
    let d6 = p21 * p21 * s1 + p22 * p22 * s2 + p21 * p22 * s12;
    let d7 = p11 * p21 * s1 + (p22 * p11 + p12 * p21) * s12 + p22 * p12 * s2;
    let d8 = p11 * s1 + p12 * s12;
    let d9 = p21 * s12 + p22 * s2;
    let m = Matrix::from_rows(&[
        [4.0 * s1, -2.0 * s12, 2.0 * d1, -d3],
        [-2.0 * s12, 2.0 * s1, -d2, d4],
        [2.0 * d1, -d2, 4.0 * d5, -2.0 * d7],
        [-d3, d4, -2.0 * d7, 2.0 * d6],
    ])
    .expect("fixed shape");
    let r = vec![-2.0 * s1, -2.0 * s2, -2.0 * d8, -2.0 * d9];
    Printed {
        m,
        r,
        d: [d1, d2, d3, d4, d5, d6, d7, d8, d9],
    }
}

/// The typeset cost of the two-DM example at `theta = (α₁₁, α₂₁, α₁₂, α₂₂)`.
pub fn printed_table1_cost(phi: [f64; 4], sigma: &Matrix, theta: [f64; 4]) -> f64 {
    let p = printed_system(phi, sigma);
    let [d1, d2, d3, d4, d5, d6, d7, d8, d9] = p.d;
    let (s1, s2, s12) = (sigma[(0, 0)], sigma[(1, 1)], sigma[(0, 1)]);
    let [a11, a21, a12, a22] = theta;
    2.0 * a11 * a11 * s1 - 2.0 * a11 * a21 * s12 + a21 * a21 * s2 + 2.0 * a11 * a12 * d1
        - a21 * a12 * d2
        - a11 * a22 * d3
        + a22 * a21 * d4
        + 2.0 * a12 * a12 * d5
        - 2.0 * a12 * a22 * d7
        + a22 * a22 * d6
        + 2.0 * (a11 * s1 + a21 * s2)
        + 2.0 * (a12 * d8 + a22 * d9)
}

/// Solves the typeset four-coefficient stationarity system of the two-DM
/// example and evaluates the typeset cost. Only defined for
/// `B = [[2,−1],[−1,1]]`, `S = I`. Coefficients whose row and column vanish
/// (a DM without mixing weights) are dropped and reported as pinned.
pub fn paper_faithful_table1(
    phi: [f64; 4],
    sigma: &Matrix,
    b: &Matrix,
    s: &Matrix,
) -> Result<TeamSolution> {
    let expected_b = Matrix::from_rows(&[[2.0, -1.0], [-1.0, 1.0]]).expect("fixed shape");
    if *b != expected_b || *s != Matrix::identity(2) {
        return Err(Error::InvalidStructure(
            "the typeset system assumes B = [[2,-1],[-1,1]] and S = I".into(),
        ));
    }
    if sigma.rows() != 2 || sigma.cols() != 2 {
        return Err(Error::DimensionMismatch {
            context: "Σ",
            expected: 2,
            found: sigma.rows(),
        });
    }
    if phi.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite {
            context: "mixing weights",
        });
    }
    let p = printed_system(phi, sigma);
    let pinned: Vec<bool> = (0..4)
        .map(|i| (0..4).all(|j| p.m[(i, j)] == 0.0) && p.r[i] == 0.0)
        .collect();
    let free: Vec<usize> = (0..4).filter(|&i| !pinned[i]).collect();
    let sub = p.m.principal(&free);
    let rhs: Vec<f64> = free.iter().map(|&i| p.r[i]).collect();
    let x = linalg::solve(&sub, &rhs)?;
    let mut theta = [0.0; 4];
    for (&i, v) in free.iter().zip(x) {
        theta[i] = v;
    }
    let mx = p.m.mul_vec(&theta)?;
    let residual = linalg::norm(&mx.iter().zip(&p.r).map(|(a, b)| a - b).collect::<Vec<_>>());
    let coefficients = vec![
        Coefficient::Observation {
            decision: 0,
            component: 0,
        },
        Coefficient::Observation {
            decision: 1,
            component: 1,
        },
        Coefficient::Randomness {
            decision: 0,
            source: 0,
        },
        Coefficient::Randomness {
            decision: 1,
            source: 1,
        },
    ];
    Ok(TeamSolution {
        value: printed_table1_cost(phi, sigma, theta),
        policy: LinearPolicy {
            coefficients,
            theta: theta.to_vec(),
        },
        residual,
        mode: SolveMode::PaperFaithful,
        pinned,
    })
}

/// Values of the three two-DM problems: own observations, swapped
/// observations, and a `β`-mixture of the two.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Problem123 {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    /// `J3 ≤ βJ1 + (1−β)J2 + 1e-9`.
    pub bound_holds: bool,
    /// Swapping coordinates leaves both `Σ` and `S` unchanged.
    pub symmetric: bool,
}

pub fn problem123(base: &LqgTeamSpec, beta: f64) -> Result<Problem123> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta,
        });
    }
    if base.decisions() != 2 || base.sigma.rows() != 2 {
        return Err(Error::InvalidStructure(
            "the mixing comparison needs two decisions and two coordinates".into(),
        ));
    }
    let with = |structure: Vec<Vec<usize>>, randomness: Randomness| LqgTeamSpec {
        b: base.b.clone(),
        s: base.s.clone(),
        sigma: base.sigma.clone(),
        structure,
        randomness,
    };
    let j1 = solve_team(&with(vec![vec![0], vec![1]], Randomness::None))?.value;
    let j2 = solve_team(&with(vec![vec![1], vec![0]], Randomness::None))?.value;
    let mix = Randomness::Dependent {
        phi: vec![vec![beta, 1.0 - beta], vec![1.0 - beta, beta]],
        access: vec![vec![0], vec![1]],
    };
    let j3 = solve_team(&with(vec![vec![], vec![]], mix))?.value;
    let sig = &base.sigma;
    let s = &base.s;
    let symmetric = (sig[(0, 0)] - sig[(1, 1)]).abs() <= 1e-12
        && (0..2).all(|i| (s[(i, 0)] - s[(i, 1)]).abs() <= 1e-12);
    Ok(Problem123 {
        j1,
        j2,
        j3,
        bound_holds: j3 <= beta * j1 + (1.0 - beta) * j2 + 1e-9,
        symmetric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b() -> Matrix {
        Matrix::from_rows(&[[2.0, -1.0], [-1.0, 1.0]]).unwrap()
    }

    fn sig() -> Matrix {
        Matrix::from_rows(&[[1.0, 0.25], [0.25, 1.0]]).unwrap()
    }

    fn baseline() -> LqgTeamSpec {
        LqgTeamSpec::diagonal(b(), Matrix::identity(2), sig())
    }

    #[test]
    fn baseline_solution() {
        let s = solve_team(&baseline()).unwrap();
        assert!((s.policy.theta[0] + 0.645_161).abs() < 1e-6);
        assert!((s.policy.theta[1] + 1.161_290).abs() < 1e-6);
        assert!((s.value + 1.806_452).abs() < 1e-6);
        assert_eq!(s.mode, SolveMode::Corrected);
    }

    #[test]
    fn no_coupling_means_zero_policy() {
        let spec = LqgTeamSpec::diagonal(b(), Matrix::zeros(2, 2), sig());
        let s = solve_team(&spec).unwrap();
        assert_eq!(s.policy.theta, vec![0.0, 0.0]);
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn centralized_matches_closed_form() {
        let spec = LqgTeamSpec::centralized(b(), Matrix::identity(2), sig());
        let s = solve_team(&spec).unwrap();
        assert!((s.value + 3.5).abs() < 1e-12);
        assert!(
            (centralized_bound(&b(), &Matrix::identity(2), &sig()).unwrap() + 3.5).abs() < 1e-12
        );
    }

    #[test]
    fn independent_randomness_is_worthless() {
        let private = baseline().with_randomness(Randomness::PrivateIndep {
            variances: vec![1.0, 1.0],
        });
        let r = independent_randomness_report(&private).unwrap();
        assert_eq!(r.c_star, vec![0.0, 0.0]);
        assert!((r.j_total + 1.806_452).abs() < 1e-6);
        assert_eq!(r.j_total, r.j_base);
        let rank_one = Matrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let common = baseline().with_randomness(Randomness::CommonIndep { cov: rank_one });
        let r = independent_randomness_report(&common).unwrap();
        assert!(r.c_star.iter().all(|&c| c == 0.0));
        assert!((r.j_total + 1.806_452).abs() < 1e-6);
        let none = baseline().with_randomness(Randomness::PrivateIndep {
            variances: vec![0.0, 0.0],
        });
        let r = independent_randomness_report(&none).unwrap();
        assert_eq!(r.block_min_eigenvalue.abs(), 0.0);
        let bad = baseline().with_randomness(Randomness::CommonIndep {
            cov: Matrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap(),
        });
        assert!(independent_randomness_report(&bad).is_err());
    }

    #[test]
    fn dependent_randomness_examples() {
        for phi in [
            [0.5, 0.5, 0.5, 0.5],
            [2.0 / 3.0, 1.0 / 3.0, 0.75, 0.25],
            [1.0 / 3.0, 2.0 / 3.0, 0.25, 0.75],
        ] {
            let s = dependent_randomness_solve(&baseline().with_randomness(two_dm_mixing(phi)))
                .unwrap();
            assert!((s.value + 3.5).abs() < 1e-9, "{phi:?} -> {}", s.value);
        }
        let s = dependent_randomness_solve(&baseline().with_randomness(two_dm_mixing([0.0; 4])))
            .unwrap();
        assert!((s.value + 1.806_452).abs() < 1e-6);
        assert_eq!(s.pinned, vec![false, false, true, true]);
    }

    #[test]
    fn typeset_system_row_with_equal_weights() {
        let s = paper_faithful_table1([0.5; 4], &sig(), &b(), &Matrix::identity(2)).unwrap();
        let want = [-0.343_36, -0.704_59, -2.786_17, -4.006_17];
        for (x, w) in s.policy.theta.iter().zip(want) {
            assert!((x - w).abs() < 1e-4, "{x} vs {w}");
        }
        assert!((s.value + 5.293_17).abs() < 1e-4);
        assert_eq!(s.mode, SolveMode::PaperFaithful);
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn typeset_system_without_mixing_falls_back_to_baseline_block() {
        let s = paper_faithful_table1([0.0; 4], &sig(), &b(), &Matrix::identity(2)).unwrap();
        assert_eq!(s.pinned, vec![false, false, true, true]);
        assert!((s.value + 1.806_452).abs() < 1e-6);
        assert!(paper_faithful_table1(
            [0.5; 4],
            &sig(),
            &Matrix::identity(2),
            &Matrix::identity(2)
        )
        .is_err());
    }

    #[test]
    fn problem123_rejects_closed_endpoints() {
        assert!(problem123(&baseline(), 1.0).is_err());
        assert!(problem123(&baseline(), 0.0).is_err());
    }

    #[test]
    fn problem123_on_reference_matrices() {
        let p = problem123(&baseline(), 0.5).unwrap();
        assert!(!p.symmetric);
        assert!((p.j1 + 1.806_452).abs() < 1e-6);
        assert!(p.bound_holds);
    }

    fn pd2() -> impl Strategy<Value = Matrix> {
        (0.2f64..2.0, 0.2f64..2.0, -0.9f64..0.9).prop_map(|(a, c, r)| {
            let off = r * libm::sqrt(a * c);
            Matrix::from_rows(&[[a, off], [off, c]]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn private_randomness_gains_vanish(b in pd2(), sig in pd2(), v in (0.1f64..3.0, 0.1f64..3.0),
                                           s in proptest::collection::vec(-2.0f64..2.0, 4)) {
            let s = Matrix::from_vec(2, 2, s).unwrap();
            let spec = LqgTeamSpec::diagonal(b, s, sig)
                .with_randomness(Randomness::PrivateIndep { variances: vec![v.0, v.1] });
            let sol = solve_team(&spec).unwrap();
            prop_assert!(linalg::norm(&sol.policy.randomness_gains()) <= 1e-10);
        }

        #[test]
        fn extra_observation_never_hurts(b in pd2(), sig in pd2(), s in proptest::collection::vec(-2.0f64..2.0, 4),
                                         dm in 0usize..2) {
            let s = Matrix::from_vec(2, 2, s).unwrap();
            let base = LqgTeamSpec::diagonal(b, s, sig);
            let mut richer = base.clone();
            richer.structure[dm].push(1 - dm);
            let j0 = solve_team(&base).unwrap().value;
            let j1 = solve_team(&richer).unwrap().value;
            prop_assert!(j1 <= j0 + 1e-9);
        }

        #[test]
        fn stationary_point_is_a_local_minimum(b in pd2(), sig in pd2(), s in proptest::collection::vec(-2.0f64..2.0, 4),
                                               eps in proptest::collection::vec(-1.0f64..1.0, 2)) {
            let s = Matrix::from_vec(2, 2, s).unwrap();
            let spec = LqgTeamSpec::diagonal(b, s, sig);
            let q = assemble_quadratic(&spec).unwrap();
            let sol = solve_team(&spec).unwrap();
            let n = linalg::norm(&eps).max(1e-12);
            let th: Vec<f64> = sol.policy.theta.iter().zip(&eps).map(|(t, e)| t + 1e-2 * e / n).collect();
            prop_assert!(sol.value <= q.value(&th) + 1e-12);
            prop_assert!(sol.residual <= 1e-9 * (1.0 + linalg::norm(&q.g)));
        }
    }
}
