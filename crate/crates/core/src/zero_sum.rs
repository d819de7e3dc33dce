//! Three-decision LQG zero-sum game between a one-member maximizing team
//! (decision 0, observing `μ₁`) and a two-member minimizing team (decisions
//! 1 and 2, observing `s₁` and `s₂`).
//!
//! Cost `E[θᵀBθ + 2θᵀSξ]` with `B = [[−1, r₁₁, r₁₂], [r₁₁, 1, q₁₂],
//! [r₁₂, q₁₂, 1]]`, `S = diag(1, −1, −1)` and `ξ = (μ₁, s₁, s₂) ~ N(0, Σ)`.
//! Decision 0 maximizes; the minimizers may also see a scalar signal `ω`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::env;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lqg_team::Coefficient;
use crate::oracle::rng::CounterRng;
use crate::quadratic::{self, Feature, Quadratic};
use crate::Side;

/// Index of the maximizing decision.
pub const MAXIMIZER: usize = 0;

/// The scalar signal shared by both minimizers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZsRandomness {
    None,
    /// `ω ~ N(0, variance)` independent of `ξ`.
    IndependentCommon {
        variance: f64,
    },
    /// `ω = φ₁₁ μ₁`: a leak of the maximizer's observation.
    Mole {
        phi11: f64,
    },
    /// `ω = φ₂₁ s₁ + φ₂₂ s₂`: a pooled summary of the team's own data.
    Consultant {
        phi21: f64,
        phi22: f64,
    },
    /// `ω = φᵀξ`.
    Dependent([f64; 3]),
}

impl ZsRandomness {
    /// Mixing weights over `ξ` when `ω` is a function of `ξ`.
    pub fn weights(&self) -> Option<[f64; 3]> {
        match *self {
            ZsRandomness::Mole { phi11 } => Some([phi11, 0.0, 0.0]),
            ZsRandomness::Consultant { phi21, phi22 } => Some([0.0, phi21, phi22]),
            ZsRandomness::Dependent(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZsLqgSpec {
    pub r11: f64,
    pub r12: f64,
    pub q12: f64,
    pub sigma: Matrix,
    /// Coordinates of `ξ` seen by each decision.
    pub feeds: [Vec<usize>; 3],
    pub randomness: ZsRandomness,
}

impl ZsLqgSpec {
    /// Each decision sees its own coordinate.
    pub fn new(r11: f64, r12: f64, q12: f64, sigma: Matrix) -> Self {
        ZsLqgSpec {
            r11,
            r12,
            q12,
            sigma,
            feeds: [vec![0], vec![1], vec![2]],
            randomness: ZsRandomness::None,
        }
    }

    pub fn with_randomness(mut self, randomness: ZsRandomness) -> Self {
        self.randomness = randomness;
        self
    }

    pub fn b(&self) -> Matrix {
        Matrix::from_rows(&[
            [-1.0, self.r11, self.r12],
            [self.r11, 1.0, self.q12],
            [self.r12, self.q12, 1.0],
        ])
        .expect("fixed shape")
    }

    pub fn s() -> Matrix {
        Matrix::diagonal(&[1.0, -1.0, -1.0])
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Vec<String>> {
        if self.violations.is_empty() {
            Ok(self.warnings)
        } else {
            Err(Error::InvalidGame(self.violations))
        }
    }
}

/// Concavity in the maximizer's decision, convexity in the minimizers'
/// decisions, a usable covariance, and warnings for decoupled games.
pub fn validate_game(spec: &ZsLqgSpec) -> Diagnostics {
    let mut d = Diagnostics::default();
    let b = spec.b();
    if !b.all_finite() {
        d.violations.push("couplings must be finite".into());
        return d;
    }
    if !(b[(0, 0)] < 0.0) {
        d.violations
            .push("B00 < 0 (concavity for the maximizer)".into());
    }
    if !(1.0 - spec.q12 * spec.q12 > 0.0) {
        d.violations.push(format!(
            "1 - q12^2 > 0 (minimizer block convexity), q12 = {}",
            spec.q12
        ));
    }
    if spec.sigma.rows() != 3 || spec.sigma.cols() != 3 {
        d.violations.push("covariance must be 3x3".into());
        return d;
    }
    match linalg::min_eigenvalue(&spec.sigma) {
        Ok(e) if e >= -1e-8 => {}
        Ok(e) => d.violations.push(format!(
            "covariance is not positive semidefinite (min eigenvalue {e:e})"
        )),
        Err(e) => d.violations.push(format!("covariance: {e}")),
    }
    for (i, feed) in spec.feeds.iter().enumerate() {
        if feed.iter().any(|&c| c >= 3) {
            d.violations
                .push(format!("decision {i} observes a coordinate outside 0..3"));
        }
    }
    match spec.randomness {
        ZsRandomness::IndependentCommon { variance }
            if !(variance > 0.0) || !variance.is_finite() =>
        {
            d.violations.push(format!(
                "independent signal variance must be positive, got {variance}"
            ));
        }
        _ => {}
    }
    if spec.r11 == 0.0 && spec.r12 == 0.0 {
        d.warnings.push(
            "r11 = r12 = 0: the teams decouple and the game is a team decision problem".into(),
        );
    } else {
        for (name, v) in [("r11", spec.r11), ("r12", spec.r12)] {
            if v == 0.0 {
                d.warnings.push(format!("{name} = 0: degenerate coupling"));
            }
        }
    }
    if spec.q12 == 0.0 {
        d.warnings.push("q12 = 0: the minimizers decouple".into());
    }
    d
}

/// Stationarity system `M x = rhs` of the game, `M = H`, `rhs = −g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaddleSystem {
    pub m: Matrix,
    pub rhs: Vec<f64>,
    pub coefficients: Vec<Coefficient>,
    pub quadratic: Quadratic,
    pub features: Vec<Feature>,
    pub cov_z: Matrix,
}

pub fn assemble_saddle_system(spec: &ZsLqgSpec) -> Result<SaddleSystem> {
    validate_game(spec).into_result()?;
    let (cov_z, omega): (Matrix, Option<Vec<f64>>) = match spec.randomness {
        ZsRandomness::None => (spec.sigma.clone(), None),
        ZsRandomness::IndependentCommon { variance } => {
            let mut c = Matrix::zeros(4, 4);
            for i in 0..3 {
                for j in 0..3 {
                    c[(i, j)] = spec.sigma[(i, j)];
                }
            }
            c[(3, 3)] = variance;
            (c, Some(vec![0.0, 0.0, 0.0, 1.0]))
        }
        r => {
            let w = r.weights().expect("dependent variants carry weights");
            let moments = env::induced_moments(&w, &spec.sigma)?;
            if !(moments.variance > 1e-14) {
                return Err(Error::Singular {
                    context: "randomness block",
                    step: 3,
                    pivot: moments.variance,
                });
            }
            (spec.sigma.clone(), Some(w.to_vec()))
        }
    };
    let nz = cov_z.rows();
    let mut coefficients = Vec::new();
    let mut features = Vec::new();
    for (i, feed) in spec.feeds.iter().enumerate() {
        for &c in feed {
            coefficients.push(Coefficient::Observation {
                decision: i,
                component: c,
            });
            features.push(Feature::coordinate(i, c, nz));
        }
    }
    if let Some(w) = omega {
        for i in [1, 2] {
            coefficients.push(Coefficient::Randomness {
                decision: i,
                source: 0,
            });
            features.push(Feature {
                decision: i,
                loading: w.clone(),
            });
        }
    }
    let mut s = Matrix::zeros(3, nz);
    for i in 0..3 {
        s[(i, i)] = ZsLqgSpec::s()[(i, i)];
    }
    let quadratic = quadratic::assemble(&spec.b(), &s, &cov_z, &features)?;
    let rhs = quadratic.g.iter().map(|x| -x).collect();
    Ok(SaddleSystem {
        m: quadratic.h.clone(),
        rhs,
        coefficients,
        quadratic,
        features,
        cov_z,
    })
}

/// Curvature signs certifying that a stationary point is a saddle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaddleCertificate {
    /// Largest eigenvalue of the maximizer's block (must be negative).
    pub max_curvature: f64,
    /// Smallest eigenvalue of the minimizers' block (must be positive).
    pub min_block_eigenvalue: f64,
}

impl SaddleCertificate {
    pub fn holds(&self) -> bool {
        self.max_curvature < 0.0 && self.min_block_eigenvalue > 0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SaddleSolution {
    pub coefficients: Vec<Coefficient>,
    pub theta: Vec<f64>,
    pub value: f64,
    pub residual: f64,
    pub certificate: SaddleCertificate,
}

impl SaddleSolution {
    pub fn get(&self, c: Coefficient) -> Option<f64> {
        self.coefficients
            .iter()
            .position(|&x| x == c)
            .map(|i| self.theta[i])
    }

    /// Gains on own observations, in coefficient order.
    pub fn alphas(&self) -> Vec<f64> {
        self.select(|c| matches!(c, Coefficient::Observation { .. }))
    }

    /// Gains on the shared signal (empty without one).
    pub fn betas(&self) -> Vec<f64> {
        self.select(|c| matches!(c, Coefficient::Randomness { .. }))
    }

    fn select(&self, keep: impl Fn(&Coefficient) -> bool) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.theta)
            .filter(|(c, _)| keep(c))
            .map(|(_, &t)| t)
            .collect()
    }
}

fn decision_of(c: &Coefficient) -> usize {
    match *c {
        Coefficient::Observation { decision, .. } | Coefficient::Randomness { decision, .. } => {
            decision
        }
    }
}

fn side_indices(coefficients: &[Coefficient], side: Side) -> Vec<usize> {
    (0..coefficients.len())
        .filter(|&k| (decision_of(&coefficients[k]) == MAXIMIZER) == (side == Side::Maximizer))
        .collect()
}

pub fn solve_saddle(spec: &ZsLqgSpec) -> Result<SaddleSolution> {
    let sys = assemble_saddle_system(spec)?;
    let max_idx = side_indices(&sys.coefficients, Side::Maximizer);
    let min_idx = side_indices(&sys.coefficients, Side::Minimizer);
    let certificate = SaddleCertificate {
        max_curvature: linalg::max_eigenvalue(&sys.m.principal(&max_idx))?,
        min_block_eigenvalue: linalg::min_eigenvalue(&sys.m.principal(&min_idx))?,
    };
    if !certificate.holds() {
        return Err(Error::NotASaddle {
            max_curvature: certificate.max_curvature,
            min_block_eigenvalue: certificate.min_block_eigenvalue,
        });
    }
    let theta = linalg::solve(&sys.m, &sys.rhs)?;
    let residual = sys.quadratic.residual(&theta);
    let tol = 1e-9 * (1.0 + linalg::norm(&sys.rhs));
    if !(residual <= tol) {
        return Err(Error::NumericalFailure(format!(
            "saddle residual {residual:e} above {tol:e}"
        )));
    }
    Ok(SaddleSolution {
        value: sys.quadratic.value(&theta),
        coefficients: sys.coefficients,
        theta,
        residual,
        certificate,
    })
}

/// Expected cost at arbitrary coefficients (same order as the solution).
pub fn saddle_value(spec: &ZsLqgSpec, theta: &[f64]) -> Result<f64> {
    let sys = assemble_saddle_system(spec)?;
    if theta.len() != sys.rhs.len() {
        return Err(Error::DimensionMismatch {
            context: "saddle coefficients",
            expected: sys.rhs.len(),
            found: theta.len(),
        });
    }
    Ok(sys.quadratic.value(theta))
}

/// The expected cost written out term by term for the default feeds and a
/// signal that is a function of `ξ`; `theta = (α₁₁, α₂₁, α₂₂, β₂₁, β₂₂)`.
/// An independent route to [`saddle_value`].
pub fn expanded_cost(spec: &ZsLqgSpec, theta: [f64; 5]) -> Result<f64> {
    let w = match spec.randomness {
        ZsRandomness::None => [0.0; 3],
        r => r.weights().ok_or_else(|| {
            Error::InvalidStructure(
                "expanded cost needs a signal built from the environment".into(),
            )
        })?,
    };
    let sg = &spec.sigma;
    let (sm, s1, s2) = (sg[(0, 0)], sg[(1, 1)], sg[(2, 2)]);
    let (ms1, ms2, s12) = (sg[(0, 1)], sg[(0, 2)], sg[(1, 2)]);
    let mo = env::induced_moments(&w, sg)?;
    let (sw, mw, s1w, s2w) = (mo.variance, mo.cross[0], mo.cross[1], mo.cross[2]);
    let [a11, a21, a22, b21, b22] = theta;
    let (r11, r12, q12) = (spec.r11, spec.r12, spec.q12);
    Ok(-a11 * a11 * sm
        + a21 * a21 * s1
        + a22 * a22 * s2
        + 2.0 * r11 * a11 * a21 * ms1
        + 2.0 * r12 * a11 * a22 * ms2
        + 2.0 * q12 * a21 * a22 * s12
        + 2.0 * (r11 * a11 * b21 + r12 * a11 * b22) * mw
        + 2.0 * (a21 * b21 + q12 * a21 * b22) * s1w
        + 2.0 * (q12 * a22 * b21 + a22 * b22) * s2w
        + (b21 * b21 + 2.0 * q12 * b21 * b22 + b22 * b22) * sw
        + 2.0 * a11 * sm
        - 2.0 * a21 * s1
        - 2.0 * a22 * s2
        - 2.0 * b21 * s1w
        - 2.0 * b22 * s2w)
}

/// A deviation that improves one side's payoff.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub deviating: Side,
    pub theta: Vec<f64>,
    pub value: f64,
    pub reference: f64,
}

/// Random unilateral deviations: none may raise the cost for the maximizer
/// or lower it for the minimizers by more than `1e-9`.
pub fn verify_saddle(
    spec: &ZsLqgSpec,
    sol: &SaddleSolution,
    trials: u64,
    seed: u64,
) -> Result<core::result::Result<(), Counterexample>> {
    let sys = assemble_saddle_system(spec)?;
    if sol.theta.len() != sys.rhs.len() {
        return Err(Error::DimensionMismatch {
            context: "saddle coefficients",
            expected: sys.rhs.len(),
            found: sol.theta.len(),
        });
    }
    let q = &sys.quadratic;
    let reference = q.value(&sol.theta);
    let sides = [
        (
            Side::Maximizer,
            side_indices(&sys.coefficients, Side::Maximizer),
        ),
        (
            Side::Minimizer,
            side_indices(&sys.coefficients, Side::Minimizer),
        ),
    ];
    let rng = CounterRng::new(seed);
    let scale = 0.1 * (1.0 + linalg::max_abs(&sol.theta));
    let mut draw = 0u64;
    for t in 0..trials {
        let (side, idx) = &sides[(t % 2) as usize];
        if idx.is_empty() {
            continue;
        }
        let mut theta = sol.theta.clone();
        for &k in idx {
            theta[k] += scale * (2.0 * rng.uniform(draw) - 1.0);
            draw += 1;
        }
        let v = q.value(&theta);
        let bad = match side {
            Side::Maximizer => v > reference + 1e-9,
            Side::Minimizer => v < reference - 1e-9,
        };
        if bad {
            return Ok(Err(Counterexample {
                deviating: *side,
                theta,
                value: v,
                reference,
            }));
        }
    }
    Ok(Ok(()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValueOfInformation {
    pub v1_a: f64,
    pub v1_b: f64,
    /// The team whose information grew was not hurt.
    pub monotone: bool,
}

/// Saddle value minus the null-information value (which is 0 for a
/// zero-mean environment) for two information variants.
pub fn value_of_information(
    a: &ZsLqgSpec,
    b: &ZsLqgSpec,
    enlarged: Side,
) -> Result<ValueOfInformation> {
    let v1_a = solve_saddle(a)?.value;
    let v1_b = solve_saddle(b)?.value;
    let monotone = match enlarged {
        Side::Maximizer => v1_b >= v1_a - 1e-9,
        Side::Minimizer => v1_b <= v1_a + 1e-9,
    };
    Ok(ValueOfInformation {
        v1_a,
        v1_b,
        monotone,
    })
}
