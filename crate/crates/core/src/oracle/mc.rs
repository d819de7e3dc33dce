//! Monte-Carlo expectations with a fixed chunking and merge order.

use alloc::vec;
use alloc::vec::Vec;

use super::rng::CounterRng;
use crate::discrete::TeamGame;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// Samples per chunk. Chunks are the unit of parallel work and are always
/// merged in index order.
pub const CHUNK: u64 = 4096;

/// One realized cost per sample index.
pub trait CostSampler {
    fn cost(&self, rng: &CounterRng, sample: u64) -> f64;
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MomentAccumulator {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl MomentAccumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(&self, other: &MomentAccumulator) -> MomentAccumulator {
        if self.n == 0 {
            return *other;
        }
        if other.n == 0 {
            return *self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let w = other.n as f64 / n as f64;
        MomentAccumulator {
            n,
            mean: self.mean + d * w,
            m2: self.m2 + other.m2 + d * d * self.n as f64 * w,
        }
    }

    pub fn estimate(&self, seed: u64) -> Result<McEstimate> {
        if self.n == 0 {
            return Err(Error::OutOfRange {
                name: "sample count",
                value: 0.0,
            });
        }
        let stderr = if self.n > 1 {
            libm::sqrt((self.m2 / (self.n - 1) as f64).max(0.0) / self.n as f64)
        } else {
            0.0
        };
        if !self.mean.is_finite() || !stderr.is_finite() {
            return Err(Error::NonFinite {
                context: "Monte-Carlo estimate",
            });
        }
        Ok(McEstimate {
            mean: self.mean,
            stderr,
            n: self.n,
            seed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean − exact| ≤ k·stderr`, with a rounding allowance for zero-variance
    /// estimates.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        (self.mean - exact).abs() <= k * self.stderr + 1e-12 * (1.0 + exact.abs())
    }
}

/// Samples `chunk·CHUNK .. min((chunk+1)·CHUNK, n)`.
pub fn mc_chunk<S: CostSampler + ?Sized>(
    sampler: &S,
    rng: &CounterRng,
    chunk: u64,
    n: u64,
) -> MomentAccumulator {
    let mut acc = MomentAccumulator::default();
    let end = ((chunk + 1) * CHUNK).min(n);
    for i in chunk * CHUNK..end {
        acc.push(sampler.cost(rng, i));
    }
    acc
}

pub fn mc_estimate<S: CostSampler + ?Sized>(sampler: &S, n: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "sample count",
            value: 0.0,
        });
    }
    let rng = CounterRng::new(seed);
    let chunks = n.div_ceil(CHUNK);
    let mut total = MomentAccumulator::default();
    for c in 0..chunks {
        total = total.merge(&mc_chunk(sampler, &rng, c, n));
    }
    total.estimate(seed)
}

/// Draws an outcome of a finite environment and pays the kernel under a
/// fixed full rule profile.
#[derive(Clone, Debug)]
pub struct FiniteProfileSampler {
    cumulative: Vec<f64>,
    payoffs: Vec<f64>,
}

impl FiniteProfileSampler {
    pub fn new(game: &TeamGame, profile: &[usize]) -> Result<Self> {
        let n = game.decision_makers();
        if profile.len() != n {
            return Err(Error::DimensionMismatch {
                context: "rule profile",
                expected: n,
                found: profile.len(),
            });
        }
        let mut cumulative = Vec::new();
        let mut payoffs = Vec::new();
        let mut acc = 0.0;
        for (o, (_, p)) in game.env().outcomes().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            acc += p.value();
            cumulative.push(acc);
            payoffs.push(game.kernel().payoff(o, &game.actions(profile, o))?.value());
        }
        Ok(FiniteProfileSampler {
            cumulative,
            payoffs,
        })
    }
}

impl CostSampler for FiniteProfileSampler {
    fn cost(&self, rng: &CounterRng, sample: u64) -> f64 {
        let u = rng.uniform(sample) * self.cumulative.last().copied().unwrap_or(1.0);
        let i = self
            .cumulative
            .partition_point(|&c| c <= u)
            .min(self.payoffs.len() - 1);
        self.payoffs[i]
    }
}

/// `uᵀBu + 2uᵀSz` with `u = Kz`, `z ~ N(0, Σ_z)` drawn through the
/// symmetric square root of `Σ_z`.
#[derive(Clone, Debug)]
pub struct GaussianQuadraticSampler {
    b: Matrix,
    s: Matrix,
    gain: Matrix,
    root: Matrix,
}

impl GaussianQuadraticSampler {
    pub fn new(b: Matrix, s: Matrix, cov_z: &Matrix, gain: Matrix) -> Result<Self> {
        let nz = cov_z.rows();
        if gain.cols() != nz || s.cols() != nz || gain.rows() != b.rows() || s.rows() != b.rows() {
            return Err(Error::DimensionMismatch {
                context: "sampler",
                expected: nz,
                found: gain.cols(),
            });
        }
        let root = linalg::sqrt_psd(cov_z, "sampling covariance")?;
        Ok(GaussianQuadraticSampler { b, s, gain, root })
    }

    pub fn for_team(model: &crate::lqg_team::LqgModel, theta: &[f64]) -> Result<Self> {
        Self::new(
            model.b.clone(),
            model.s.clone(),
            &model.cov_z,
            model.gain(theta),
        )
    }

    pub fn for_saddle(spec: &crate::zero_sum::ZsLqgSpec, theta: &[f64]) -> Result<Self> {
        let sys = crate::zero_sum::assemble_saddle_system(spec)?;
        let nz = sys.cov_z.rows();
        let gain = crate::quadratic::gain_matrix(3, nz, &sys.features, theta);
        let mut s = Matrix::zeros(3, nz);
        for i in 0..3 {
            s[(i, i)] = crate::zero_sum::ZsLqgSpec::s()[(i, i)];
        }
        Self::new(spec.b(), s, &sys.cov_z, gain)
    }
}

impl CostSampler for GaussianQuadraticSampler {
    fn cost(&self, rng: &CounterRng, sample: u64) -> f64 {
        let nz = self.root.rows();
        let mut w = vec![0.0; nz];
        rng.normals(sample, &mut w);
        let z = self.root.mul_vec(&w).expect("dimension checked");
        let u = self.gain.mul_vec(&z).expect("dimension checked");
        let bu = self.b.mul_vec(&u).expect("dimension checked");
        let sz = self.s.mul_vec(&z).expect("dimension checked");
        linalg::dot(&u, &bu) + 2.0 * linalg::dot(&u, &sz)
    }
}
