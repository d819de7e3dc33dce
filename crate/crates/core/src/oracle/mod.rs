//! Ground truth that does not share code paths with the analytic solvers:
//! sampling, exhaustive enumeration and nested grid search.

pub mod brute;
pub mod grid;
pub mod mc;
pub mod rng;

pub use brute::{brute_force_optimum, BRUTE_FORCE_CAP};
pub use grid::{grid_refine, GridResult};
pub use mc::{
    mc_chunk, mc_estimate, CostSampler, FiniteProfileSampler, GaussianQuadraticSampler, McEstimate,
    MomentAccumulator, CHUNK,
};
pub use rng::CounterRng;
