//! Rayon-backed Monte-Carlo that reproduces the sequential estimator bit
//! for bit: chunks run in parallel but are merged in index order.

use rayon::prelude::*;

use randteam_core::oracle::{
    mc_chunk, CostSampler, CounterRng, McEstimate, MomentAccumulator, CHUNK,
};
use randteam_core::{Error, Result};

pub fn par_mc_estimate<S: CostSampler + Sync + ?Sized>(
    sampler: &S,
    n: u64,
    seed: u64,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "sample count",
            value: 0.0,
        });
    }
    let rng = CounterRng::new(seed);
    let parts: Vec<MomentAccumulator> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| mc_chunk(sampler, &rng, c, n))
        .collect();
    parts
        .iter()
        .fold(MomentAccumulator::default(), |acc, p| acc.merge(p))
        .estimate(seed)
}
