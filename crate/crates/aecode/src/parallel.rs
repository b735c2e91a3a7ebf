//! Multi-threaded drivers. Results are identical to the sequential versions.

use aecode_core::bounds::{chunk_plan, monte_carlo_chunk, MonteCarloEstimate, Polytope};
use rayon::prelude::*;

/// Monte Carlo volume estimate with chunks spread over the rayon pool.
pub fn volume_monte_carlo(poly: &Polytope, samples: u64, seed: u64) -> MonteCarloEstimate {
    let chunks: Vec<(u64, u64)> = chunk_plan(samples).collect();
    chunks
        .par_iter()
        .map(|&(c, s)| monte_carlo_chunk(poly, s, seed, c))
        .reduce(|| MonteCarloEstimate { hits: 0, samples: 0 }, MonteCarloEstimate::merge)
}
