//! Closed-form polytope volumes, rate and distance lower bounds, and a
//! seeded Monte Carlo volume estimator.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::Family;
use crate::{Error, Rational, Result};

fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn check_rates(r: Rational, rho: Rational, m: u32) -> Result<()> {
    let zero = Rational::from_integer(0);
    if r <= zero || r >= Rational::from_integer(1) {
        return Err(Error::Parameter(alloc::format!("r = {r} must lie in (0, 1)")));
    }
    if rho <= zero || rho > Rational::from_integer(1) {
        return Err(Error::Parameter(alloc::format!("rho = {rho} must lie in (0, 1]")));
    }
    if m < 2 {
        return Err(Error::Parameter(alloc::format!("m = {m} must be at least 2")));
    }
    Ok(())
}

/// `(r^{C+1} - max(0, r - rho)^{C+1}) / (C+1)!` with `C = 2m`.
pub fn volume_first(r: Rational, rho: Rational, m: u32) -> Result<f64> {
    check_rates(r, rho, m)?;
    let c1 = 2 * m + 1;
    let gap = (r - rho).max(Rational::from_integer(0));
    Ok((libm::pow(to_f64(r), c1 as f64) - libm::pow(to_f64(gap), c1 as f64)) / factorial(c1))
}

/// `gamma^{2m+1} r (r^{2m+1} - max(0, r - rho)^{2m+1}) / (2m+1)!`.
pub fn volume_second(r: Rational, rho: Rational, m: u32, gamma: Rational) -> Result<f64> {
    check_rates(r, rho, m)?;
    if gamma <= Rational::from_integer(0) || gamma > Rational::from_integer(1) {
        return Err(Error::Parameter(alloc::format!("gamma = {gamma} must lie in (0, 1]")));
    }
    let e = 2 * m + 1;
    let gap = (r - rho).max(Rational::from_integer(0));
    let inner = libm::pow(to_f64(r), e as f64) - libm::pow(to_f64(gap), e as f64);
    Ok(libm::pow(to_f64(gamma), e as f64) * to_f64(r) * inner / factorial(e))
}

/// Asymptotic rate lower bound from the polytope volume.
pub fn rate_lower_bound(family: Family, r: Rational, rho: Rational, m: u32, gamma: Rational) -> Result<f64> {
    match family {
        Family::First => volume_first(r, rho, m),
        Family::Second => Ok(volume_second(r, rho, m, gamma)? / to_f64(gamma)),
    }
}

/// `max(0, (2 floor(D r) - D) / n)`: dimension of `U ∩ V` is at least `dim U + dim V - D`.
pub fn counting_baseline(r: Rational, d: u64, n: u64) -> f64 {
    let dr = (Rational::from_integer(d as i64) * r).floor().to_integer();
    let num = 2 * dr - d as i64;
    if num <= 0 {
        0.0
    } else {
        num as f64 / n as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceBounds {
    /// `1 - rho`.
    pub algebraic: f64,
    /// `max(0, (1 - r)((1 - r) - sigma_2))`.
    pub expander: f64,
}

impl DistanceBounds {
    pub fn best(&self) -> f64 {
        self.algebraic.max(self.expander)
    }
}

pub fn distance_bounds(r: Rational, rho: Rational, sigma2: f64) -> DistanceBounds {
    let delta = 1.0 - to_f64(r);
    DistanceBounds {
        algebraic: 1.0 - to_f64(rho),
        expander: (delta * (delta - sigma2)).max(0.0),
    }
}

/// Bound table for one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub family: Family,
    pub r: Rational,
    pub rho: Rational,
    pub m: u32,
    pub gamma: Rational,
    pub volume: f64,
    /// Asymptotic form.
    pub rate_polytope: f64,
    /// Finite-length form, present when `D` and `n` are known.
    pub rate_counting: Option<f64>,
    pub distance: DistanceBounds,
}

/// Bounds at `(r, rho)`. With `finite = Some((D, n))` the counting baseline is included;
/// `sigma2 = None` uses the asymptotic value 0.
pub fn bound_report(
    family: Family,
    r: Rational,
    rho: Rational,
    m: u32,
    gamma: Rational,
    finite: Option<(u64, u64)>,
    sigma2: Option<f64>,
) -> Result<BoundReport> {
    let volume = match family {
        Family::First => volume_first(r, rho, m)?,
        Family::Second => volume_second(r, rho, m, gamma)?,
    };
    Ok(BoundReport {
        family,
        r,
        rho,
        m,
        gamma,
        volume,
        rate_polytope: rate_lower_bound(family, r, rho, m, gamma)?,
        rate_counting: finite.map(|(d, n)| counting_baseline(r, d, n)),
        distance: distance_bounds(r, rho, sigma2.unwrap_or(0.0)),
    })
}

/// Region of the unit box cut out by strict linear inequalities `a . x < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    pub dim: usize,
    pub constraints: Vec<(Vec<f64>, f64)>,
}

impl Polytope {
    pub fn unit_cube(dim: usize) -> Self {
        Polytope {
            dim,
            constraints: Vec::new(),
        }
    }

    /// Variables `x_0..x_{2m-1}, z`: `sum x + z < r`, `x_{2m-1} < rho`.
    pub fn first(r: f64, rho: f64, m: u32) -> Self {
        let c = 2 * m as usize;
        let mut top = vec![0.0; c + 1];
        top[c - 1] = 1.0;
        Polytope {
            dim: c + 1,
            constraints: vec![(vec![1.0; c + 1], r), (top, rho)],
        }
    }

    /// Variables `x_0..x_{2m}, z`: `z < r`, `sum x < r gamma`, `x_{2m} < rho gamma`.
    pub fn second(r: f64, rho: f64, m: u32, gamma: f64) -> Self {
        let c = 2 * m as usize + 1;
        let mut z = vec![0.0; c + 1];
        z[c] = 1.0;
        let mut sum = vec![1.0; c + 1];
        sum[c] = 0.0;
        let mut top = vec![0.0; c + 1];
        top[c - 1] = 1.0;
        Polytope {
            dim: c + 1,
            constraints: vec![(z, r), (sum, r * gamma), (top, rho * gamma)],
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.constraints
            .iter()
            .all(|(a, b)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() < *b)
    }
}

/// Hits and sample count of a Monte Carlo estimate over the unit box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub hits: u64,
    pub samples: u64,
}

impl MonteCarloEstimate {
    pub fn estimate(&self) -> f64 {
        self.hits as f64 / self.samples as f64
    }

    pub fn std_error(&self) -> f64 {
        let p = self.estimate();
        libm::sqrt(p * (1.0 - p) / self.samples as f64)
    }

    pub fn merge(self, o: MonteCarloEstimate) -> MonteCarloEstimate {
        MonteCarloEstimate {
            hits: self.hits + o.hits,
            samples: self.samples + o.samples,
        }
    }
}

/// Samples per independently seeded chunk.
pub const MC_CHUNK: u64 = 1 << 16;

/// Runs chunk `chunk` of a Monte Carlo estimate: `samples` points from the
/// ChaCha8 stream `chunk` of `seed`.
pub fn monte_carlo_chunk(poly: &Polytope, samples: u64, seed: u64, chunk: u64) -> MonteCarloEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut x = vec![0.0; poly.dim];
    let mut hits = 0;
    for _ in 0..samples {
        x.iter_mut().for_each(|v| *v = rng.random::<f64>());
        if poly.contains(&x) {
            hits += 1;
        }
    }
    MonteCarloEstimate { hits, samples }
}

/// Chunk sizes for `samples` total samples.
pub fn chunk_plan(samples: u64) -> impl Iterator<Item = (u64, u64)> {
    let full = samples / MC_CHUNK;
    let rest = samples % MC_CHUNK;
    (0..full)
        .map(|c| (c, MC_CHUNK))
        .chain((rest > 0).then_some((full, rest)))
}

/// Sequential Monte Carlo volume estimate; identical to merging the chunks in any order.
pub fn volume_monte_carlo(poly: &Polytope, samples: u64, seed: u64) -> MonteCarloEstimate {
    chunk_plan(samples)
        .map(|(c, s)| monte_carlo_chunk(poly, s, seed, c))
        .fold(MonteCarloEstimate { hits: 0, samples: 0 }, MonteCarloEstimate::merge)
}
