use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::{EnumMode, FieldCtx};

/// SplitMix64 (Steele, Lea, Flood 2014). Each step adds the increment
/// 0x9E3779B97F4A7C15 to the state and mixes:
///
/// ```text
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// z ^ (z >> 31)
/// ```
///
/// All arithmetic wraps modulo 2^64.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    pub const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
    pub const MIX2: u64 = 0x94D0_49BB_1331_11EB;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(Self::MIX1);
        z = (z ^ (z >> 27)).wrapping_mul(Self::MIX2);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)` by Lemire's multiply-shift with rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = self.next_u64() as u128 * bound as u128;
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Seed for worker `i`: the (i+1)-th output of `SplitMix64::new(seed)`.
    pub fn worker_seed(seed: u64, i: usize) -> u64 {
        let mut g = SplitMix64::new(seed);
        (0..i).for_each(|_| {
            g.next_u64();
        });
        g.next_u64()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

/// Fraction of uniformly drawn tuples of degree-<=n monic polynomials that are
/// coprime along every edge, with the binomial standard error.
///
/// Worker i draws `samples / workers` tuples (the first `samples % workers`
/// workers one more) from its own SplitMix64 stream. Each coordinate is an
/// index into the enumeration order of monic polynomials of degree <= n.
/// Only non-isolated vertices are drawn; the others never affect the outcome.
/// The result depends on seed and worker count but not on scheduling.
pub fn monte_carlo_density(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n: i64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<MonteCarloEstimate, CensusError> {
    if samples == 0 {
        return Err(CensusError::BadArgument("samples must be at least 1".into()));
    }
    if workers == 0 {
        return Err(CensusError::BadArgument("workers must be at least 1".into()));
    }
    let enumeration = ctx.enumerate_monic(n, EnumMode::UpTo)?;
    let w = enumeration.len();
    if w == 0 || w >= 1 << 63 {
        return Err(CensusError::BadArgument(format!("cannot sample from {w} polynomials")));
    }
    let active: Vec<usize> = (0..g.vertex_count()).filter(|&r| g.degree(r) > 0).collect();
    let hits: u64 = (0..workers)
        .into_par_iter()
        .map(|i| {
            let share = samples / workers as u64 + u64::from((i as u64) < samples % workers as u64);
            let mut rng = SplitMix64::new(SplitMix64::worker_seed(seed, i));
            let mut tuple = vec![crate::polyfq::MonicPoly::one(); g.vertex_count()];
            let mut hits = 0;
            for _ in 0..share {
                for &r in &active {
                    tuple[r] = enumeration.get(rng.below(w)).expect("index below w");
                }
                if g.edges().iter().all(|&(r, s)| ctx.coprime(&tuple[r], &tuple[s])) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(MonteCarloEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
        hits,
        samples,
        seed,
        workers,
    })
}
