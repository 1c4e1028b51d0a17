//! Synthetic ranked data: noisy samples of a law, and the Simon
//! preferential-attachment process.
//!
//! All randomness comes from ChaCha8 seeded with a caller-supplied `u64`, so a
//! given seed yields the same output on every run of the same build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::ingest::rank_raw;
use crate::models::{evaluate, ModelParams};
use crate::series::RankedSeries;

/// Multiplicative log-normal noise: each value is scaled by `exp(sigma * z)`
/// with `z` standard normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn new(sigma: f64, seed: u64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "sigma must be finite and >= 0, got {sigma}"
            )));
        }
        Ok(Self { sigma, seed })
    }

    pub fn none() -> Self {
        Self {
            sigma: 0.0,
            seed: 0,
        }
    }
}

/// Samples the law over its own ranks `1..=n` with noise, then re-ranks.
///
/// Noise can break monotonicity, so the noisy values are re-sorted
/// (descending, stable) before ranks are assigned. With `sigma == 0` the
/// result equals [`crate::curve`].
pub fn generate_synthetic(params: &ModelParams, noise: &NoiseSpec) -> Result<RankedSeries> {
    let n = params
        .n()
        .ok_or_else(|| Error::InvalidParams("zipf needs an explicit length".into()))?;
    generate_synthetic_len(params, n, noise)
}

/// As [`generate_synthetic`], with an explicit length (needed for Zipf).
pub fn generate_synthetic_len(
    params: &ModelParams,
    n: usize,
    noise: &NoiseSpec,
) -> Result<RankedSeries> {
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    let params = params.with_len(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let mut values = Vec::with_capacity(n);
    for r in 1..=n {
        let z: f64 = rng.sample(StandardNormal);
        let v = evaluate(&params, r)? * (noise.sigma * z).exp();
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::NonFinite {
                model: params.kind(),
                rank: r,
            });
        }
        values.push(v);
    }
    rank_raw(&values, None)
}

/// Parameters of the Simon process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimonConfig {
    /// Probability that a step founds a new source.
    pub p_new: f64,
    /// Total number of items allocated, including the first.
    pub steps: u64,
    pub seed: u64,
}

impl SimonConfig {
    pub fn new(p_new: f64, steps: u64, seed: u64) -> Result<Self> {
        if !(p_new > 0.0 && p_new < 1.0) {
            return Err(Error::InvalidParams(format!(
                "p_new must lie in (0, 1), got {p_new}"
            )));
        }
        if steps == 0 {
            return Err(Error::InvalidParams("steps must be at least 1".into()));
        }
        Ok(Self { p_new, steps, seed })
    }
}

/// State of a Simon "rich get richer" allocation.
///
/// Besides the per-source counts, the owner of every item ever allocated is
/// kept. Picking a uniformly random past item and crediting its owner selects
/// a source with probability proportional to its count in O(1).
#[derive(Debug, Clone)]
pub struct SimonProcess {
    counts: Vec<u64>,
    owners: Vec<u32>,
    rng: ChaCha8Rng,
}

impl SimonProcess {
    /// One source holding one item.
    pub fn new(seed: u64) -> Self {
        Self::from_counts(&[1], seed).expect("a single unit count is valid")
    }

    /// Starts from explicit source counts (all must be >= 1).
    pub fn from_counts(counts: &[u64], seed: u64) -> Result<Self> {
        if counts.is_empty() || counts.contains(&0) {
            return Err(Error::InvalidParams(
                "source counts must be non-empty and >= 1".into(),
            ));
        }
        let owners = counts
            .iter()
            .enumerate()
            .flat_map(|(s, &c)| std::iter::repeat_n(s as u32, c as usize))
            .collect();
        Ok(Self {
            counts: counts.to_vec(),
            owners,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.owners.len() as u64
    }

    /// Draws an existing source with probability proportional to its count,
    /// without changing any count.
    pub fn select_existing(&mut self) -> usize {
        let item = self.rng.random_range(0..self.owners.len());
        self.owners[item] as usize
    }

    /// Allocates one item.
    pub fn step(&mut self, p_new: f64) {
        if self.rng.random::<f64>() < p_new {
            self.owners.push(self.counts.len() as u32);
            self.counts.push(1);
        } else {
            let source = self.select_existing();
            self.counts[source] += 1;
            self.owners.push(source as u32);
        }
    }
}

/// Runs the Simon process and returns the final source counts as a ranked
/// series.
pub fn simulate_simon(config: &SimonConfig) -> Result<RankedSeries> {
    let config = SimonConfig::new(config.p_new, config.steps, config.seed)?;
    let mut process = SimonProcess::new(config.seed);
    for _ in 1..config.steps {
        process.step(config.p_new);
    }
    let values: Vec<f64> = process.counts().iter().map(|&c| c as f64).collect();
    rank_raw(&values, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::fit_beta_like;
    use crate::models::{curve, BetaLikeParams, LavaletteParams};

    fn physics(n: usize) -> ModelParams {
        ModelParams::BetaLike(BetaLikeParams::new(0.0273, 0.4058, 0.991, n).unwrap())
    }

    #[test]
    fn zero_noise_equals_curve() {
        let p = physics(200);
        assert_eq!(
            generate_synthetic(&p, &NoiseSpec::new(0.0, 9).unwrap()).unwrap(),
            curve(&p).unwrap()
        );
        let l = ModelParams::Lavalette(LavaletteParams::new(2.0, 0.7, 33).unwrap());
        assert_eq!(
            generate_synthetic(&l, &NoiseSpec::none()).unwrap(),
            curve(&l).unwrap()
        );
    }

    #[test]
    fn noisy_series_is_deterministic_and_valid() {
        let p = physics(200);
        let noise = NoiseSpec::new(0.1, 42).unwrap();
        let a = generate_synthetic(&p, &noise).unwrap();
        let b = generate_synthetic(&p, &noise).unwrap();
        assert_eq!(a, b);
        assert!(a.values().windows(2).all(|w| w[0] >= w[1]));
        assert_ne!(
            a,
            generate_synthetic(&p, &NoiseSpec::new(0.1, 43).unwrap()).unwrap()
        );
        assert!(fit_beta_like(&a).unwrap().r_squared >= 0.99);
    }

    #[test]
    fn noise_spec_validation() {
        assert!(NoiseSpec::new(-0.1, 0).is_err());
        assert!(NoiseSpec::new(f64::NAN, 0).is_err());
    }

    #[test]
    fn simon_config_validation() {
        assert!(SimonConfig::new(0.0, 10, 1).is_err());
        assert!(SimonConfig::new(1.0, 10, 1).is_err());
        assert!(SimonConfig::new(1.5, 10, 1).is_err());
        assert!(SimonConfig::new(0.5, 0, 1).is_err());
    }

    #[test]
    fn single_step_is_one_source() {
        let s = simulate_simon(&SimonConfig::new(0.3, 1, 5).unwrap()).unwrap();
        assert_eq!(s.values(), vec![1.0]);
    }

    #[test]
    fn conservation_and_source_bounds() {
        for seed in 0..5 {
            let cfg = SimonConfig::new(0.2, 5000, seed).unwrap();
            let s = simulate_simon(&cfg).unwrap();
            assert_eq!(s.values().iter().sum::<f64>(), 5000.0);
            assert!(!s.is_empty() && s.len() <= 5000);
            assert_eq!(s, simulate_simon(&cfg).unwrap());
        }
    }

    #[test]
    fn high_p_new_keeps_counts_flat() {
        let s = simulate_simon(&SimonConfig::new(0.999, 10_000, 3).unwrap()).unwrap();
        let ones = s.values().iter().filter(|&&v| v == 1.0).count();
        assert!(ones as f64 >= 0.99 * s.len() as f64);
        let z = crate::fit::fit_zipf(&s).unwrap();
        let crate::ModelParams::Zipf(p) = z.params else {
            panic!()
        };
        assert!(p.alpha.abs() <= 0.1, "alpha = {}", p.alpha);
    }

    #[test]
    fn proportional_selection_frequency() {
        let mut proc = SimonProcess::from_counts(&[2, 1], 2024).unwrap();
        let draws = 100_000;
        let first = (0..draws).filter(|_| proc.select_existing() == 0).count();
        let freq = first as f64 / draws as f64;
        assert!((freq - 2.0 / 3.0).abs() <= 0.01, "{freq}");
        assert_eq!(proc.counts(), &[2, 1]);
    }

    #[test]
    fn from_counts_validation() {
        assert!(SimonProcess::from_counts(&[], 0).is_err());
        assert!(SimonProcess::from_counts(&[3, 0], 0).is_err());
        assert_eq!(SimonProcess::from_counts(&[3, 2], 0).unwrap().total(), 5);
    }
}
