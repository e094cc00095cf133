//! Monte Carlo sweeps over the disorder strength `p`.
//!
//! Realizations are the unit of parallel work. Each one draws from its own
//! stream seeded by [`derive_seed`], and the per-point statistics are
//! reduced sequentially in realization order, so results do not depend on
//! the number of worker threads.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{initial_amplitudes, ChainSpec};
use crate::disorder::{derive_seed, sample, DisorderSpec, SeedPolicy, MAX_STRENGTH};
use crate::entanglement::pair_eof;
use crate::error::{Error, Result};
use crate::io::config_hash;
use crate::propagator::evolve;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub chain: ChainSpec,
    /// Template; `strength` is replaced by each grid value.
    pub disorder: DisorderSpec,
    pub p_grid: Vec<f64>,
    pub realizations: usize,
    pub seed: SeedPolicy,
}

/// `0.001, 0.002, ..., 0.100`.
pub fn default_p_grid() -> Vec<f64> {
    (1..=100).map(|k| k as f64 / 1000.0).collect()
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.chain.validate()?;
        self.disorder.validate()?;
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(Error::Config("p_grid is empty".into()));
        }
        if self.p_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("p_grid must be strictly increasing".into()));
        }
        if let Some(p) = self
            .p_grid
            .iter()
            .find(|p| !(0.0..=MAX_STRENGTH).contains(*p))
        {
            return Err(Error::Config(format!(
                "p = {p} outside [0, {MAX_STRENGTH}]"
            )));
        }
        Ok(())
    }

    pub fn total_time(&self) -> f64 {
        self.disorder.total_time
    }
}

/// Statistics of the readout EoF at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointStats {
    pub p: f64,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator; zero for one sample).
    pub stddev: f64,
    pub stderr: f64,
    pub realizations: usize,
}

/// Marks a sweep that stopped at a failing grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub p_index: usize,
    pub p: f64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<PointStats>,
    pub config_hash: String,
    pub master_seed: u64,
    pub wall_time_secs: f64,
    pub truncated: Option<Truncation>,
}

/// One-pass mean and variance.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunningStats {
    n: usize,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    fn finish(&self, p: f64) -> PointStats {
        let stddev = self.variance().sqrt();
        PointStats {
            p,
            mean: self.mean,
            stddev,
            stderr: stddev / (self.n as f64).sqrt(),
            realizations: self.n,
        }
    }
}

/// Samples one schedule, evolves the Bell pair to `T_max`, and scores the readout pair.
pub fn run_realization(chain: &ChainSpec, disorder: &DisorderSpec, seed: u64) -> Result<f64> {
    let tag = |e: Error| Error::Realization {
        seed,
        source: Box::new(e),
    };
    let schedule = sample(disorder, chain, seed).map_err(tag)?;
    let c = evolve(&schedule, &initial_amplitudes(chain)).map_err(tag)?;
    let (i, j) = chain.readout_pair();
    pair_eof(&c, i, j).map_err(tag)
}

/// Runs the sweep on the global rayon pool.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let started = Instant::now();
    let mut points = Vec::with_capacity(config.p_grid.len());
    let mut truncated = None;

    for (p_index, &p) in config.p_grid.iter().enumerate() {
        let disorder = config.disorder.with_strength(p);
        let values: Vec<Result<f64>> = (0..config.realizations)
            .into_par_iter()
            .map(|r| {
                let seed = derive_seed(config.seed, p_index, r);
                run_realization(&config.chain, &disorder, seed)
            })
            .collect();

        let mut stats = RunningStats::default();
        let mut failure = None;
        for v in values {
            match v {
                Ok(x) => stats.push(x),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failure {
            truncated = Some(Truncation {
                p_index,
                p,
                message: e.to_string(),
            });
            break;
        }
        points.push(stats.finish(p));
    }

    Ok(SweepResult {
        points,
        config_hash: config_hash(config)?,
        master_seed: config.seed.master_seed,
        wall_time_secs: started.elapsed().as_secs_f64(),
        truncated,
    })
}

/// Runs the sweep on a dedicated pool of `workers` threads.
pub fn run_sweep_with_workers(config: &SweepConfig, workers: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_sweep(config))
}
