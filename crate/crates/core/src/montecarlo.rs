//! Seed-reproducible Monte Carlo estimators.
//!
//! Run `i` of an experiment draws its randomness from ChaCha8 keyed by the
//! experiment seed with stream number `i`. A run's outcome is therefore a pure
//! function of `(seed, i)`, and because hits are summed as integers the
//! estimate does not depend on how runs are spread across worker threads.

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::strictly_one_sided;
use crate::walk::{EdgeSpec, Point, Step, StepLaw};

/// Runs handled by one work item.
const BATCH: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub runs: u64,
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    pub workers: usize,
}

impl RunConfig {
    pub fn new(runs: u64, seed: u64) -> Self {
        RunConfig { runs, seed, workers: 1 }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidArgument("runs must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Indicator-mean estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub hits: u64,
    pub runs: u64,
    pub seed: u64,
    /// `mean · sqrt(π n)` for stay-positive runs, `mean · sqrt(n)` for hull-edge runs.
    pub derived_constant: Option<f64>,
}

impl McEstimate {
    fn from_hits(hits: u64, cfg: &RunConfig, scale: Option<f64>) -> Self {
        let mean = hits as f64 / cfg.runs as f64;
        McEstimate {
            mean,
            stderr: (mean * (1.0 - mean) / cfg.runs as f64).sqrt(),
            hits,
            runs: cfg.runs,
            seed: cfg.seed,
            derived_constant: scale.map(|s| mean * s),
        }
    }

    /// Standard error of `derived_constant`.
    pub fn derived_stderr(&self) -> Option<f64> {
        self.derived_constant.map(|c| if self.mean > 0.0 { self.stderr * c / self.mean } else { 0.0 })
    }
}

/// Two-bit step indices drawn from one run's stream.
struct StepSource {
    rng: ChaCha8Rng,
    buf: u64,
    left: u32,
}

impl StepSource {
    fn new(key: &[u8; 32], run: u64) -> Self {
        let mut rng = ChaCha8Rng::from_seed(*key);
        rng.set_stream(run);
        StepSource { rng, buf: 0, left: 0 }
    }

    #[inline]
    fn next_index(&mut self) -> usize {
        if self.left == 0 {
            self.buf = self.rng.next_u64();
            self.left = 32;
        }
        let i = (self.buf & 3) as usize;
        self.buf >>= 2;
        self.left -= 1;
        i
    }
}

fn stream_key(seed: u64) -> [u8; 32] {
    ChaCha8Rng::seed_from_u64(seed).get_seed()
}

/// Counts successes of `trial(run)` over all runs, in parallel batches.
fn count_hits<F>(cfg: &RunConfig, trial: F) -> Result<u64>
where
    F: Fn(&mut StepSource) -> bool + Sync,
{
    cfg.validate()?;
    let key = stream_key(cfg.seed);
    let batches = cfg.runs.div_ceil(BATCH);
    let work = || {
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let end = ((b + 1) * BATCH).min(cfg.runs);
                (b * BATCH..end).filter(|&run| trial(&mut StepSource::new(&key, run))).count() as u64
            })
            .sum::<u64>()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(work))
}

/// Estimate `p_n` by simulating the projected walk, stopping a run at its
/// first non-positive partial sum.
pub fn mc_stay_positive(law: &StepLaw, n: usize, cfg: &RunConfig) -> Result<McEstimate> {
    let incs = law.increments();
    let hits = count_hits(cfg, |src| {
        let mut s = 0i64;
        for _ in 0..n {
            s += incs[src.next_index()];
            if s <= 0 {
                return false;
            }
        }
        true
    })?;
    Ok(McEstimate::from_hits(hits, cfg, Some((PI * n as f64).sqrt())))
}

/// Same estimator without early exit: every run draws all `n` steps.
///
/// Step `t` of run `i` is the same draw in both simulators, so the two agree
/// hit for hit.
pub fn mc_stay_positive_full(law: &StepLaw, n: usize, cfg: &RunConfig) -> Result<McEstimate> {
    let incs = law.increments();
    let hits = count_hits(cfg, |src| {
        let mut s = 0i64;
        let mut ok = true;
        for _ in 0..n {
            s += incs[src.next_index()];
            ok &= s > 0;
        }
        ok
    })?;
    Ok(McEstimate::from_hits(hits, cfg, Some((PI * n as f64).sqrt())))
}

/// Estimate the hull-edge probability by simulating full planar walks and
/// applying the strict one-sidedness predicate.
pub fn mc_edge_probability(spec: EdgeSpec, cfg: &RunConfig) -> Result<McEstimate> {
    let spec = EdgeSpec::new(spec.n1, spec.n2, spec.n)?;
    let n = spec.n;
    let hits = count_hits(cfg, |src| {
        let mut pts = Vec::with_capacity(n + 1);
        let mut p = Point::ORIGIN;
        pts.push(p);
        for _ in 0..n {
            p = p.add(Step::from_index(src.next_index()).delta());
            pts.push(p);
        }
        strictly_one_sided(&pts, spec.n1, spec.n2)
    })?;
    Ok(McEstimate::from_hits(hits, cfg, Some((n as f64).sqrt())))
}
