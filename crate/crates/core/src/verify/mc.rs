//! Monte Carlo estimates over classical domains.
//!
//! Samples are split into (at most) 100 batches; batch `b` draws from stream
//! `b` of the generator seeded with `seed`, so results do not depend on the
//! number of worker threads.

use rayon::prelude::*;
use serde::Serialize;

use crate::domains::{volume_convention, DomainType, Sampler};
use crate::error::{Error, Result};

pub const BATCHES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub acceptance_rate: f64,
    /// Set for `s < 0`, where `N^s` is unbounded near the boundary and the
    /// batch-mean standard error can understate the true error.
    pub unbounded_integrand: bool,
}

struct BatchResult {
    sum: f64,
    count: u64,
    proposals: u64,
}

fn run_batches<F>(d: DomainType, samples: u64, seed: u64, f: F) -> Result<Vec<BatchResult>>
where
    F: Fn(f64) -> f64 + Sync,
{
    d.require_classical("Monte Carlo sampling")?;
    if samples == 0 {
        return Err(Error::Parameter("need at least one sample".into()));
    }
    let batches = (samples as usize).min(BATCHES);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let count = samples / batches as u64 + u64::from((b as u64) < samples % batches as u64);
            let mut sampler = Sampler::with_stream(d, seed, b as u64)?;
            let sum = (0..count).map(|_| f(sampler.next_norm())).sum();
            Ok(BatchResult { sum, count, proposals: sampler.proposals() })
        })
        .collect()
}

fn batch_stderr(results: &[BatchResult], mean: f64) -> f64 {
    let b = results.len();
    if b < 2 {
        return 0.0;
    }
    let var = results
        .iter()
        .map(|r| (r.sum / r.count as f64 - mean).powi(2))
        .sum::<f64>()
        / (b - 1) as f64;
    (var / b as f64).sqrt()
}

/// Estimates `int N(z,z)^s dV / int dV`, which equals the volume-normalized
/// Hua integral because the Jacobian to `omega` is constant.
pub fn mc_hua(d: DomainType, s: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if !(s > -1.0) {
        return Err(Error::Parameter(format!("Hua integral needs s > -1, got {s}")));
    }
    let results = run_batches(d, samples, seed, |n| n.powf(s))?;
    let total: f64 = results.iter().map(|r| r.sum).sum();
    let proposals: u64 = results.iter().map(|r| r.proposals).sum();
    let mean = total / samples as f64;
    Ok(McEstimate {
        mean,
        stderr: batch_stderr(&results, mean),
        samples,
        seed,
        acceptance_rate: samples as f64 / proposals as f64,
        unbounded_integrand: s < 0.0,
    })
}

/// Estimates `int_Omega omega` as `c * Leb(box) * acceptance rate`, with a
/// binomial standard error.
pub fn mc_volume(d: DomainType, samples: u64, seed: u64) -> Result<McEstimate> {
    let results = run_batches(d, samples, seed, |_| 1.0)?;
    let proposals: u64 = results.iter().map(|r| r.proposals).sum();
    let p = samples as f64 / proposals as f64;
    let dim = d.ambient_dim() as i32;
    let scale = volume_convention(d)?.jacobian_to_lebesgue * 4f64.powi(dim);
    Ok(McEstimate {
        mean: scale * p,
        stderr: scale * (p * (1.0 - p) / proposals as f64).sqrt(),
        samples,
        seed,
        acceptance_rate: p,
        unbounded_integrand: false,
    })
}
