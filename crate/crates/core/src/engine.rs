//! Seeded experiment execution: single experiments, and batches of
//! experiments run in parallel with one verdict.
//!
//! Invariants:
//!
//! 1. Determinism: one `SeedSpec` plus one configuration produces an
//!    identical `BatchResult` on every run, at every thread count, because
//!    each experiment owns a counter-addressed substream and results are
//!    collected in experiment order.
//! 2. Substream independence: all experiments share one keyed generator;
//!    experiment `l` reads stream `l`, so substreams never overlap.
//! 3. Exact verdict: `gamma` is `(sum of m_l) / n` in one division and the
//!    verdict compares `sum of m_l` against `N` in integers (both via
//!    [`BatchResult::from_experiments`]).
//! 4. Faithfulness: every pair is produced by [`Model::sample_hidden`]
//!    followed by [`Model::respond`] on the experiment's own stream; the
//!    engine adds no draws of its own.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::models::Model;
use crate::types::{Angle, BatchResult, ExperimentResult, Outcome};

/// The generator behind every experiment substream.
pub type ExperimentRng = ChaCha12Rng;

/// Master seed from which all experiment substreams derive.
///
/// The master seed keys the generator; the experiment index selects the
/// stream. Two substreams of one seed never share state, and the same
/// `(seed, index)` pair always yields the same draws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SeedSpec {
    pub master_seed: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64) -> SeedSpec {
        SeedSpec { master_seed }
    }

    /// The substream for one experiment index.
    pub fn stream(&self, experiment_index: u64) -> ExperimentRng {
        let mut rng = ExperimentRng::seed_from_u64(self.master_seed);
        rng.set_stream(experiment_index);
        rng
    }
}

/// One experiment: a model, a pair of orientations, and a run count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub theta_a: Angle,
    pub theta_b: Angle,
    pub n_runs: u64,
}

/// A batch: one model and run count applied to a list of orientation pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchConfig {
    pub model: Model,
    pub angle_pairs: Vec<(Angle, Angle)>,
    pub n_runs: u64,
    /// Reject pairs whose separation is exactly zero. On by default: at
    /// equal orientations the equal-sign count is deterministically zero
    /// under the singlet statistics, which makes the inequality comparison
    /// vacuous.
    pub exclude_equal_angles: bool,
}

impl BatchConfig {
    pub fn new(model: Model, angle_pairs: Vec<(Angle, Angle)>, n_runs: u64) -> BatchConfig {
        BatchConfig {
            model,
            angle_pairs,
            n_runs,
            exclude_equal_angles: true,
        }
    }
}

/// Runs one experiment on the given stream.
///
/// Counts the runs whose two outcomes carry equal signs. Requires
/// `n_runs >= 1` and a valid model.
pub fn run_experiment<R: Rng + ?Sized>(
    config: &ExperimentConfig,
    rng: &mut R,
) -> Result<ExperimentResult> {
    config.model.validate()?;
    if config.n_runs == 0 {
        return Err(Error::invalid("experiment needs at least one run"));
    }
    Ok(sample_experiment(
        config.model,
        config.theta_a,
        config.theta_b,
        config.n_runs,
        rng,
    ))
}

/// Runs a batch, one substream per experiment, in parallel.
///
/// Experiment `l` draws from `seed.stream(l)`; results are assembled in
/// index order, so the outcome is independent of scheduling. Errors on an
/// empty pair list, a zero run count, an invalid model, or (unless
/// `exclude_equal_angles` is off) a pair with separation exactly zero.
pub fn run_batch(config: &BatchConfig, seed: SeedSpec) -> Result<BatchResult> {
    config.model.validate()?;
    if config.angle_pairs.is_empty() {
        return Err(Error::invalid("batch needs at least one angle pair"));
    }
    if config.n_runs == 0 {
        return Err(Error::invalid(
            "batch needs at least one run per experiment",
        ));
    }
    if config.exclude_equal_angles {
        for (index, &(a, b)) in config.angle_pairs.iter().enumerate() {
            if a.separation(b).radians() == 0.0 {
                return Err(Error::unsupported(format!(
                    "angle pair at index {index} has separation zero; equal \
                     orientations make the comparison vacuous (enable \
                     allow-equal to run them anyway)"
                )));
            }
        }
    }
    let experiments: Vec<ExperimentResult> = config
        .angle_pairs
        .par_iter()
        .enumerate()
        .map(|(l, &(theta_a, theta_b))| {
            let mut rng = seed.stream(l as u64);
            sample_experiment(config.model, theta_a, theta_b, config.n_runs, &mut rng)
        })
        .collect();
    BatchResult::from_experiments(experiments)
}

/// The sampling loop shared by single-experiment and batch execution.
/// Callers validate the model and run count first.
pub(crate) fn sample_experiment<R: Rng + ?Sized>(
    model: Model,
    theta_a: Angle,
    theta_b: Angle,
    n_runs: u64,
    rng: &mut R,
) -> ExperimentResult {
    let mut m = 0u64;
    for _ in 0..n_runs {
        let lambda = model.sample_hidden(rng);
        let (r_a, r_b) = model.respond(theta_a, theta_b, lambda, rng);
        if r_a * r_b == Outcome::Plus {
            m += 1;
        }
    }
    ExperimentResult::new(theta_a, theta_b, m, n_runs).expect("m <= n_runs by construction")
}
