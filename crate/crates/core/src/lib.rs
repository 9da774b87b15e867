//! Simulation and analysis of two-party spin-correlation experiments.
//!
//! The object of study is a counting bound: over `N` experiments of `n`
//! runs each, the sum of per-experiment equal-sign fractions can never fall
//! below `N / n` for statistics built from per-run outcome pairs, yet exact
//! singlet predictions dip below that bound whenever all analyzer
//! separations sit in a small-angle window. This crate provides:
//!
//! - [`types`] and [`stats`]: angles, outcomes, tallies, the counting
//!   identities between counts, correlations, and equal-sign fractions, and
//!   the inequality check itself.
//! - [`quantum`]: exact singlet predictions and a faithful sampler.
//! - [`models`]: response models, local (deterministic sign responses to a
//!   shared phase, with optional symmetric noise) and nonlocal (singlet
//!   statistics, plain or dressed as a hidden-variable model).
//! - [`engine`]: seeded, reproducible execution of experiment batches with
//!   one counter-addressed random substream per experiment.
//! - [`analysis`]: the violation window, expectation reports, exact
//!   finite-sample violation probabilities, an audit of the counting
//!   assumption, and closed-form-versus-sampled sweeps.

pub mod analysis;
pub mod engine;
pub mod error;
pub mod models;
pub mod quantum;
pub mod stats;
pub mod types;

pub use error::{Error, Result};
pub use types::{Angle, BatchResult, ExperimentResult, Outcome, Verdict};
