//! Analysis of the counting inequality against singlet predictions: the
//! small-angle violation window, expectation-level reports, exact
//! finite-sample violation probabilities, an empirical audit of the
//! counting assumption, and model sweeps over a separation grid.
//!
//! Invariants:
//!
//! 1. `angle_bound` is strictly decreasing in the run count and tends to
//!    zero; `angle_bound(1) = pi`.
//! 2. Window property: for separations strictly inside `(0,
//!    angle_bound(n))`, the exact singlet sum of equal-sign fractions stays
//!    strictly below `N / n`.
//! 3. Boundary sharpness: with every separation at `angle_bound(n)`, that
//!    sum equals `N / n` up to floating-point rounding (within `1e-12`).
//! 4. `violation_probability` matches exhaustive enumeration of the
//!    underlying Bernoulli lattice on small instances and is monotone
//!    non-increasing in each per-experiment probability.
//! 5. As all separations shrink to zero the finite-sample violation
//!    probability tends to one.

use rayon::prelude::*;

use crate::engine::{sample_experiment, SeedSpec};
use crate::error::{Error, Result};
use crate::models::Model;
use crate::quantum;
use crate::stats;
use crate::types::{Angle, Verdict};

/// Upper edge `2 * asin(1 / sqrt(n))` of the small-angle window in which
/// singlet statistics violate the counting bound. Requires `n_runs >= 1`.
pub fn angle_bound(n_runs: u64) -> Result<Angle> {
    if n_runs == 0 {
        return Err(Error::invalid("run count must be at least 1"));
    }
    let bound = 2.0 * (n_runs as f64).sqrt().recip().asin();
    Angle::from_radians(bound)
}

/// An angle whose separation falls outside the violation window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlaggedAngle {
    /// Position in the input list.
    pub index: usize,
    /// The folded separation.
    pub theta_ab: Angle,
    /// Separation at or above `angle_bound(n_runs)`.
    pub outside_window: bool,
    /// Separation at or above `pi / 2`, where the singlet correlation
    /// itself turns non-negative.
    pub at_least_half_pi: bool,
}

/// Expectation-level and finite-sample view of one batch design under
/// singlet statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    /// Runs per experiment.
    pub n_runs: u64,
    /// Folded separations, one per experiment.
    pub separations: Vec<Angle>,
    /// Upper edge of the violation window for this run count.
    pub angle_window_upper: Angle,
    /// Exact expected sum of equal-sign fractions.
    pub gamma_qm: f64,
    /// The bound `N / n`.
    pub threshold: f64,
    /// Verdict on the expectation: SATISFIED when `gamma_qm >= threshold`.
    pub expectation_verdict: Verdict,
    /// Probability that a finite batch of this design lands strictly below
    /// the bound.
    pub violation_probability: f64,
    /// Angles outside the window, if any.
    pub flagged: Vec<FlaggedAngle>,
}

impl ViolationReport {
    pub fn n_experiments(&self) -> u64 {
        self.separations.len() as u64
    }
}

/// Evaluates a batch design against the counting bound under exact singlet
/// statistics.
///
/// Separations are folded into `[0, pi]`; a separation of exactly zero is
/// rejected, since at equal orientations every run disagrees and the design
/// degenerates. The report carries the expectation verdict, the exact
/// probability that a finite sample violates the bound, and flags for any
/// separation at or beyond the window edge or `pi / 2`.
pub fn quantum_violation_report(separations: &[Angle], n_runs: u64) -> Result<ViolationReport> {
    if separations.is_empty() {
        return Err(Error::invalid("need at least one separation"));
    }
    let folded: Vec<Angle> = separations
        .iter()
        .map(|t| t.separation(Angle::ZERO))
        .collect();
    if let Some(index) = folded.iter().position(|t| t.radians() == 0.0) {
        return Err(Error::unsupported(format!(
            "separation at index {index} is zero modulo a full turn; the \
             equal-orientation case is excluded from the comparison"
        )));
    }
    let bound = angle_bound(n_runs)?;
    let gamma_qm = quantum::exact_gamma(&folded);
    let check = stats::check_inequality(gamma_qm, folded.len() as u64, n_runs)?;
    let probs: Vec<f64> = folded.iter().map(|&t| quantum::exact_s(t)).collect();
    let violation_probability = violation_probability(n_runs, &probs)?;
    let flagged = folded
        .iter()
        .enumerate()
        .filter_map(|(index, &theta_ab)| {
            let outside_window = theta_ab.radians() >= bound.radians();
            let at_least_half_pi = theta_ab.radians() >= std::f64::consts::FRAC_PI_2;
            (outside_window || at_least_half_pi).then_some(FlaggedAngle {
                index,
                theta_ab,
                outside_window,
                at_least_half_pi,
            })
        })
        .collect();
    Ok(ViolationReport {
        n_runs,
        separations: folded,
        angle_window_upper: bound,
        gamma_qm,
        threshold: check.threshold,
        expectation_verdict: check.verdict,
        violation_probability,
        flagged,
    })
}

/// Probability that `N` independent binomial counts `m_l ~ Binomial(n_runs,
/// p_l)` sum to at most `N - 1`, i.e. that a finite batch violates the
/// counting bound.
///
/// Exact up to floating-point rounding: the distribution of the running
/// total is convolved over experiments on the truncated support
/// `0 ..= N - 1`, and mass at or above `N` is dropped as absorbed. Requires
/// `n_runs >= 1` and every probability in `[0, 1]`.
pub fn violation_probability(n_runs: u64, probs: &[f64]) -> Result<f64> {
    if n_runs == 0 {
        return Err(Error::invalid("run count must be at least 1"));
    }
    if probs.is_empty() {
        return Err(Error::invalid("need at least one experiment probability"));
    }
    for (index, &p) in probs.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "probability at index {index} must lie in [0, 1], got {p}"
            )));
        }
    }
    let n_experiments = probs.len();
    // total[t] holds P(sum of the first l counts = t) for t < N.
    let mut total = vec![0.0f64; n_experiments];
    total[0] = 1.0;
    for &p in probs {
        let pmf = binomial_pmf_prefix(n_runs, p, n_experiments - 1);
        let mut next = vec![0.0f64; n_experiments];
        for (t, &mass) in total.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for (k, &q) in pmf.iter().take(n_experiments - t).enumerate() {
                next[t + k] += mass * q;
            }
        }
        total = next;
    }
    Ok(total.iter().sum::<f64>().clamp(0.0, 1.0))
}

/// First `k_max + 1` binomial probabilities `P(Binomial(n, p) = k)`.
fn binomial_pmf_prefix(n: u64, p: f64, k_max: usize) -> Vec<f64> {
    let mut pmf = vec![0.0f64; k_max + 1];
    if p == 0.0 {
        pmf[0] = 1.0;
        return pmf;
    }
    if p == 1.0 {
        if (n as usize) <= k_max {
            pmf[n as usize] = 1.0;
        }
        return pmf;
    }
    // P(0) = (1 - p)^n through log1p, then the ratio recurrence. Mass this
    // far below the mode can underflow to zero; the lost probability is
    // below representable precision.
    pmf[0] = ((n as f64) * (-p).ln_1p()).exp();
    let ratio = p / (1.0 - p);
    for k in 0..k_max.min(n as usize) {
        pmf[k + 1] = pmf[k] * ((n - k as u64) as f64 / (k as f64 + 1.0)) * ratio;
    }
    pmf
}

/// Result of auditing the counting assumption that every experiment yields
/// at least one equal-sign run.
#[derive(Debug, Clone, PartialEq)]
pub struct AssumptionAudit {
    pub model: Model,
    pub theta_a: Angle,
    pub theta_b: Angle,
    pub n_runs: u64,
    pub trials: u64,
    /// Trials whose equal-sign count came out zero.
    pub zero_m_trials: u64,
    /// Fraction of trials with a zero count.
    pub zero_m_frequency: f64,
    /// True when every trial produced at least one equal-sign run.
    pub assumption_held: bool,
}

/// Repeats one experiment design many times and records how often the
/// equal-sign count comes out zero.
///
/// The counting derivation of the bound needs `m >= 1` in every experiment;
/// this measures how often finite samples deliver that. Equal orientations
/// are permitted here, precisely because they are the design that breaks
/// the assumption. Trial `t` draws from `seed.stream(t)`.
pub fn audit_assumption(
    model: Model,
    theta_a: Angle,
    theta_b: Angle,
    n_runs: u64,
    trials: u64,
    seed: SeedSpec,
) -> Result<AssumptionAudit> {
    model.validate()?;
    if n_runs == 0 {
        return Err(Error::invalid("audit needs at least one run per trial"));
    }
    if trials == 0 {
        return Err(Error::invalid("audit needs at least one trial"));
    }
    let zero_m_trials = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = seed.stream(t);
            sample_experiment(model, theta_a, theta_b, n_runs, &mut rng).m() == 0
        })
        .count() as u64;
    Ok(AssumptionAudit {
        model,
        theta_a,
        theta_b,
        n_runs,
        trials,
        zero_m_trials,
        zero_m_frequency: zero_m_trials as f64 / trials as f64,
        assumption_held: zero_m_trials == 0,
    })
}

/// One grid point of a model sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub theta_ab: Angle,
    pub c_exact: f64,
    pub c_emp: f64,
    pub s_exact: f64,
    pub s_emp: f64,
}

/// Sweeps a model over an evenly spaced separation grid, comparing
/// closed-form and sampled values at each point.
///
/// The grid includes both endpoints (`steps >= 2`, `theta_min <
/// theta_max`), and the last point is pinned to `theta_max` exactly rather
/// than accumulated. Grid point `i` samples `n_runs` pairs at orientations
/// `(theta_i, 0)` from `seed.stream(i)`.
pub fn sweep(
    model: Model,
    theta_min: Angle,
    theta_max: Angle,
    steps: u64,
    n_runs: u64,
    seed: SeedSpec,
) -> Result<Vec<SweepPoint>> {
    model.validate()?;
    if steps < 2 {
        return Err(Error::invalid("sweep needs at least two grid points"));
    }
    if theta_min.radians() >= theta_max.radians() {
        return Err(Error::invalid(format!(
            "sweep range is empty: theta_min = {} must lie below theta_max = {}",
            theta_min.radians(),
            theta_max.radians()
        )));
    }
    if n_runs == 0 {
        return Err(Error::invalid("sweep needs at least one run per point"));
    }
    let span = theta_max.radians() - theta_min.radians();
    let pitch = span / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let raw = if i == steps - 1 {
                theta_max.radians()
            } else {
                theta_min.radians() + pitch * i as f64
            };
            let theta = Angle::from_radians(raw)?;
            let mut rng = seed.stream(i);
            let result = sample_experiment(model, theta, Angle::ZERO, n_runs, &mut rng);
            Ok(SweepPoint {
                theta_ab: theta,
                c_exact: model.exact_correlation(theta),
                c_emp: result.correlation(),
                s_exact: model.exact_s(theta),
                s_emp: result.s(),
            })
        })
        .collect()
}
