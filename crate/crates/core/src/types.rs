//! Core vocabulary for two-party spin-correlation experiments: angles,
//! detector outcomes, per-experiment tallies, and batch verdicts.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// An analyzer orientation in radians.
///
/// Always finite; construction rejects NaN and infinities. The raw value is
/// kept as given (it may be negative or exceed 2*pi); [`Angle::separation`]
/// reduces pairs of orientations to the physically meaningful difference.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle {
    radians: f64,
}

impl Angle {
    /// The zero orientation.
    pub const ZERO: Angle = Angle { radians: 0.0 };

    /// Builds an angle from radians. Rejects non-finite input.
    pub fn from_radians(radians: f64) -> Result<Angle> {
        if !radians.is_finite() {
            return Err(Error::NonFiniteAngle(radians));
        }
        Ok(Angle { radians })
    }

    /// Builds an angle from degrees. Rejects non-finite input.
    pub fn from_degrees(degrees: f64) -> Result<Angle> {
        if !degrees.is_finite() {
            return Err(Error::NonFiniteAngle(degrees));
        }
        Ok(Angle {
            radians: degrees.to_radians(),
        })
    }

    /// The raw value in radians.
    pub fn radians(self) -> f64 {
        self.radians
    }

    /// The raw value in degrees.
    pub fn degrees(self) -> f64 {
        self.radians.to_degrees()
    }

    /// The separation between two orientations, folded into `[0, pi]`.
    ///
    /// Orientations that differ by a multiple of 2*pi have separation zero,
    /// and the fold makes the result symmetric in its arguments. When the
    /// plain difference already lies in `[0, pi]` it is returned without a
    /// modular reduction, so nearby orientations lose no precision.
    pub fn separation(self, other: Angle) -> Angle {
        let diff = (self.radians - other.radians).abs();
        let mut d = if diff <= PI {
            diff
        } else {
            diff.rem_euclid(TAU)
        };
        if d >= TAU {
            d = 0.0;
        }
        if d > PI {
            d = TAU - d;
        }
        Angle { radians: d }
    }
}

/// A single detector outcome, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    /// The numeric value of the outcome.
    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    /// Maps a real number to an outcome by sign, with `sign(0) = +1`.
    pub fn from_sign(x: f64) -> Outcome {
        if x >= 0.0 {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }
}

impl Neg for Outcome {
    type Output = Outcome;

    fn neg(self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

impl Mul for Outcome {
    type Output = Outcome;

    fn mul(self, rhs: Outcome) -> Outcome {
        if self == rhs {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Plus => write!(f, "+1"),
            Outcome::Minus => write!(f, "-1"),
        }
    }
}

/// Whether a batch satisfied the counting inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    pub fn is_satisfied(self) -> bool {
        matches!(self, Verdict::Satisfied)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfied => write!(f, "SATISFIED"),
            Verdict::Violated => write!(f, "VIOLATED"),
        }
    }
}

/// Tally of one experiment: `n` measured pairs at fixed orientations, of
/// which `m` produced equal signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentResult {
    theta_a: Angle,
    theta_b: Angle,
    m: u64,
    n: u64,
}

impl ExperimentResult {
    /// Builds a tally. Requires `n >= 1` and `m <= n`.
    pub fn new(theta_a: Angle, theta_b: Angle, m: u64, n: u64) -> Result<ExperimentResult> {
        if n == 0 {
            return Err(Error::invalid("experiment must contain at least one run"));
        }
        if m > n {
            return Err(Error::invalid(format!(
                "equal-sign count m = {m} exceeds run count n = {n}"
            )));
        }
        Ok(ExperimentResult {
            theta_a,
            theta_b,
            m,
            n,
        })
    }

    pub fn theta_a(self) -> Angle {
        self.theta_a
    }

    pub fn theta_b(self) -> Angle {
        self.theta_b
    }

    /// The separation between the two analyzer orientations.
    pub fn theta_ab(self) -> Angle {
        self.theta_a.separation(self.theta_b)
    }

    /// Number of runs with equal signs on both sides.
    pub fn m(self) -> u64 {
        self.m
    }

    /// Total number of runs.
    pub fn n(self) -> u64 {
        self.n
    }

    /// Empirical correlation `(2m - n) / n`.
    pub fn correlation(self) -> f64 {
        crate::stats::correlation_from_counts(self.m, self.n)
            .expect("counts validated at construction")
    }

    /// Empirical equal-sign fraction `m / n`.
    pub fn s(self) -> f64 {
        self.m as f64 / self.n as f64
    }
}

/// Aggregate of `N` experiments sharing one run count `n`, with the exact
/// inequality verdict.
///
/// `gamma` is computed as `(sum of m_l) / n` in a single division, and the
/// verdict compares the integer total against `N` directly, so the
/// SATISFIED/VIOLATED decision never depends on floating-point rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    experiments: Vec<ExperimentResult>,
    total_m: u64,
    gamma: f64,
    threshold: f64,
    verdict: Verdict,
}

impl BatchResult {
    /// Aggregates per-experiment tallies. Requires a non-empty list with one
    /// common run count.
    pub fn from_experiments(experiments: Vec<ExperimentResult>) -> Result<BatchResult> {
        let first = experiments
            .first()
            .ok_or_else(|| Error::invalid("batch must contain at least one experiment"))?;
        let n = first.n();
        if experiments.iter().any(|e| e.n() != n) {
            return Err(Error::invalid(
                "all experiments in a batch must share one run count",
            ));
        }
        let total_m: u64 = experiments.iter().map(|e| e.m()).sum();
        let n_experiments = experiments.len() as u64;
        let verdict = if total_m >= n_experiments {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        };
        Ok(BatchResult {
            gamma: total_m as f64 / n as f64,
            threshold: n_experiments as f64 / n as f64,
            total_m,
            verdict,
            experiments,
        })
    }

    pub fn experiments(&self) -> &[ExperimentResult] {
        &self.experiments
    }

    /// Number of experiments `N`.
    pub fn n_experiments(&self) -> u64 {
        self.experiments.len() as u64
    }

    /// Runs per experiment `n`.
    pub fn n_runs(&self) -> u64 {
        self.experiments[0].n()
    }

    /// Total equal-sign count over all experiments.
    pub fn total_m(&self) -> u64 {
        self.total_m
    }

    /// Sum of equal-sign fractions, `(sum of m_l) / n`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The inequality threshold `N / n`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Verdict from the exact integer comparison `sum of m_l >= N`.
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// Signed distance `gamma - threshold`.
    pub fn margin(&self) -> f64 {
        self.gamma - self.threshold
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn angle_rejects_non_finite() {
        assert!(matches!(
            Angle::from_radians(f64::NAN),
            Err(Error::NonFiniteAngle(_))
        ));
        assert!(matches!(
            Angle::from_radians(f64::INFINITY),
            Err(Error::NonFiniteAngle(_))
        ));
        assert!(matches!(
            Angle::from_degrees(f64::NEG_INFINITY),
            Err(Error::NonFiniteAngle(_))
        ));
    }

    #[test]
    fn degrees_convert_to_radians() {
        assert_abs_diff_eq!(
            Angle::from_degrees(180.0).unwrap().radians(),
            PI,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            Angle::from_radians(PI / 2.0).unwrap().degrees(),
            90.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn separation_folds_into_half_circle() {
        let a = |r: f64| Angle::from_radians(r).unwrap();
        assert_eq!(a(0.0).separation(a(TAU)).radians(), 0.0);
        assert_eq!(a(0.0).separation(a(PI)).radians(), PI);
        assert_abs_diff_eq!(
            a(0.0).separation(a(3.0 * PI / 2.0)).radians(),
            PI / 2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(a(-0.3).separation(a(0.4)).radians(), 0.7, epsilon = 1e-15);
    }

    #[test]
    fn separation_is_symmetric() {
        let a = Angle::from_radians(1.234).unwrap();
        let b = Angle::from_radians(-2.8).unwrap();
        assert_eq!(a.separation(b), b.separation(a));
    }

    #[test]
    fn outcome_arithmetic() {
        assert_eq!(Outcome::Plus.value(), 1);
        assert_eq!(Outcome::Minus.value(), -1);
        assert_eq!(-Outcome::Plus, Outcome::Minus);
        assert_eq!(Outcome::Plus * Outcome::Minus, Outcome::Minus);
        assert_eq!(Outcome::Minus * Outcome::Minus, Outcome::Plus);
        assert_eq!(Outcome::from_sign(0.0), Outcome::Plus);
        assert_eq!(Outcome::from_sign(-1e-300), Outcome::Minus);
    }

    #[test]
    fn experiment_result_validates_counts() {
        let z = Angle::ZERO;
        assert!(ExperimentResult::new(z, z, 0, 0).is_err());
        assert!(ExperimentResult::new(z, z, 5, 4).is_err());
        let r = ExperimentResult::new(z, z, 3, 8).unwrap();
        assert_eq!(r.s(), 0.375);
        assert_eq!(r.correlation(), -0.25);
    }

    #[test]
    fn batch_result_aggregates_exactly() {
        let z = Angle::ZERO;
        let exps: Vec<ExperimentResult> = (0..4)
            .map(|i| ExperimentResult::new(z, z, i, 10).unwrap())
            .collect();
        let batch = BatchResult::from_experiments(exps).unwrap();
        assert_eq!(batch.total_m(), 6);
        assert_eq!(batch.gamma(), 0.6);
        assert_eq!(batch.threshold(), 0.4);
        assert_eq!(batch.verdict(), Verdict::Satisfied);
        assert_abs_diff_eq!(batch.margin(), 0.2, epsilon = 1e-15);
    }

    #[test]
    fn batch_result_verdict_is_integer_exact() {
        let z = Angle::ZERO;
        let exps = vec![
            ExperimentResult::new(z, z, 0, 7).unwrap(),
            ExperimentResult::new(z, z, 1, 7).unwrap(),
        ];
        let batch = BatchResult::from_experiments(exps).unwrap();
        assert_eq!(batch.verdict(), Verdict::Violated);
        let exps = vec![
            ExperimentResult::new(z, z, 1, 7).unwrap(),
            ExperimentResult::new(z, z, 1, 7).unwrap(),
        ];
        let batch = BatchResult::from_experiments(exps).unwrap();
        assert_eq!(batch.verdict(), Verdict::Satisfied);
        assert_eq!(batch.margin(), 0.0);
    }

    #[test]
    fn batch_result_rejects_bad_input() {
        let z = Angle::ZERO;
        assert!(BatchResult::from_experiments(Vec::new()).is_err());
        let exps = vec![
            ExperimentResult::new(z, z, 1, 7).unwrap(),
            ExperimentResult::new(z, z, 1, 8).unwrap(),
        ];
        assert!(BatchResult::from_experiments(exps).is_err());
    }
}
