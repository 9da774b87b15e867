//! Counting identities linking equal-sign tallies to correlation values,
//! plus the inequality check itself.
//!
//! For an experiment of `n` runs in which `m` pairs came out with equal
//! signs, the correlation is `C = (2m - n) / n` and the equal-sign fraction
//! is `S = m / n = (1 + C) / 2`. Summing `S` over `N` experiments gives
//! `gamma`, which the counting argument bounds below by `N / n`.

use crate::error::{Error, Result};
use crate::types::Verdict;

/// Slack accepted when a correlation overshoots `[-1, 1]` by rounding.
const CORRELATION_SLACK: f64 = 1e-12;

/// Correlation `(2m - n) / n` from an equal-sign count.
///
/// Requires `n >= 1` and `m <= n`. The numerator is formed in integer
/// arithmetic, so the result incurs a single rounding step.
pub fn correlation_from_counts(m: u64, n: u64) -> Result<f64> {
    check_counts(m, n)?;
    let numerator = 2 * m as i128 - n as i128;
    Ok(numerator as f64 / n as f64)
}

/// Equal-sign fraction `(1 + c) / 2` from a correlation.
///
/// Accepts `c` within `1e-12` outside `[-1, 1]` and clamps it back; anything
/// further out (or non-finite) is rejected.
pub fn s_from_correlation(c: f64) -> Result<f64> {
    if !c.is_finite() || c.abs() > 1.0 + CORRELATION_SLACK {
        return Err(Error::invalid(format!(
            "correlation must lie in [-1, 1], got {c}"
        )));
    }
    Ok((1.0 + c.clamp(-1.0, 1.0)) / 2.0)
}

/// Equal-sign fraction `m / n` directly from counts.
///
/// Requires `n >= 1` and `m <= n`.
pub fn s_from_counts(m: u64, n: u64) -> Result<f64> {
    check_counts(m, n)?;
    Ok(m as f64 / n as f64)
}

/// Sum of equal-sign fractions, accumulated in index order.
///
/// Every entry must lie in `[0, 1]`; an empty slice sums to zero.
pub fn gamma(s_values: &[f64]) -> Result<f64> {
    for (index, &s) in s_values.iter().enumerate() {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::invalid(format!(
                "s value at index {index} must lie in [0, 1], got {s}"
            )));
        }
    }
    Ok(s_values.iter().sum())
}

/// Outcome of comparing a `gamma` value against the threshold `N / n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    /// The bound `N / n`.
    pub threshold: f64,
    /// SATISFIED when `gamma >= threshold`.
    pub verdict: Verdict,
    /// Signed distance `gamma - threshold`.
    pub margin: f64,
}

/// Compares `gamma` against `N / n` for `N` experiments of `n` runs each.
///
/// Requires `n_experiments >= 1`, `n_runs >= 1`, and a finite non-negative
/// `gamma`. The comparison is `gamma >= threshold`: equality counts as
/// SATISFIED because the bound is non-strict.
pub fn check_inequality(gamma: f64, n_experiments: u64, n_runs: u64) -> Result<InequalityCheck> {
    if n_experiments == 0 {
        return Err(Error::invalid("need at least one experiment"));
    }
    if n_runs == 0 {
        return Err(Error::invalid("need at least one run per experiment"));
    }
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::invalid(format!(
            "gamma must be finite and non-negative, got {gamma}"
        )));
    }
    let threshold = n_experiments as f64 / n_runs as f64;
    let verdict = if gamma >= threshold {
        Verdict::Satisfied
    } else {
        Verdict::Violated
    };
    Ok(InequalityCheck {
        threshold,
        verdict,
        margin: gamma - threshold,
    })
}

fn check_counts(m: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("run count n must be at least 1"));
    }
    if m > n {
        return Err(Error::invalid(format!(
            "equal-sign count m = {m} exceeds run count n = {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn correlation_from_counts_endpoints() {
        assert_eq!(correlation_from_counts(0, 4).unwrap(), -1.0);
        assert_eq!(correlation_from_counts(10_000, 10_000).unwrap(), 1.0);
        assert_eq!(correlation_from_counts(2_500, 10_000).unwrap(), -0.5);
    }

    #[test]
    fn correlation_from_counts_rejects_bad_counts() {
        assert!(correlation_from_counts(0, 0).is_err());
        assert!(correlation_from_counts(5, 4).is_err());
    }

    #[test]
    fn s_from_correlation_maps_endpoints() {
        assert_eq!(s_from_correlation(-1.0).unwrap(), 0.0);
        assert_eq!(s_from_correlation(1.0).unwrap(), 1.0);
        assert_eq!(s_from_correlation(0.0).unwrap(), 0.5);
    }

    #[test]
    fn s_from_correlation_clamps_rounding_overshoot() {
        assert_eq!(s_from_correlation(1.0 + 1e-13).unwrap(), 1.0);
        assert_eq!(s_from_correlation(-1.0 - 1e-13).unwrap(), 0.0);
        assert!(s_from_correlation(1.0 + 1e-9).is_err());
        assert!(s_from_correlation(f64::NAN).is_err());
    }

    #[test]
    fn s_from_counts_matches_fraction() {
        assert_eq!(s_from_counts(0, 10).unwrap(), 0.0);
        assert_eq!(s_from_counts(10, 10).unwrap(), 1.0);
        assert_eq!(s_from_counts(3, 8).unwrap(), 0.375);
        assert!(s_from_counts(1, 0).is_err());
    }

    #[test]
    fn gamma_sums_in_order() {
        assert_eq!(gamma(&[]).unwrap(), 0.0);
        assert_eq!(gamma(&[0.5, 0.25]).unwrap(), 0.75);
        let s = vec![1.0 / 10_000.0; 100];
        assert_abs_diff_eq!(gamma(&s).unwrap(), 0.01, epsilon = 1e-15);
    }

    #[test]
    fn gamma_rejects_out_of_range_entries() {
        assert!(gamma(&[0.5, 1.2]).is_err());
        assert!(gamma(&[-0.1]).is_err());
        assert!(gamma(&[f64::NAN]).is_err());
    }

    #[test]
    fn check_inequality_boundary_is_satisfied() {
        let check = check_inequality(0.01, 100, 10_000).unwrap();
        assert_eq!(check.verdict, Verdict::Satisfied);
        assert_eq!(check.margin, 0.0);
    }

    #[test]
    fn check_inequality_detects_violation() {
        let check = check_inequality(0.0025, 100, 10_000).unwrap();
        assert_eq!(check.verdict, Verdict::Violated);
        assert_abs_diff_eq!(check.margin, -0.0075, epsilon = 1e-15);
    }

    #[test]
    fn check_inequality_clear_satisfaction() {
        let check = check_inequality(1.0, 5, 10).unwrap();
        assert_eq!(check.verdict, Verdict::Satisfied);
        assert_eq!(check.margin, 0.5);
    }

    #[test]
    fn check_inequality_rejects_bad_input() {
        assert!(check_inequality(0.5, 0, 10).is_err());
        assert!(check_inequality(0.5, 1, 0).is_err());
        assert!(check_inequality(-0.1, 1, 10).is_err());
        assert!(check_inequality(f64::NAN, 1, 10).is_err());
    }
}
