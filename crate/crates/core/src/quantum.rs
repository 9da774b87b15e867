//! Singlet-state predictions for two-party spin measurements: the exact
//! joint outcome distribution, the closed-form correlation `C = -cos(theta)`
//! and equal-sign fraction `S = sin^2(theta / 2)`, and a two-draw sampler
//! that realizes the joint distribution.
//!
//! All closed forms depend on the analyzer orientations only through their
//! separation, and `cos` is even and 2*pi-periodic, so these functions accept
//! any finite angle without prior folding.

use rand::Rng;

use crate::types::{Angle, Outcome};

/// Joint probabilities of the four outcome pairs at one angle separation.
///
/// Probabilities are non-negative, sum to 1 within `1e-15`, and both
/// single-side marginals are 1/2 within `1e-15`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    /// P(+1, +1)
    pub p_pp: f64,
    /// P(+1, -1)
    pub p_pm: f64,
    /// P(-1, +1)
    pub p_mp: f64,
    /// P(-1, -1)
    pub p_mm: f64,
}

impl JointDistribution {
    /// Singlet joint distribution `P(r_a, r_b) = (1 - r_a r_b cos(theta)) / 4`.
    pub fn singlet(theta_ab: Angle) -> JointDistribution {
        let c = theta_ab.radians().cos();
        let equal = (1.0 - c) / 4.0;
        let opposite = (1.0 + c) / 4.0;
        JointDistribution {
            p_pp: equal,
            p_pm: opposite,
            p_mp: opposite,
            p_mm: equal,
        }
    }

    /// Probability of one outcome pair.
    pub fn probability(&self, r_a: Outcome, r_b: Outcome) -> f64 {
        match (r_a, r_b) {
            (Outcome::Plus, Outcome::Plus) => self.p_pp,
            (Outcome::Plus, Outcome::Minus) => self.p_pm,
            (Outcome::Minus, Outcome::Plus) => self.p_mp,
            (Outcome::Minus, Outcome::Minus) => self.p_mm,
        }
    }

    /// Expectation of the outcome product.
    pub fn correlation(&self) -> f64 {
        self.p_pp + self.p_mm - self.p_pm - self.p_mp
    }
}

/// Exact singlet correlation `-cos(theta_ab)`.
pub fn exact_correlation(theta_ab: Angle) -> f64 {
    -theta_ab.radians().cos()
}

/// Exact singlet equal-sign fraction `sin^2(theta_ab / 2)`.
pub fn exact_s(theta_ab: Angle) -> f64 {
    let h = (theta_ab.radians() / 2.0).sin();
    h * h
}

/// Sum of exact equal-sign fractions over a list of separations, accumulated
/// in index order. An empty list sums to zero.
pub fn exact_gamma(separations: &[Angle]) -> f64 {
    separations.iter().map(|&t| exact_s(t)).sum()
}

/// Draws one outcome pair from the singlet distribution.
///
/// Consumes exactly two uniform draws: one to pick `r_a` as a fair coin, one
/// to make `r_b` opposite to `r_a` with probability `(1 + cos(theta)) / 2`.
/// At separation 0 the outcomes are always opposite; at separation pi they
/// are always equal, and both endpoints hold exactly in floating point.
pub fn sample_pair<R: Rng + ?Sized>(
    theta_a: Angle,
    theta_b: Angle,
    rng: &mut R,
) -> (Outcome, Outcome) {
    let theta_ab = theta_a.separation(theta_b);
    let r_a = if rng.random::<f64>() < 0.5 {
        Outcome::Plus
    } else {
        Outcome::Minus
    };
    let p_opposite = (1.0 + theta_ab.radians().cos()) / 2.0;
    let r_b = if rng.random::<f64>() < p_opposite {
        -r_a
    } else {
        r_a
    };
    (r_a, r_b)
}
