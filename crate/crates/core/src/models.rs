//! Response models for the two measurement stations, local and otherwise.
//!
//! A model describes how the pair of outcomes at analyzer orientations
//! `theta_a`, `theta_b` is produced from a shared hidden variable `lambda`
//! and a random stream. Four kinds are provided:
//!
//! 1. `Quantum`: samples the singlet joint distribution directly. The
//!    reference model; it is not constrained to local responses.
//! 2. `BellSign`: deterministic local responses `r_a = sign(cos(lambda -
//!    theta_a))`, `r_b = -sign(cos(lambda - theta_b))` with `lambda` uniform
//!    on `[0, 2*pi)`. Closed-form correlation `-1 + 2*theta/pi`.
//! 3. `Noise`: the `BellSign` responses with each side flipped independently
//!    with probability `q <= 1/2`. Closed-form correlation
//!    `(1 - 2q)^2 * (-1 + 2*theta/pi)`.
//! 4. `QuantumMimic`: reproduces the singlet statistics exactly while
//!    ignoring `lambda`, standing in for a nonlocal hidden-variable account.
//!
//! Every kind consumes a fixed number of uniform draws per pair (hidden
//! variable included): 2 for `Quantum` and `QuantumMimic`, 1 for `BellSign`,
//! 3 for `Noise`. The flip coins of `Noise` are drawn even when `q = 0`, so
//! streams stay aligned across `q` values.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::quantum;
use crate::types::{Angle, Outcome};

/// A response model for one measurement pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Singlet statistics, sampled directly.
    Quantum,
    /// Deterministic sign responses to a shared uniform phase.
    BellSign,
    /// `BellSign` with independent symmetric outcome flips.
    Noise {
        /// Per-side flip probability, in `[0, 1/2]`.
        flip_probability: f64,
    },
    /// Singlet statistics presented as a hidden-variable model that ignores
    /// its hidden variable.
    QuantumMimic,
}

impl Model {
    /// Builds the noise model, rejecting flip probabilities outside
    /// `[0, 1/2]`.
    pub fn noise(flip_probability: f64) -> Result<Model> {
        let model = Model::Noise { flip_probability };
        model.validate()?;
        Ok(model)
    }

    /// Checks the model parameters.
    pub fn validate(&self) -> Result<()> {
        if let Model::Noise { flip_probability } = *self {
            if !(0.0..=0.5).contains(&flip_probability) {
                return Err(Error::invalid(format!(
                    "flip probability must lie in [0, 0.5], got {flip_probability}"
                )));
            }
        }
        Ok(())
    }

    /// Whether the responses at one station depend only on that station's
    /// orientation and the hidden variable.
    pub fn is_local(&self) -> bool {
        matches!(self, Model::BellSign | Model::Noise { .. })
    }

    /// Uniform draws consumed per measured pair, hidden variable included.
    pub fn draws_per_pair(&self) -> u64 {
        match self {
            Model::Quantum | Model::QuantumMimic => 2,
            Model::BellSign => 1,
            Model::Noise { .. } => 3,
        }
    }

    /// Draws the hidden variable for one pair.
    ///
    /// Local kinds consume one draw and return a phase uniform on
    /// `[0, 2*pi)`; `Quantum` and `QuantumMimic` consume nothing and return
    /// zero.
    pub fn sample_hidden<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Model::Quantum | Model::QuantumMimic => 0.0,
            Model::BellSign | Model::Noise { .. } => rng.random::<f64>() * TAU,
        }
    }

    /// Produces the outcome pair for one run.
    ///
    /// `lambda` must come from [`Model::sample_hidden`] on the same stream
    /// for the draw accounting documented on this module to hold.
    pub fn respond<R: Rng + ?Sized>(
        &self,
        theta_a: Angle,
        theta_b: Angle,
        lambda: f64,
        rng: &mut R,
    ) -> (Outcome, Outcome) {
        match *self {
            Model::Quantum | Model::QuantumMimic => quantum::sample_pair(theta_a, theta_b, rng),
            Model::BellSign => sign_responses(theta_a, theta_b, lambda),
            Model::Noise { flip_probability } => {
                let (a, b) = sign_responses(theta_a, theta_b, lambda);
                let flip_a = rng.random::<f64>() < flip_probability;
                let flip_b = rng.random::<f64>() < flip_probability;
                (if flip_a { -a } else { a }, if flip_b { -b } else { b })
            }
        }
    }

    /// Closed-form correlation at the given separation.
    pub fn exact_correlation(&self, theta_ab: Angle) -> f64 {
        match *self {
            Model::Quantum | Model::QuantumMimic => quantum::exact_correlation(theta_ab),
            Model::BellSign => ramp_correlation(theta_ab),
            Model::Noise { flip_probability } => {
                let damping = 1.0 - 2.0 * flip_probability;
                damping * damping * ramp_correlation(theta_ab)
            }
        }
    }

    /// Closed-form equal-sign fraction `(1 + C) / 2` at the given
    /// separation.
    pub fn exact_s(&self, theta_ab: Angle) -> f64 {
        (1.0 + self.exact_correlation(theta_ab)) / 2.0
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Model::Quantum => write!(f, "quantum"),
            Model::BellSign => write!(f, "bell-sign"),
            Model::Noise { flip_probability } => write!(f, "noise:q={flip_probability}"),
            Model::QuantumMimic => write!(f, "quantum-mimic"),
        }
    }
}

/// Deterministic station responses to a shared phase: anti-correlated
/// whenever the orientations coincide.
fn sign_responses(theta_a: Angle, theta_b: Angle, lambda: f64) -> (Outcome, Outcome) {
    let r_a = Outcome::from_sign((lambda - theta_a.radians()).cos());
    let r_b = -Outcome::from_sign((lambda - theta_b.radians()).cos());
    (r_a, r_b)
}

/// Correlation of the sign responses: linear from -1 at separation 0 to +1
/// at separation pi.
fn ramp_correlation(theta_ab: Angle) -> f64 {
    let t = theta_ab.separation(Angle::ZERO).radians();
    -1.0 + 2.0 * t / PI
}
