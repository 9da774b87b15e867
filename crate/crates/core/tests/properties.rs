//! Property tests over the counting identities, angle folding, model
//! closed forms, and the violation-probability convolution.
//!
//! Properties covered:
//!
//! 1. The two routes from counts to the equal-sign fraction agree: direct
//!    `m / n` versus through the correlation.
//! 2. `gamma` is invariant under permutation of its entries.
//! 3. Correlation and equal-sign fraction increase strictly with the count.
//! 4. The singlet closed forms satisfy the half-angle identity
//!    `sin^2(theta / 2) = (1 - cos(theta)) / 2`.
//! 5. Separation folding lands in `[0, pi]`, is symmetric, and respects
//!    full-turn periodicity.
//! 6. Inside the small-angle window the exact singlet gamma stays below
//!    the counting threshold; at the window edge it matches the threshold
//!    to within rounding.
//! 7. The truncated convolution behind `violation_probability` matches
//!    exhaustive enumeration of the Bernoulli lattice, also for unequal
//!    per-experiment probabilities, and is monotone in each probability.
//! 8. Local models respond identically at one station regardless of the
//!    orientation chosen at the other.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use spingamma::analysis::{angle_bound, violation_probability};
use spingamma::models::Model;
use spingamma::quantum;
use spingamma::stats;
use spingamma::types::Angle;

fn rad(r: f64) -> Angle {
    Angle::from_radians(r).unwrap()
}

/// P(sum of counts <= len - 1) by enumerating every Bernoulli outcome
/// pattern of `len` experiments with `n` runs each.
fn enumerate_violation_probability(n: u32, probs: &[f64]) -> f64 {
    let bits_per_experiment = n as usize;
    let total_bits = bits_per_experiment * probs.len();
    assert!(total_bits <= 20, "enumeration kept small on purpose");
    let mut acc = 0.0;
    for pattern in 0u32..(1 << total_bits) {
        let mut weight = 1.0;
        let mut successes = 0u32;
        for (index, &p) in probs.iter().enumerate() {
            for bit in 0..bits_per_experiment {
                let set = pattern >> (index * bits_per_experiment + bit) & 1 == 1;
                weight *= if set { p } else { 1.0 - p };
                successes += set as u32;
            }
        }
        if (successes as usize) < probs.len() {
            acc += weight;
        }
    }
    acc
}

fn counts() -> impl Strategy<Value = (u64, u64)> {
    (1u64..=1_000_000).prop_flat_map(|n| (Just(n), 0u64..=n).prop_map(|(n, m)| (m, n)))
}

proptest! {
    #[test]
    fn s_routes_agree((m, n) in counts()) {
        let direct = stats::s_from_counts(m, n).unwrap();
        let via_correlation =
            stats::s_from_correlation(stats::correlation_from_counts(m, n).unwrap()).unwrap();
        let scale = direct.abs().max(via_correlation.abs()).max(1.0);
        prop_assert!((direct - via_correlation).abs() <= scale * f64::EPSILON);
    }

    #[test]
    fn correlation_stays_in_range((m, n) in counts()) {
        let c = stats::correlation_from_counts(m, n).unwrap();
        prop_assert!((-1.0..=1.0).contains(&c));
        let s = stats::s_from_counts(m, n).unwrap();
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn gamma_ignores_entry_order(values in prop::collection::vec(0.0f64..=1.0, 1..200).prop_shuffle()) {
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        let a = stats::gamma(&values).unwrap();
        let b = stats::gamma(&sorted).unwrap();
        prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
    }

    #[test]
    fn counts_order_by_correlation((m, n) in counts()) {
        prop_assume!(m < n);
        let c_low = stats::correlation_from_counts(m, n).unwrap();
        let c_high = stats::correlation_from_counts(m + 1, n).unwrap();
        prop_assert!(c_low < c_high);
        let s_low = stats::s_from_counts(m, n).unwrap();
        let s_high = stats::s_from_counts(m + 1, n).unwrap();
        prop_assert!(s_low < s_high);
    }

    #[test]
    fn half_angle_identity_holds(theta in -10.0f64..10.0) {
        let angle = rad(theta);
        let via_correlation =
            stats::s_from_correlation(quantum::exact_correlation(angle)).unwrap();
        prop_assert!((quantum::exact_s(angle) - via_correlation).abs() <= 1e-12);
    }

    #[test]
    fn separation_lands_in_half_circle(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let s = rad(a).separation(rad(b));
        prop_assert!((0.0..=std::f64::consts::PI).contains(&s.radians()));
        prop_assert_eq!(s, rad(b).separation(rad(a)));
        prop_assert_eq!(rad(a).separation(rad(a)).radians(), 0.0);
    }

    #[test]
    fn separation_respects_full_turns(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let plain = rad(a).separation(rad(b)).radians();
        let turned = rad(a + std::f64::consts::TAU).separation(rad(b)).radians();
        prop_assert!((plain - turned).abs() <= 1e-9, "{plain} vs {turned}");
    }

    #[test]
    fn window_interior_stays_below_threshold(
        n in 2u64..=1_000_000,
        n_experiments in 1usize..=1_000,
        fraction in 1e-6f64..=0.999,
    ) {
        let bound = angle_bound(n).unwrap().radians();
        let theta = rad(bound * fraction);
        let gamma = quantum::exact_gamma(&vec![theta; n_experiments]);
        let threshold = n_experiments as f64 / n as f64;
        prop_assert!(
            gamma < threshold,
            "gamma {gamma} not below threshold {threshold} at theta {}",
            theta.radians()
        );
    }

    #[test]
    fn window_edge_matches_threshold(
        n in 2u64..=1_000_000,
        n_experiments in 1usize..=1_000,
    ) {
        let bound = angle_bound(n).unwrap();
        let gamma = quantum::exact_gamma(&vec![bound; n_experiments]);
        let threshold = n_experiments as f64 / n as f64;
        prop_assert!((gamma - threshold).abs() <= 1e-12);
    }

    #[test]
    fn convolution_matches_enumeration(
        n in 1u32..=4,
        probs in prop::collection::vec(0.0f64..=1.0, 1..=3),
    ) {
        let expected = enumerate_violation_probability(n, &probs);
        let actual = violation_probability(n as u64, &probs).unwrap();
        prop_assert!(
            (actual - expected).abs() <= 1e-12,
            "dp {actual} vs enumeration {expected}"
        );
    }

    #[test]
    fn convolution_is_monotone_in_each_probability(
        n in 1u64..=50,
        probs in prop::collection::vec(0.0f64..=1.0, 1..=5),
        index in 0usize..5,
        bump in 0.0f64..=1.0,
    ) {
        let index = index % probs.len();
        let mut bumped = probs.clone();
        bumped[index] = (bumped[index] + bump).min(1.0);
        let before = violation_probability(n, &probs).unwrap();
        let after = violation_probability(n, &bumped).unwrap();
        prop_assert!(after <= before + 1e-12, "{after} vs {before}");
    }

    #[test]
    fn convolution_result_is_a_probability(
        n in 1u64..=200,
        probs in prop::collection::vec(0.0f64..=1.0, 1..=8),
    ) {
        let p = violation_probability(n, &probs).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn model_closed_forms_stay_in_range(theta in -10.0f64..10.0, q in 0.0f64..=0.5) {
        for model in [
            Model::Quantum,
            Model::BellSign,
            Model::noise(q).unwrap(),
            Model::QuantumMimic,
        ] {
            let c = model.exact_correlation(rad(theta));
            prop_assert!((-1.0..=1.0).contains(&c), "{model}: {c}");
            let s = model.exact_s(rad(theta));
            prop_assert!((0.0..=1.0).contains(&s), "{model}: {s}");
        }
    }

    #[test]
    fn local_station_ignores_remote_orientation(
        theta_a in 0.0f64..7.0,
        theta_b in 0.0f64..7.0,
        theta_b_alt in 0.0f64..7.0,
        lambda in 0.0f64..7.0,
        q in 0.0f64..=0.5,
        seed in any::<u64>(),
    ) {
        for model in [Model::BellSign, Model::noise(q).unwrap()] {
            let mut rng_one = ChaCha12Rng::seed_from_u64(seed);
            let mut rng_two = rng_one.clone();
            let (a_one, _) = model.respond(rad(theta_a), rad(theta_b), lambda, &mut rng_one);
            let (a_two, _) = model.respond(rad(theta_a), rad(theta_b_alt), lambda, &mut rng_two);
            prop_assert_eq!(a_one, a_two, "station response leaked the remote orientation");
            let (_, b_one) = model.respond(rad(theta_b), rad(theta_a), lambda, &mut rng_one);
            let (_, b_two) = model.respond(rad(theta_b_alt), rad(theta_a), lambda, &mut rng_two);
            prop_assert_eq!(b_one, b_two);
        }
    }

    #[test]
    fn outcomes_multiply_like_signs(
        theta_a in 0.0f64..7.0,
        theta_b in 0.0f64..7.0,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for model in [Model::Quantum, Model::BellSign, Model::QuantumMimic] {
            let lambda = model.sample_hidden(&mut rng);
            let (a, b) = model.respond(rad(theta_a), rad(theta_b), lambda, &mut rng);
            prop_assert_eq!((a * b).value(), a.value() * b.value());
            prop_assert!(a.value() == 1 || a.value() == -1);
        }
    }
}
