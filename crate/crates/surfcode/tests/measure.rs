use std::f64::consts::{FRAC_1_SQRT_2, PI};

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surfcode::effective::PseudoSpinState;
use surfcode::measure::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn interference_dichotomy() {
    let t = 0.013;
    let even = InterferencePaths {
        psi1: c(t, 0.0),
        psi2: c(t, 0.0),
        flux: Flux::Even,
    };
    assert_eq!(interference_amplitude(&even), 4.0 * t * t);
    let odd = InterferencePaths {
        flux: Flux::Odd,
        ..even
    };
    assert_eq!(interference_amplitude(&odd), 0.0);
    let single = InterferencePaths {
        psi1: c(0.3, 0.4),
        psi2: c(0.0, 0.0),
        flux: Flux::Odd,
    };
    assert_relative_eq!(interference_amplitude(&single), 0.25, epsilon = 1e-15);
}

proptest! {
    #[test]
    fn interference_symmetric(a in -1.0f64..1.0, b in -1.0f64..1.0, x in -1.0f64..1.0, y in -1.0f64..1.0, odd: bool) {
        let flux = if odd { Flux::Odd } else { Flux::Even };
        let p = InterferencePaths { psi1: c(a, b), psi2: c(x, y), flux };
        let q = InterferencePaths { psi1: c(x, y), psi2: c(a, b), flux };
        prop_assert_eq!(interference_amplitude(&p), interference_amplitude(&q));
    }
}

#[test]
fn vortex_readouts() {
    assert_eq!(vortex_readout(&PseudoSpinState::all_up(1), &[0]).unwrap(), 1.0);
    let (alpha, beta) = (0.6, 0.8);
    let psi = PseudoSpinState::single(alpha, beta, 1.1).unwrap();
    assert_relative_eq!(vortex_readout(&psi, &[0]).unwrap(), alpha * alpha, epsilon = 1e-12);
    let bell = PseudoSpinState::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    assert_relative_eq!(vortex_readout(&bell, &[0, 1]).unwrap(), 1.0, epsilon = 1e-12);
    assert_relative_eq!(vortex_readout(&bell, &[0]).unwrap(), 0.5, epsilon = 1e-12);
    assert_eq!(vortex_readout(&bell, &[]), Err(MeasureError::EmptySubset));
    assert_eq!(
        vortex_readout(&bell, &[2]),
        Err(MeasureError::UnknownQubit { l: 2, n: 2 })
    );
}

#[test]
fn fermion_readouts() {
    let up = PseudoSpinState::all_up(1);
    assert_relative_eq!(fermion_readout(&up, &[0]).unwrap(), 0.5, epsilon = 1e-12);
    let plus = PseudoSpinState::single(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0).unwrap();
    assert_relative_eq!(fermion_readout(&plus, &[0]).unwrap(), 1.0, epsilon = 1e-12);
    let minus = PseudoSpinState::single(FRAC_1_SQRT_2, FRAC_1_SQRT_2, PI).unwrap();
    assert_relative_eq!(fermion_readout(&minus, &[0]).unwrap(), 0.0, epsilon = 1e-12);
    let (a, b, phi) = (0.6, 0.8, 0.7);
    let psi = PseudoSpinState::single(a, b, phi).unwrap();
    assert_relative_eq!(
        fermion_readout(&psi, &[0]).unwrap(),
        0.5 + a * b * phi.cos(),
        epsilon = 1e-12
    );
    // the quadrature fixes the sign of sin φ
    let y = Observable::uniform(&[0], Basis::Y);
    assert_relative_eq!(readout(&psi, &y).unwrap(), 0.5 + a * b * phi.sin(), epsilon = 1e-12);
}

proptest! {
    #[test]
    fn readouts_are_probabilities(seed in 0u64..10_000, n in 1usize..4) {
        let psi = random_state(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let plan = tomography_plan(n).unwrap();
        for o in &plan.observables {
            let p = readout(&psi, o).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
        }
        // the two outcomes of a τ^z readout exhaust the state
        let up: f64 = psi.amplitudes.iter().enumerate()
            .filter(|(b, _)| b & 1 == 0).map(|(_, a)| a.norm_sqr()).sum();
        let down: f64 = psi.amplitudes.iter().enumerate()
            .filter(|(b, _)| b & 1 == 1).map(|(_, a)| a.norm_sqr()).sum();
        prop_assert!((vortex_readout(&psi, &[0]).unwrap() - up).abs() < 1e-12);
        prop_assert!((up + down - 1.0).abs() < 1e-12);
    }
}

#[test]
fn plan_sizes() {
    for (n, params) in [(1, 2), (2, 6), (3, 14)] {
        let plan = tomography_plan(n).unwrap();
        assert_eq!(plan.parameter_count, params);
        assert!(plan.warning.is_none());
        assert!(plan.observables.len() >= params);
    }
    let four = tomography_plan(4).unwrap();
    assert_eq!(four.parameter_count, 30);
    assert!(four.warning.is_some());
    assert_eq!(tomography_plan(2).unwrap().observables.len(), 11);
}

fn round_trip(psi: &PseudoSpinState) -> f64 {
    let plan = tomography_plan(psi.n()).unwrap();
    let probs = forward_readouts(&plan, psi).unwrap();
    let rec = reconstruct(&plan, &probs, 1e-9).unwrap();
    rec.state.max_error(&EntangledState::from_state(psi))
}

#[test]
fn reconstruct_presets() {
    let plan = tomography_plan(1).unwrap();
    let up = PseudoSpinState::all_up(1);
    let rec = reconstruct(&plan, &forward_readouts(&plan, &up).unwrap(), 1e-9).unwrap();
    assert_relative_eq!(rec.state.alpha[0], 1.0, epsilon = 1e-12);
    assert_relative_eq!(rec.state.alpha[1], 0.0, epsilon = 1e-12);

    let plus_i = PseudoSpinState::single(FRAC_1_SQRT_2, FRAC_1_SQRT_2, PI / 2.0).unwrap();
    let rec = reconstruct(&plan, &forward_readouts(&plan, &plus_i).unwrap(), 1e-9).unwrap();
    assert_relative_eq!(rec.state.alpha[0], FRAC_1_SQRT_2, epsilon = 1e-12);
    assert_relative_eq!(rec.state.alpha[1], FRAC_1_SQRT_2, epsilon = 1e-12);
    assert_relative_eq!(rec.state.phi[1], PI / 2.0, epsilon = 1e-12);
}

#[test]
fn random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [1, 2] {
        let worst = (0..100)
            .map(|_| round_trip(&random_state(n, &mut rng).unwrap()))
            .fold(0.0, f64::max);
        assert!(worst <= 1e-6, "n = {n}: {worst}");
    }
}

#[test]
fn inconsistent_readouts_are_rejected() {
    let plan = tomography_plan(1).unwrap();
    // τ^z, τ^x and τ^y all certain is impossible
    let err = reconstruct(&plan, &[1.0, 1.0, 1.0], 1e-6).unwrap_err();
    assert!(matches!(err, MeasureError::Inconsistent { residual } if residual > 0.1));
    assert!(matches!(
        reconstruct(&plan, &[0.5, 0.5], 1e-6),
        Err(MeasureError::ReadoutCount { want: 3, got: 2 })
    ));
    assert!(reconstruct(&tomography_plan(3).unwrap(), &[0.5; 27], 1e-6).is_err());
}

#[test]
fn shot_sampling_is_seeded() {
    let exact = [0.1, 0.5, 0.93];
    let a = sample_readouts(&exact, 20_000, 9).unwrap();
    assert_eq!(a, sample_readouts(&exact, 20_000, 9).unwrap());
    assert_ne!(a, sample_readouts(&exact, 20_000, 10).unwrap());
    assert!(a.iter().zip(exact).all(|(s, p)| (s - p).abs() < 0.02));
    assert_eq!(sample_readouts(&exact, 0, 1).unwrap(), exact.to_vec());
}
