// Reading out pseudo-spins with vortex and fermion interferometry, then
// reconstructing the state from the readout probabilities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use surfcode::measure::{
    forward_readouts, random_state, reconstruct, run_tomography, tomography_plan, EntangledState,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let psi = random_state(2, &mut rng)?;
    let plan = tomography_plan(2)?;
    println!("{} parameters, {} observables:", plan.parameter_count, plan.observables.len());
    let probs = forward_readouts(&plan, &psi)?;
    for (o, p) in plan.observables.iter().zip(&probs) {
        println!("   {:8} {p:.4}", o.label());
    }
    let rec = reconstruct(&plan, &probs, 1e-9)?;
    let err = rec.state.max_error(&EntangledState::from_state(&psi));
    println!("exact readouts: parameter error {err:.1e}");
    assert!(err < 1e-9);

    // finite shots blur the estimate
    let noisy = run_tomography(&psi, 10_000, 1, 1.0)?;
    println!("10^4 shots: parameter error {:.3}", noisy.max_parameter_error.unwrap_or(f64::NAN));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
