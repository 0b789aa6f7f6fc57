// Polarizing the pseudo-spins by slowly switching off a lattice field.
// Faster sweeps leave more weight outside the target state.

use surfcode::effective::{adiabatic_init, adiabatic_init_converged, AdiabaticSchedule, Drive, EffectiveChain};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let template = EffectiveChain::uniform(2, 0.0, -0.02, 0.0, -0.05);
    let drive = Drive { g: 1.0, path_length: 1 };
    let mut last = 0.0;
    for total in [30.0, 300.0, 3000.0] {
        let start = AdiabaticSchedule { h0: 1.0, t0: total / 10.0, total, steps: 500 };
        let (run, used) = adiabatic_init_converged(&template, &drive, &start, None, 1e-6, 8)?;
        println!("T = {total:>5}: fidelity {:.6} ({} steps)", run.fidelity, used.steps);
        last = run.fidelity;
    }
    assert!(last > 0.99);

    let quick = AdiabaticSchedule { h0: 1.0, t0: 0.1, total: 1.0, steps: 100 };
    let slow = AdiabaticSchedule { h0: 1.0, t0: 30.0, total: 300.0, steps: 4000 };
    let f_quick = adiabatic_init(&template, &drive, &quick, None)?.fidelity;
    let f_slow = adiabatic_init(&template, &drive, &slow, None)?.fidelity;
    assert!(f_slow > f_quick);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
