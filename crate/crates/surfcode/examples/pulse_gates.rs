// Single-qubit gates as z-x-z pulse trains of the pseudo-spin fields.

use std::f64::consts::PI;

use surfcode::effective::{rotation_gate, PseudoSpinState};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (hx, hz) = (2e-3, -1e-3);
    for (name, (t, p, g)) in [("pi/8", (0.0, PI / 8.0, PI / 8.0)), ("hadamard", (7.0 * PI / 4.0, PI / 4.0, PI / 4.0))] {
        let (schedule, closed) = rotation_gate(0, t, p, g, hx, hz)?;
        let dev = (schedule.unitary() - closed).iter().map(|c| c.norm()).fold(0.0, f64::max);
        println!("{name}: {} pulses, total time {:.1}, deviation {dev:.1e}", schedule.pulses.len(), schedule.total_time());
        for pulse in &schedule.pulses {
            println!("   {:?} field {:+.1e} for {:.2}", pulse.axis, pulse.field, pulse.duration);
        }
        assert!(dev < 1e-12);
    }

    // the Hadamard takes |↑⟩ to an equal superposition
    let (h, _) = rotation_gate(0, 7.0 * PI / 4.0, PI / 4.0, PI / 4.0, hx, hz)?;
    let mut psi = PseudoSpinState::all_up(1);
    h.apply(&mut psi)?;
    let p_up = psi.amplitudes[0].norm_sqr();
    println!("P(up) after H = {p_up:.12}");
    assert!((p_up - 0.5).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
