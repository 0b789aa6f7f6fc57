// When thermal vortices outpace tunneling: the crossover temperature and
// the thermal lifetime of the encoded state.

use surfcode::decoherence::{safe_to_operate, sweep_hx, ThermalParams, DEFAULT_SAFETY_FACTOR};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cold = ThermalParams { g: 1.0, t: 0.005, hx: 0.01, hy: 0.0, lp: 10.0 };
    let r = safe_to_operate(&cold, DEFAULT_SAFETY_FACTOR)?;
    println!("B = {:.4}, T* = {:.5}, ln t_de = {:.1}, safe: {}", r.b, r.t_star, r.ln_t_de, r.safe);
    assert!(r.safe);

    let warm = ThermalParams { t: 0.05, ..cold };
    assert!(!safe_to_operate(&warm, DEFAULT_SAFETY_FACTOR)?.safe);

    // stronger fields shorten the tunneling exponent and raise T*
    for p in sweep_hx(&cold, 0.01, 0.1, 4)? {
        println!("hx {:.3}: T* {:.4}", p.hx, p.t_star);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
