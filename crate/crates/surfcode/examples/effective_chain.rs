// The pseudo-spin chain seen by the holes once the lattice is integrated
// out, and its time evolution.

use surfcode::effective::{build_chain, evolve, PseudoSpinState};
use surfcode::lattice::{field_mask, FieldMask, HoleSpec, LatticeBuilder, Region};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = LatticeBuilder::new(11, 5)
        .holes([HoleSpec::plaquette(2, 1), HoleSpec::plaquette(5, 2), HoleSpec::plaquette(8, 1)])
        .build()?;
    let chain = build_chain(&lat, 1.0, &FieldMask::uniform(&lat, [0.05, 0.05, 0.0]))?;
    println!("hx  {:?}\nhz  {:?}\njxx {:?}\njzz {:?}", chain.hx, chain.hz, chain.jxx, chain.jzz);

    // a field only between holes 0 and 1 couples just that pair
    let mask = field_mask(&lat, &Region::CorridorBetween { holes: [0, 1] }, [0.0, 0.05, 0.0])?;
    let pair = build_chain(&lat, 1.0, &mask)?;
    assert!(pair.jxx[0] != 0.0 && pair.jxx[1] == 0.0);

    let psi = PseudoSpinState::all_up(3);
    let t = 100.0;
    let out = evolve(&chain, &psi, t)?;
    println!("fidelity with |↑↑↑⟩ after t = {t}: {:.6}", out.fidelity(&psi));
    println!("energy {:.3e} -> {:.3e}", chain.energy(&psi)?, chain.energy(&out)?);
    assert!((chain.energy(&psi)? - chain.energy(&out)?).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
