// Pauli strings as bit masks: products, commutation and the logical
// operators of a hole.

use surfcode::lattice::{HoleSpec, LatticeBuilder};
use surfcode::pauli::{logical_pair, Pauli, PauliString, StabilizerGroup};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = PauliString::single(2, 0, Pauli::X)?;
    let z = PauliString::single(2, 0, Pauli::Z)?;
    // XZ = -iY
    let xz = x.multiply(&z)?;
    println!("XZ has phase i^{} and acts as {:?}", xz.phase().power(), xz.get(0));
    assert_eq!(xz.get(0), Pauli::Y);
    assert!(!x.commutes(&z)?);

    let xx = PauliString::uniform(2, &[0, 1], Pauli::X)?;
    let zz = PauliString::uniform(2, &[0, 1], Pauli::Z)?;
    assert!(xx.commutes(&zz)?);

    let lat = LatticeBuilder::new(5, 4).hole(HoleSpec::new(2, 1, 3, 2)).build()?;
    let stabs = StabilizerGroup::from_lattice(&lat)?;
    let pair = logical_pair(&lat, 0)?;
    println!(
        "hole 0: tau_z weight {}, tau_x weight {}",
        pair.tau_z.weight(),
        pair.tau_x.weight()
    );
    assert!(stabs.commutes_with_all(&pair.tau_z)? && stabs.commutes_with_all(&pair.tau_x)?);
    assert!(!pair.tau_z.commutes(&pair.tau_x)?);
    assert!(!stabs.contains(&pair.tau_z));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
