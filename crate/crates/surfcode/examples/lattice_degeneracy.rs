// Counting logical qubits: punch holes in a planar code and read the
// ground-state degeneracy off the stabilizer rank.

use surfcode::lattice::{Boundary, HoleSpec, LatticeBuilder};
use surfcode::pauli::ground_degeneracy;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plain = LatticeBuilder::new(6, 5).build()?;
    let one = LatticeBuilder::new(6, 5).hole(HoleSpec::plaquette(2, 1)).build()?;
    let three = LatticeBuilder::new(11, 5)
        .holes([HoleSpec::plaquette(2, 1), HoleSpec::plaquette(5, 2), HoleSpec::plaquette(8, 1)])
        .build()?;
    let torus = LatticeBuilder::new(4, 4).boundary(Boundary::Torus).build()?;

    for (name, lat, want) in [("plain", &plain, 1), ("one hole", &one, 2), ("three holes", &three, 8), ("torus", &torus, 4)] {
        let d = ground_degeneracy(lat)?;
        println!("{name:12} sites {:3}  rank {:3}  Q = {}", d.n_active, d.rank, d.q);
        assert_eq!(d.q, want);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
