// Quasiparticle bands in a uniform field and their gaps.

use surfcode::spectra::{
    fermion_dispersion, fermion_gap, grid_minimum, vortex_dispersion, vortex_gap, DispersionParams,
    FermionBranch,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = DispersionParams::new(1.0, 0.1, 0.1);
    let v = grid_minimum(64, |kx, ky| vortex_dispersion(&p.at(kx, ky)))?;
    let f = grid_minimum(64, |kx, ky| fermion_dispersion(&p.at(kx, ky), FermionBranch::Vertical))?;
    println!("vortex gap  {v:.6} (closed form {:.6})", vortex_gap(1.0, 0.1));
    println!("fermion gap {f:.6} (closed form {:.6})", fermion_gap(1.0, 0.1));
    assert!((v - vortex_gap(1.0, 0.1)).abs() < 1e-12);
    assert!((f - fermion_gap(1.0, 0.1)).abs() < 1e-12);

    // a strong field closes the vortex gap
    let strong = DispersionParams::new(1.0, 0.3, 0.0);
    assert!(vortex_dispersion(&strong).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
