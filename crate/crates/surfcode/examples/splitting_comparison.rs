// Exact doublet splitting of one hole against the leading-order closed
// form, for a field on the hole-to-edge corridor.

use surfcode::experiments::{compare_splitting, Channel};
use surfcode::lattice::{HoleSpec, LatticeBuilder};
use surfcode::spectra::EigenOptions;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let lat = LatticeBuilder::new(5, 4).hole(HoleSpec::new(2, 1, 3, 2)).build()?;
    let table = compare_splitting(&lat, 1.0, 0, Channel::Charge, &[0.1, 0.05, 0.02], &EigenOptions::default())?;
    println!("path length {}", table.path_length);
    println!("{:>6} {:>12} {:>12} {:>8}", "h", "exact", "closed", "ratio");
    for r in &table.rows {
        println!("{:>6} {:>12.4e} {:>12.4e} {:>8.3}", r.h, r.ed_splitting, r.closed_form, r.ratio);
    }
    // both scale as h^L; the ratio settles on a constant
    println!("limiting ratio {:.3}", table.limiting_ratio);
    let last = &table.rows[table.rows.len() - 2..];
    assert!((last[0].ratio - last[1].ratio).abs() < 0.1 * last[1].ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
