//! Command-line front end. Every subcommand returns its whole output as a
//! string: JSON for reports, CSV with a `#` preamble for sweeps and curves.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::config::{csv_preamble, ConfigError, LatticeConfig, Report};
use crate::decoherence::{self, DecoherenceError, ThermalParams};
use crate::effective::{self, AdiabaticSchedule, Drive, EffectiveChain, EffectiveError};
use crate::experiments::{compare_splitting, Channel, ExperimentError};
use crate::measure::{self, MeasureError};
use crate::pauli::{ground_degeneracy, logical_pair, PauliError};
use crate::spectra::{self, EigenOptions, FermionBranch, GroundSpace, SpectraError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
    #[error(transparent)]
    Effective(#[from] EffectiveError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Decoherence(#[from] DecoherenceError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Surface-code lattices with holes: degeneracy, spectra, tunneling,
/// pseudo-spin gates, readout and thermal errors.
///
/// Units: energies in units of the stabilizer strength g (default g = 1),
/// hbar = k_B = 1, so times are in 1/g and temperatures in g.
#[derive(Debug, Parser)]
#[command(name = "surfcode", version)]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice; a fixed seed gives identical output.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state degeneracy from the stabilizer rank (JSON).
    Degeneracy(ConfigArgs),
    /// Lowest levels, splittings and logical matrix elements (JSON).
    Spectrum(SpectrumArgs),
    /// Quasiparticle band over a k-grid (CSV kx, ky, energy).
    Dispersion(DispersionArgs),
    /// Exact splitting against the closed form over several fields (JSON).
    CompareSplitting(CompareArgs),
    /// Pulse schedule for a pseudo-spin rotation (JSON).
    Gates(GateArgs),
    /// Adiabatic initialization trace (CSV t, h, fidelity).
    Init(InitArgs),
    /// Tomography plan, readouts and reconstruction (JSON).
    Tomography(TomographyArgs),
    /// Crossover temperature and decoherence time (JSON, or CSV with --sweep).
    Decoherence(DecoherenceArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ConfigArgs {
    /// Lattice config: {width, height, boundary, holes, fields}.
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Number of levels; defaults to 2^n + 2.
    #[arg(long)]
    pub k_count: Option<usize>,
    /// Residual tolerance relative to the norm bound of H.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Diagonalize the full space even when a stabilizer block suffices.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Vortex,
    Vertical,
    Parallel,
}

#[derive(Debug, Args, Serialize)]
pub struct DispersionArgs {
    #[arg(long, value_enum, default_value_t = BranchArg::Vortex)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 0.0)]
    pub hx: f64,
    #[arg(long, default_value_t = 0.0)]
    pub hy: f64,
    /// Points per momentum axis.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelArg {
    Charge,
    Fermion,
    Vortex,
}

impl From<ChannelArg> for Channel {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Charge => Channel::Charge,
            ChannelArg::Fermion => Channel::Fermion,
            ChannelArg::Vortex => Channel::Vortex,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    /// Lattice config; its fields are ignored.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 0)]
    pub hole: usize,
    #[arg(long, value_enum, default_value_t = ChannelArg::Charge)]
    pub channel: ChannelArg,
    /// Field strengths, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.05, 0.02])]
    pub fields: Vec<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GateArg {
    Pi8,
    Hadamard,
    Custom,
}

#[derive(Debug, Args, Serialize)]
pub struct GateArgs {
    #[arg(long, value_enum, default_value_t = GateArg::Pi8)]
    pub gate: GateArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub gamma: f64,
    /// Pseudo-spin x field during x pulses.
    #[arg(long, default_value_t = 1e-3)]
    pub hx: f64,
    /// Pseudo-spin z field during z pulses.
    #[arg(long, default_value_t = 1e-3)]
    pub hz: f64,
    #[arg(long, default_value_t = 0)]
    pub target: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct InitArgs {
    /// Number of pseudo-spins.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Lattice field at the start of the sweep.
    #[arg(long, default_value_t = 1.0)]
    pub h0: f64,
    /// Decay scale of the field; defaults to T/10.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Total sweep time.
    #[arg(long = "T", default_value_t = 3000.0)]
    pub total: f64,
    #[arg(long, default_value_t = 2000)]
    pub steps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Fermion path length from each hole to the edge.
    #[arg(long, default_value_t = 1)]
    pub path_length: usize,
    /// Static pseudo-spin z field.
    #[arg(long, default_value_t = -0.05, allow_hyphen_values = true)]
    pub hz: f64,
    /// Static τ^z τ^z coupling.
    #[arg(long, default_value_t = -0.02, allow_hyphen_values = true)]
    pub jzz: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct TomographyArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Preset (up, down, plus, minus, plus-i, bell, random) or a JSON file of
    /// [re, im] amplitude pairs.
    #[arg(long, default_value = "random")]
    pub state: String,
    /// Repetitions per observable; 0 uses exact probabilities.
    #[arg(long, default_value_t = 0)]
    pub shots: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct DecoherenceArgs {
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    /// Temperature.
    #[arg(long = "T", default_value_t = 0.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.01)]
    pub hx: f64,
    #[arg(long, default_value_t = 0.0)]
    pub hy: f64,
    /// Tunneling path length.
    #[arg(long = "Lp", default_value_t = 10.0)]
    pub lp: f64,
    #[arg(long, default_value_t = decoherence::DEFAULT_SAFETY_FACTOR)]
    pub safety_factor: f64,
    /// Sweep hx as `hx=from:to:count` and emit CSV.
    #[arg(long)]
    pub sweep: Option<String>,
}

/// Runs one subcommand and returns its output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Degeneracy(a) => degeneracy(a, seed),
        Command::Spectrum(a) => spectrum(a, seed),
        Command::Dispersion(a) => dispersion(a, seed),
        Command::CompareSplitting(a) => compare(a, seed),
        Command::Gates(a) => gates(a, seed),
        Command::Init(a) => init(a, seed),
        Command::Tomography(a) => tomography(a, seed),
        Command::Decoherence(a) => decoherence_cmd(a, seed),
    }
}

#[derive(Serialize)]
struct Inputs<'a, A: Serialize> {
    args: &'a A,
    lattice: Option<&'a LatticeConfig>,
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn complex_rows(m: &DMatrix<Complex64>) -> Vec<Vec<[f64; 2]>> {
    m.row_iter()
        .map(|r| r.iter().map(|c| [c.re, c.im]).collect())
        .collect()
}

fn complex_rows2(m: &Matrix2<Complex64>) -> Vec<Vec<[f64; 2]>> {
    (0..2)
        .map(|r| (0..2).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn degeneracy(a: &ConfigArgs, seed: u64) -> Result<String, CliError> {
    let cfg = LatticeConfig::from_path(&a.config)?;
    let lat = cfg.lattice()?;
    let d = ground_degeneracy(&lat)?;
    let inputs = Inputs { args: a, lattice: Some(&cfg) };
    Ok(Report::new("degeneracy", &inputs, seed, d).to_json())
}

#[derive(Serialize)]
struct BlockInfo {
    frame: spectra::Frame,
    dim: usize,
    fixed_stabilizers: usize,
}

#[derive(Serialize)]
struct LogicalReport {
    hole: usize,
    tau_z: Vec<Vec<[f64; 2]>>,
    tau_x: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize)]
struct SpectrumReport {
    n_active: usize,
    n_holes: usize,
    block: Option<BlockInfo>,
    eigenvalues: Vec<f64>,
    residuals: Vec<f64>,
    splittings: spectra::Splittings,
    logical_expectations: Vec<LogicalReport>,
}

fn spectrum(a: &SpectrumArgs, seed: u64) -> Result<String, CliError> {
    let cfg = LatticeConfig::from_path(&a.config)?;
    let lat = cfg.lattice()?;
    let mask = cfg.mask(&lat)?;
    let ham = spectra::assemble(&lat, a.g, &mask)?;
    let n = lat.n_holes();
    let k = a.k_count.unwrap_or((1 << n) + 2);
    let opts = EigenOptions {
        tol: a.tol,
        seed,
        ..EigenOptions::default()
    };
    let gs = GroundSpace::solve(&ham, k, &opts, !a.full)?;
    let dim = 1usize << n;
    let logical_expectations = if lat.boundary() == crate::lattice::Boundary::Open {
        (0..n)
            .map(|l| {
                let pair = logical_pair(&lat, l)?;
                Ok(LogicalReport {
                    hole: l,
                    tau_z: complex_rows(&gs.logical_expectation(&pair.tau_z, dim)?),
                    tau_x: complex_rows(&gs.logical_expectation(&pair.tau_x, dim)?),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        Vec::new()
    };
    let report = SpectrumReport {
        n_active: lat.n_active(),
        n_holes: n,
        block: gs.sector.as_ref().map(|s| BlockInfo {
            frame: s.frame(),
            dim: s.states().len(),
            fixed_stabilizers: s.constraints(),
        }),
        eigenvalues: gs.spectrum.eigenvalues.clone(),
        residuals: gs.spectrum.residuals.clone(),
        splittings: spectra::ground_splitting(&gs.spectrum, n)?,
        logical_expectations,
    };
    let inputs = Inputs { args: a, lattice: Some(&cfg) };
    Ok(Report::new("spectrum", &inputs, seed, report).to_json())
}

fn dispersion(a: &DispersionArgs, seed: u64) -> Result<String, CliError> {
    let base = spectra::DispersionParams::new(a.g, a.hx, a.hy);
    let energy = |kx: f64, ky: f64| {
        let p = base.at(kx, ky);
        match a.branch {
            BranchArg::Vortex => spectra::vortex_dispersion(&p),
            BranchArg::Vertical => spectra::fermion_dispersion(&p, FermionBranch::Vertical),
            BranchArg::Parallel => spectra::fermion_dispersion(&p, FermionBranch::Parallel),
        }
    };
    let gap = match a.branch {
        BranchArg::Vortex => spectra::vortex_gap(a.g, a.hx),
        _ => spectra::fermion_gap(a.g, a.hy),
    };
    let mut out = csv_preamble("dispersion", a, seed);
    out += &format!(
        "# grid minimum {:.12}, closed-form gap {:.12}\n",
        spectra::grid_minimum(a.grid, energy)?,
        gap
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kx", "ky", "energy"])?;
    for kx in spectra::dispersion::k_grid(a.grid) {
        for ky in spectra::dispersion::k_grid(a.grid) {
            w.serialize((kx, ky, energy(kx, ky)?))?;
        }
    }
    out += &finish(w)?;
    Ok(out)
}

fn compare(a: &CompareArgs, seed: u64) -> Result<String, CliError> {
    let cfg = LatticeConfig::from_path(&a.config)?;
    let lat = cfg.lattice()?;
    let opts = EigenOptions {
        seed,
        ..EigenOptions::default()
    };
    let table = compare_splitting(&lat, a.g, a.hole, a.channel.into(), &a.fields, &opts)?;
    let inputs = Inputs { args: a, lattice: Some(&cfg) };
    Ok(Report::new("compare-splitting", &inputs, seed, table).to_json())
}

#[derive(Serialize)]
struct GateReport {
    theta: f64,
    phi: f64,
    gamma: f64,
    schedule: effective::GateSchedule,
    total_time: f64,
    pulse_unitary: Vec<Vec<[f64; 2]>>,
    closed_form: Vec<Vec<[f64; 2]>>,
    max_deviation: f64,
    unitarity_error: f64,
}

fn gates(a: &GateArgs, seed: u64) -> Result<String, CliError> {
    let (theta, phi, gamma) = match a.gate {
        GateArg::Pi8 => (0.0, PI / 8.0, PI / 8.0),
        GateArg::Hadamard => (7.0 * PI / 4.0, PI / 4.0, PI / 4.0),
        GateArg::Custom => (a.theta, a.phi, a.gamma),
    };
    let (schedule, closed) = effective::rotation_gate(a.target, theta, phi, gamma, a.hx, a.hz)?;
    let u = schedule.unitary();
    let report = GateReport {
        theta,
        phi,
        gamma,
        total_time: schedule.total_time(),
        max_deviation: (u - closed).iter().map(|c| c.norm()).fold(0.0, f64::max),
        unitarity_error: (u.adjoint() * u - Matrix2::identity()).norm(),
        pulse_unitary: complex_rows2(&u),
        closed_form: complex_rows2(&closed),
        schedule,
    };
    Ok(Report::new("gates", a, seed, report).to_json())
}

fn init(a: &InitArgs, seed: u64) -> Result<String, CliError> {
    let template = EffectiveChain::uniform(a.n, 0.0, a.jzz, 0.0, a.hz);
    let drive = Drive {
        g: a.g,
        path_length: a.path_length,
    };
    let schedule = AdiabaticSchedule {
        h0: a.h0,
        t0: a.t0.unwrap_or(a.total / 10.0),
        total: a.total,
        steps: a.steps,
    };
    let run = effective::adiabatic_init(&template, &drive, &schedule, None)?;
    let mut out = csv_preamble("init", a, seed);
    out += &format!("# final fidelity {:.12}\n", run.fidelity);
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in &run.trace {
        w.serialize(p)?;
    }
    out += &finish(w)?;
    Ok(out)
}

fn preset_state(name: &str, n: usize, seed: u64) -> Result<effective::PseudoSpinState, CliError> {
    use effective::PseudoSpinState;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let product = |single: [Complex64; 2]| {
        let amps = (0..1usize << n)
            .map(|b| (0..n).map(|l| single[b >> l & 1]).product())
            .collect();
        PseudoSpinState::new(amps)
    };
    let c = |re, im| Complex64::new(re, im);
    let state = match name {
        "up" => PseudoSpinState::all_up(n),
        "down" => PseudoSpinState::basis(n, (1 << n) - 1),
        "plus" => product([c(s, 0.0), c(s, 0.0)])?,
        "minus" => product([c(s, 0.0), c(-s, 0.0)])?,
        "plus-i" => product([c(s, 0.0), c(0.0, s)])?,
        "bell" => {
            let mut amps = vec![c(0.0, 0.0); 1 << n];
            amps[0] = c(1.0, 0.0);
            amps[(1 << n) - 1] = c(1.0, 0.0);
            PseudoSpinState::new(amps)?
        }
        "random" => measure::random_state(n, &mut ChaCha8Rng::seed_from_u64(seed))?,
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("state {path}: {e}")))?;
            let pairs: Vec<[f64; 2]> = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("state {path}: {e}")))?;
            let state = PseudoSpinState::new(pairs.iter().map(|p| c(p[0], p[1])).collect())?;
            if state.n() != n {
                return Err(CliError::Usage(format!(
                    "state {path} has {} qubits, --n is {n}",
                    state.n()
                )));
            }
            state
        }
    };
    Ok(state)
}

fn tomography(a: &TomographyArgs, seed: u64) -> Result<String, CliError> {
    let state = preset_state(&a.state, a.n, seed)?;
    let report = measure::run_tomography(&state, a.shots, seed, if a.shots == 0 { a.tol } else { 1.0 })?;
    Ok(Report::new("tomography", a, seed, report).to_json())
}

#[derive(Serialize)]
struct ThermalReport {
    effective_mass: f64,
    thermal_rate: f64,
    #[serde(flatten)]
    safety: decoherence::SafetyReport,
}

fn parse_sweep(spec: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Usage(format!("sweep must look like hx=from:to:count, got {spec}"));
    let range = spec.strip_prefix("hx=").ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

fn decoherence_cmd(a: &DecoherenceArgs, seed: u64) -> Result<String, CliError> {
    let p = ThermalParams {
        g: a.g,
        t: a.t,
        hx: a.hx,
        hy: a.hy,
        lp: a.lp,
    };
    match &a.sweep {
        Some(spec) => {
            let (from, to, count) = parse_sweep(spec)?;
            let points = decoherence::sweep_hx(&p, from, to, count)?;
            let mut out = csv_preamble("decoherence", a, seed);
            let mut w = csv::Writer::from_writer(Vec::new());
            for pt in &points {
                w.serialize(pt)?;
            }
            out += &finish(w)?;
            Ok(out)
        }
        None => {
            let report = ThermalReport {
                effective_mass: decoherence::effective_mass(a.hx),
                thermal_rate: decoherence::thermal_rate(&p),
                safety: decoherence::safe_to_operate(&p, a.safety_factor)?,
            };
            Ok(Report::new("decoherence", a, seed, report).to_json())
        }
    }
}
