//! Pseudo-spin layer: tunneling-induced fields and couplings, the effective
//! Heisenberg chain, its time evolution, gate pulses and adiabatic
//! initialization.
//!
//! Basis states of an `n`-qubit chain are indexed by the bit string
//! `m_1…m_n` with qubit `l` in bit `l`; `m = 0` is `|↑⟩` (τ^z = +1).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix2, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{FieldMask, HoledLattice, LatticeError, PathMetrics};

pub const MAX_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EffectiveError {
    #[error("{n} pseudo-spins exceed the cap of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("chain needs at least one qubit")]
    Empty,
    #[error("state has length {got}, chain expects {want}")]
    StateLength { got: usize, want: usize },
    #[error("qubit {l} is outside a chain of {n}")]
    UnknownQubit { l: usize, n: usize },
    #[error("{axis}-rotation by {angle} needs a nonzero {axis} field")]
    ZeroDrive { axis: Axis, angle: f64 },
    #[error("norm drifted by {drift:e} during evolution")]
    NormDrift { drift: f64 },
    #[error("invalid schedule: {0}")]
    BadSchedule(String),
    #[error("coefficient {name} is not finite")]
    NonFinite { name: &'static str },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `2 h^L / (−8g)^{L−1}`: splitting from a fermion crossing `L` sites.
pub fn fermion_tunneling(g: f64, hy: f64, len: usize) -> f64 {
    tunneling(g, hy, len, 8.0)
}

/// `2 h^L / (−4g)^{L−1}`: splitting from a vortex circling on `L` sites.
pub fn vortex_tunneling(g: f64, hx: f64, len: usize) -> f64 {
    tunneling(g, hx, len, 4.0)
}

fn tunneling(g: f64, h: f64, len: usize, c: f64) -> f64 {
    let len = len as i32;
    2.0 * h.powi(len) / (-c * g).powi(len - 1)
}

/// On-site fields `(h̃x, h̃z)` of hole `l`, each half the corresponding
/// splitting.
pub fn single_qubit_fields(
    g: f64,
    hx: f64,
    hy: f64,
    metrics: &PathMetrics,
    l: usize,
) -> Result<(f64, f64), EffectiveError> {
    let dx = fermion_tunneling(g, hy, metrics.ly_tilde(l)?);
    let dz = vortex_tunneling(g, hx, metrics.lx_tilde(l)?);
    Ok((dx / 2.0, dz / 2.0))
}

/// Couplings `(Jxx, Jzz)` between holes `l` and `l + 1`.
pub fn pair_couplings(
    g: f64,
    hx: f64,
    hy: f64,
    metrics: &PathMetrics,
    l: usize,
) -> Result<(f64, f64), EffectiveError> {
    let jxx = fermion_tunneling(g, hy, metrics.lyy(l)?) / 2.0;
    let jzz = vortex_tunneling(g, hx, metrics.lxx(l)?) / 2.0;
    Ok((jxx, jzz))
}

/// `Σ_l (Jxx τ^x_l τ^x_{l+1} + Jzz τ^z_l τ^z_{l+1}) + Σ_l (h̃x τ^x_l + h̃z τ^z_l)`
/// on an open chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectiveChain {
    pub jxx: Vec<f64>,
    pub jzz: Vec<f64>,
    pub hx: Vec<f64>,
    pub hz: Vec<f64>,
}

impl EffectiveChain {
    pub fn zeros(n: usize) -> Self {
        let bonds = n.saturating_sub(1);
        EffectiveChain {
            jxx: vec![0.0; bonds],
            jzz: vec![0.0; bonds],
            hx: vec![0.0; n],
            hz: vec![0.0; n],
        }
    }

    pub fn uniform(n: usize, jxx: f64, jzz: f64, hx: f64, hz: f64) -> Self {
        let bonds = n.saturating_sub(1);
        EffectiveChain {
            jxx: vec![jxx; bonds],
            jzz: vec![jzz; bonds],
            hx: vec![hx; n],
            hz: vec![hz; n],
        }
    }

    pub fn n(&self) -> usize {
        self.hx.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn validate(&self) -> Result<(), EffectiveError> {
        let n = self.n();
        if n == 0 {
            return Err(EffectiveError::Empty);
        }
        if n > MAX_QUBITS {
            return Err(EffectiveError::TooManyQubits { n, max: MAX_QUBITS });
        }
        let shapes_ok = self.hz.len() == n && self.jxx.len() == n - 1 && self.jzz.len() == n - 1;
        if !shapes_ok {
            return Err(EffectiveError::BadSchedule(format!(
                "chain of {n} needs {n} fields and {} couplings",
                n - 1
            )));
        }
        let named = [
            ("jxx", &self.jxx),
            ("jzz", &self.jzz),
            ("hx", &self.hx),
            ("hz", &self.hz),
        ];
        for (name, v) in named {
            if v.iter().any(|c| !c.is_finite()) {
                return Err(EffectiveError::NonFinite { name });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        [&self.jxx, &self.jzz, &self.hx, &self.hz]
            .iter()
            .all(|v| v.iter().all(|&c| c == 0.0))
    }

    /// Dense Hamiltonian in the `|m_1…m_n⟩` basis.
    pub fn matrix(&self) -> Result<DMatrix<Complex64>, EffectiveError> {
        self.validate()?;
        let n = self.n();
        let dim = self.dim();
        let spin = |b: usize, l: usize| if b >> l & 1 == 0 { 1.0 } else { -1.0 };
        let mut m = DMatrix::zeros(dim, dim);
        for b in 0..dim {
            let mut diag = 0.0;
            for l in 0..n {
                diag += self.hz[l] * spin(b, l);
                m[(b ^ 1 << l, b)] += Complex64::new(self.hx[l], 0.0);
            }
            for l in 0..n - 1 {
                diag += self.jzz[l] * spin(b, l) * spin(b, l + 1);
                m[(b ^ 3 << l, b)] += Complex64::new(self.jxx[l], 0.0);
            }
            m[(b, b)] += Complex64::new(diag, 0.0);
        }
        Ok(m)
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> Result<Vec<f64>, EffectiveError> {
        let mut e: Vec<f64> = SymmetricEigen::new(self.matrix()?)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        e.sort_by(f64::total_cmp);
        Ok(e)
    }

    pub fn energy(&self, state: &PseudoSpinState) -> Result<f64, EffectiveError> {
        state.check(self.n())?;
        let psi = DVector::from_column_slice(&state.amplitudes);
        let h = self.matrix()?;
        Ok((psi.adjoint() * h * &psi)[(0, 0)].re)
    }
}

/// The chain implied by a field distribution on a holed lattice.
///
/// Each coefficient comes from the shortest tunneling path that stays on
/// sites where the driving component is nonzero; the path's `h^L` is the
/// product of the local fields along it. Components without such a path
/// contribute zero. hy drives τ^x terms and hx drives τ^z terms.
pub fn build_chain(
    lat: &HoledLattice,
    g: f64,
    mask: &FieldMask,
) -> Result<EffectiveChain, EffectiveError> {
    let metrics = lat.path_metrics()?;
    let n = lat.n_holes();
    let hx = mask.component(0);
    let hy = mask.component(1);
    let x_sites: Vec<bool> = hx.iter().map(|&h| h != 0.0).collect();
    let y_sites: Vec<bool> = hy.iter().map(|&h| h != 0.0).collect();
    let product = |field: &[f64], sites: &[usize]| sites.iter().map(|&s| field[s]).product::<f64>();
    let closed = |prod: f64, len: usize, c: f64| {
        let len = len as i32;
        2.0 * prod / (-c * g).powi(len - 1)
    };

    let mut chain = EffectiveChain::zeros(n);
    for l in 0..n {
        if let Ok(path) = metrics.boundary_string_within(l, &y_sites) {
            chain.hx[l] = closed(product(&hy, &path.sites), path.length(), 8.0) / 2.0;
        }
        if let Ok(lp) = metrics.loop_around_within(&[l], &x_sites) {
            chain.hz[l] = closed(product(&hx, &lp.sites), lp.length, 4.0) / 2.0;
        }
    }
    for l in 0..n.saturating_sub(1) {
        if let Ok(path) = metrics.string_between_within(l, l + 1, &y_sites) {
            chain.jxx[l] = closed(product(&hy, &path.sites), path.length(), 8.0) / 2.0;
        }
        if let Ok(lp) = metrics.loop_around_within(&[l, l + 1], &x_sites) {
            chain.jzz[l] = closed(product(&hx, &lp.sites), lp.length, 4.0) / 2.0;
        }
    }
    Ok(chain)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSpinState {
    pub amplitudes: Vec<Complex64>,
}

impl PseudoSpinState {
    /// `|↑…↑⟩`.
    pub fn all_up(n: usize) -> Self {
        Self::basis(n, 0)
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[index] = ONE;
        PseudoSpinState { amplitudes }
    }

    /// Normalizes `amplitudes`; its length must be a power of two.
    pub fn new(mut amplitudes: Vec<Complex64>) -> Result<Self, EffectiveError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(EffectiveError::StateLength {
                got: len,
                want: len.next_power_of_two().max(2),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(EffectiveError::NonFinite { name: "state norm" });
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(PseudoSpinState { amplitudes })
    }

    /// `α|↑⟩ + β e^{iφ}|↓⟩`.
    pub fn single(alpha: f64, beta: f64, phi: f64) -> Result<Self, EffectiveError> {
        Self::new(vec![
            Complex64::new(alpha, 0.0),
            Complex64::from_polar(beta, phi),
        ])
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn overlap(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.overlap(other).norm_sqr()
    }

    fn check(&self, n: usize) -> Result<(), EffectiveError> {
        if self.amplitudes.len() == 1 << n {
            Ok(())
        } else {
            Err(EffectiveError::StateLength {
                got: self.amplitudes.len(),
                want: 1 << n,
            })
        }
    }

    /// Applies a 2×2 unitary to qubit `l`.
    pub fn apply_single(&mut self, l: usize, u: &Matrix2<Complex64>) -> Result<(), EffectiveError> {
        let n = self.n();
        if l >= n {
            return Err(EffectiveError::UnknownQubit { l, n });
        }
        let bit = 1 << l;
        for b in (0..self.amplitudes.len()).filter(|b| b & bit == 0) {
            let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
            self.amplitudes[b] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            self.amplitudes[b | bit] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
        Ok(())
    }
}

/// `exp(−i H t)` for Hermitian `H`.
pub fn propagator(h: &DMatrix<Complex64>, t: f64) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t)));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// `exp(−i H_eff t)|ψ⟩`.
pub fn evolve(
    chain: &EffectiveChain,
    state: &PseudoSpinState,
    duration: f64,
) -> Result<PseudoSpinState, EffectiveError> {
    state.check(chain.n())?;
    if duration == 0.0 {
        return Ok(state.clone());
    }
    let u = propagator(&chain.matrix()?, duration);
    let psi = u * DVector::from_column_slice(&state.amplitudes);
    Ok(PseudoSpinState {
        amplitudes: psi.iter().copied().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Z,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Z => "z",
        })
    }
}

/// `exp(−i angle τ^axis)`.
pub fn axis_rotation(axis: Axis, angle: f64) -> Matrix2<Complex64> {
    let (c, s) = (Complex64::new(angle.cos(), 0.0), Complex64::new(0.0, -angle.sin()));
    match axis {
        Axis::Z => Matrix2::new(c + s, ZERO, ZERO, c - s),
        Axis::X => Matrix2::new(c, s, s, c),
    }
}

fn pauli(axis: Axis) -> DMatrix<Complex64> {
    match axis {
        Axis::Z => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        Axis::X => DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
    }
}

/// A constant field `field` along `axis` held for `duration`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pulse {
    pub axis: Axis,
    pub field: f64,
    pub duration: f64,
}

impl Pulse {
    pub fn angle(&self) -> f64 {
        self.field * self.duration
    }

    /// Propagator of the pulse Hamiltonian `field · τ^axis`.
    pub fn unitary(&self) -> Matrix2<Complex64> {
        let h = pauli(self.axis) * Complex64::new(self.field, 0.0);
        let u = propagator(&h, self.duration);
        Matrix2::from_fn(|r, c| u[(r, c)])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateSchedule {
    pub target: usize,
    /// Applied in order: the first pulse acts first.
    pub pulses: Vec<Pulse>,
}

impl GateSchedule {
    pub fn total_time(&self) -> f64 {
        self.pulses.iter().map(|p| p.duration).sum()
    }

    /// Time-ordered product of the pulse propagators.
    pub fn unitary(&self) -> Matrix2<Complex64> {
        self.pulses
            .iter()
            .fold(Matrix2::identity(), |acc, p| p.unitary() * acc)
    }

    pub fn apply(&self, state: &mut PseudoSpinState) -> Result<(), EffectiveError> {
        state.apply_single(self.target, &self.unitary())
    }
}

/// `e^{−iγτ^z} e^{−iφτ^x} e^{−iθτ^z}`.
pub fn euler_unitary(theta: f64, phi: f64, gamma: f64) -> Matrix2<Complex64> {
    axis_rotation(Axis::Z, gamma) * axis_rotation(Axis::X, phi) * axis_rotation(Axis::Z, theta)
}

/// Duration that realizes `angle` with `field`, shifting the angle by a
/// multiple of 2π (which leaves the rotation unchanged) so the duration is
/// nonnegative.
fn pulse_for(axis: Axis, angle: f64, field: f64) -> Result<Pulse, EffectiveError> {
    if angle == 0.0 {
        return Ok(Pulse {
            axis,
            field,
            duration: 0.0,
        });
    }
    if field == 0.0 || !field.is_finite() {
        return Err(EffectiveError::ZeroDrive { axis, angle });
    }
    let mut a = angle.rem_euclid(2.0 * PI);
    if field < 0.0 && a != 0.0 {
        a -= 2.0 * PI;
    }
    Ok(Pulse {
        axis,
        field,
        duration: a / field,
    })
}

/// Three-pulse schedule for the Euler rotation on qubit `l` and its closed
/// form.
pub fn rotation_gate(
    l: usize,
    theta: f64,
    phi: f64,
    gamma: f64,
    hx: f64,
    hz: f64,
) -> Result<(GateSchedule, Matrix2<Complex64>), EffectiveError> {
    let pulses = vec![
        pulse_for(Axis::Z, theta, hz)?,
        pulse_for(Axis::X, phi, hx)?,
        pulse_for(Axis::Z, gamma, hz)?,
    ];
    Ok((GateSchedule { target: l, pulses }, euler_unitary(theta, phi, gamma)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdiabaticSchedule {
    pub h0: f64,
    pub t0: f64,
    pub total: f64,
    pub steps: usize,
}

impl AdiabaticSchedule {
    /// `h0 · exp(−t0/|t|)`, vanishing as `t → 0⁻`.
    pub fn field(&self, t: f64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            self.h0 * (-self.t0 / t.abs()).exp()
        }
    }

    fn validate(&self) -> Result<(), EffectiveError> {
        let ok = self.total > 0.0
            && self.t0 >= 0.0
            && self.steps > 0
            && self.h0.is_finite()
            && self.total.is_finite();
        if ok {
            Ok(())
        } else {
            Err(EffectiveError::BadSchedule(format!("{self:?}")))
        }
    }
}

/// How the decaying lattice field enters the chain: each qubit's τ^x field is
/// the tunneling splitting of a fermion path of `path_length` sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Drive {
    pub g: f64,
    pub path_length: usize,
}

impl Drive {
    pub fn pseudo_field(&self, h: f64) -> f64 {
        fermion_tunneling(self.g, h, self.path_length) / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub t: f64,
    pub h: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdiabaticRun {
    pub state: PseudoSpinState,
    pub fidelity: f64,
    pub trace: Vec<TracePoint>,
}

/// Lowest eigenvector of a chain.
pub fn ground_state(chain: &EffectiveChain) -> Result<PseudoSpinState, EffectiveError> {
    let eig = SymmetricEigen::new(chain.matrix()?);
    let i = eig.eigenvalues.imin();
    PseudoSpinState::new(eig.eigenvectors.column(i).iter().copied().collect())
}

/// Sweeps the τ^x fields of `template` from `h(−T)` to zero with
/// piecewise-constant exact propagators, keeping its τ^z terms static.
/// Without `start` the run begins in the ground state of `H(−T)`.
pub fn adiabatic_init(
    template: &EffectiveChain,
    drive: &Drive,
    schedule: &AdiabaticSchedule,
    start: Option<&PseudoSpinState>,
) -> Result<AdiabaticRun, EffectiveError> {
    schedule.validate()?;
    template.validate()?;
    let n = template.n();
    let at = |t: f64| {
        let hx = drive.pseudo_field(schedule.field(t));
        EffectiveChain {
            hx: vec![hx; n],
            ..template.clone()
        }
    };
    let mut state = match start {
        Some(s) => {
            s.check(n)?;
            s.clone()
        }
        None => ground_state(&at(-schedule.total))?,
    };
    let target = PseudoSpinState::all_up(n);
    let dt = schedule.total / schedule.steps as f64;
    let mut trace = Vec::with_capacity(schedule.steps + 1);
    trace.push(TracePoint {
        t: -schedule.total,
        h: schedule.field(-schedule.total),
        fidelity: target.fidelity(&state),
    });
    for k in 0..schedule.steps {
        let mid = -schedule.total + (k as f64 + 0.5) * dt;
        state = evolve(&at(mid), &state, dt)?;
        let t = -schedule.total + (k + 1) as f64 * dt;
        trace.push(TracePoint {
            t,
            h: schedule.field(t),
            fidelity: target.fidelity(&state),
        });
    }
    let drift = (state.norm() - 1.0).abs();
    if drift > 1e-8 {
        return Err(EffectiveError::NormDrift { drift });
    }
    Ok(AdiabaticRun {
        fidelity: target.fidelity(&state),
        state,
        trace,
    })
}

/// Doubles the step count until the final fidelity moves by less than
/// `tol`, giving up after `max_doublings`.
pub fn adiabatic_init_converged(
    template: &EffectiveChain,
    drive: &Drive,
    schedule: &AdiabaticSchedule,
    start: Option<&PseudoSpinState>,
    tol: f64,
    max_doublings: usize,
) -> Result<(AdiabaticRun, AdiabaticSchedule), EffectiveError> {
    let mut sched = *schedule;
    let mut run = adiabatic_init(template, drive, &sched, start)?;
    for _ in 0..max_doublings {
        let finer = AdiabaticSchedule {
            steps: sched.steps * 2,
            ..sched
        };
        let next = adiabatic_init(template, drive, &finer, start)?;
        let change = (next.fidelity - run.fidelity).abs();
        run = next;
        sched = finer;
        if change < tol {
            return Ok((run, sched));
        }
    }
    Err(EffectiveError::BadSchedule(format!(
        "fidelity not converged after {} steps",
        sched.steps
    )))
}
