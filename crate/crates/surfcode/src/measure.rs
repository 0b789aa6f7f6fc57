//! Interference readout of pseudo-spins and state tomography.
//!
//! A vortex circling a set of holes picks up the product of their τ^z
//! eigenvalues, a fermion picks up the product of τ^x. Both readouts are
//! projective measurements of Pauli products on the pseudo-spin state. The
//! τ^y quadrature is read as τ^x after a quarter turn about z.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::effective::{rotation_gate, EffectiveError, PseudoSpinState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("readout needs at least one hole")]
    EmptySubset,
    #[error("qubit {l} is outside a {n}-qubit state")]
    UnknownQubit { l: usize, n: usize },
    #[error("reconstruction supports 1 or 2 qubits, got {0}")]
    Unsupported(usize),
    #[error("expected {want} readouts, got {got}")]
    ReadoutCount { want: usize, got: usize },
    #[error("readouts are inconsistent with any state (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Effective(#[from] EffectiveError),
}

/// Sign of the loop's flux phase: +1 when the enclosed hole carries no flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flux {
    Even,
    Odd,
}

impl Flux {
    pub fn sign(self) -> f64 {
        match self {
            Flux::Even => 1.0,
            Flux::Odd => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferencePaths {
    pub psi1: Complex64,
    pub psi2: Complex64,
    pub flux: Flux,
}

/// `|ψ₁|² + |ψ₂|² + 2ε|ψ₁ψ₂|`.
pub fn interference_amplitude(p: &InterferencePaths) -> f64 {
    p.psi1.norm_sqr() + p.psi2.norm_sqr() + 2.0 * p.flux.sign() * (p.psi1 * p.psi2).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Vortex interferometry.
    Z,
    /// Fermion interferometry.
    X,
    /// Fermion interferometry after a quarter turn about z.
    Y,
}

/// A product of single-qubit Paulis, each read out by interference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observable {
    pub factors: Vec<(usize, Basis)>,
}

impl Observable {
    pub fn uniform(subset: &[usize], basis: Basis) -> Self {
        Observable {
            factors: subset.iter().map(|&l| (l, basis)).collect(),
        }
    }

    pub fn label(&self) -> String {
        self.factors
            .iter()
            .map(|(l, b)| format!("{b:?}{l}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_qubits<'a>(
    state: &PseudoSpinState,
    qubits: impl IntoIterator<Item = &'a usize>,
) -> Result<(), MeasureError> {
    let n = state.n();
    match qubits.into_iter().find(|&&l| l >= n) {
        Some(&l) => Err(MeasureError::UnknownQubit { l, n }),
        None => Ok(()),
    }
}

/// `⟨ψ| ∏_{A} τ^z ∏_{B} τ^x |ψ⟩`.
fn zx_expectation(state: &PseudoSpinState, z_mask: usize, x_mask: usize) -> f64 {
    let a = &state.amplitudes;
    a.iter()
        .enumerate()
        .map(|(b, amp)| {
            let sign = if (b & z_mask).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            (a[b ^ x_mask].conj() * amp * sign).re
        })
        .sum()
}

/// Probability that the product observable reads +1.
pub fn readout(state: &PseudoSpinState, obs: &Observable) -> Result<f64, MeasureError> {
    if obs.factors.is_empty() {
        return Err(MeasureError::EmptySubset);
    }
    check_qubits(state, obs.factors.iter().map(|(l, _)| l))?;
    let mut rotated = state.clone();
    let (mut z_mask, mut x_mask) = (0usize, 0usize);
    for &(l, basis) in &obs.factors {
        match basis {
            Basis::Z => z_mask |= 1 << l,
            Basis::X => x_mask |= 1 << l,
            Basis::Y => {
                // a -π/4 turn about z maps τ^y onto τ^x
                let (gate, _) = rotation_gate(l, -PI / 4.0, 0.0, 0.0, 1.0, 1.0)?;
                gate.apply(&mut rotated)?;
                x_mask |= 1 << l;
            }
        }
    }
    let p = 0.5 * (1.0 + zx_expectation(&rotated, z_mask, x_mask));
    Ok(p.clamp(0.0, 1.0))
}

/// Probability that `∏_{subset} τ^z = +1`.
pub fn vortex_readout(state: &PseudoSpinState, subset: &[usize]) -> Result<f64, MeasureError> {
    readout(state, &Observable::uniform(subset, Basis::Z))
}

/// Probability that `∏_{subset} τ^x = +1`.
pub fn fermion_readout(state: &PseudoSpinState, subset: &[usize]) -> Result<f64, MeasureError> {
    readout(state, &Observable::uniform(subset, Basis::X))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementPlan {
    pub n: usize,
    pub parameter_count: usize,
    pub observables: Vec<Observable>,
    pub warning: Option<String>,
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1usize..1 << n).map(move |m| (0..n).filter(|l| m >> l & 1 == 1).collect())
}

/// Every τ^z product, every τ^x product and the quadrature variants where
/// some τ^x factors are replaced by τ^y.
pub fn tomography_plan(n: usize) -> Result<MeasurementPlan, MeasureError> {
    if n == 0 {
        return Err(MeasureError::EmptySubset);
    }
    if n > crate::effective::MAX_QUBITS {
        return Err(EffectiveError::TooManyQubits {
            n,
            max: crate::effective::MAX_QUBITS,
        }
        .into());
    }
    let mut observables: Vec<Observable> = subsets(n)
        .map(|s| Observable::uniform(&s, Basis::Z))
        .collect();
    observables.extend(subsets(n).map(|s| Observable::uniform(&s, Basis::X)));
    for s in subsets(n) {
        for ys in 1usize..1 << s.len() {
            observables.push(Observable {
                factors: s
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| (l, if ys >> i & 1 == 1 { Basis::Y } else { Basis::X }))
                    .collect(),
            });
        }
    }
    let warning = (n > 3).then(|| {
        format!("interference readouts cannot fix all {} parameters for n > 3", 2 * ((1 << n) - 1))
    });
    Ok(MeasurementPlan {
        n,
        parameter_count: 2 * ((1 << n) - 1),
        observables,
        warning,
    })
}

/// Exact readout probabilities for every observable of the plan.
pub fn forward_readouts(
    plan: &MeasurementPlan,
    state: &PseudoSpinState,
) -> Result<Vec<f64>, MeasureError> {
    plan.observables.iter().map(|o| readout(state, o)).collect()
}

/// Turns exact probabilities into estimates from `shots` repetitions each;
/// `shots = 0` returns them unchanged.
pub fn sample_readouts(probabilities: &[f64], shots: usize, seed: u64) -> Result<Vec<f64>, MeasureError> {
    if shots == 0 {
        return Ok(probabilities.to_vec());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    probabilities
        .iter()
        .map(|&p| {
            if !(0.0..=1.0).contains(&p) {
                return Err(MeasureError::BadProbability(p));
            }
            let hits = (0..shots).filter(|_| rng.random_bool(p)).count();
            Ok(hits as f64 / shots as f64)
        })
        .collect()
}

/// `Σ α_b e^{iφ_b} |b⟩` with `φ_0 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntangledState {
    pub n: usize,
    pub alpha: Vec<f64>,
    pub phi: Vec<f64>,
}

const TINY: f64 = 1e-12;

fn wrap(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

impl EntangledState {
    /// Parameters of `state` in the gauge where the first nonzero amplitude
    /// (normally `|↑…↑⟩`) is real.
    pub fn from_state(state: &PseudoSpinState) -> Self {
        let a = &state.amplitudes;
        let reference = a.iter().find(|c| c.norm() > TINY).map_or(0.0, |c| c.arg());
        EntangledState {
            n: state.n(),
            alpha: a.iter().map(|c| c.norm()).collect(),
            phi: a
                .iter()
                .map(|c| if c.norm() > TINY { wrap(c.arg() - reference) } else { 0.0 })
                .collect(),
        }
    }

    pub fn to_state(&self) -> Result<PseudoSpinState, MeasureError> {
        let amps = self
            .alpha
            .iter()
            .zip(&self.phi)
            .map(|(&r, &p)| Complex64::from_polar(r, p))
            .collect();
        Ok(PseudoSpinState::new(amps)?)
    }

    pub fn parameter_count(&self) -> usize {
        2 * ((1 << self.n) - 1)
    }

    /// Largest difference in any amplitude or in the phase of any
    /// amplitude above `1e-6`.
    pub fn max_error(&self, other: &Self) -> f64 {
        let amp = self
            .alpha
            .iter()
            .zip(&other.alpha)
            .map(|(a, b)| (a - b).abs());
        let phase = self
            .alpha
            .iter()
            .zip(&other.alpha)
            .zip(self.phi.iter().zip(&other.phi))
            .filter(|((a, b), _)| a.min(**b) > 1e-6)
            .map(|(_, (p, q))| wrap(p - q).abs());
        amp.chain(phase).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub state: EntangledState,
    /// Largest mismatch between the given probabilities and those of the
    /// reconstructed state.
    pub residual: f64,
}

fn expectation_of(plan: &MeasurementPlan, probs: &[f64], factors: &[(usize, Basis)]) -> f64 {
    let i = plan
        .observables
        .iter()
        .position(|o| o.factors == factors)
        .expect("plan lists every product");
    2.0 * probs[i] - 1.0
}

/// Recovers the state from exact readouts of [`tomography_plan`].
pub fn reconstruct(
    plan: &MeasurementPlan,
    probabilities: &[f64],
    tol: f64,
) -> Result<Reconstruction, MeasureError> {
    if probabilities.len() != plan.observables.len() {
        return Err(MeasureError::ReadoutCount {
            want: plan.observables.len(),
            got: probabilities.len(),
        });
    }
    if let Some(&p) = probabilities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(MeasureError::BadProbability(p));
    }
    let e = |f: &[(usize, Basis)]| expectation_of(plan, probabilities, f);
    use Basis::{X, Y, Z};
    let amps: Vec<Complex64> = match plan.n {
        1 => {
            let alpha = e(&[(0, Z)]).mul_add(0.5, 0.5).max(0.0).sqrt();
            let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
            // ⟨τ^x⟩ + i⟨τ^y⟩ = 2αβ e^{iφ}
            let phi = e(&[(0, Y)]).atan2(e(&[(0, X)]));
            vec![Complex64::new(alpha, 0.0), Complex64::from_polar(beta, phi)]
        }
        2 => two_qubit_amplitudes(&e),
        n => return Err(MeasureError::Unsupported(n)),
    };
    let state = PseudoSpinState::new(amps)?;
    let predicted = forward_readouts(plan, &state)?;
    let residual = predicted
        .iter()
        .zip(probabilities)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if residual > tol {
        return Err(MeasureError::Inconsistent { residual });
    }
    Ok(Reconstruction {
        state: EntangledState::from_state(&state),
        residual,
    })
}

/// Amplitudes `c_b`, `b = m_1 + 2 m_2`, from two-qubit Pauli expectations.
///
/// Populations come from the τ^z products. The double-flip coherences
/// `c_0 c̄_3` and `c_1 c̄_2` come from the XX/XY/YX/YY products and fix `φ_3`
/// and `φ_1 − φ_2`. The remaining phase `u = e^{iφ_1}` enters the
/// single-flip coherences as `P ū + R u`; it is the least-squares unit
/// solution of those two complex equations.
/// Expectation of a product of single-qubit factors.
type Expect<'a> = &'a dyn Fn(&[(usize, Basis)]) -> f64;

fn two_qubit_amplitudes(e: Expect<'_>) -> Vec<Complex64> {
    use Basis::{X, Y, Z};
    let (z0, z1, zz) = (e(&[(0, Z)]), e(&[(1, Z)]), e(&[(0, Z), (1, Z)]));
    let a: Vec<f64> = (0..4)
        .map(|b| {
            let s0 = if b & 1 == 0 { 1.0 } else { -1.0 };
            let s1 = if b & 2 == 0 { 1.0 } else { -1.0 };
            (0.25 * (1.0 + s0 * z0 + s1 * z1 + s0 * s1 * zz)).max(0.0).sqrt()
        })
        .collect();
    let (xx, yy) = (e(&[(0, X), (1, X)]), e(&[(0, Y), (1, Y)]));
    let (xy, yx) = (e(&[(0, X), (1, Y)]), e(&[(0, Y), (1, X)]));
    // A = c0 c̄3 = a0 a3 e^{-iφ3}, B = c1 c̄2 = a1 a2 e^{i(φ1-φ2)}
    let big_a = Complex64::new((xx - yy) / 4.0, -(xy + yx) / 4.0);
    let big_b = Complex64::new((xx + yy) / 4.0, (yx - xy) / 4.0);
    // S1 = c0 c̄1 + c2 c̄3, S2 = c0 c̄2 + c1 c̄3
    let s1 = Complex64::new(e(&[(0, X)]), -e(&[(0, Y)])) / 2.0;
    let s2 = Complex64::new(e(&[(1, X)]), -e(&[(1, Y)])) / 2.0;

    let unit = |c: Complex64| if c.norm() > TINY { c / c.norm() } else { Complex64::new(1.0, 0.0) };
    let e3 = unit(big_a.conj()); // e^{iφ3}
    let ed = unit(big_b); // e^{i(φ1-φ2)}
    // S1 = a0a1 ū + a2a3 e^{-iδ} ē3 u,  S2 = a0a2 e^{iδ} ū + a1a3 ē3 u
    let eqs = [
        (Complex64::new(a[0] * a[1], 0.0), ed.conj() * e3.conj() * a[2] * a[3], s1),
        (ed * a[0] * a[2], e3.conj() * a[1] * a[3], s2),
    ];
    // unknowns (cos φ1, sin φ1): P(c - is) + R(c + is)
    let mut ata = [[0.0; 2]; 2];
    let mut atb = [0.0; 2];
    for (p, r, s) in eqs {
        let col_c = p + r;
        let col_s = (r - p) * Complex64::i();
        for (row, rhs) in [(col_c.re, col_s.re, s.re), (col_c.im, col_s.im, s.im)]
            .map(|(c, s_, rhs)| ([c, s_], rhs))
        {
            for i in 0..2 {
                for j in 0..2 {
                    ata[i][j] += row[i] * row[j];
                }
                atb[i] += row[i] * rhs;
            }
        }
    }
    let det = ata[0][0] * ata[1][1] - ata[0][1] * ata[1][0];
    let u = if det.abs() > TINY {
        let c = (atb[0] * ata[1][1] - atb[1] * ata[0][1]) / det;
        let s = (ata[0][0] * atb[1] - ata[1][0] * atb[0]) / det;
        unit(Complex64::new(c, s))
    } else {
        Complex64::new(1.0, 0.0)
    };
    let e1 = u;
    let e2 = e1 * ed.conj();
    vec![
        Complex64::new(a[0], 0.0),
        e1 * a[1],
        e2 * a[2],
        e3 * a[3],
    ]
}

/// Random unit state with amplitudes drawn uniformly on the sphere.
pub fn random_state(n: usize, rng: &mut impl Rng) -> Result<PseudoSpinState, MeasureError> {
    let amps = (0..1 << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    Ok(PseudoSpinState::new(amps)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TomographyReport {
    pub plan: MeasurementPlan,
    pub raw_probabilities: Vec<f64>,
    pub reconstructed: Option<EntangledState>,
    pub truth: EntangledState,
    pub residual: Option<f64>,
    pub max_parameter_error: Option<f64>,
}

/// Plan, read out (exactly or with shots) and reconstruct when `n ≤ 2`.
pub fn run_tomography(
    state: &PseudoSpinState,
    shots: usize,
    seed: u64,
    tol: f64,
) -> Result<TomographyReport, MeasureError> {
    let plan = tomography_plan(state.n())?;
    let exact = forward_readouts(&plan, state)?;
    let raw = sample_readouts(&exact, shots, seed)?;
    let truth = EntangledState::from_state(state);
    let rec = if plan.n <= 2 {
        Some(reconstruct(&plan, &raw, tol)?)
    } else {
        None
    };
    Ok(TomographyReport {
        max_parameter_error: rec.as_ref().map(|r| r.state.max_error(&truth)),
        residual: rec.as_ref().map(|r| r.residual),
        reconstructed: rec.map(|r| r.state),
        plan,
        raw_probabilities: raw,
        truth,
    })
}
