//! Exact block reduction by stabilizers that commute with the whole
//! Hamiltonian.
//!
//! When the field has a single component (σ^x or σ^z) every stabilizer made
//! of the same Pauli commutes with `H`. In the basis where those stabilizers
//! are diagonal (a global Hadamard swaps X and Z if needed) the block with all
//! of them equal to +1 is spanned by computational basis states. The ground
//! multiplet lives in that block, which is typically `2^{N/2}` times smaller.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::eigen::{lowest_eigs, EigenOptions, Spectrum};
use super::hamiltonian::{LinearOperator, SpinHamiltonian};
use super::SpectraError;
use crate::pauli::{Pauli, PauliError, PauliMasks, PauliString, Phase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    Computational,
    /// Every site conjugated by a Hadamard gate.
    Hadamard,
}

impl Frame {
    /// `U P U†` for the frame's basis change.
    pub fn conjugate(self, p: &PauliString) -> PauliString {
        match self {
            Frame::Computational => p.clone(),
            Frame::Hadamard => {
                let mut n_y = 0;
                let ops = (0..p.n_sites()).filter_map(|s| match p.get(s) {
                    Pauli::I => None,
                    Pauli::X => Some((s, Pauli::Z)),
                    Pauli::Z => Some((s, Pauli::X)),
                    Pauli::Y => {
                        n_y += 1;
                        Some((s, Pauli::Y))
                    }
                });
                let ops: Vec<_> = ops.collect();
                let phase = Phase::from_power(p.phase().power() as u32 + 2 * n_y);
                PauliString::from_ops(p.n_sites(), ops)
                    .expect("sites come from the same string")
                    .with_phase(phase)
            }
        }
    }
}

#[derive(Debug)]
pub struct SectorHamiltonian {
    frame: Frame,
    n_sites: usize,
    constraints: usize,
    /// Sorted computational states spanning the block.
    states: Vec<u64>,
    diagonal: Vec<f64>,
    flips: Vec<(u64, Vec<(PauliMasks, f64)>)>,
    norm_bound: f64,
}

impl SectorHamiltonian {
    /// The all-+1 block of the stabilizers that commute with every term, or
    /// `None` when no stabilizer does.
    pub fn reduce(h: &SpinHamiltonian) -> Option<Self> {
        let terms = h.terms();
        let stabilizers = &terms[..h.n_stabilizers()];
        let commuting: Vec<&PauliString> = stabilizers
            .iter()
            .map(|t| &t.op)
            .filter(|s| terms.iter().all(|t| s.commutes(&t.op).unwrap_or(false)))
            .collect();
        let diagonal_in = |frame: Frame| -> Vec<PauliMasks> {
            commuting
                .iter()
                .map(|s| frame.conjugate(s).masks().expect("site cap is below 64"))
                .filter(|m| m.x == 0)
                .collect()
        };
        let (frame, constraints) = [Frame::Computational, Frame::Hadamard]
            .into_iter()
            .map(|f| (f, diagonal_in(f)))
            .max_by_key(|(f, c)| (c.len(), *f == Frame::Computational))?;
        if constraints.is_empty() {
            return None;
        }

        let n = h.n_sites();
        let states: Vec<u64> = (0..1u64 << n)
            .into_par_iter()
            .filter(|&b| constraints.iter().all(|m| m.act(b).1.re > 0.0))
            .collect();

        let mut diag_terms = Vec::new();
        let mut flips: std::collections::BTreeMap<u64, Vec<(PauliMasks, f64)>> = Default::default();
        for t in terms {
            let m = frame.conjugate(&t.op).masks().expect("site cap is below 64");
            if m.x == 0 {
                diag_terms.push((m, t.coefficient));
            } else {
                flips.entry(m.x).or_default().push((m, t.coefficient));
            }
        }
        let diagonal = states
            .par_iter()
            .map(|&b| diag_terms.iter().map(|(m, c)| c * m.act(b).1.re).sum())
            .collect();
        Some(SectorHamiltonian {
            frame,
            n_sites: n,
            constraints: constraints.len(),
            states,
            diagonal,
            flips: flips.into_iter().collect(),
            norm_bound: h.norm_bound(),
        })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Number of stabilizers fixed to +1.
    pub fn constraints(&self) -> usize {
        self.constraints
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    fn index(&self, b: u64) -> Option<usize> {
        self.states.binary_search(&b).ok()
    }

    /// `⟨v_a| L |v_b⟩` for block eigenvectors; `L` must commute with the
    /// fixed stabilizers.
    pub fn logical_expectation(
        &self,
        spectrum: &Spectrum,
        logical: &PauliString,
        dim: usize,
    ) -> Result<DMatrix<Complex64>, SpectraError> {
        if spectrum.eigenvectors.len() < dim {
            return Err(SpectraError::InsufficientPairs {
                need: dim,
                have: spectrum.eigenvectors.len(),
            });
        }
        if logical.n_sites() != self.n_sites {
            return Err(PauliError::LengthMismatch {
                left: logical.n_sites(),
                right: self.n_sites,
            }
            .into());
        }
        let m = self
            .frame
            .conjugate(logical)
            .masks()
            .expect("site cap is below 64");
        let images: Vec<(usize, Complex64)> = self
            .states
            .iter()
            .map(|&b| {
                let (t, c) = m.act(b);
                self.index(t)
                    .map(|j| (j, c))
                    .ok_or_else(|| SpectraError::NonHermitianTerm(format!("{logical} leaves the sector")))
            })
            .collect::<Result<_, _>>()?;
        let vecs = &spectrum.eigenvectors;
        Ok(DMatrix::from_fn(dim, dim, |a, b| {
            images
                .iter()
                .enumerate()
                .map(|(i, &(j, c))| vecs[a][j].conj() * c * vecs[b][i])
                .sum()
        }))
    }
}

const CHUNK: usize = 1 << 10;

impl LinearOperator for SectorHamiltonian {
    fn dim(&self) -> usize {
        self.states.len()
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.par_chunks_mut(CHUNK).enumerate().for_each(|(chunk, out)| {
            let base = chunk * CHUNK;
            for (i, o) in out.iter_mut().enumerate() {
                let idx = base + i;
                let b = self.states[idx];
                let mut acc = v[idx] * self.diagonal[idx];
                for (x, group) in &self.flips {
                    let src = b ^ x;
                    let Some(j) = self.index(src) else { continue };
                    let amp: Complex64 = group.iter().map(|(m, c)| m.act(src).1 * *c).sum();
                    acc += amp * v[j];
                }
                *o = acc;
            }
        });
    }

    fn norm_bound(&self) -> f64 {
        self.norm_bound
    }
}

/// Low-lying spectrum, block-reduced whenever possible.
#[derive(Debug)]
pub struct GroundSpace {
    pub spectrum: Spectrum,
    pub sector: Option<SectorHamiltonian>,
}

impl GroundSpace {
    pub fn solve(
        h: &SpinHamiltonian,
        k: usize,
        opts: &EigenOptions,
        reduce: bool,
    ) -> Result<Self, SpectraError> {
        match reduce.then(|| SectorHamiltonian::reduce(h)).flatten() {
            Some(sector) => {
                let spectrum = lowest_eigs(&sector, k.min(sector.dim()), opts)?;
                Ok(GroundSpace {
                    spectrum,
                    sector: Some(sector),
                })
            }
            None => Ok(GroundSpace {
                spectrum: lowest_eigs(h, k, opts)?,
                sector: None,
            }),
        }
    }

    pub fn logical_expectation(
        &self,
        logical: &PauliString,
        dim: usize,
    ) -> Result<DMatrix<Complex64>, SpectraError> {
        match &self.sector {
            Some(s) => s.logical_expectation(&self.spectrum, logical, dim),
            None => super::logical_expectation(&self.spectrum, logical, dim),
        }
    }
}
