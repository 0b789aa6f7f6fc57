use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::SpectraError;
use crate::lattice::{FieldMask, HoledLattice};
use crate::pauli::{Pauli, PauliMasks, PauliString, StabilizerGroup};

pub const DEFAULT_SITE_CAP: usize = 24;

/// Anything that can be applied to a state vector.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    /// `out = H v`.
    fn apply(&self, v: &[Complex64], out: &mut [Complex64]);
    /// An upper bound on the operator norm.
    fn norm_bound(&self) -> f64;
}

#[derive(Debug, Clone)]
pub struct Term {
    pub coefficient: f64,
    pub op: PauliString,
}

/// `-g Σ stabilizers + Σ_i (hx σ^x + hy σ^y + hz σ^z)_i` as a list of Pauli terms.
#[derive(Debug)]
pub struct SpinHamiltonian {
    n_sites: usize,
    g: f64,
    n_stabilizers: usize,
    terms: Vec<Term>,
    compiled: OnceLock<Compiled>,
}

#[derive(Debug)]
struct Compiled {
    diagonal: Vec<f64>,
    /// Off-diagonal terms grouped by flip mask.
    flips: Vec<(u64, Vec<(PauliMasks, f64)>)>,
}

impl SpinHamiltonian {
    pub fn from_terms(n_sites: usize, g: f64, terms: Vec<Term>) -> Result<Self, SpectraError> {
        Self::with_cap(n_sites, g, terms, 0, DEFAULT_SITE_CAP)
    }

    fn with_cap(
        n_sites: usize,
        g: f64,
        terms: Vec<Term>,
        n_stabilizers: usize,
        cap: usize,
    ) -> Result<Self, SpectraError> {
        if n_sites > cap {
            return Err(SpectraError::TooManySites { n: n_sites, cap });
        }
        if let Some(t) = terms.iter().find(|t| !t.op.is_hermitian() || t.op.n_sites() != n_sites) {
            return Err(SpectraError::NonHermitianTerm(t.op.to_string()));
        }
        Ok(SpinHamiltonian {
            n_sites,
            g,
            n_stabilizers,
            terms,
            compiled: OnceLock::new(),
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn n_stabilizers(&self) -> usize {
        self.n_stabilizers
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn compiled(&self) -> &Compiled {
        self.compiled.get_or_init(|| {
            let dim = 1usize << self.n_sites;
            let mut diag_terms = Vec::new();
            let mut flips: BTreeMap<u64, Vec<(PauliMasks, f64)>> = BTreeMap::new();
            for t in &self.terms {
                let m = t.op.masks().expect("site cap is below 64");
                if m.x == 0 {
                    diag_terms.push((m, t.coefficient));
                } else {
                    flips.entry(m.x).or_default().push((m, t.coefficient));
                }
            }
            let diagonal = (0..dim)
                .into_par_iter()
                .map(|b| {
                    diag_terms
                        .iter()
                        .map(|(m, c)| c * m.act(b as u64).1.re)
                        .sum()
                })
                .collect();
            Compiled {
                diagonal,
                flips: flips.into_iter().collect(),
            }
        })
    }
}

const CHUNK: usize = 1 << 12;

impl LinearOperator for SpinHamiltonian {
    fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        let c = self.compiled();
        out.par_chunks_mut(CHUNK)
            .enumerate()
            .for_each(|(chunk, out)| {
                let base = chunk * CHUNK;
                for (i, o) in out.iter_mut().enumerate() {
                    let b = base + i;
                    let mut acc = v[b] * c.diagonal[b];
                    for (x, group) in &c.flips {
                        let src = b ^ *x as usize;
                        // P|src> = phase |b>
                        let amp: Complex64 = group
                            .iter()
                            .map(|(m, coef)| m.act(src as u64).1 * *coef)
                            .sum();
                        acc += amp * v[src];
                    }
                    *o = acc;
                }
            });
    }

    fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }
}

/// Stabilizer part plus the local fields of `mask`, in deterministic order.
pub fn assemble(
    lat: &HoledLattice,
    g: f64,
    mask: &FieldMask,
) -> Result<SpinHamiltonian, SpectraError> {
    assemble_with_cap(lat, g, mask, DEFAULT_SITE_CAP)
}

pub fn assemble_with_cap(
    lat: &HoledLattice,
    g: f64,
    mask: &FieldMask,
    cap: usize,
) -> Result<SpinHamiltonian, SpectraError> {
    let n = lat.n_active();
    if n > cap {
        return Err(SpectraError::TooManySites { n, cap });
    }
    if mask.len() != n {
        return Err(SpectraError::MaskMismatch {
            mask: mask.len(),
            sites: n,
        });
    }
    let group = StabilizerGroup::from_lattice(lat)?;
    let mut terms: Vec<Term> = group
        .generators()
        .iter()
        .map(|op| Term {
            coefficient: -g,
            op: op.clone(),
        })
        .collect();
    let n_stabilizers = terms.len();
    for (s, h) in mask.iter().enumerate() {
        for (value, p) in h.into_iter().zip([Pauli::X, Pauli::Y, Pauli::Z]) {
            if !value.is_finite() {
                return Err(SpectraError::NonFiniteField { site: s });
            }
            if value != 0.0 {
                terms.push(Term {
                    coefficient: value,
                    op: PauliString::single(n, s, p)?,
                });
            }
        }
    }
    SpinHamiltonian::with_cap(n, g, terms, n_stabilizers, cap)
}

/// `c · I` on `2^n_sites` states; handy for checking the solver.
#[derive(Debug, Clone, Copy)]
pub struct ScaledIdentity {
    pub n_sites: usize,
    pub scale: f64,
}

impl LinearOperator for ScaledIdentity {
    fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().zip(v).for_each(|(o, x)| *o = x * self.scale);
    }

    fn norm_bound(&self) -> f64 {
        self.scale.abs()
    }
}
