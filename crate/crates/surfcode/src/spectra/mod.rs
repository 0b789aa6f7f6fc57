//! Exact spin-level physics: matrix-free Hamiltonians, lowest eigenpairs,
//! ground-space splittings and quasiparticle bands.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::lattice::LatticeError;
use crate::pauli::{PauliError, PauliString};

pub mod dispersion;
pub mod eigen;
pub mod hamiltonian;
pub mod sector;

pub use dispersion::{
    fermion_dispersion, fermion_gap, grid_minimum, vortex_dispersion, vortex_gap,
    DispersionParams, FermionBranch,
};
pub use eigen::{lowest_eigs, EigenOptions, Spectrum};
pub use hamiltonian::{
    assemble, assemble_with_cap, LinearOperator, ScaledIdentity, SpinHamiltonian, Term,
    DEFAULT_SITE_CAP,
};
pub use sector::{Frame, GroundSpace, SectorHamiltonian};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("{n} spins exceed the dimension cap of {cap}")]
    TooManySites { n: usize, cap: usize },
    #[error("field mask covers {mask} sites, lattice has {sites}")]
    MaskMismatch { mask: usize, sites: usize },
    #[error("field on site {site} is not finite")]
    NonFiniteField { site: usize },
    #[error("term {0} is not Hermitian or has the wrong length")]
    NonHermitianTerm(String),
    #[error("cannot compute {k} eigenpairs in dimension {dim}")]
    BadCount { k: usize, dim: usize },
    #[error("eigensolver did not converge; residuals {residuals:?}")]
    NotConverged { residuals: Vec<f64> },
    #[error("need {need} eigenpairs, have {have}")]
    InsufficientPairs { need: usize, have: usize },
    #[error("{what} gap closes at field/g = {ratio}")]
    GapClosed { what: &'static str, ratio: f64 },
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Splittings {
    /// `E_j - E_0` for the lowest `2^n` levels.
    pub ground_levels: Vec<f64>,
    /// `E_i - E_j` for `i > j` within the ground multiplet.
    pub pairwise: Vec<f64>,
    /// Width of the ground multiplet, `E_{2^n - 1} - E_0`.
    pub width: f64,
    /// `E_{2^n} - E_{2^n - 1}` when that level was computed.
    pub excited_gap: Option<f64>,
}

pub fn ground_splitting(spectrum: &Spectrum, n_holes: usize) -> Result<Splittings, SpectraError> {
    let d = 1usize << n_holes;
    let e = &spectrum.eigenvalues;
    if e.len() < d {
        return Err(SpectraError::InsufficientPairs {
            need: d,
            have: e.len(),
        });
    }
    let pairwise = (0..d)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .map(|(i, j)| e[i] - e[j])
        .collect();
    Ok(Splittings {
        ground_levels: e[..d].iter().map(|x| x - e[0]).collect(),
        pairwise,
        width: e[d - 1] - e[0],
        excited_gap: e.get(d).map(|x| x - e[d - 1]),
    })
}

/// `<v_a| L |v_b>` on the lowest `dim` eigenvectors.
pub fn logical_expectation(
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
    let images: Vec<Vec<Complex64>> = spectrum.eigenvectors[..dim]
        .iter()
        .map(|v| logical.apply(v))
        .collect();
    Ok(DMatrix::from_fn(dim, dim, |a, b| {
        spectrum.eigenvectors[a]
            .iter()
            .zip(&images[b])
            .map(|(x, y)| x.conj() * y)
            .sum()
    }))
}
