//! Exact diagonalization against the closed-form tunneling splittings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::effective::{fermion_tunneling, vortex_tunneling};
use crate::lattice::{field_mask, HoledLattice, LatticeError, Region};
use crate::spectra::{assemble, EigenOptions, GroundSpace, SpectraError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("need at least one field value")]
    NoFields,
}

/// Which single-site field drives the tunneling of hole `l`'s qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    /// σ^z on the hole-to-edge string: moves a charge along the τ^x string.
    Charge,
    /// σ^y on the same string, the fermion driver of the closed form.
    Fermion,
    /// σ^x on the shortest loop around the hole: a vortex circles it.
    Vortex,
}

impl Channel {
    fn region(self, hole: usize) -> Region {
        match self {
            Channel::Charge | Channel::Fermion => Region::Corridor { hole },
            Channel::Vortex => Region::Encircling { holes: vec![hole] },
        }
    }

    fn field(self, h: f64) -> [f64; 3] {
        match self {
            Channel::Charge => [0.0, 0.0, h],
            Channel::Fermion => [0.0, h, 0.0],
            Channel::Vortex => [h, 0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplittingRow {
    pub h: f64,
    pub ed_splitting: f64,
    pub closed_form: f64,
    /// `ed_splitting / closed_form`.
    pub ratio: f64,
    /// `|ratio − 1|`.
    pub deviation: f64,
    pub excited_gap: Option<f64>,
    pub block_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplittingComparison {
    pub channel: Channel,
    pub hole: usize,
    pub path_length: usize,
    pub g: f64,
    pub rows: Vec<SplittingRow>,
    /// Ratio at the weakest field: the constant the closed form misses.
    pub limiting_ratio: f64,
    /// Deviation strictly shrinks as the field decreases.
    pub converging: bool,
}

/// Splits hole `hole`'s doublet with a field on its tunneling path and
/// compares the exact splitting with the closed form at each field value.
pub fn compare_splitting(
    lat: &HoledLattice,
    g: f64,
    hole: usize,
    channel: Channel,
    fields: &[f64],
    opts: &EigenOptions,
) -> Result<SplittingComparison, ExperimentError> {
    if fields.is_empty() {
        return Err(ExperimentError::NoFields);
    }
    let metrics = lat.path_metrics()?;
    let path_length = match channel {
        Channel::Charge | Channel::Fermion => metrics.ly_tilde(hole)?,
        Channel::Vortex => metrics.lx_tilde(hole)?,
    };
    let n = lat.n_holes();
    let half = 1usize << (n - 1);
    let region = channel.region(hole);

    let mut rows = fields
        .iter()
        .map(|&h| {
            let mask = field_mask(lat, &region, channel.field(h))?;
            let ham = assemble(lat, g, &mask)?;
            let gs = GroundSpace::solve(&ham, 2 * half + 1, opts, true)?;
            let e = &gs.spectrum.eigenvalues;
            let ed_splitting = e[half] - e[0];
            let closed_form = match channel {
                Channel::Charge | Channel::Fermion => fermion_tunneling(g, h, path_length),
                Channel::Vortex => vortex_tunneling(g, h, path_length),
            }
            .abs();
            let ratio = ed_splitting / closed_form;
            Ok(SplittingRow {
                h,
                ed_splitting,
                closed_form,
                ratio,
                deviation: (ratio - 1.0).abs(),
                excited_gap: e.get(2 * half).map(|x| x - e[2 * half - 1]),
                block_dim: gs.sector.as_ref().map_or(1 << lat.n_active(), |s| s.states().len()),
            })
        })
        .collect::<Result<Vec<_>, ExperimentError>>()?;
    rows.sort_by(|a, b| b.h.total_cmp(&a.h));
    let converging = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    Ok(SplittingComparison {
        channel,
        hole,
        path_length,
        g,
        limiting_ratio: rows.last().map_or(f64::NAN, |r| r.ratio),
        rows,
        converging,
    })
}
