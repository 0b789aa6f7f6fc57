//! Single-quasiparticle bands in the uniform-field limit.
//!
//! Both bands have the Bogoliubov form `ε = √((ξ + Δ)² − ξ²)` where `Δ` is
//! the bare excitation energy (2g for a vortex, 4g for a fermion) and `ξ`
//! collects hopping and pair creation. Vortices hop diagonally, so
//! `ξ = 2hx[cos(kx+ky) + cos(kx−ky)]`; fermions hop along one axis with
//! `ξ = 4hy cos k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::SpectraError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionParams {
    pub g: f64,
    pub hx: f64,
    pub hy: f64,
    pub kx: f64,
    pub ky: f64,
}

impl DispersionParams {
    pub fn new(g: f64, hx: f64, hy: f64) -> Self {
        DispersionParams {
            g,
            hx,
            hy,
            kx: 0.0,
            ky: 0.0,
        }
    }

    pub fn at(self, kx: f64, ky: f64) -> Self {
        DispersionParams { kx, ky, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FermionBranch {
    /// Fermions on vertical links, dispersing along kx.
    Vertical,
    /// Fermions on horizontal links, dispersing along ky.
    Parallel,
}

fn bogoliubov(xi: f64, delta: f64) -> f64 {
    ((xi + delta).powi(2) - xi * xi).sqrt()
}

pub fn vortex_xi(p: &DispersionParams) -> f64 {
    2.0 * p.hx * ((p.kx + p.ky).cos() + (p.kx - p.ky).cos())
}

pub fn fermion_xi(p: &DispersionParams, branch: FermionBranch) -> f64 {
    let k = match branch {
        FermionBranch::Vertical => p.kx,
        FermionBranch::Parallel => p.ky,
    };
    4.0 * p.hy * k.cos()
}

pub fn vortex_dispersion(p: &DispersionParams) -> Result<f64, SpectraError> {
    if 4.0 * p.hx.abs() >= p.g {
        return Err(SpectraError::GapClosed {
            what: "vortex",
            ratio: p.hx / p.g,
        });
    }
    Ok(bogoliubov(vortex_xi(p), 2.0 * p.g))
}

pub fn fermion_dispersion(p: &DispersionParams, branch: FermionBranch) -> Result<f64, SpectraError> {
    if 2.0 * p.hy.abs() >= p.g {
        return Err(SpectraError::GapClosed {
            what: "fermion",
            ratio: p.hy / p.g,
        });
    }
    Ok(bogoliubov(fermion_xi(p, branch), 4.0 * p.g))
}

pub fn vortex_gap(g: f64, hx: f64) -> f64 {
    2.0 * g * (1.0 - 4.0 * hx.abs() / g).sqrt()
}

pub fn fermion_gap(g: f64, hy: f64) -> f64 {
    4.0 * g * (1.0 - 2.0 * hy.abs() / g).sqrt()
}

/// Momenta `2πj/n` for `j = 0..n`, which include 0 and π for even `n`.
pub fn k_grid(n: usize) -> impl Iterator<Item = f64> + Clone {
    (0..n).map(move |j| 2.0 * PI * j as f64 / n as f64)
}

/// Minimum of `f` over an `n × n` grid of momenta.
pub fn grid_minimum(
    n: usize,
    mut f: impl FnMut(f64, f64) -> Result<f64, SpectraError>,
) -> Result<f64, SpectraError> {
    let mut best = f64::INFINITY;
    for kx in k_grid(n) {
        for ky in k_grid(n) {
            best = best.min(f(kx, ky)?);
        }
    }
    Ok(best)
}
