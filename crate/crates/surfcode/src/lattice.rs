//! Planar and toroidal square lattices with spins on sites, checkerboard
//! plaquettes and rectangular holes.
//!
//! Sites are addressed by integer coordinates `(x, y)` with `0 <= x < width`
//! and `0 <= y < height`. A plaquette is named by its lower-left corner
//! `(px, py)` and covers the four sites `(px, py)`, `(px+1, py)`,
//! `(px+1, py+1)`, `(px, py+1)`. Its parity is `(px + py) mod 2`: even
//! plaquettes carry Z-type stabilizers, odd ones X-type.
//!
//! On an open lattice the plaquettes hanging over the edge are truncated to
//! their surviving sites. Only the even (Z-type) truncations are kept, which
//! leaves the outer edge without logical qubits. A hole drops the odd
//! plaquettes inside its rectangle and removes the spins strictly inside it;
//! the even plaquettes inside the rectangle survive in truncated form.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod paths;

pub use paths::{LoopPath, PathMetrics, StringPath};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("lattice too small: {width}x{height} (both sides must be at least 4)")]
    TooSmall { width: usize, height: usize },
    #[error("hole {hole}: rectangle ({x0},{y0})-({x1},{y1}) is empty or leaves the lattice")]
    HoleOutOfBounds {
        hole: usize,
        x0: usize,
        y0: usize,
        x1: usize,
        y1: usize,
    },
    #[error("hole {hole} is closer than {clearance} site(s) to the outer boundary")]
    HoleTouchesBoundary { hole: usize, clearance: usize },
    #[error("holes {a} and {b} overlap or share sites")]
    OverlappingHoles { a: usize, b: usize },
    #[error("hole {hole}: region removes no qubit-carrying plaquette")]
    HoleWithoutQubit { hole: usize },
    #[error("hole {hole}: a {w}x{h} strip splits into several holes; use width and height of at least 2 plaquettes")]
    StripHole { hole: usize, w: usize, h: usize },
    #[error("holes are only supported on open lattices")]
    HolesOnTorus,
    #[error("no holes")]
    NoHoles,
    #[error("unknown hole index {0}")]
    UnknownHole(usize),
    #[error("site {0} is not an active site")]
    UnknownSite(usize),
    #[error("path search supports at most {max} holes, lattice has {n}")]
    TooManyHoles { n: usize, max: usize },
    #[error("no {what} exists for hole(s) {holes:?}")]
    NoPath { what: &'static str, holes: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Torus,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Open => f.write_str("open"),
            Boundary::Torus => f.write_str("torus"),
        }
    }
}

/// Rectangle of a hole in site coordinates. Spins strictly inside are
/// removed; the plaquettes with lower-left corner in
/// `[x0, x1) x [y0, y1)` belong to the hole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleSpec {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl HoleSpec {
    pub fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Self {
        HoleSpec { x0, y0, x1, y1 }
    }

    /// One-plaquette hole with lower-left corner `(px, py)`.
    pub fn plaquette(px: usize, py: usize) -> Self {
        HoleSpec::new(px, py, px + 1, py + 1)
    }

    fn removes(&self, x: usize, y: usize) -> bool {
        x > self.x0 && x < self.x1 && y > self.y0 && y < self.y1
    }

    fn owns_plaquette(&self, px: i64, py: i64) -> bool {
        px >= self.x0 as i64 && px < self.x1 as i64 && py >= self.y0 as i64 && py < self.y1 as i64
    }

    fn shares_sites(&self, other: &HoleSpec) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }

    /// Chebyshev distance from a site to the closed rectangle.
    pub fn distance(&self, x: usize, y: usize) -> usize {
        let dx = self.x0.saturating_sub(x).max(x.saturating_sub(self.x1));
        let dy = self.y0.saturating_sub(y).max(y.saturating_sub(self.y1));
        dx.max(dy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(px: i64, py: i64) -> Parity {
        if (px + py).rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Pauli content of a plaquette stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaquetteKind {
    /// Product of σ^z over the member sites.
    Z,
    /// Product of σ^x over the member sites.
    X,
    /// σ^x σ^y σ^x σ^y going counter-clockwise from the lower-left site.
    Wen,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plaquette {
    /// Lower-left corner; may be -1 for truncated plaquettes on an open edge.
    pub origin: (i64, i64),
    pub parity: Parity,
    pub kind: PlaquetteKind,
    /// Active-site indices, ordered lower-left, lower-right, upper-right, upper-left.
    pub sites: Vec<usize>,
}

impl Plaquette {
    pub fn weight(&self) -> usize {
        self.sites.len()
    }
}

/// What sits at an odd plaquette position next to at least one active site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum OddSlot {
    Stabilizer,
    Hole(usize),
    Edge,
}

#[derive(Debug, Clone)]
pub struct LatticeBuilder {
    width: usize,
    height: usize,
    boundary: Boundary,
    holes: Vec<HoleSpec>,
    clearance: usize,
}

impl LatticeBuilder {
    pub fn new(width: usize, height: usize) -> Self {
        LatticeBuilder {
            width,
            height,
            boundary: Boundary::Open,
            holes: Vec::new(),
            clearance: 1,
        }
    }

    pub fn boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn hole(mut self, hole: HoleSpec) -> Self {
        self.holes.push(hole);
        self
    }

    pub fn holes(mut self, holes: impl IntoIterator<Item = HoleSpec>) -> Self {
        self.holes.extend(holes);
        self
    }

    /// Minimum number of sites between a hole rectangle and the outer edge.
    /// Defaults to 1; 0 lets a hole rectangle touch the edge.
    pub fn clearance(mut self, clearance: usize) -> Self {
        self.clearance = clearance;
        self
    }

    pub fn build(self) -> Result<HoledLattice, LatticeError> {
        HoledLattice::from_builder(self)
    }
}

#[derive(Debug, Clone)]
pub struct HoledLattice {
    width: usize,
    height: usize,
    boundary: Boundary,
    holes: Vec<HoleSpec>,
    /// Row-major `y * width + x` to active index.
    index: Vec<Option<usize>>,
    coords: Vec<(usize, usize)>,
    plaquettes: Vec<Plaquette>,
}

pub fn build_lattice(
    width: usize,
    height: usize,
    boundary: Boundary,
    holes: &[HoleSpec],
) -> Result<HoledLattice, LatticeError> {
    LatticeBuilder::new(width, height)
        .boundary(boundary)
        .holes(holes.iter().copied())
        .build()
}

impl HoledLattice {
    fn from_builder(b: LatticeBuilder) -> Result<Self, LatticeError> {
        let LatticeBuilder {
            width,
            height,
            boundary,
            holes,
            clearance,
        } = b;
        if width < 4 || height < 4 {
            return Err(LatticeError::TooSmall { width, height });
        }
        if boundary == Boundary::Torus && !holes.is_empty() {
            return Err(LatticeError::HolesOnTorus);
        }
        for (l, h) in holes.iter().enumerate() {
            validate_hole(l, h, width, height, clearance)?;
        }
        for a in 0..holes.len() {
            for b in a + 1..holes.len() {
                if holes[a].shares_sites(&holes[b]) {
                    return Err(LatticeError::OverlappingHoles { a, b });
                }
            }
        }

        let mut index = vec![None; width * height];
        let mut coords = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                if !holes.iter().any(|h| h.removes(x, y)) {
                    index[y * width + x] = Some(coords.len());
                    coords.push((x, y));
                }
            }
        }

        let mut lat = HoledLattice {
            width,
            height,
            boundary,
            holes,
            index,
            coords,
            plaquettes: Vec::new(),
        };
        lat.plaquettes = match boundary {
            Boundary::Open => lat.open_plaquettes(),
            Boundary::Torus => lat.torus_plaquettes(),
        };
        Ok(lat)
    }

    fn open_plaquettes(&self) -> Vec<Plaquette> {
        let mut out = Vec::new();
        for py in -1..self.height as i64 {
            for px in -1..self.width as i64 {
                let parity = Parity::of(px, py);
                let sites: Vec<usize> = corners(px, py)
                    .into_iter()
                    .filter_map(|(x, y)| self.site_at(x, y))
                    .collect();
                if sites.is_empty() {
                    continue;
                }
                let in_hole = self.holes.iter().any(|h| h.owns_plaquette(px, py));
                let keep = match parity {
                    Parity::Even => true,
                    Parity::Odd => !in_hole && sites.len() == 4,
                };
                if keep {
                    let kind = match parity {
                        Parity::Even => PlaquetteKind::Z,
                        Parity::Odd => PlaquetteKind::X,
                    };
                    out.push(Plaquette {
                        origin: (px, py),
                        parity,
                        kind,
                        sites,
                    });
                }
            }
        }
        out
    }

    fn torus_plaquettes(&self) -> Vec<Plaquette> {
        let (w, h) = (self.width as i64, self.height as i64);
        let checkerboard = self.width.is_multiple_of(2) && self.height.is_multiple_of(2);
        let mut out = Vec::with_capacity(self.width * self.height);
        for py in 0..h {
            for px in 0..w {
                let parity = Parity::of(px, py);
                let sites = corners(px, py)
                    .into_iter()
                    .map(|(x, y)| {
                        self.site_at(x.rem_euclid(w), y.rem_euclid(h))
                            .expect("torus sites are all active")
                    })
                    .collect();
                let kind = match (checkerboard, parity) {
                    (false, _) => PlaquetteKind::Wen,
                    (true, Parity::Even) => PlaquetteKind::Z,
                    (true, Parity::Odd) => PlaquetteKind::X,
                };
                out.push(Plaquette {
                    origin: (px, py),
                    parity,
                    kind,
                    sites,
                });
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn holes(&self) -> &[HoleSpec] {
        &self.holes
    }

    pub fn n_holes(&self) -> usize {
        self.holes.len()
    }

    pub fn n_active(&self) -> usize {
        self.coords.len()
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    /// Coordinates of an active site.
    pub fn coords(&self, site: usize) -> (usize, usize) {
        self.coords[site]
    }

    pub fn active_sites(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.coords.iter().copied().enumerate()
    }

    /// Active index of the site at `(x, y)`, if it exists and is not removed.
    pub fn site_at(&self, x: i64, y: i64) -> Option<usize> {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            return None;
        }
        self.index[y as usize * self.width + x as usize]
    }

    pub fn hole(&self, l: usize) -> Result<&HoleSpec, LatticeError> {
        self.holes.get(l).ok_or(LatticeError::UnknownHole(l))
    }

    /// Classifies an odd plaquette position for the charge hopping graph.
    pub(crate) fn odd_slot(&self, px: i64, py: i64) -> OddSlot {
        if let Some(l) = self.holes.iter().position(|h| h.owns_plaquette(px, py)) {
            return OddSlot::Hole(l);
        }
        let full = corners(px, py)
            .into_iter()
            .all(|(x, y)| self.site_at(x, y).is_some());
        if full {
            OddSlot::Stabilizer
        } else {
            OddSlot::Edge
        }
    }

    /// Breadth-first distances between active sites over lattice bonds.
    pub fn site_distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_active()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(s) = queue.pop_front() {
            let (x, y) = self.coords[s];
            let d = dist[s].unwrap_or(0);
            for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
                if let Some(t) = self.site_at(x as i64 + dx, y as i64 + dy) {
                    if dist[t].is_none() {
                        dist[t] = Some(d + 1);
                        queue.push_back(t);
                    }
                }
            }
        }
        dist
    }

    pub fn path_metrics(&self) -> Result<PathMetrics, LatticeError> {
        PathMetrics::compute(self)
    }
}

fn corners(px: i64, py: i64) -> [(i64, i64); 4] {
    [(px, py), (px + 1, py), (px + 1, py + 1), (px, py + 1)]
}

fn validate_hole(
    l: usize,
    h: &HoleSpec,
    width: usize,
    height: usize,
    clearance: usize,
) -> Result<(), LatticeError> {
    if h.x0 >= h.x1 || h.y0 >= h.y1 || h.x1 >= width || h.y1 >= height {
        return Err(LatticeError::HoleOutOfBounds {
            hole: l,
            x0: h.x0,
            y0: h.y0,
            x1: h.x1,
            y1: h.y1,
        });
    }
    if h.x0 < clearance
        || h.y0 < clearance
        || h.x1 + clearance > width - 1
        || h.y1 + clearance > height - 1
    {
        return Err(LatticeError::HoleTouchesBoundary { hole: l, clearance });
    }
    let (w, hh) = (h.x1 - h.x0, h.y1 - h.y0);
    if w == 1 && hh == 1 && Parity::of(h.x0 as i64, h.y0 as i64) == Parity::Even {
        return Err(LatticeError::HoleWithoutQubit { hole: l });
    }
    if w.min(hh) == 1 && w.max(hh) >= 3 {
        return Err(LatticeError::StripHole { hole: l, w, h: hh });
    }
    Ok(())
}

/// Where a uniform or localized field is applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    All,
    /// Sites within `width - 1` steps (Chebyshev) of the hole rectangle.
    Annulus {
        hole: usize,
        #[serde(default = "one")]
        width: usize,
    },
    /// Sites of the shortest hole-to-edge string.
    Corridor { hole: usize },
    /// Sites of the shortest string joining two holes.
    CorridorBetween { holes: [usize; 2] },
    /// Sites of the shortest loop enclosing exactly these holes. Everything
    /// else is left in shadow.
    Encircling { holes: Vec<usize> },
    Sites { sites: Vec<usize> },
}

fn one() -> usize {
    1
}

impl Region {
    pub fn select(&self, lat: &HoledLattice) -> Result<Vec<usize>, LatticeError> {
        let mut sites = match self {
            Region::All => (0..lat.n_active()).collect(),
            Region::Annulus { hole, width } => {
                let h = lat.hole(*hole)?;
                lat.active_sites()
                    .filter(|(_, (x, y))| h.distance(*x, *y) < *width)
                    .map(|(s, _)| s)
                    .collect()
            }
            Region::Corridor { hole } => {
                lat.hole(*hole)?;
                lat.path_metrics()?.boundary_string(*hole)?.sites.clone()
            }
            Region::CorridorBetween { holes: [a, b] } => {
                lat.hole(*a)?;
                lat.hole(*b)?;
                lat.path_metrics()?.string_between(*a, *b)?.sites
            }
            Region::Encircling { holes } => {
                for &l in holes {
                    lat.hole(l)?;
                }
                lat.path_metrics()?.loop_around(holes)?.sites
            }
            Region::Sites { sites } => {
                if let Some(&bad) = sites.iter().find(|&&s| s >= lat.n_active()) {
                    return Err(LatticeError::UnknownSite(bad));
                }
                sites.clone()
            }
        };
        sites.sort_unstable();
        sites.dedup();
        Ok(sites)
    }
}

/// Per-active-site external field `(hx, hy, hz)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldMask {
    fields: Vec<[f64; 3]>,
}

impl FieldMask {
    pub fn zeros(lat: &HoledLattice) -> Self {
        FieldMask {
            fields: vec![[0.0; 3]; lat.n_active()],
        }
    }

    pub fn uniform(lat: &HoledLattice, h: [f64; 3]) -> Self {
        FieldMask {
            fields: vec![h; lat.n_active()],
        }
    }

    /// Adds `h` on every site of `region`.
    pub fn add(
        mut self,
        lat: &HoledLattice,
        region: &Region,
        h: [f64; 3],
    ) -> Result<Self, LatticeError> {
        for s in region.select(lat)? {
            for (f, v) in self.fields[s].iter_mut().zip(h) {
                *f += v;
            }
        }
        Ok(self)
    }

    pub fn get(&self, site: usize) -> [f64; 3] {
        self.fields[site]
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        self.fields.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.fields.iter().flatten().all(|&v| v == 0.0)
    }

    /// Component `axis` (0 = x, 1 = y, 2 = z) on every site.
    pub fn component(&self, axis: usize) -> Vec<f64> {
        self.fields.iter().map(|f| f[axis]).collect()
    }
}

pub fn field_mask(
    lat: &HoledLattice,
    region: &Region,
    h: [f64; 3],
) -> Result<FieldMask, LatticeError> {
    FieldMask::zeros(lat).add(lat, region, h)
}
