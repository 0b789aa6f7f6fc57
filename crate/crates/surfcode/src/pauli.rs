//! Pauli strings over the active sites and GF(2) stabilizer algebra.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::lattice::{HoledLattice, LatticeError, PlaquetteKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("Pauli strings act on {left} and {right} sites")]
    LengthMismatch { left: usize, right: usize },
    #[error("site {site} out of range for a {n}-site string")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("stabilizer generators {a} and {b} anticommute")]
    NonCommuting { a: usize, b: usize },
    #[error("logical operator for hole {hole} fails check: {reason}")]
    BadLogical { hole: usize, reason: &'static str },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }
}

/// Overall phase `i^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(k: u32) -> Phase {
        Phase((k % 4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.0 as usize])
    }
}

/// `phase * ⊗_j σ_j` with σ_j ∈ {I, X, Y, Z}, stored as x/z bitsets.
///
/// Internally the operator is `i^k X^x Z^z`, so a Y on a site contributes
/// one factor of `i` to `k` relative to the printed phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    k: u8,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            x: vec![0; words(n)],
            z: vec![0; words(n)],
            k: 0,
        }
    }

    pub fn single(n: usize, site: usize, p: Pauli) -> Result<Self, PauliError> {
        Self::from_ops(n, [(site, p)])
    }

    /// The same Pauli on every listed site.
    pub fn uniform(n: usize, sites: &[usize], p: Pauli) -> Result<Self, PauliError> {
        Self::from_ops(n, sites.iter().map(|&s| (s, p)))
    }

    /// Product of single-site factors, left to right. Repeated sites multiply.
    pub fn from_ops(
        n: usize,
        ops: impl IntoIterator<Item = (usize, Pauli)>,
    ) -> Result<Self, PauliError> {
        let mut out = Self::identity(n);
        for (site, p) in ops {
            if site >= n {
                return Err(PauliError::SiteOutOfRange { site, n });
            }
            let mut f = Self::identity(n);
            let (xb, zb) = p.bits();
            let (w, b) = (site / 64, 1u64 << (site % 64));
            if xb {
                f.x[w] |= b;
            }
            if zb {
                f.z[w] |= b;
            }
            if p == Pauli::Y {
                f.k = 1;
            }
            out = out.multiply(&f)?;
        }
        Ok(out)
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn get(&self, site: usize) -> Pauli {
        let (w, b) = (site / 64, 1u64 << (site % 64));
        match (self.x[w] & b != 0, self.z[w] & b != 0) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn y_count(&self) -> u32 {
        popcount_and(&self.x, &self.z)
    }

    /// Phase in front of the σ-product (Y counted as the Hermitian matrix).
    pub fn phase(&self) -> Phase {
        Phase::from_power(self.k as u32 + 4 - self.y_count() % 4)
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.k = ((phase.power() as u32 + self.y_count()) % 4) as u8;
        self
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase().power().is_multiple_of(2)
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&s| self.get(s) != Pauli::I).collect()
    }

    pub fn x_bits(&self) -> &[u64] {
        &self.x
    }

    pub fn z_bits(&self) -> &[u64] {
        &self.z
    }

    fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PauliError::LengthMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_len(other)?;
        let swaps = popcount_and(&self.z, &other.x);
        Ok(PauliString {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            k: ((self.k as u32 + other.k as u32 + 2 * swaps) % 4) as u8,
        })
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, PauliError> {
        self.check_len(other)?;
        let s = popcount_and(&self.x, &other.z) + popcount_and(&self.z, &other.x);
        Ok(s.is_multiple_of(2))
    }

    /// Compact form for bit-level application; requires `n <= 64`.
    pub fn masks(&self) -> Option<PauliMasks> {
        (self.n <= 64).then(|| PauliMasks {
            x: self.x.first().copied().unwrap_or(0),
            z: self.z.first().copied().unwrap_or(0),
            k: self.k,
        })
    }

    /// `self |psi>` for a state over `n <= 64` sites, site `j` being bit `j`.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let m = self.masks().expect("state vectors need at most 64 sites");
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (b, amp) in psi.iter().enumerate() {
            let (t, c) = m.act(b as u64);
            out[t as usize] = c * amp;
        }
        out
    }
}

/// `i^k X^x Z^z` on at most 64 sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliMasks {
    pub x: u64,
    pub z: u64,
    pub k: u8,
}

impl PauliMasks {
    /// Image of basis state `b`: `P|b> = c |t>`.
    #[inline]
    pub fn act(&self, b: u64) -> (u64, Complex64) {
        let sign = (b & self.z).count_ones() as u8 * 2;
        (b ^ self.x, Phase::from_power((self.k + sign) as u32).to_complex())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase())?;
        let ops: Vec<String> = (0..self.n)
            .filter_map(|s| match self.get(s) {
                Pauli::I => None,
                p => Some(format!("{p:?}{s}")),
            })
            .collect();
        if ops.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&ops.join(" "))
        }
    }
}

pub fn multiply(p: &PauliString, q: &PauliString) -> Result<PauliString, PauliError> {
    p.multiply(q)
}

pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool, PauliError> {
    p.commutes(q)
}

/// Row rank over GF(2) of the `(x | z)` symplectic vectors.
pub fn symplectic_rank<'a>(ops: impl IntoIterator<Item = &'a PauliString>) -> usize {
    let mut rows: Vec<Vec<u64>> = ops
        .into_iter()
        .map(|p| p.x.iter().chain(&p.z).copied().collect())
        .collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, p)| *a ^= p);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    generators: Vec<PauliString>,
    rank: usize,
}

impl StabilizerGroup {
    pub fn new(generators: Vec<PauliString>) -> Result<Self, PauliError> {
        for a in 0..generators.len() {
            for b in a + 1..generators.len() {
                if !generators[a].commutes(&generators[b])? {
                    return Err(PauliError::NonCommuting { a, b });
                }
            }
        }
        let rank = symplectic_rank(&generators);
        Ok(StabilizerGroup { generators, rank })
    }

    pub fn from_lattice(lat: &HoledLattice) -> Result<Self, PauliError> {
        let n = lat.n_active();
        let gens = lat
            .plaquettes()
            .iter()
            .map(|p| {
                let ops: Vec<(usize, Pauli)> = match p.kind {
                    PlaquetteKind::Z => p.sites.iter().map(|&s| (s, Pauli::Z)).collect(),
                    PlaquetteKind::X => p.sites.iter().map(|&s| (s, Pauli::X)).collect(),
                    PlaquetteKind::Wen => p
                        .sites
                        .iter()
                        .zip([Pauli::X, Pauli::Y, Pauli::X, Pauli::Y])
                        .map(|(&s, q)| (s, q))
                        .collect(),
                };
                PauliString::from_ops(n, ops)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens)
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True iff `p` (up to phase) is a product of generators.
    pub fn contains(&self, p: &PauliString) -> bool {
        symplectic_rank(self.generators.iter().chain(std::iter::once(p))) == self.rank
    }

    pub fn commutes_with_all(&self, p: &PauliString) -> Result<bool, PauliError> {
        for g in &self.generators {
            if !g.commutes(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Degeneracy {
    pub n_active: usize,
    pub rank: usize,
    pub logical_qubits: usize,
    #[serde(rename = "Q")]
    pub q: u128,
}

pub fn ground_degeneracy(lat: &HoledLattice) -> Result<Degeneracy, PauliError> {
    let group = StabilizerGroup::from_lattice(lat)?;
    let k = lat.n_active() - group.rank();
    Ok(Degeneracy {
        n_active: lat.n_active(),
        rank: group.rank(),
        logical_qubits: k,
        q: 1u128 << k,
    })
}

/// τ^z (vortex loop, σ^x content) and τ^x (charge string, σ^z content) of a hole.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalPair {
    pub hole: usize,
    pub tau_z: PauliString,
    pub tau_x: PauliString,
}

pub fn logical_pair(lat: &HoledLattice, l: usize) -> Result<LogicalPair, PauliError> {
    let metrics = lat.path_metrics()?;
    let n = lat.n_active();
    let tau_z = PauliString::uniform(n, &metrics.loop_around(&[l])?.sites, Pauli::X)?;
    let tau_x = PauliString::uniform(n, &metrics.boundary_string(l)?.sites, Pauli::Z)?;
    let group = StabilizerGroup::from_lattice(lat)?;
    let bad = |reason| PauliError::BadLogical { hole: l, reason };
    if !group.commutes_with_all(&tau_z)? {
        return Err(bad("tau_z anticommutes with a stabilizer"));
    }
    if !group.commutes_with_all(&tau_x)? {
        return Err(bad("tau_x anticommutes with a stabilizer"));
    }
    if tau_z.commutes(&tau_x)? {
        return Err(bad("tau_z and tau_x commute"));
    }
    Ok(LogicalPair { hole: l, tau_z, tau_x })
}

/// `τ^z_a τ^z_b` as a single loop around both holes, and `τ^x_a τ^x_b` as the
/// string joining them.
pub fn pair_logicals(
    lat: &HoledLattice,
    a: usize,
    b: usize,
) -> Result<(PauliString, PauliString), PauliError> {
    let metrics = lat.path_metrics()?;
    let n = lat.n_active();
    let zz = PauliString::uniform(n, &metrics.loop_around(&[a, b])?.sites, Pauli::X)?;
    let xx = PauliString::uniform(n, &metrics.string_between(a, b)?.sites, Pauli::Z)?;
    Ok((zz, xx))
}
