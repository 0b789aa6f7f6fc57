//! Shortest strings and loops on the quasiparticle hopping graphs.
//!
//! Charges live on odd plaquette positions and hop diagonally across a site
//! (σ^z on that site). Vortices live on even positions and hop the same way
//! under σ^x. A hole's τ^x string is the shortest charge path from the hole
//! to the outer edge; its τ^z loop is the shortest closed vortex walk that
//! crosses that string an odd number of times.

use std::collections::VecDeque;

use super::{HoledLattice, LatticeError, OddSlot, Parity};

const MAX_HOLES: usize = 12;

/// An open string of sites, ordered from its first endpoint to its last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringPath {
    pub holes: Vec<usize>,
    pub sites: Vec<usize>,
}

impl StringPath {
    pub fn length(&self) -> usize {
        self.sites.len()
    }
}

/// A closed vortex loop; `sites` is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopPath {
    pub holes: Vec<usize>,
    pub sites: Vec<usize>,
    pub length: usize,
}

#[derive(Debug, Clone)]
struct HopGraph {
    /// `adj[node]` lists `(site, neighbour)` sorted by site index.
    adj: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone)]
pub struct PathMetrics {
    n_holes: usize,
    n_sites: usize,
    charge: HopGraph,
    charge_slots: Vec<Option<OddSlot>>,
    vortex: HopGraph,
    vortex_nodes: Vec<bool>,
    strings: Vec<StringPath>,
    /// Bit `l` set when the site lies on hole `l`'s τ^x string.
    cuts: Vec<u32>,
}

impl PathMetrics {
    pub(super) fn compute(lat: &HoledLattice) -> Result<Self, LatticeError> {
        let n_holes = lat.n_holes();
        if n_holes == 0 {
            return Err(LatticeError::NoHoles);
        }
        if n_holes > MAX_HOLES {
            return Err(LatticeError::TooManyHoles {
                n: n_holes,
                max: MAX_HOLES,
            });
        }
        let (w, h) = (lat.width() as i64, lat.height() as i64);
        let stride = (w + 1) as usize;
        let node = |px: i64, py: i64| ((py + 1) as usize) * stride + (px + 1) as usize;
        let n_nodes = stride * (h + 1) as usize;

        let mut charge = HopGraph {
            adj: vec![Vec::new(); n_nodes],
        };
        let mut vortex = HopGraph {
            adj: vec![Vec::new(); n_nodes],
        };
        let mut charge_slots = vec![None; n_nodes];
        let mut vortex_nodes = vec![false; n_nodes];

        for (s, (x, y)) in lat.active_sites() {
            let (x, y) = (x as i64, y as i64);
            let a = [(x - 1, y - 1), (x, y)];
            let b = [(x, y - 1), (x - 1, y)];
            let (even, odd) = if Parity::of(x - 1, y - 1) == Parity::Even {
                (a, b)
            } else {
                (b, a)
            };
            let (e0, e1) = (node(even[0].0, even[0].1), node(even[1].0, even[1].1));
            vortex.adj[e0].push((s, e1));
            vortex.adj[e1].push((s, e0));
            vortex_nodes[e0] = true;
            vortex_nodes[e1] = true;
            let (o0, o1) = (node(odd[0].0, odd[0].1), node(odd[1].0, odd[1].1));
            charge.adj[o0].push((s, o1));
            charge.adj[o1].push((s, o0));
            for (px, py) in odd {
                charge_slots[node(px, py)] = Some(lat.odd_slot(px, py));
            }
        }
        for list in charge.adj.iter_mut().chain(vortex.adj.iter_mut()) {
            list.sort_unstable();
        }

        let mut metrics = PathMetrics {
            n_holes,
            n_sites: lat.n_active(),
            charge,
            charge_slots,
            vortex,
            vortex_nodes,
            strings: Vec::new(),
            cuts: vec![0; lat.n_active()],
        };
        for l in 0..n_holes {
            let path = metrics.charge_search(l, None, None)?;
            for &s in &path.sites {
                metrics.cuts[s] |= 1 << l;
            }
            metrics.strings.push(path);
        }
        Ok(metrics)
    }

    pub fn n_holes(&self) -> usize {
        self.n_holes
    }

    /// Shortest charge path from hole `l` to the outer edge (τ^x support).
    pub fn boundary_string(&self, l: usize) -> Result<&StringPath, LatticeError> {
        self.strings.get(l).ok_or(LatticeError::UnknownHole(l))
    }

    /// Shortest charge path between holes `a` and `b` (τ^x_a τ^x_b support).
    pub fn string_between(&self, a: usize, b: usize) -> Result<StringPath, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        self.charge_search(a, Some(b), None)
    }

    /// Like [`Self::boundary_string`] but only hopping across sites where
    /// `allowed` is true.
    pub fn boundary_string_within(
        &self,
        l: usize,
        allowed: &[bool],
    ) -> Result<StringPath, LatticeError> {
        self.check(l)?;
        self.charge_search(l, None, Some(allowed))
    }

    pub fn string_between_within(
        &self,
        a: usize,
        b: usize,
        allowed: &[bool],
    ) -> Result<StringPath, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        self.charge_search(a, Some(b), Some(allowed))
    }

    /// Shortest vortex loop enclosing exactly the given holes.
    pub fn loop_around(&self, holes: &[usize]) -> Result<LoopPath, LatticeError> {
        self.loop_search(holes, None)
    }

    pub fn loop_around_within(
        &self,
        holes: &[usize],
        allowed: &[bool],
    ) -> Result<LoopPath, LatticeError> {
        self.loop_search(holes, Some(allowed))
    }

    fn loop_search(
        &self,
        holes: &[usize],
        allowed: Option<&[bool]>,
    ) -> Result<LoopPath, LatticeError> {
        let mut target = 0u32;
        for &l in holes {
            self.check(l)?;
            target |= 1 << l;
        }
        if target == 0 {
            return Err(LatticeError::NoPath {
                what: "enclosing loop",
                holes: holes.to_vec(),
            });
        }
        self.vortex_search(target, allowed).ok_or_else(|| LatticeError::NoPath {
            what: "enclosing loop",
            holes: holes.to_vec(),
        })
    }

    /// Shortest vortex loop around hole `l`.
    pub fn lx_tilde(&self, l: usize) -> Result<usize, LatticeError> {
        Ok(self.loop_around(&[l])?.length)
    }

    /// Shortest hole-to-edge string length for hole `l`.
    pub fn ly_tilde(&self, l: usize) -> Result<usize, LatticeError> {
        Ok(self.boundary_string(l)?.length())
    }

    /// Shortest vortex loop around both holes `l` and `l + 1`.
    pub fn lxx(&self, l: usize) -> Result<usize, LatticeError> {
        Ok(self.loop_around(&[l, l + 1])?.length)
    }

    /// Shortest string joining holes `l` and `l + 1`.
    pub fn lyy(&self, l: usize) -> Result<usize, LatticeError> {
        Ok(self.string_between(l, l + 1)?.length())
    }

    fn check(&self, l: usize) -> Result<(), LatticeError> {
        if l < self.n_holes {
            Ok(())
        } else {
            Err(LatticeError::UnknownHole(l))
        }
    }

    /// Breadth-first search on the charge graph from hole `from` to either the
    /// outer edge (`to = None`) or hole `to`. Other holes block the path.
    fn charge_search(
        &self,
        from: usize,
        to: Option<usize>,
        allowed: Option<&[bool]>,
    ) -> Result<StringPath, LatticeError> {
        let n = self.charge.adj.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for (v, slot) in self.charge_slots.iter().enumerate() {
            if *slot == Some(OddSlot::Hole(from)) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        let is_target = |slot: Option<OddSlot>| match (to, slot) {
            (None, Some(OddSlot::Edge)) => true,
            (Some(t), Some(OddSlot::Hole(m))) => m == t,
            _ => false,
        };
        let blocked = |slot: Option<OddSlot>| match slot {
            Some(OddSlot::Hole(m)) => m != from && Some(m) != to,
            Some(OddSlot::Edge) => to.is_some(),
            _ => false,
        };
        while let Some(v) = queue.pop_front() {
            if is_target(self.charge_slots[v]) {
                let mut sites = Vec::new();
                let mut cur = v;
                while let Some((s, p)) = parent[cur] {
                    sites.push(s);
                    cur = p;
                }
                sites.reverse();
                let mut holes = vec![from];
                holes.extend(to);
                return Ok(StringPath { holes, sites });
            }
            for &(s, u) in &self.charge.adj[v] {
                if seen[u] || blocked(self.charge_slots[u]) || !open(allowed, s) {
                    continue;
                }
                seen[u] = true;
                parent[u] = Some((s, v));
                queue.push_back(u);
            }
        }
        let mut holes = vec![from];
        holes.extend(to);
        Err(LatticeError::NoPath {
            what: if to.is_some() {
                "hole-to-hole string"
            } else {
                "hole-to-edge string"
            },
            holes,
        })
    }

    /// Shortest closed vortex walk whose crossings with the τ^x strings have
    /// parity `target`.
    fn vortex_search(&self, target: u32, allowed: Option<&[bool]>) -> Option<LoopPath> {
        let n = self.vortex.adj.len();
        let masks = 1usize << self.n_holes;
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut dist = vec![usize::MAX; n * masks];
        let mut parent = vec![(usize::MAX, usize::MAX); n * masks];
        let mut touched = Vec::new();
        for start in (0..n).filter(|&v| self.vortex_nodes[v]) {
            for &i in &touched {
                dist[i] = usize::MAX;
            }
            touched.clear();
            let origin = start * masks;
            dist[origin] = 0;
            touched.push(origin);
            let goal = start * masks + target as usize;
            let mut queue = VecDeque::from([origin]);
            while let Some(state) = queue.pop_front() {
                let d = dist[state];
                if best.as_ref().is_some_and(|(b, _)| d + 1 >= *b) {
                    break;
                }
                if state == goal {
                    break;
                }
                let (v, m) = (state / masks, state % masks);
                for &(s, u) in self.vortex.adj[v].iter().filter(|(s, _)| open(allowed, *s)) {
                    let next = u * masks + (m ^ self.cuts[s] as usize);
                    if dist[next] == usize::MAX {
                        dist[next] = d + 1;
                        parent[next] = (state, s);
                        touched.push(next);
                        queue.push_back(next);
                    }
                }
            }
            if dist[goal] != usize::MAX && dist[goal] > 0 {
                let len = dist[goal];
                if best.as_ref().is_none_or(|(b, _)| len < *b) {
                    let mut count = vec![0u8; self.n_sites];
                    let mut cur = goal;
                    while cur != origin {
                        let (p, s) = parent[cur];
                        count[s] ^= 1;
                        cur = p;
                    }
                    let sites = (0..self.n_sites).filter(|&s| count[s] == 1).collect();
                    best = Some((len, sites));
                }
            }
        }
        best.map(|(length, sites)| LoopPath {
            holes: (0..self.n_holes).filter(|l| target >> l & 1 == 1).collect(),
            sites,
            length,
        })
    }
}

fn open(allowed: Option<&[bool]>, site: usize) -> bool {
    allowed.is_none_or(|a| a.get(site).copied().unwrap_or(false))
}
