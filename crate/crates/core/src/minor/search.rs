//! Exhaustive branch-set search.
//!
//! Host vertices are labeled in ascending order with a pattern vertex or
//! "unused", pattern labels first. A labeling never puts an unused vertex
//! next to a used one: any model can absorb such a vertex into a neighboring
//! branch set, and the absorbed model is lexicographically smaller, so the
//! lexicographically least model survives the restriction. In rooted search
//! this forces every vertex of a root's component into some branch set.
//!
//! Partial labelings are pruned when a branch set can no longer become
//! connected through unlabeled vertices, or when two adjacent pattern
//! vertices can no longer receive a host edge between their sets.

use serde::Serialize;

use super::MinorModel;
use crate::error::{ensure_cap, Error, Result};
use crate::graph::{bit, bits, Graph, Mask};

/// Default host-size ceiling for exhaustive searches.
pub const DEFAULT_MAX_HOST_VERTICES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_host_vertices: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_host_vertices: DEFAULT_MAX_HOST_VERTICES,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Partial labelings that passed pruning.
    pub nodes: u64,
    pub host_vertices: usize,
    pub pattern_vertices: usize,
}

const UNSET: usize = usize::MAX;

struct Engine<'a> {
    g: &'a Graph,
    k: usize,
    /// Pattern edges.
    pedges: Vec<(usize, usize)>,
    order: Vec<usize>,
    label: Vec<usize>,
    sets: Vec<Mask>,
    unused: Mask,
    free: Mask,
    /// `twin_before[q] = Some(p)` if `p < q` are interchangeable pattern vertices.
    twin_before: Vec<Option<usize>>,
    rooted: bool,
    stats: SearchStats,
}

impl Engine<'_> {
    fn region(&self, p: usize) -> Mask {
        let s = self.sets[p];
        if s == 0 {
            return self.free;
        }
        self.g.reach(s & s.wrapping_neg(), s | self.free)
    }

    fn feasible(&self) -> bool {
        let mut regions = Vec::with_capacity(self.k);
        let mut empty = 0;
        for p in 0..self.k {
            let s = self.sets[p];
            let reg = self.region(p);
            if s != 0 && reg & s != s {
                return false;
            }
            if s == 0 {
                if self.free == 0 {
                    return false;
                }
                empty += 1;
            }
            regions.push(reg);
        }
        if empty > self.free.count_ones() as usize {
            return false;
        }
        self.pedges.iter().all(|&(p, q)| {
            let reach_p = bits(regions[p]).fold(0, |acc, x| acc | self.g.neighbor_mask(x));
            reach_p & regions[q] != 0
        })
    }

    fn assign(&mut self, x: usize, l: usize) {
        self.label[x] = l;
        self.free &= !bit(x);
        if l == self.k {
            self.unused |= bit(x);
        } else {
            self.sets[l] |= bit(x);
        }
    }

    fn unassign(&mut self, x: usize, l: usize) {
        self.label[x] = UNSET;
        self.free |= bit(x);
        if l == self.k {
            self.unused &= !bit(x);
        } else {
            self.sets[l] &= !bit(x);
        }
    }

    fn used(&self) -> Mask {
        self.sets.iter().fold(0, |m, &s| m | s)
    }

    fn search(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        let nb = self.g.neighbor_mask(x);
        let touches_unused = nb & self.unused != 0;
        let touches_used = nb & self.used() != 0;
        let first = if touches_unused { self.k } else { 0 };
        for l in first..=self.k {
            if l < self.k {
                if !self.rooted && self.sets[l] == 0 {
                    if let Some(p) = self.twin_before[l] {
                        if self.sets[p] == 0 {
                            continue;
                        }
                    }
                }
            } else if touches_used || self.rooted {
                continue;
            }
            self.assign(x, l);
            if self.feasible() {
                self.stats.nodes += 1;
                if self.search(i + 1) {
                    return true;
                }
            }
            self.unassign(x, l);
        }
        false
    }
}

fn twins(h: &Graph) -> Vec<Option<usize>> {
    (0..h.n())
        .map(|q| {
            (0..q).rev().find(|&p| {
                let a = h.neighbor_mask(p) & !bit(q);
                let b = h.neighbor_mask(q) & !bit(p);
                a == b
            })
        })
        .collect()
}

fn run(g: &Graph, h: &Graph, roots: Option<&[usize]>, limits: SearchLimits) -> Result<(Option<MinorModel>, SearchStats)> {
    ensure_cap("minor search host vertex count", limits.max_host_vertices, g.n())?;
    let k = h.n();
    let mut e = Engine {
        g,
        k,
        pedges: h.edges(),
        order: Vec::new(),
        label: vec![UNSET; g.n()],
        sets: vec![0; k],
        unused: 0,
        free: g.vertex_mask(),
        twin_before: if roots.is_some() { vec![None; k] } else { twins(h) },
        rooted: roots.is_some(),
        stats: SearchStats {
            nodes: 0,
            host_vertices: g.n(),
            pattern_vertices: k,
        },
    };
    if let Some(roots) = roots {
        if roots.len() != k {
            return Err(Error::Precondition(format!("{} roots for {k} pattern vertices", roots.len())));
        }
        let rm = roots.iter().fold(0u64, |m, &r| m | bit(r));
        if rm.count_ones() as usize != k || roots.iter().any(|&r| r >= g.n()) {
            return Err(Error::Precondition("roots must be distinct host vertices".into()));
        }
        for (p, &r) in roots.iter().enumerate() {
            e.assign(r, p);
        }
        // vertices outside every root's component can never join a branch set
        let reachable = g.reach(rm, g.vertex_mask());
        for x in bits(g.vertex_mask() & !reachable) {
            e.assign(x, k);
        }
    } else if k > g.n() {
        return Ok((None, e.stats));
    }
    e.order = bits(e.free).collect();
    if !e.feasible() {
        return Ok((None, e.stats));
    }
    let found = e.search(0);
    let stats = e.stats;
    if !found {
        return Ok((None, stats));
    }
    let model = MinorModel::from_masks(h, g, &e.sets, roots);
    Ok((Some(model), stats))
}

/// Exhaustive rooted search: `roots[v]` must lie in the branch set of `v`.
/// Returns the lexicographically least model; `None` certifies that no
/// rooted model exists.
pub fn find_rooted_minor(g: &Graph, h: &Graph, roots: &[usize]) -> Result<Option<MinorModel>> {
    find_rooted_minor_with(g, h, roots, SearchLimits::default()).map(|(m, _)| m)
}

pub fn find_rooted_minor_with(
    g: &Graph,
    h: &Graph,
    roots: &[usize],
    limits: SearchLimits,
) -> Result<(Option<MinorModel>, SearchStats)> {
    run(g, h, Some(roots), limits)
}

/// Exhaustive unrooted search. Interchangeable pattern vertices (same
/// neighborhood apart from each other) open their branch sets in index order.
pub fn find_minor(g: &Graph, h: &Graph) -> Result<Option<MinorModel>> {
    find_minor_with(g, h, SearchLimits::default()).map(|(m, _)| m)
}

pub fn find_minor_with(g: &Graph, h: &Graph, limits: SearchLimits) -> Result<(Option<MinorModel>, SearchStats)> {
    run(g, h, None, limits)
}
