//! Simple undirected graphs on dense vertex sets `0..n`, plus the structural
//! primitives the rest of the crate is built on.

mod bipartite;
mod blocks;
mod canon;
mod coloring;
pub mod format;
pub mod generators;
mod shapes;
mod subgraph;

pub use bipartite::{bipartite_matching, is_bipartite, odd_cycle, Bipartition, OddCycle};
pub use blocks::{components_and_blocks, BlockDecomposition};
pub use canon::{canonical_form, canonical_labeling, CanonicalForm, CANON_MAX_VERTICES};
pub use coloring::{chromatic_number, CHROMATIC_MAX_VERTICES};
pub use shapes::{is_cactus, theta_recognize, BlockShape, CactusCensus, ThetaSignature};
pub use subgraph::subgraph_contains;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard ceiling on vertex count; adjacency rows are single `u64` words.
pub const MAX_VERTICES: usize = 64;

/// Vertex bitset.
pub type Mask = u64;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u64 << v
}

/// Low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn mask_of<I: IntoIterator<Item = usize>>(vs: I) -> Mask {
    vs.into_iter().fold(0, |m, v| m | bit(v))
}

/// A simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Mask>,
    labels: Option<BTreeMap<usize, String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::capacity("vertex count", MAX_VERTICES, n));
        }
        Ok(Graph {
            adj: vec![0; n],
            labels: None,
        })
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Validation(format!("duplicate edge ({u},{v})")));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    /// Builds from adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<Mask>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::capacity("vertex count", MAX_VERTICES, n));
        }
        let fm = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !fm != 0 {
                return Err(Error::Validation(format!("row {v} references missing vertices")));
            }
            if row & bit(v) != 0 {
                return Err(Error::Validation(format!("loop at vertex {v}")));
            }
            for u in bits(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(Error::Validation(format!("asymmetric adjacency at ({v},{u})")));
                }
            }
        }
        Ok(Graph { adj, labels: None })
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n()) {
            return Err(Error::Validation(format!("label for missing vertex {v}")));
        }
        self.labels = if labels.is_empty() { None } else { Some(labels) };
        Ok(self)
    }

    pub fn labels(&self) -> Option<&BTreeMap<usize, String>> {
        self.labels.as_ref()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn vertex_mask(&self) -> Mask {
        full_mask(self.n())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn adjacency(&self) -> &[Mask] {
        &self.adj
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Union of neighborhoods of `m`, excluding `m` itself.
    pub fn neighborhood_of(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, v| acc | self.adj[v]) & !m
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: Mask, within: Mask) -> Mask {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.neighborhood_of(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether `m` induces a connected subgraph. The empty set counts as connected.
    pub fn is_connected_set(&self, m: Mask) -> bool {
        if m == 0 {
            return true;
        }
        let start = m & m.wrapping_neg();
        self.reach(start, m) == m
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.vertex_mask())
    }

    /// Connected components as masks, ordered by smallest vertex.
    pub fn component_masks(&self) -> Vec<Mask> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let c = self.reach(left & left.wrapping_neg(), left);
            out.push(c);
            left &= !c;
        }
        out
    }

    pub fn is_stable(&self, m: Mask) -> bool {
        bits(m).all(|v| self.adj[v] & m == 0)
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .into_iter()
            .any(|(u, v)| self.adj[u] & self.adj[v] != 0)
    }

    /// Subgraph induced by `m`; returns the graph and the new→old vertex map.
    pub fn induced(&self, m: Mask) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = bits(m & self.vertex_mask()).collect();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            pos[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| bits(self.adj[v] & m).fold(0, |acc, u| acc | bit(pos[u])))
            .collect();
        (Graph { adj, labels: None }, old)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n());
        let mut adj = vec![0; self.n()];
        for (u, v) in self.edges() {
            adj[perm[u]] |= bit(perm[v]);
            adj[perm[v]] |= bit(perm[u]);
        }
        Graph { adj, labels: None }
    }

    /// Same vertex set, with `extra` edges added (duplicates ignored).
    pub fn with_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in extra {
            if u >= g.n() || v >= g.n() || u == v {
                return Err(Error::Validation(format!("cannot add edge ({u},{v})")));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u < g.n() && v < g.n() {
            g.adj[u] &= !bit(v);
            g.adj[v] &= !bit(u);
        }
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(Error::capacity("vertex count", MAX_VERTICES, n));
        }
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Graph { adj, labels: None })
    }

    /// Contracts the edge `uv`. The merged vertex takes the smaller index,
    /// later vertices shift down by one. Returns the graph and the old→new map.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if !self.has_edge(u, v) {
            return Err(Error::Precondition(format!("({u},{v}) is not an edge")));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let map: Vec<usize> = (0..self.n())
            .map(|x| match x {
                x if x == gone => keep,
                x if x > gone => x - 1,
                x => x,
            })
            .collect();
        let mut adj = vec![0; self.n() - 1];
        for (a, b) in self.edges() {
            let (a, b) = (map[a], map[b]);
            if a != b {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
        }
        Ok((Graph { adj, labels: None }, map))
    }
}

#[cfg(test)]
mod tests {
    use super::generators::*;
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(Graph::from_edges(2, &[(0, 0)]), Err(Error::Validation(_))));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::Validation(_))));
    }

    #[test]
    fn contract_triangle_gives_edge() {
        let k3 = complete(3);
        for (u, v) in k3.edges() {
            let (g, _) = k3.contract_edge(u, v).unwrap();
            assert_eq!(g, complete(2));
        }
    }

    #[test]
    fn contract_middle_of_path() {
        let p4 = path(4);
        let (g, map) = p4.contract_edge(1, 2).unwrap();
        assert_eq!(g, path(3));
        assert_eq!(map, vec![0, 1, 1, 2]);
    }

    #[test]
    fn contract_c4_merges_parallels() {
        let (g, _) = cycle(4).contract_edge(0, 1).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, complete(3));
    }

    #[test]
    fn contract_rejects_non_edge() {
        assert!(matches!(
            path(3).contract_edge(0, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn edges_are_normalized() {
        let g = Graph::from_edges(3, &[(2, 0), (1, 0)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
    }
}
