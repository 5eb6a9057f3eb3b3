use std::fmt;

use serde::{Serialize, Serializer};

use super::{bit, format::to_graph6, Graph};
use crate::error::{ensure_cap, Result};

/// Largest order accepted by the permutation canonicalizer.
pub const CANON_MAX_VERTICES: usize = 8;

/// Lexicographically least upper-triangle adjacency string over all vertex
/// orderings. Bits run column by column, `(0,1),(0,2),(1,2),(0,3),...`, and
/// the first bit is the most significant, so numeric order is lexicographic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: u64,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl CanonicalForm {
    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let total = pair_count(self.n);
        let mut edges = Vec::new();
        let mut p = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.code >> (total - 1 - p) & 1 == 1 {
                    edges.push((i, j));
                }
                p += 1;
            }
        }
        Graph::from_edges(self.n, &edges).expect("canonical code decodes to a simple graph")
    }

    pub fn graph6(&self) -> String {
        to_graph6(&self.to_graph()).expect("canonical graphs are small")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.graph6())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.graph6())
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    order: Vec<usize>,
    used: u64,
    best_code: u64,
    best_order: Vec<usize>,
    have_best: bool,
}

impl Search<'_> {
    /// `prefix` holds the bits of columns `0..depth`, `len` of them.
    fn extend(&mut self, depth: usize, prefix: u64, len: usize, tied: bool) {
        if depth == self.n {
            if !self.have_best || prefix < self.best_code {
                self.best_code = prefix;
                self.best_order.clone_from(&self.order);
                self.have_best = true;
            }
            return;
        }
        let total = pair_count(self.n);
        for v in 0..self.n {
            if self.used & bit(v) != 0 {
                continue;
            }
            let mut p = prefix;
            for &u in &self.order {
                p = (p << 1) | self.g.has_edge(u, v) as u64;
            }
            let new_len = len + depth;
            let mut still_tied = false;
            if self.have_best && tied {
                let best_prefix = if new_len == 0 {
                    0
                } else {
                    self.best_code >> (total - new_len)
                };
                if p > best_prefix {
                    continue;
                }
                still_tied = p == best_prefix;
            }
            self.order.push(v);
            self.used |= bit(v);
            self.extend(depth + 1, p, new_len, still_tied || !self.have_best);
            self.order.pop();
            self.used &= !bit(v);
        }
    }
}

/// Canonical form plus a labeling `perm` (old vertex `v` goes to `perm[v]`)
/// with `g.relabel(&perm) == form.to_graph()`.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    ensure_cap("canonical form vertex count", CANON_MAX_VERTICES, g.n())?;
    let n = g.n();
    let mut s = Search {
        g,
        n,
        order: Vec::with_capacity(n),
        used: 0,
        best_code: 0,
        best_order: Vec::new(),
        have_best: false,
    };
    s.extend(0, 0, 0, true);
    let mut perm = vec![0; n];
    for (pos, &v) in s.best_order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((
        CanonicalForm {
            n,
            code: s.best_code,
        },
        perm,
    ))
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(c, _)| c)
}
