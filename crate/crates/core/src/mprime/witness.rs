//! Shift automorphisms and inducing stable sets.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_cap, Result};
use crate::graph::{bipartite_matching, bit, bits, is_bipartite, mask_of, Graph, Mask};
use crate::report::ValidationReport;

/// Largest graph searched for a shift automorphism.
pub const SHIFT_MAX_VERTICES: usize = 24;
/// Largest graph whose stable sets are enumerated.
pub const STABLE_SET_MAX_VERTICES: usize = 20;

pub mod clause {
    pub const STABLE: &str = "stable-set";
    pub const MATCHING_EDGE: &str = "matching-in-cut";
    pub const MATCHING_DISJOINT: &str = "matching-disjoint";
    pub const MATCHING_COVERS: &str = "matching-covers-neighborhood";
    pub const SHIFT_DOMAIN: &str = "shift-domain";
    pub const SHIFT_ADJACENT: &str = "shift-moves-along-edges";
    pub const SHIFT_AUTOMORPHISM: &str = "shift-preserves-edges";
}

/// A stable set `S`, a matching of `[S, N(S)]` covering `N(S)`, and a shift
/// automorphism of `H - (S ∪ N(S))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducingWitness {
    pub stable: Vec<usize>,
    /// `(s, w)` with `s` in `S` and `w` in `N(S)`.
    pub matching: Vec<(usize, usize)>,
    /// `(v, π(v))` for every remaining vertex, sorted by `v`.
    pub shift: Vec<(usize, usize)>,
}

impl InducingWitness {
    pub fn stable_mask(&self) -> Mask {
        mask_of(self.stable.iter().copied())
    }

    pub fn partner(&self, w: usize) -> Option<usize> {
        self.matching.iter().find(|&&(_, x)| x == w).map(|&(s, _)| s)
    }

    pub fn shift_of(&self, v: usize) -> Option<usize> {
        self.shift.iter().find(|&&(x, _)| x == v).map(|&(_, y)| y)
    }
}

/// Lexicographically least shift automorphism, or `None`. The graph with no
/// vertices has the empty one.
pub fn find_shift_automorphism(g: &Graph) -> Result<Option<Vec<usize>>> {
    ensure_cap("shift automorphism vertex count", SHIFT_MAX_VERTICES, g.n())?;
    let n = g.n();
    let mut pi = vec![usize::MAX; n];
    let mut used: Mask = 0;
    Ok(shift_search(g, 0, &mut pi, &mut used).then_some(pi))
}

fn shift_search(g: &Graph, v: usize, pi: &mut [usize], used: &mut Mask) -> bool {
    if v == g.n() {
        return true;
    }
    for w in bits(g.neighbor_mask(v) & !*used) {
        if g.degree(w) != g.degree(v) {
            continue;
        }
        if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(pi[u], w)) {
            continue;
        }
        pi[v] = w;
        *used |= bit(w);
        if shift_search(g, v + 1, pi, used) {
            return true;
        }
        *used &= !bit(w);
    }
    pi[v] = usize::MAX;
    false
}

/// Whether `pi` is a shift automorphism of `g`.
pub fn is_shift_automorphism(g: &Graph, pi: &[usize]) -> bool {
    let n = g.n();
    pi.len() == n
        && mask_of(pi.iter().copied().filter(|&x| x < n)) == g.vertex_mask()
        && (0..n).all(|v| g.has_edge(v, pi[v]))
        && g.edges().into_iter().all(|(u, v)| g.has_edge(pi[u], pi[v]))
}

/// Checks whether the given stable set induces a witness and builds it.
pub fn witness_for_stable_set(h: &Graph, stable: &[usize]) -> Result<Option<InducingWitness>> {
    let sm = mask_of(stable.iter().copied());
    if sm & !h.vertex_mask() != 0 || !h.is_stable(sm) {
        return Ok(None);
    }
    let ns = h.neighborhood_of(sm);
    if ns.count_ones() > sm.count_ones() {
        return Ok(None);
    }
    let s_list: Vec<usize> = bits(sm).collect();
    let n_list: Vec<usize> = bits(ns).collect();
    let matching = bipartite_matching(h, &s_list, &n_list)?;
    if matching.len() != n_list.len() {
        return Ok(None);
    }
    let (rest, map) = h.induced(h.vertex_mask() & !(sm | ns));
    let Some(pi) = find_shift_automorphism(&rest)? else {
        return Ok(None);
    };
    Ok(Some(InducingWitness {
        stable: s_list,
        matching,
        shift: (0..rest.n()).map(|i| (map[i], map[pi[i]])).collect(),
    }))
}

/// The first inducing stable set, ordered by size and then lexicographically,
/// starting with the empty set.
pub fn find_inducing_stable_set(h: &Graph) -> Result<Option<InducingWitness>> {
    ensure_cap("stable set enumeration vertex count", STABLE_SET_MAX_VERTICES, h.n())?;
    for size in 0..=h.n() {
        let mut chosen = Vec::with_capacity(size);
        if let Some(w) = stable_sets_of_size(h, size, 0, 0, &mut chosen)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn stable_sets_of_size(
    h: &Graph,
    size: usize,
    from: usize,
    blocked: Mask,
    chosen: &mut Vec<usize>,
) -> Result<Option<InducingWitness>> {
    if chosen.len() == size {
        return witness_for_stable_set(h, chosen);
    }
    let need = size - chosen.len();
    for v in from..h.n() {
        if h.n() - v < need {
            break;
        }
        if blocked & bit(v) != 0 {
            continue;
        }
        chosen.push(v);
        let found = stable_sets_of_size(h, size, v + 1, blocked | h.neighbor_mask(v), chosen)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Checks every clause of an inducing-stable-set witness.
pub fn verify_inducing_witness(h: &Graph, w: &InducingWitness) -> ValidationReport {
    let mut r = ValidationReport::new();
    let n = h.n();
    if w.stable.iter().any(|&v| v >= n) {
        r.violate(clause::STABLE, "stable set names a missing vertex");
        return r;
    }
    let sm = w.stable_mask();
    if !h.is_stable(sm) {
        r.violate(clause::STABLE, format!("{:?} is not stable", w.stable));
    }
    let ns = h.neighborhood_of(sm);
    let mut covered: Mask = 0;
    let mut used_s: Mask = 0;
    for &(s, x) in &w.matching {
        if s >= n || x >= n || sm & bit(s) == 0 || ns & bit(x) == 0 || !h.has_edge(s, x) {
            r.violate(clause::MATCHING_EDGE, format!("{s}-{x} is not an edge of [S, N(S)]"));
            continue;
        }
        if covered & bit(x) != 0 || used_s & bit(s) != 0 {
            r.violate(clause::MATCHING_DISJOINT, format!("{s}-{x} shares an endpoint"));
        }
        covered |= bit(x);
        used_s |= bit(s);
    }
    if covered & ns != ns {
        r.violate(
            clause::MATCHING_COVERS,
            format!("uncovered: {:?}", bits(ns & !covered).collect::<Vec<_>>()),
        );
    }
    let rest = h.vertex_mask() & !(sm | ns);
    let dom = mask_of(w.shift.iter().map(|&(v, _)| v).filter(|&v| v < n));
    let img = mask_of(w.shift.iter().map(|&(_, v)| v).filter(|&v| v < n));
    if w.shift.len() != rest.count_ones() as usize || dom != rest || img != rest {
        r.violate(clause::SHIFT_DOMAIN, "shift is not a permutation of the remaining vertices");
        return r;
    }
    let pi = |v: usize| w.shift_of(v).expect("domain checked");
    for v in bits(rest) {
        if !h.has_edge(v, pi(v)) {
            r.violate(clause::SHIFT_ADJACENT, format!("{v} is not adjacent to its image {}", pi(v)));
        }
    }
    for (a, b) in h.edges() {
        if rest & bit(a) != 0 && rest & bit(b) != 0 && !h.has_edge(pi(a), pi(b)) {
            r.violate(clause::SHIFT_AUTOMORPHISM, format!("edge {a}-{b} maps to a non-edge"));
        }
    }
    r
}

/// Minimum vertex cover of a bipartite graph from a maximum matching
/// (König). `None` if the graph is not bipartite.
pub fn bipartite_vertex_cover(g: &Graph) -> Result<Option<Vec<usize>>> {
    let Some(parts) = is_bipartite(g) else {
        return Ok(None);
    };
    let matching = bipartite_matching(g, &parts.left, &parts.right)?;
    let mut mate = vec![usize::MAX; g.n()];
    for &(a, b) in &matching {
        mate[a] = b;
        mate[b] = a;
    }
    // alternating reachability from unmatched left vertices
    let left = mask_of(parts.left.iter().copied());
    let mut seen: Mask = bits(left).filter(|&a| mate[a] == usize::MAX).fold(0, |m, a| m | bit(a));
    let mut stack: Vec<usize> = bits(seen).collect();
    while let Some(a) = stack.pop() {
        for b in bits(g.neighbor_mask(a) & !seen) {
            seen |= bit(b);
            let m = mate[b];
            if m != usize::MAX && seen & bit(m) == 0 {
                seen |= bit(m);
                stack.push(m);
            }
        }
    }
    let cover = (left & !seen) | (!left & seen & g.vertex_mask());
    Ok(Some(bits(cover).collect()))
}

/// An even cycle in `[S, N(S)]` alternating with the witness matching, found
/// by walking from the least vertex of `S`. Exists whenever `S` is nonempty
/// and every vertex of `S` has degree at least 2.
pub fn alternating_cycle(h: &Graph, w: &InducingWitness) -> Option<Vec<usize>> {
    let start = *w.stable.first()?;
    let mut walk = vec![start];
    let mut s = start;
    loop {
        let out = bits(h.neighbor_mask(s)).find(|&x| w.partner(x) != Some(s))?;
        let next = w.partner(out)?;
        walk.push(out);
        if let Some(i) = walk.iter().step_by(2).position(|&y| y == next) {
            return Some(walk[2 * i..].to_vec());
        }
        walk.push(next);
        s = next;
    }
}
