//! Reduction of a colored H-scheme along a stable set `S` and a star forest
//! `F` joining `S` to its neighborhood.
//!
//! Each path of an `F` edge `vw` (`v` in `S`) is contracted into `w`, then the
//! remaining non-root vertices colored by `S` are deleted. What is left of the
//! other paths is an `(H - S)`-scheme, and every `u` in `S` ends up adjacent to
//! each of its pattern neighbors, so a rooted `(H - S)`-model extends by the
//! singletons `{u}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_minor_model, MinorModel, Quotient};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, mask_of, Graph, Mask};
use crate::scheme::{validate_colored_scheme, validate_hscheme, ColoredScheme, HScheme};

/// Output of [`removable_reduction`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub original: ColoredScheme,
    /// Host after contracting the `F` paths and deleting `S`-colored vertices.
    pub reduced: Graph,
    /// Input-host vertex to reduced-host vertex; `None` if deleted.
    pub host_map: Vec<Option<usize>>,
    preimage: Vec<Mask>,
    /// The `(H - S)`-scheme. Its host is `reduced` minus the roots of `S`.
    pub remainder: HScheme,
    /// Remainder pattern vertex to original pattern vertex.
    pub pattern_map: Vec<usize>,
    /// Remainder host vertex to reduced host vertex.
    pub remainder_host_map: Vec<usize>,
    /// For each `u` in `S` and pattern edge `uw`: the single reduced-host edge
    /// joining the roots of `u` and `w`.
    pub single_edges: Vec<SingleEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SingleEdge {
    pub stable: usize,
    pub neighbor: usize,
    pub edge: (usize, usize),
}

fn hypothesis(failures: Vec<String>) -> Error {
    Error::Precondition(format!("removable-set hypotheses fail: {}", failures.join("; ")))
}

fn check_hypotheses(c: &ColoredScheme, s_set: &[usize], f: &[(usize, usize)]) -> Result<(Mask, Vec<(usize, usize)>)> {
    let h = &c.scheme.pattern;
    let mut fails = Vec::new();
    if let Some(&x) = s_set.iter().find(|&&x| x >= h.n()) {
        return Err(hypothesis(vec![format!("{x} is not a pattern vertex")]));
    }
    let sm = mask_of(s_set.iter().copied());
    if !h.is_stable(sm) {
        fails.push("S is not stable".to_string());
    }
    let ns = h.neighborhood_of(sm);
    // F edges as (stable end, neighborhood end)
    let mut star = Vec::new();
    let mut f_deg = vec![0usize; h.n()];
    for &(a, b) in f {
        if a >= h.n() || b >= h.n() || !h.has_edge(a, b) {
            fails.push(format!("F edge {a}-{b} is not a pattern edge"));
            continue;
        }
        f_deg[a] += 1;
        f_deg[b] += 1;
        match (sm & bit(a) != 0, sm & bit(b) != 0) {
            (true, false) => star.push((a, b)),
            (false, true) => star.push((b, a)),
            _ => fails.push(format!("F edge {a}-{b} does not join S to N(S)")),
        }
    }
    for &u in s_set {
        if f_deg[u] > 1 {
            fails.push(format!("{u} in S has {} F edges; stars must be rooted in N(S)", f_deg[u]));
        }
    }
    for w in bits(ns) {
        if f_deg[w] == 0 {
            fails.push(format!("{w} in N(S) is isolated in F"));
        }
    }
    if !fails.is_empty() {
        return Err(hypothesis(fails));
    }
    // second vertex of each non-F path out of S must lie on some F path at w
    let s = &c.scheme;
    for &u in s_set {
        for w in h.neighbors(u) {
            if star.contains(&(u, w)) {
                continue;
            }
            let p = s.path_from(u, w).expect("valid scheme has every path");
            let second = p[1];
            let ok = star
                .iter()
                .filter(|&&(_, ww)| ww == w)
                .any(|&(v, _)| s.path(v, w).is_some_and(|q| q.contains(&second)));
            if !ok {
                fails.push(format!("second vertex {second} of path {u}-{w} is on no F path ending at {w}"));
            }
        }
    }
    if !fails.is_empty() {
        return Err(hypothesis(fails));
    }
    Ok((sm, star))
}

/// Applies the reduction after checking every hypothesis on `(S, F)`.
pub fn removable_reduction(c: &ColoredScheme, s_set: &[usize], f: &[(usize, usize)]) -> Result<Reduction> {
    let report = validate_colored_scheme(c);
    if !report.is_valid() {
        return Err(Error::Precondition("colored scheme is invalid".into()));
    }
    let (sm, star) = check_hypotheses(c, s_set, f)?;
    let s = &c.scheme;
    let h = &s.pattern;
    let g = &s.host;

    let mut rep: Vec<Option<usize>> = (0..g.n()).map(Some).collect();
    let mut merged: Mask = 0;
    for &(v, w) in &star {
        let p = s.path_from(v, w).expect("checked");
        for &x in &p[1..] {
            if merged & bit(x) != 0 && rep[x] != Some(s.roots[w]) {
                return Err(Error::Internal(format!("host vertex {x} contracted into two roots")));
            }
            merged |= bit(x);
            rep[x] = Some(s.roots[w]);
        }
    }
    let s_roots = mask_of(bits(sm).map(|u| s.roots[u]));
    for (x, r) in rep.iter_mut().enumerate() {
        if merged & bit(x) == 0 && s_roots & bit(x) == 0 && sm & bit(c.colors[x]) != 0 {
            *r = None;
        }
    }
    let q = Quotient::new(g, &rep);
    let reduced = q.graph.clone();

    let mut single_edges = Vec::new();
    for u in bits(sm) {
        for w in h.neighbors(u) {
            let (a, b) = (q.map[s.roots[u]].expect("root kept"), q.map[s.roots[w]].expect("root kept"));
            if !reduced.has_edge(a, b) {
                return Err(Error::Internal(format!("reduced host lacks edge for {u}-{w}")));
            }
            single_edges.push(SingleEdge {
                stable: u,
                neighbor: w,
                edge: (a, b),
            });
        }
    }

    let (pattern, pattern_map) = h.induced(h.vertex_mask() & !sm);
    let keep = reduced.vertex_mask() & !bits(sm).fold(0, |m, u| m | bit(q.map[s.roots[u]].unwrap()));
    let (rhost, rmap) = reduced.induced(keep);
    let mut inv = vec![usize::MAX; reduced.n()];
    for (i, &x) in rmap.iter().enumerate() {
        inv[x] = i;
    }
    let roots: Vec<usize> = pattern_map.iter().map(|&x| inv[q.map[s.roots[x]].unwrap()]).collect();
    let mut paths = BTreeMap::new();
    for (a, b) in pattern.edges() {
        let (oa, ob) = (pattern_map[a], pattern_map[b]);
        let walk = s
            .path_from(oa, ob)
            .expect("checked")
            .into_iter()
            .map(|x| q.map[x].map(|y| inv[y]))
            .collect::<Option<Vec<usize>>>()
            .filter(|w| w.iter().all(|&y| y != usize::MAX))
            .ok_or_else(|| Error::Internal(format!("path {oa}-{ob} lost a vertex in the reduction")))?;
        paths.insert((a, b), erase_loops(&walk));
    }
    let remainder = HScheme::new(pattern, rhost, roots, paths)?;
    let r = validate_hscheme(&remainder);
    if !r.is_valid() {
        return Err(Error::Internal(format!("reduced scheme is invalid: {r:?}")));
    }
    Ok(Reduction {
        original: c.clone(),
        reduced,
        host_map: q.map.clone(),
        preimage: q.preimage.clone(),
        remainder,
        pattern_map,
        remainder_host_map: rmap,
        single_edges,
    })
}

/// Turns a walk into a path by cutting out every closed sub-walk.
fn erase_loops(walk: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for &x in walk {
        if let Some(i) = out.iter().position(|&y| y == x) {
            out.truncate(i + 1);
        } else {
            out.push(x);
        }
    }
    out
}

impl Reduction {
    /// Extends a rooted model of the remainder pattern in the remainder host
    /// to a rooted model of the original pattern in the original host.
    pub fn extend(&self, m: &MinorModel) -> Result<MinorModel> {
        let rem = &self.remainder;
        if m.pattern != rem.pattern || m.host != rem.host {
            return Err(Error::Precondition("model is not over the remainder scheme".into()));
        }
        if m.roots.as_deref() != Some(&rem.roots[..]) {
            return Err(Error::Precondition("model is not rooted at the remainder roots".into()));
        }
        let r = check_minor_model(m);
        if !r.is_valid() {
            return Err(Error::Precondition("remainder model is invalid".into()));
        }
        let orig = &self.original.scheme;
        let mut sets = vec![0; orig.pattern.n()];
        for (i, ms) in m.masks().into_iter().enumerate() {
            let in_reduced = bits(ms).fold(0, |acc, x| acc | bit(self.remainder_host_map[x]));
            sets[self.pattern_map[i]] = bits(in_reduced).fold(0, |acc, y| acc | self.preimage[y]);
        }
        for e in &self.single_edges {
            sets[e.stable] = bit(orig.roots[e.stable]);
        }
        for (u, set) in sets.iter_mut().enumerate() {
            if *set == 0 {
                // isolated pattern vertex of S
                *set = bit(orig.roots[u]);
            }
        }
        let out = MinorModel::from_masks(&orig.pattern, &orig.host, &sets, Some(&orig.roots));
        let r = check_minor_model(&out);
        if !r.is_valid() {
            return Err(Error::Internal(format!("extended model fails its check: {r:?}")));
        }
        Ok(out)
    }
}
