//! Conversion of an arbitrary H-scheme into a colored scheme on a rooted
//! minor of its host.
//!
//! Four rewriting steps are applied one at a time, earlier steps first:
//!
//! 1. delete a host vertex, then a host edge, that no path uses;
//! 2. contract a non-root vertex lying on exactly one path into its smaller
//!    neighbor;
//! 3. replace a path that has a chord by the lexicographically least shortest
//!    path inside its own vertex set;
//! 4. contract an edge whose endpoints have the same forced color, keeping the
//!    root if there is one.
//!
//! Steps 1, 2 and 4 shrink the host and step 3 shortens a path, so the loop
//! terminates. Vertex ids stay those of the input host until the final
//! compaction, which keeps the trace directly replayable.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{validate_colored_scheme, validate_hscheme, ColoredScheme, HScheme, PatternEdge};
use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractRule {
    /// The removed vertex lay on a single path.
    SinglePath,
    /// Both endpoints carried the same color.
    SameColor,
}

/// One rewriting step, in input-host vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TraceStep {
    DeleteVertex { vertex: usize },
    DeleteEdge { u: usize, v: usize },
    Contract { keep: usize, removed: usize, rule: ContractRule },
    Reroute { edge: PatternEdge, path: Vec<usize> },
}

/// Result of [`normalize_scheme`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub colored: ColoredScheme,
    pub trace: Vec<TraceStep>,
    /// `origin[v]` is the input-host vertex that output vertex `v` descends from.
    pub origin: Vec<usize>,
}

impl Normalized {
    /// Maps vertex sets of the output host back to the input host, undoing
    /// the contractions. Connected sets stay connected.
    pub fn lift(&self, sets: &[Mask]) -> Vec<Mask> {
        let mut out: Vec<Mask> = sets
            .iter()
            .map(|&m| bits(m).fold(0, |acc, v| acc | bit(self.origin[v])))
            .collect();
        for step in self.trace.iter().rev() {
            if let TraceStep::Contract { keep, removed, .. } = *step {
                for m in out.iter_mut() {
                    if *m & bit(keep) != 0 {
                        *m |= bit(removed);
                    }
                }
            }
        }
        out
    }
}

struct Work {
    adj: Vec<Mask>,
    alive: Mask,
}

impl Work {
    fn new(g: &Graph) -> Self {
        Work {
            adj: g.adjacency().to_vec(),
            alive: g.vertex_mask(),
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    fn delete_vertex(&mut self, v: usize) {
        for w in bits(self.adj[v]) {
            self.adj[w] &= !bit(v);
        }
        self.adj[v] = 0;
        self.alive &= !bit(v);
    }

    fn delete_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    fn contract(&mut self, keep: usize, removed: usize) {
        let moved = self.adj[removed] & !bit(keep);
        self.delete_vertex(removed);
        for w in bits(moved) {
            self.adj[w] |= bit(keep);
        }
        self.adj[keep] |= moved;
    }

    fn apply(&mut self, step: &TraceStep) -> Result<()> {
        let bad = |what: String| Err(Error::Precondition(format!("trace step not applicable: {what}")));
        match *step {
            TraceStep::DeleteVertex { vertex } => {
                if self.alive & bit(vertex) == 0 {
                    return bad(format!("vertex {vertex} already gone"));
                }
                self.delete_vertex(vertex);
            }
            TraceStep::DeleteEdge { u, v } => {
                if !self.has_edge(u, v) {
                    return bad(format!("no edge {u}-{v}"));
                }
                self.delete_edge(u, v);
            }
            TraceStep::Contract { keep, removed, .. } => {
                if !self.has_edge(keep, removed) {
                    return bad(format!("no edge {keep}-{removed} to contract"));
                }
                self.contract(keep, removed);
            }
            TraceStep::Reroute { .. } => {}
        }
        Ok(())
    }

    fn compact(&self) -> (Graph, Vec<usize>) {
        let origin: Vec<usize> = bits(self.alive).collect();
        let mut pos = vec![usize::MAX; self.adj.len()];
        for (i, &v) in origin.iter().enumerate() {
            pos[v] = i;
        }
        let adj = origin
            .iter()
            .map(|&v| bits(self.adj[v]).fold(0, |m, w| m | bit(pos[w])))
            .collect();
        (
            Graph::from_adjacency(adj).expect("compaction preserves simplicity"),
            origin,
        )
    }
}

/// Replays a trace on `host`; returns the compacted result and its origin map.
pub fn replay_trace(host: &Graph, trace: &[TraceStep]) -> Result<(Graph, Vec<usize>)> {
    let mut w = Work::new(host);
    for step in trace {
        w.apply(step)?;
    }
    Ok(w.compact())
}

/// Replaces `removed` by `keep` and cuts out any loop this creates.
fn merge_in_path(p: &mut Vec<usize>, keep: usize, removed: usize) {
    for x in p.iter_mut() {
        if *x == removed {
            *x = keep;
        }
    }
    if let (Some(first), Some(last)) = (
        p.iter().position(|&x| x == keep),
        p.iter().rposition(|&x| x == keep),
    ) {
        if first != last {
            p.drain(first..last);
        }
    }
}

/// Lexicographically least shortest `a`-`b` path inside `within`.
fn least_shortest_path(adj: &[Mask], a: usize, b: usize, within: Mask) -> Option<Vec<usize>> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[b] = 0;
    let mut frontier = bit(b);
    let mut seen = bit(b);
    let mut d = 0;
    while frontier != 0 && seen & bit(a) == 0 {
        d += 1;
        let next = bits(frontier).fold(0, |m, v| m | adj[v]) & within & !seen;
        for v in bits(next) {
            dist[v] = d;
        }
        seen |= next;
        frontier = next;
    }
    if dist[a] == usize::MAX {
        return None;
    }
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        cur = bits(adj[cur] & within).find(|&w| dist[w] == dist[cur] - 1)?;
        path.push(cur);
    }
    Some(path)
}

struct Normalizer {
    work: Work,
    paths: BTreeMap<PatternEdge, Vec<usize>>,
    roots: Vec<usize>,
    root_mask: Mask,
    trace: Vec<TraceStep>,
}

impl Normalizer {
    fn used(&self) -> (Mask, Vec<Mask>) {
        let mut vm = self.root_mask;
        let mut em = vec![0; self.work.adj.len()];
        for p in self.paths.values() {
            for &x in p {
                vm |= bit(x);
            }
            for w in p.windows(2) {
                em[w[0]] |= bit(w[1]);
                em[w[1]] |= bit(w[0]);
            }
        }
        (vm, em)
    }

    fn path_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.work.adj.len()];
        for p in self.paths.values() {
            for &x in p {
                c[x] += 1;
            }
        }
        c
    }

    fn contract(&mut self, keep: usize, removed: usize, rule: ContractRule) {
        self.work.contract(keep, removed);
        for p in self.paths.values_mut() {
            merge_in_path(p, keep, removed);
        }
        self.trace.push(TraceStep::Contract {
            keep,
            removed,
            rule,
        });
    }

    fn delete_unused(&mut self) -> bool {
        let (vm, em) = self.used();
        if let Some(v) = bits(self.work.alive & !vm).next() {
            self.work.delete_vertex(v);
            self.trace.push(TraceStep::DeleteVertex { vertex: v });
            return true;
        }
        for u in bits(self.work.alive) {
            let spare = self.work.adj[u] & !em[u] & !((bit(u) << 1) - 1);
            if let Some(v) = bits(spare).next() {
                self.work.delete_edge(u, v);
                self.trace.push(TraceStep::DeleteEdge { u, v });
                return true;
            }
        }
        false
    }

    fn contract_single_path_vertex(&mut self) -> bool {
        let counts = self.path_counts();
        let Some(x) = bits(self.work.alive & !self.root_mask).find(|&x| counts[x] == 1) else {
            return false;
        };
        let y = self.work.adj[x].trailing_zeros() as usize;
        self.contract(y, x, ContractRule::SinglePath);
        true
    }

    fn shortcut_chorded_path(&mut self) -> Result<bool> {
        let chorded = self.paths.iter().find(|(_, p)| {
            (0..p.len()).any(|i| (i + 2..p.len()).any(|j| self.work.has_edge(p[i], p[j])))
        });
        let Some((&e, p)) = chorded else {
            return Ok(false);
        };
        let within = p.iter().fold(0, |m, &x| m | bit(x));
        let (a, b) = (p[0], p[p.len() - 1]);
        let np = least_shortest_path(&self.work.adj, a, b, within)
            .ok_or_else(|| Error::Internal("chorded path lost connectivity".into()))?;
        if np.len() >= p.len() {
            return Err(Error::Internal(format!("shortcut of {e:?} did not shorten it")));
        }
        self.trace.push(TraceStep::Reroute {
            edge: e,
            path: np.clone(),
        });
        self.paths.insert(e, np);
        Ok(true)
    }

    fn forced_colors(&self) -> Result<Vec<usize>> {
        let mut col = vec![usize::MAX; self.work.adj.len()];
        for (v, &r) in self.roots.iter().enumerate() {
            col[r] = v;
        }
        let mut common = vec![u64::MAX; self.work.adj.len()];
        for (&(a, b), p) in &self.paths {
            for &x in p {
                common[x] &= bit(a) | bit(b);
            }
        }
        for x in bits(self.work.alive & !self.root_mask) {
            if common[x].count_ones() != 1 {
                return Err(Error::Internal(format!(
                    "vertex {x} has no unique shared path endpoint"
                )));
            }
            col[x] = common[x].trailing_zeros() as usize;
        }
        Ok(col)
    }

    fn contract_monochromatic_edge(&mut self) -> Result<bool> {
        let col = self.forced_colors()?;
        for a in bits(self.work.alive) {
            let higher = self.work.adj[a] & !((bit(a) << 1) - 1);
            if let Some(b) = bits(higher).find(|&b| col[a] == col[b]) {
                let (keep, removed) = if self.root_mask & bit(b) != 0 { (b, a) } else { (a, b) };
                self.contract(keep, removed, ContractRule::SameColor);
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn measure(&self) -> (usize, usize) {
        let size = self.work.alive.count_ones() as usize
            + bits(self.work.alive).map(|v| self.work.adj[v].count_ones() as usize).sum::<usize>() / 2;
        (size, self.paths.values().map(Vec::len).sum())
    }

    fn step(&mut self) -> Result<bool> {
        if self.delete_unused() || self.contract_single_path_vertex() {
            return Ok(true);
        }
        if self.shortcut_chorded_path()? {
            return Ok(true);
        }
        self.contract_monochromatic_edge()
    }
}

/// Normalizes a valid H-scheme into a colored scheme on a rooted minor of its
/// host. The trace replays on the input host to exactly the output host.
pub fn normalize_scheme(s: &HScheme) -> Result<Normalized> {
    let report = validate_hscheme(s);
    if !report.is_valid() {
        let first = &report.violations[0];
        return Err(Error::Precondition(format!(
            "input is not an H-scheme ({}: {})",
            first.clause, first.detail
        )));
    }
    let mut nz = Normalizer {
        work: Work::new(&s.host),
        paths: s.paths.clone(),
        roots: s.roots.clone(),
        root_mask: s.root_mask(),
        trace: Vec::new(),
    };
    let mut last = nz.measure();
    while nz.step()? {
        let now = nz.measure();
        if now >= last {
            return Err(Error::Internal("normalization step did not make progress".into()));
        }
        last = now;
    }
    let col = nz.forced_colors()?;
    let (host, origin) = nz.work.compact();
    let mut pos = vec![usize::MAX; s.host.n()];
    for (i, &v) in origin.iter().enumerate() {
        pos[v] = i;
    }
    let scheme = HScheme {
        pattern: s.pattern.clone(),
        host,
        roots: nz.roots.iter().map(|&r| pos[r]).collect(),
        paths: nz
            .paths
            .into_iter()
            .map(|(e, p)| (e, p.into_iter().map(|x| pos[x]).collect()))
            .collect(),
    };
    let colors = origin.iter().map(|&v| col[v]).collect();
    let colored = ColoredScheme { scheme, colors };
    let check = validate_colored_scheme(&colored);
    if !check.is_valid() {
        return Err(Error::Internal(format!(
            "normalized scheme fails validation: {:?}",
            check.violations
        )));
    }
    Ok(Normalized {
        colored,
        trace: nz.trace,
        origin,
    })
}
