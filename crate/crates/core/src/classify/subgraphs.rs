//! Connected subgraphs up to isomorphism, for the deep negative rule.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, canonical_form, CanonicalForm, Graph, Mask};

/// Largest subgraph examined in deep mode.
pub const DEEP_MAX_SUBGRAPH_VERTICES: usize = 7;
/// Default cap on distinct connected edge sets.
pub const DEFAULT_SUBGRAPH_CAP: usize = 500_000;

const MAX_EDGES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphClass {
    /// Host edges of the first representative found.
    pub edges: Vec<(usize, usize)>,
    /// The representative relabeled onto `0..k`, in host vertex order.
    pub graph: Graph,
    pub form: Option<CanonicalForm>,
}

/// One connected subgraph (with at least one edge and at most `max_vertices`
/// vertices) per isomorphism class, ordered by canonical form. Representatives
/// are the numerically least edge sets.
pub fn connected_subgraphs(g: &Graph, max_vertices: usize, cap: usize) -> Result<Vec<SubgraphClass>> {
    let edges = g.edges();
    if edges.len() > MAX_EDGES {
        return Err(Error::capacity("subgraph enumeration edge count", MAX_EDGES, edges.len()));
    }
    let verts = |set: u128| -> Mask {
        (0..edges.len())
            .filter(|&i| set >> i & 1 == 1)
            .fold(0, |m, i| m | bit(edges[i].0) | bit(edges[i].1))
    };
    let mut seen: HashSet<u128> = HashSet::new();
    let mut stack: Vec<u128> = Vec::new();
    for i in 0..edges.len() {
        let s = 1u128 << i;
        if seen.insert(s) {
            stack.push(s);
        }
    }
    while let Some(set) = stack.pop() {
        let vm = verts(set);
        let full = vm.count_ones() as usize >= max_vertices;
        for (i, &(a, b)) in edges.iter().enumerate() {
            if set >> i & 1 == 1 {
                continue;
            }
            let touches = vm & (bit(a) | bit(b));
            if touches == 0 || (full && touches != bit(a) | bit(b)) {
                continue;
            }
            let next = set | 1u128 << i;
            if seen.insert(next) {
                if seen.len() > cap {
                    return Err(Error::capacity("connected subgraph count", cap, seen.len()));
                }
                stack.push(next);
            }
        }
    }
    let mut all: Vec<u128> = seen.into_iter().collect();
    all.sort_unstable();
    let mut classes: BTreeMap<CanonicalForm, SubgraphClass> = BTreeMap::new();
    for set in all {
        let vm = verts(set);
        let order: Vec<usize> = bits(vm).collect();
        let pos = |v: usize| order.iter().position(|&x| x == v).expect("edge endpoint");
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|&i| set >> i & 1 == 1).map(|i| edges[i]).collect();
        let local: Vec<(usize, usize)> = chosen.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        let sub = Graph::from_edges(order.len(), &local)?;
        let form = canonical_form(&sub)?;
        classes.entry(form).or_insert(SubgraphClass {
            edges: chosen,
            graph: sub,
            form: Some(form),
        });
    }
    Ok(classes.into_values().collect())
}
