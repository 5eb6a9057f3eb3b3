//! Minor models: checking, exhaustive search, and two constructive
//! extraction procedures from colored schemes.

mod removable;
mod search;
mod untangle;

pub use removable::{removable_reduction, Reduction};
pub use search::{
    find_minor, find_minor_with, find_rooted_minor, find_rooted_minor_with, SearchLimits,
    SearchStats, DEFAULT_MAX_HOST_VERTICES,
};
pub use untangle::untangle_cycle_scheme;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, bits, mask_of, Graph, Mask};
use crate::report::ValidationReport;

pub mod clause {
    pub const SHAPE: &str = "one-branch-set-per-pattern-vertex";
    pub const NONEMPTY: &str = "branch-set-nonempty";
    pub const IN_HOST: &str = "branch-set-in-host";
    pub const DISJOINT: &str = "branch-sets-disjoint";
    pub const CONNECTED: &str = "branch-set-connected";
    pub const EDGE: &str = "pattern-edge-realized";
    pub const ROOTED: &str = "root-in-branch-set";
}

/// Vertex-disjoint connected host sets, one per pattern vertex, with a host
/// edge between the sets of every pattern edge. Rooted models also fix a
/// host vertex inside each set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorModel {
    pub pattern: Graph,
    pub host: Graph,
    /// Sorted host vertices of each branch set, indexed by pattern vertex.
    pub branch_sets: Vec<Vec<usize>>,
    pub roots: Option<Vec<usize>>,
}

impl MinorModel {
    pub fn from_masks(pattern: &Graph, host: &Graph, sets: &[Mask], roots: Option<&[usize]>) -> Self {
        MinorModel {
            pattern: pattern.clone(),
            host: host.clone(),
            branch_sets: sets.iter().map(|&m| bits(m).collect()).collect(),
            roots: roots.map(<[usize]>::to_vec),
        }
    }

    pub fn masks(&self) -> Vec<Mask> {
        self.branch_sets
            .iter()
            .map(|s| mask_of(s.iter().copied().filter(|&v| v < 64)))
            .collect()
    }

    /// The identity model of a graph in itself.
    pub fn identity(g: &Graph) -> Self {
        MinorModel {
            pattern: g.clone(),
            host: g.clone(),
            branch_sets: (0..g.n()).map(|v| vec![v]).collect(),
            roots: Some((0..g.n()).collect()),
        }
    }
}

/// Checks disjointness, connectivity, edge realization and (when rooted)
/// root containment. Every violation is listed.
pub fn check_minor_model(m: &MinorModel) -> ValidationReport {
    let mut r = ValidationReport::new();
    let k = m.pattern.n();
    if m.branch_sets.len() != k {
        r.violate(
            clause::SHAPE,
            format!("{} branch sets for {} pattern vertices", m.branch_sets.len(), k),
        );
        return r;
    }
    if let Some(roots) = &m.roots {
        if roots.len() != k {
            r.violate(clause::ROOTED, format!("{} roots for {k} pattern vertices", roots.len()));
            return r;
        }
    }
    let n = m.host.n();
    for (v, set) in m.branch_sets.iter().enumerate() {
        if let Some(&x) = set.iter().find(|&&x| x >= n) {
            r.violate(clause::IN_HOST, format!("branch set {v} contains missing vertex {x}"));
        }
    }
    if !r.is_valid() {
        return r;
    }
    let masks = m.masks();
    let mut seen: Mask = 0;
    for (v, &s) in masks.iter().enumerate() {
        if s == 0 {
            r.violate(clause::NONEMPTY, format!("branch set {v} is empty"));
        }
        if s & seen != 0 {
            r.violate(
                clause::DISJOINT,
                format!("branch set {v} overlaps earlier sets at {:?}", bits(s & seen).collect::<Vec<_>>()),
            );
        }
        seen |= s;
        if !m.host.is_connected_set(s) {
            r.violate(clause::CONNECTED, format!("branch set {v} {:?} is disconnected", m.branch_sets[v]));
        }
    }
    for (u, v) in m.pattern.edges() {
        if m.host.neighborhood_of(masks[u]) & masks[v] == 0 {
            r.violate(clause::EDGE, format!("no host edge between branch sets {u} and {v}"));
        }
    }
    if let Some(roots) = &m.roots {
        for (v, &x) in roots.iter().enumerate() {
            if x >= n || masks[v] & bit(x) == 0 {
                r.violate(clause::ROOTED, format!("root {x} of {v} is outside its branch set"));
            }
        }
    }
    r
}

/// Host after merging and deleting vertices.
///
/// `rep[x]` names the vertex `x` is merged into (itself when kept alone), or
/// `None` when `x` is deleted. Merged groups must be connected for lifted
/// branch sets to stay connected; that is the caller's job.
pub(crate) struct Quotient {
    pub graph: Graph,
    /// Old vertex to new vertex.
    pub map: Vec<Option<usize>>,
    /// New vertex to its old vertices.
    pub preimage: Vec<Mask>,
}

impl Quotient {
    pub fn new(g: &Graph, rep: &[Option<usize>]) -> Self {
        let n = g.n();
        let reps: Vec<usize> = (0..n).filter(|&x| rep[x] == Some(x)).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &r) in reps.iter().enumerate() {
            index[r] = i;
        }
        let map: Vec<Option<usize>> = rep.iter().map(|r| r.map(|r| index[r])).collect();
        let mut preimage = vec![0; reps.len()];
        for (x, m) in map.iter().enumerate() {
            if let Some(i) = *m {
                preimage[i] |= bit(x);
            }
        }
        let mut adj = vec![0; reps.len()];
        for (a, b) in g.edges() {
            if let (Some(i), Some(j)) = (map[a], map[b]) {
                if i != j {
                    adj[i] |= bit(j);
                    adj[j] |= bit(i);
                }
            }
        }
        Quotient {
            graph: Graph::from_adjacency(adj).expect("quotient of a simple graph is simple"),
            map,
            preimage,
        }
    }

    pub fn lift(&self, m: Mask) -> Mask {
        bits(m).fold(0, |acc, i| acc | self.preimage[i])
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    pattern: Graph,
    host: Graph,
    branch_sets: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roots: Option<BTreeMap<String, usize>>,
}

impl Serialize for MinorModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModelJson {
            pattern: self.pattern.clone(),
            host: self.host.clone(),
            branch_sets: self
                .branch_sets
                .iter()
                .enumerate()
                .map(|(v, b)| (v.to_string(), b.clone()))
                .collect(),
            roots: self
                .roots
                .as_ref()
                .map(|r| r.iter().enumerate().map(|(v, &x)| (v.to_string(), x)).collect()),
        }
        .serialize(s)
    }
}

fn indexed<T: Clone>(map: &BTreeMap<String, T>, k: usize, what: &str) -> Result<Vec<T>> {
    let mut out: Vec<Option<T>> = vec![None; k];
    for (key, val) in map {
        let v: usize = key
            .parse()
            .map_err(|_| Error::Validation(format!("{what} key {key:?} is not a vertex")))?;
        if v >= k {
            return Err(Error::Validation(format!("{what} given for missing pattern vertex {v}")));
        }
        out[v] = Some(val.clone());
    }
    out.into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| Error::Validation(format!("{what} missing for pattern vertex {v}"))))
        .collect()
}

impl<'de> Deserialize<'de> for MinorModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ModelJson::deserialize(d)?;
        let k = j.pattern.n();
        let mut sets = indexed(&j.branch_sets, k, "branch set").map_err(serde::de::Error::custom)?;
        for s in sets.iter_mut() {
            s.sort_unstable();
        }
        let roots = j
            .roots
            .as_ref()
            .map(|r| indexed(r, k, "root"))
            .transpose()
            .map_err(serde::de::Error::custom)?;
        Ok(MinorModel {
            pattern: j.pattern,
            host: j.host,
            branch_sets: sets,
            roots,
        })
    }
}
