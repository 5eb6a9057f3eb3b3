//! H-schemes, colored schemes, and their validation.
//!
//! An H-scheme places the pattern's vertices on host roots and routes one
//! host path per pattern edge. Paths may share host vertices only when all
//! paths through a shared vertex have a common pattern endpoint. A colored
//! scheme additionally carries a proper coloring of the host by pattern
//! vertices in which every path is a two-colored Kempe chain.

mod json;
mod normalize;
pub mod random;

pub use json::{parse_scheme, scheme_to_json, SchemeJson};
pub use normalize::{normalize_scheme, replay_trace, ContractRule, Normalized, TraceStep};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph, Mask};
use crate::report::ValidationReport;

/// Clause identifiers used in scheme validation reports.
pub mod clause {
    pub const ROOTS: &str = "roots-injective";
    pub const PATH_MISSING: &str = "path-missing";
    pub const PATH_SHAPE: &str = "path-is-host-path";
    pub const PATH_ENDPOINTS: &str = "path-endpoints";
    pub const PATH_AVOIDS_ROOTS: &str = "path-avoids-other-roots";
    pub const COMMON_ENDPOINT: &str = "common-endpoint";
    pub const HOST_IS_UNION: &str = "host-is-union-of-paths";
    pub const COLOR_FIXES_ROOTS: &str = "color-fixes-roots";
    pub const PATH_COLORS: &str = "path-uses-endpoint-colors";
    pub const PROPER: &str = "proper-coloring";
    pub const MIN_DEGREE: &str = "non-root-degree-at-least-4";
    /// Consequences of the four coloring clauses; a failure here is a bug.
    pub const DERIVED: &str = "derived-property";
}

pub type PatternEdge = (usize, usize);

/// A pattern graph routed through a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HScheme {
    pub pattern: Graph,
    pub host: Graph,
    /// `roots[v]` is the host vertex carrying pattern vertex `v`.
    pub roots: Vec<usize>,
    /// Path for pattern edge `(u, v)`, `u < v`, running from `roots[u]` to `roots[v]`.
    pub paths: BTreeMap<PatternEdge, Vec<usize>>,
}

/// An H-scheme plus a host coloring by pattern vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredScheme {
    pub scheme: HScheme,
    pub colors: Vec<usize>,
}

fn key(u: usize, v: usize) -> PatternEdge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl HScheme {
    /// Checks the data shape (sizes, index ranges, edge keys) and orients each
    /// path from its smaller pattern endpoint. Scheme clauses are left to
    /// [`validate_hscheme`].
    pub fn new(
        pattern: Graph,
        host: Graph,
        roots: Vec<usize>,
        paths: BTreeMap<PatternEdge, Vec<usize>>,
    ) -> Result<Self> {
        if roots.len() != pattern.n() {
            return Err(Error::Validation(format!(
                "{} roots given for {} pattern vertices",
                roots.len(),
                pattern.n()
            )));
        }
        if let Some(&r) = roots.iter().find(|&&r| r >= host.n()) {
            return Err(Error::Validation(format!("root {r} is not a host vertex")));
        }
        let mut oriented = BTreeMap::new();
        for ((a, b), mut p) in paths {
            let (u, v) = key(a, b);
            if !pattern.has_edge(u, v) {
                return Err(Error::Validation(format!("path given for non-edge {u}-{v}")));
            }
            if let Some(&x) = p.iter().find(|&&x| x >= host.n()) {
                return Err(Error::Validation(format!("path {u}-{v} uses missing vertex {x}")));
            }
            if p.first() == Some(&roots[v]) && p.last() == Some(&roots[u]) {
                p.reverse();
            }
            if oriented.insert((u, v), p).is_some() {
                return Err(Error::Validation(format!("two paths given for {u}-{v}")));
            }
        }
        Ok(HScheme {
            pattern,
            host,
            roots,
            paths: oriented,
        })
    }

    /// The pattern routed through itself: each edge is its own path.
    pub fn identity(pattern: &Graph) -> Self {
        let paths = pattern
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), vec![u, v]))
            .collect();
        HScheme {
            pattern: pattern.clone(),
            host: pattern.clone(),
            roots: (0..pattern.n()).collect(),
            paths,
        }
    }

    pub fn root_mask(&self) -> Mask {
        self.roots.iter().fold(0, |m, &r| m | bit(r))
    }

    pub fn path(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.paths.get(&key(u, v)).map(Vec::as_slice)
    }

    /// Path for `uv` read starting at `roots[u]`.
    pub fn path_from(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        let p = self.path(u, v)?;
        Some(if u < v { p.to_vec() } else { p.iter().rev().copied().collect() })
    }

    /// Vertices and edges covered by the paths.
    pub fn underlying(&self) -> (Mask, Vec<(usize, usize)>) {
        let mut vm = self.root_mask();
        let mut edges = std::collections::BTreeSet::new();
        for p in self.paths.values() {
            for w in p.windows(2) {
                edges.insert(key(w[0], w[1]));
            }
            vm |= p.iter().fold(0, |m, &x| m | bit(x));
        }
        (vm, edges.into_iter().collect())
    }

    /// Pattern edges whose paths pass through each host vertex.
    pub fn paths_through(&self) -> Vec<Vec<PatternEdge>> {
        let mut through = vec![Vec::new(); self.host.n()];
        for (&e, p) in &self.paths {
            for &x in p {
                if !through[x].contains(&e) {
                    through[x].push(e);
                }
            }
        }
        through
    }

    /// The unique coloring forced by the common-endpoint clause: roots get
    /// their own pattern vertex, other vertices the shared endpoint of the
    /// paths through them. `None` where the color is ambiguous or undefined.
    pub fn forced_colors(&self) -> Vec<Option<usize>> {
        let mut col = vec![None; self.host.n()];
        for (v, &r) in self.roots.iter().enumerate() {
            col[r] = Some(v);
        }
        let rm = self.root_mask();
        for (x, edges) in self.paths_through().into_iter().enumerate() {
            if rm & bit(x) != 0 || edges.len() < 2 {
                continue;
            }
            let common = edges
                .iter()
                .fold(u64::MAX, |m, &(a, b)| m & (bit(a) | bit(b)));
            if common.count_ones() == 1 {
                col[x] = Some(common.trailing_zeros() as usize);
            }
        }
        col
    }
}

/// Checks the two scheme clauses: every path is a host path whose only roots
/// are its endpoints, and the paths through any host vertex share a pattern
/// endpoint. Host material outside the paths is reported as a note.
pub fn validate_hscheme(s: &HScheme) -> ValidationReport {
    let mut r = ValidationReport::new();
    let mut seen = 0;
    for (v, &x) in s.roots.iter().enumerate() {
        if seen & bit(x) != 0 {
            r.violate(clause::ROOTS, format!("pattern vertex {v} reuses host root {x}"));
        }
        seen |= bit(x);
    }
    let rm = s.root_mask();
    for (u, v) in s.pattern.edges() {
        let Some(p) = s.paths.get(&(u, v)) else {
            r.violate(clause::PATH_MISSING, format!("no path for pattern edge {u}-{v}"));
            continue;
        };
        if p.first() != Some(&s.roots[u]) || p.last() != Some(&s.roots[v]) {
            r.violate(
                clause::PATH_ENDPOINTS,
                format!("path {u}-{v} {p:?} does not join roots {} and {}", s.roots[u], s.roots[v]),
            );
        }
        let distinct = p.iter().fold(0u64, |m, &x| m | bit(x)).count_ones() as usize == p.len();
        if !distinct || p.windows(2).any(|w| !s.host.has_edge(w[0], w[1])) {
            r.violate(clause::PATH_SHAPE, format!("path {u}-{v} {p:?} is not a path in the host"));
        }
        let inner: Vec<usize> = p
            .iter()
            .skip(1)
            .take(p.len().saturating_sub(2))
            .copied()
            .filter(|&x| rm & bit(x) != 0)
            .collect();
        if !inner.is_empty() {
            r.violate(
                clause::PATH_AVOIDS_ROOTS,
                format!("path {u}-{v} passes through roots {inner:?}"),
            );
        }
    }
    for (x, edges) in s.paths_through().into_iter().enumerate() {
        let common = edges
            .iter()
            .fold(u64::MAX, |m, &(a, b)| m & (bit(a) | bit(b)));
        if common == 0 {
            r.violate(
                clause::COMMON_ENDPOINT,
                format!("host vertex {x} lies on paths {edges:?} with no common endpoint"),
            );
        }
    }
    let (vm, edges) = s.underlying();
    let extra_v: Vec<usize> = bits(s.host.vertex_mask() & !vm).collect();
    if !extra_v.is_empty() {
        r.note(format!("host vertices outside the paths: {extra_v:?}"));
    }
    let extra_e = s.host.edge_count() - edges.iter().filter(|&&(a, b)| s.host.has_edge(a, b)).count();
    if extra_e > 0 {
        r.note(format!("{extra_e} host edges lie on no path"));
    }
    r
}

/// Checks the scheme clauses, the four coloring clauses, and then the
/// properties that follow from them (alternating colors, edges partitioned
/// among induced paths, every non-root on two or more paths, ...).
pub fn validate_colored_scheme(c: &ColoredScheme) -> ValidationReport {
    let s = &c.scheme;
    let mut r = validate_hscheme(s);
    r.notes.clear();
    if c.colors.len() != s.host.n() {
        r.violate(
            clause::COLOR_FIXES_ROOTS,
            format!("{} colors for {} host vertices", c.colors.len(), s.host.n()),
        );
        return r;
    }
    let f = &c.colors;
    let (vm, used) = s.underlying();
    if vm != s.host.vertex_mask() || used.len() != s.host.edge_count() {
        r.violate(
            clause::HOST_IS_UNION,
            format!(
                "host has {} vertices / {} edges, paths cover {} / {}",
                s.host.n(),
                s.host.edge_count(),
                vm.count_ones(),
                used.len()
            ),
        );
    }
    if let Some(&bad) = f.iter().find(|&&col| col >= s.pattern.n()) {
        r.violate(clause::COLOR_FIXES_ROOTS, format!("color {bad} is not a pattern vertex"));
        return r;
    }
    for (v, &x) in s.roots.iter().enumerate() {
        if f[x] != v {
            r.violate(clause::COLOR_FIXES_ROOTS, format!("root {x} of {v} has color {}", f[x]));
        }
    }
    for (&(u, v), p) in &s.paths {
        let cols = p.iter().fold(0u64, |m, &x| m | bit(f[x]));
        if cols != bit(u) | bit(v) {
            r.violate(
                clause::PATH_COLORS,
                format!("path {u}-{v} uses colors {:?}", bits(cols).collect::<Vec<_>>()),
            );
        }
    }
    for (a, b) in s.host.edges() {
        if f[a] == f[b] {
            r.violate(clause::PROPER, format!("edge {a}-{b} is monochromatic ({})", f[a]));
        }
    }
    let rm = s.root_mask();
    for x in bits(s.host.vertex_mask() & !rm) {
        if s.host.degree(x) < 4 {
            r.violate(
                clause::MIN_DEGREE,
                format!("non-root {x} has degree {}", s.host.degree(x)),
            );
        }
    }
    if r.is_valid() {
        for bug in derived_property_failures(c) {
            r.violate(clause::DERIVED, format!("implementation bug: {bug}"));
        }
    }
    r
}

/// Properties implied by a valid colored scheme. Returns descriptions of
/// any that fail; the list is empty for every valid input.
pub fn derived_property_failures(c: &ColoredScheme) -> Vec<String> {
    let s = &c.scheme;
    let f = &c.colors;
    let mut out = Vec::new();
    let mut edge_uses: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(u, v), p) in &s.paths {
        if p.iter().enumerate().any(|(i, &x)| f[x] != if i % 2 == 0 { u } else { v }) {
            out.push(format!("colors on path {u}-{v} do not alternate"));
        }
        for w in p.windows(2) {
            *edge_uses.entry(key(w[0], w[1])).or_default() += 1;
        }
        for i in 0..p.len() {
            for j in i + 2..p.len() {
                if s.host.has_edge(p[i], p[j]) {
                    out.push(format!("path {u}-{v} has chord {}-{}", p[i], p[j]));
                }
            }
        }
    }
    for (a, b) in s.host.edges() {
        let k = edge_uses.get(&(a, b)).copied().unwrap_or(0);
        if k != 1 {
            out.push(format!("host edge {a}-{b} lies on {k} paths"));
        }
        if !s.pattern.has_edge(f[a], f[b]) {
            out.push(format!("host edge {a}-{b} does not map to a pattern edge"));
        }
    }
    let rm = s.root_mask();
    let through = s.paths_through();
    for x in bits(s.host.vertex_mask() & !rm) {
        if through[x].len() < 2 {
            out.push(format!("non-root {x} lies on {} paths", through[x].len()));
        }
    }
    for u in 0..s.pattern.n() {
        if s.pattern.degree(u) != 2 {
            continue;
        }
        for v in s.pattern.neighbors(u) {
            let p = s.path(u, v).unwrap_or(&[]);
            let missing = (0..s.host.n()).find(|&x| f[x] == u && !p.contains(&x));
            if let Some(x) = missing {
                out.push(format!("path {u}-{v} misses vertex {x} of color {u}"));
            }
        }
    }
    out
}
