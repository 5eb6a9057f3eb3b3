//! The doubled graph `M'(H)` and exact decisions of whether it holds a
//! rooted `H`-minor at the first copies.
//!
//! Vertex `v` of `H` becomes `v` (first copy, the root) and `n + v` (second
//! copy). For each edge `uv` of `H` the double has `u₁v₂`, `u₂v₁` and `u₂v₂`.

mod witness;

pub use witness::{
    alternating_cycle, bipartite_vertex_cover, find_inducing_stable_set, find_shift_automorphism,
    is_shift_automorphism, verify_inducing_witness, witness_for_stable_set, InducingWitness,
    SHIFT_MAX_VERTICES, STABLE_SET_MAX_VERTICES,
};

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{ensure_cap, Error, Result};
use crate::graph::{bit, canonical_labeling, CanonicalForm, Graph, Mask, ThetaSignature, CANON_MAX_VERTICES};
use crate::graph::generators::theta;
use crate::minor::{check_minor_model, find_rooted_minor_with, MinorModel, SearchLimits, SearchStats};
use crate::report::ValidationReport;
use crate::scheme::{ColoredScheme, HScheme};

/// Largest base graph whose double fits a [`Graph`].
pub const MPRIME_MAX_BASE_VERTICES: usize = 32;
/// Largest base graph accepted by [`decide_mprime_contractible`].
pub const DECIDE_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPrimeGraph {
    pub base: Graph,
    pub graph: Graph,
    /// `roots[v]` is the first copy of `v`.
    pub roots: Vec<usize>,
    /// Paths `u₁ v₂ u₂ v₁`, second copies colored by their base vertex.
    pub scheme: ColoredScheme,
}

impl MPrimeGraph {
    pub fn first(&self, v: usize) -> usize {
        v
    }

    pub fn second(&self, v: usize) -> usize {
        self.base.n() + v
    }
}

pub fn build_mprime(h: &Graph) -> Result<MPrimeGraph> {
    ensure_cap("doubled graph base vertex count", MPRIME_MAX_BASE_VERTICES, h.n())?;
    let n = h.n();
    let mut edges = Vec::with_capacity(3 * h.edge_count());
    let mut paths = BTreeMap::new();
    for (u, v) in h.edges() {
        edges.extend([(u, n + v), (n + u, v), (n + u, n + v)]);
        paths.insert((u, v), vec![u, n + v, n + u, v]);
    }
    let graph = Graph::from_edges(2 * n, &edges)?;
    let roots: Vec<usize> = (0..n).collect();
    let colors = (0..2 * n).map(|x| x % n.max(1)).collect();
    let scheme = HScheme::new(h.clone(), graph.clone(), roots.clone(), paths)?;
    Ok(MPrimeGraph {
        base: h.clone(),
        graph,
        roots,
        scheme: ColoredScheme { scheme, colors },
    })
}

/// The model of `H` in `M'(H)` given by an inducing stable set:
/// `{v₁}` on `S`, `{v₁, v₂, u₂}` on `N(S)` with `uv` matched, and
/// `{v₁, π(v)₂}` elsewhere.
pub fn build_induced_model(h: &Graph, w: &InducingWitness) -> Result<MinorModel> {
    let r = verify_inducing_witness(h, w);
    if !r.is_valid() {
        return Err(Error::Precondition(format!(
            "witness fails: {}",
            r.clause_list()
        )));
    }
    let m = build_mprime(h)?;
    let n = h.n();
    let sm = w.stable_mask();
    let ns = h.neighborhood_of(sm);
    let sets: Vec<Mask> = (0..n)
        .map(|v| {
            if sm & bit(v) != 0 {
                bit(v)
            } else if ns & bit(v) != 0 {
                let u = w.partner(v).expect("verified");
                bit(v) | bit(n + v) | bit(n + u)
            } else {
                bit(v) | bit(n + w.shift_of(v).expect("verified"))
            }
        })
        .collect();
    let model = MinorModel::from_masks(h, &m.graph, &sets, Some(&m.roots));
    let r = check_minor_model(&model);
    if !r.is_valid() {
        return Err(Error::Internal(format!("induced model fails its check: {r:?}")));
    }
    Ok(model)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MPrimeCertificate {
    /// `S = ∅`: a shift automorphism of the whole graph.
    ShiftAutomorphism { permutation: Vec<usize> },
    InducingStableSet { witness: InducingWitness },
    /// A rooted model found by search.
    ExplicitModel { model: MinorModel },
    /// The exhaustive search found nothing.
    NegativeExhaustive { stats: SearchStats },
}

impl MPrimeCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            MPrimeCertificate::ShiftAutomorphism { .. } => "shift_automorphism",
            MPrimeCertificate::InducingStableSet { .. } => "inducing_stable_set",
            MPrimeCertificate::ExplicitModel { .. } => "explicit_model",
            MPrimeCertificate::NegativeExhaustive { .. } => "negative_exhaustive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MPrimeDecision {
    pub contractible: bool,
    pub certificate: MPrimeCertificate,
    /// The rooted model for positive answers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<MinorModel>,
}

fn shift_witness(pi: &[usize]) -> InducingWitness {
    InducingWitness {
        stable: Vec::new(),
        matching: Vec::new(),
        shift: pi.iter().copied().enumerate().collect(),
    }
}

/// Re-checks a certificate against `h`. Negative certificates are re-checked
/// by repeating the exhaustive search.
pub fn verify_certificate(h: &Graph, cert: &MPrimeCertificate) -> Result<ValidationReport> {
    Ok(match cert {
        MPrimeCertificate::ShiftAutomorphism { permutation } => {
            let mut r = ValidationReport::new();
            if !is_shift_automorphism(h, permutation) {
                r.violate("shift-automorphism", "permutation is not a shift automorphism");
            }
            r
        }
        MPrimeCertificate::InducingStableSet { witness } => verify_inducing_witness(h, witness),
        MPrimeCertificate::ExplicitModel { model } => {
            let m = build_mprime(h)?;
            let mut r = check_minor_model(model);
            if model.pattern != *h || model.host != m.graph || model.roots.as_deref() != Some(&m.roots[..]) {
                r.violate("model-target", "model is not a rooted model of H in M'(H)");
            }
            r
        }
        MPrimeCertificate::NegativeExhaustive { .. } => {
            let m = build_mprime(h)?;
            let mut r = ValidationReport::new();
            let limits = SearchLimits {
                max_host_vertices: m.graph.n().max(SearchLimits::default().max_host_vertices),
            };
            if find_rooted_minor_with(&m.graph, h, &m.roots, limits)?.0.is_some() {
                r.violate("negative-exhaustive", "search finds a rooted model");
            }
            r
        }
    })
}

/// Decides whether `M'(H)` has a rooted `H`-minor. Inducing stable sets are
/// tried first; otherwise the rooted search decides.
pub fn decide_mprime_contractible(h: &Graph) -> Result<MPrimeDecision> {
    decide_with(h, SearchLimits::default())
}

pub fn decide_with(h: &Graph, limits: SearchLimits) -> Result<MPrimeDecision> {
    ensure_cap("M' decision base vertex count", DECIDE_MAX_VERTICES, h.n())?;
    if let Some(w) = find_inducing_stable_set(h)? {
        let model = build_induced_model(h, &w)?;
        let certificate = if w.stable.is_empty() {
            let mut pi = vec![0; h.n()];
            for &(v, x) in &w.shift {
                pi[v] = x;
            }
            MPrimeCertificate::ShiftAutomorphism { permutation: pi }
        } else {
            MPrimeCertificate::InducingStableSet { witness: w }
        };
        return Ok(MPrimeDecision {
            contractible: true,
            certificate,
            model: Some(model),
        });
    }
    let m = build_mprime(h)?;
    let (found, stats) = find_rooted_minor_with(&m.graph, h, &m.roots, limits)?;
    Ok(match found {
        Some(model) => MPrimeDecision {
            contractible: true,
            certificate: MPrimeCertificate::ExplicitModel { model: model.clone() },
            model: Some(model),
        },
        None => MPrimeDecision {
            contractible: false,
            certificate: MPrimeCertificate::NegativeExhaustive { stats },
            model: None,
        },
    })
}

/// Decisions memoized by canonical form. Each lookup decides the canonical
/// representative and carries the certificate back to the caller's labels, so
/// answers do not depend on which isomorphic copy was seen first.
#[derive(Debug, Default)]
pub struct DecisionCache {
    inner: Mutex<HashMap<CanonicalForm, MPrimeDecision>>,
}

impl DecisionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn decide(&self, h: &Graph) -> Result<MPrimeDecision> {
        if h.n() > CANON_MAX_VERTICES {
            return decide_mprime_contractible(h);
        }
        let (form, perm) = canonical_labeling(h)?;
        let cached = self.inner.lock().expect("cache lock").get(&form).cloned();
        let canon = match cached {
            Some(d) => d,
            None => {
                let d = decide_mprime_contractible(&form.to_graph())?;
                self.inner.lock().expect("cache lock").insert(form, d.clone());
                d
            }
        };
        translate(h, &perm, canon)
    }
}

/// Moves a decision about `h.relabel(perm)` back onto `h`.
fn translate(h: &Graph, perm: &[usize], d: MPrimeDecision) -> Result<MPrimeDecision> {
    let n = h.n();
    let mut inv = vec![0; n];
    for (v, &c) in perm.iter().enumerate() {
        inv[c] = v;
    }
    let back = |c: usize| inv[c];
    let certificate = match d.certificate {
        MPrimeCertificate::ShiftAutomorphism { permutation } => MPrimeCertificate::ShiftAutomorphism {
            permutation: (0..n).map(|v| back(permutation[perm[v]])).collect(),
        },
        MPrimeCertificate::InducingStableSet { witness } => {
            let mut stable: Vec<usize> = witness.stable.iter().map(|&c| back(c)).collect();
            stable.sort_unstable();
            let mut matching: Vec<(usize, usize)> =
                witness.matching.iter().map(|&(a, b)| (back(a), back(b))).collect();
            matching.sort_unstable();
            let mut shift: Vec<(usize, usize)> = witness.shift.iter().map(|&(a, b)| (back(a), back(b))).collect();
            shift.sort_unstable();
            MPrimeCertificate::InducingStableSet {
                witness: InducingWitness { stable, matching, shift },
            }
        }
        MPrimeCertificate::ExplicitModel { model } => {
            let m = build_mprime(h)?;
            let host_back = |x: usize| if x < n { back(x) } else { n + back(x - n) };
            let mut sets = vec![0; n];
            for (c, set) in model.branch_sets.iter().enumerate() {
                sets[back(c)] = set.iter().fold(0, |acc, &x| acc | bit(host_back(x)));
            }
            MPrimeCertificate::ExplicitModel {
                model: MinorModel::from_masks(h, &m.graph, &sets, Some(&m.roots)),
            }
        }
        neg @ MPrimeCertificate::NegativeExhaustive { .. } => neg,
    };
    let model = match &certificate {
        MPrimeCertificate::ShiftAutomorphism { permutation } => Some(build_induced_model(h, &shift_witness(permutation))?),
        MPrimeCertificate::InducingStableSet { witness } => Some(build_induced_model(h, witness)?),
        MPrimeCertificate::ExplicitModel { model } => Some(model.clone()),
        MPrimeCertificate::NegativeExhaustive { .. } => None,
    };
    Ok(MPrimeDecision {
        contractible: d.contractible,
        certificate,
        model,
    })
}

/// Closed-form answer for theta graphs: not M'-contractible exactly when one
/// path length is odd and the graph has no triangle.
pub fn theta_mprime_verdict(sig: &ThetaSignature) -> bool {
    let [k, l, m] = sig.lengths();
    let g = theta(k, l, m).expect("signature lengths are valid");
    !(sig.odd_count() == 1 && !g.has_triangle())
}
