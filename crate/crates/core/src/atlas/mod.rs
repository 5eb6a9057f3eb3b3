//! Exhaustive small-graph runs: enumeration up to isomorphism and batch
//! verification of the doubled-graph and classifier claims.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_with_cache, rule_firings, ClassifyOptions, Effort, Status, Witness};
use crate::error::{ensure_cap, Error, Result};
use crate::graph::{bit, canonical_form, is_bipartite, CanonicalForm, Graph};
use crate::minor::check_minor_model;
use crate::mprime::{verify_certificate, DecisionCache};

/// Largest order enumerated.
pub const ATLAS_MAX_VERTICES: usize = 7;
/// Largest order for which every connected graph is claimed M'-contractible.
pub const MPRIME_CLAIM_MAX_VERTICES: usize = 6;
/// Environment variable bounding the worker count.
pub const THREADS_ENV: &str = "SCHEME_MINOR_THREADS";

/// Canonical forms of all graphs on `n` vertices, connected or not.
fn all_forms(n: usize) -> Result<Vec<CanonicalForm>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![canonical_form(&Graph::empty(1)?)?]);
    }
    let smaller = all_forms(n - 1)?;
    let mut out = std::collections::BTreeSet::new();
    for f in smaller {
        let base = f.to_graph();
        for nbrs in 0u64..1 << (n - 1) {
            let mut adj = base.adjacency().to_vec();
            adj.push(nbrs);
            for (v, a) in adj.iter_mut().enumerate().take(n - 1) {
                if nbrs & bit(v) != 0 {
                    *a |= bit(n - 1);
                }
            }
            out.insert(canonical_form(&Graph::from_adjacency(adj)?)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices, each in canonical labeling, in canonical-form order.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    ensure_cap("atlas vertex count", ATLAS_MAX_VERTICES, n)?;
    Ok(all_forms(n)?
        .into_iter()
        .map(|f| f.to_graph())
        .filter(Graph::is_connected)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasOptions {
    pub min_n: usize,
    pub max_n: usize,
    pub only_bipartite: bool,
    /// Worker count; `None` reads [`THREADS_ENV`] or uses all cores.
    pub threads: Option<usize>,
    pub classify: ClassifyOptions,
}

impl AtlasOptions {
    pub fn up_to(max_n: usize) -> Self {
        AtlasOptions {
            min_n: 1,
            max_n,
            only_bipartite: false,
            threads: None,
            classify: ClassifyOptions::deep(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRecord {
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
    pub bipartite: bool,
    pub mprime_contractible: bool,
    pub certificate: &'static str,
    pub certificate_verified: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<&'static str>,
    pub fast_status: Status,
    pub positive_rules: Vec<&'static str>,
    pub negative_rules: Vec<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AtlasSummary {
    pub min_n: usize,
    pub max_n: usize,
    pub graphs: usize,
    pub graphs_per_n: BTreeMap<usize, usize>,
    pub mprime_contractible: usize,
    pub certificates: BTreeMap<&'static str, usize>,
    pub statuses: BTreeMap<String, usize>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasReport {
    pub records: Vec<AtlasRecord>,
    pub summary: AtlasSummary,
    pub failures: Vec<Failure>,
}

impl AtlasReport {
    /// One JSON object per line, in canonical order.
    pub fn to_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&k| k > 0)
}

fn check_graph(g: &Graph, opts: &AtlasOptions, cache: &DecisionCache) -> Result<AtlasRecord> {
    let form = canonical_form(g)?;
    let bipartite = is_bipartite(g).is_some();
    let mut failures = Vec::new();

    let d = cache.decide(g)?;
    let verified = verify_certificate(g, &d.certificate)?.is_valid()
        && d.model.as_ref().is_none_or(|m| check_minor_model(m).is_valid());
    if !verified {
        failures.push(format!("{} certificate fails its checker", d.certificate.kind()));
    }
    if g.n() <= MPRIME_CLAIM_MAX_VERTICES && !d.contractible {
        failures.push("COUNTEREXAMPLE: not M'-contractible on at most 6 vertices".to_string());
    }
    if bipartite && !matches!(d.certificate.kind(), "shift_automorphism" | "inducing_stable_set") {
        failures.push("bipartite graph without an inducing-stable-set certificate".to_string());
    }

    let verdict = classify_with_cache(g, opts.classify, cache)?;
    let fast = classify_with_cache(g, ClassifyOptions { effort: Effort::Fast, ..opts.classify }, cache)?;
    if fast.status != Status::Unknown && fast.status != verdict.status {
        failures.push(format!("fast {:?} but deep {:?}", fast.status, verdict.status));
    }
    let firings = rule_firings(g, opts.classify, cache)?;
    if !firings.positive.is_empty() && !firings.negative.is_empty() {
        failures.push(format!("rules of both polarities fire: {:?} and {:?}", firings.positive, firings.negative));
    }
    if let (true, Some(Witness::MPrime { edges, .. })) = (d.contractible, &verdict.witness) {
        if edges.len() == g.edge_count() {
            failures.push("doubled-graph rule fired on the graph itself, which was decided positive".to_string());
        }
    }

    Ok(AtlasRecord {
        n: g.n(),
        edges: g.edge_count(),
        graph6: form.graph6(),
        bipartite,
        mprime_contractible: d.contractible,
        certificate: d.certificate.kind(),
        certificate_verified: verified,
        status: verdict.status,
        rule: verdict.rule,
        fast_status: fast.status,
        positive_rules: firings.positive,
        negative_rules: firings.negative,
        failures,
    })
}

/// Runs every check on every connected graph in range. Records come back in
/// canonical order regardless of scheduling.
pub fn verify_atlas_claims(opts: &AtlasOptions) -> Result<AtlasReport> {
    ensure_cap("atlas vertex count", ATLAS_MAX_VERTICES, opts.max_n)?;
    let mut graphs = Vec::new();
    for n in opts.min_n.max(1)..=opts.max_n {
        graphs.extend(
            enumerate_connected_graphs(n)?
                .into_iter()
                .filter(|g| !opts.only_bipartite || is_bipartite(g).is_some()),
        );
    }
    let cache = DecisionCache::new();
    let threads = opts.threads.or_else(threads_from_env).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<Result<AtlasRecord>> =
        pool.install(|| graphs.par_iter().map(|g| check_graph(g, opts, &cache)).collect());

    let mut records = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    let mut summary = AtlasSummary {
        min_n: opts.min_n.max(1),
        max_n: opts.max_n,
        ..AtlasSummary::default()
    };
    for (g, r) in graphs.iter().zip(results) {
        let rec = match r {
            Ok(rec) => rec,
            Err(e) => {
                let graph6 = canonical_form(g).map(|f| f.graph6()).unwrap_or_default();
                failures.push(Failure {
                    graph6,
                    reason: format!("error: {e}"),
                });
                continue;
            }
        };
        for reason in &rec.failures {
            failures.push(Failure {
                graph6: rec.graph6.clone(),
                reason: reason.clone(),
            });
        }
        summary.graphs += 1;
        *summary.graphs_per_n.entry(rec.n).or_default() += 1;
        summary.mprime_contractible += usize::from(rec.mprime_contractible);
        *summary.certificates.entry(rec.certificate).or_default() += 1;
        let status = serde_json::to_value(rec.status).expect("status serializes");
        *summary.statuses.entry(status.as_str().unwrap_or_default().to_string()).or_default() += 1;
        records.push(rec);
    }
    summary.failures = failures.len();
    Ok(AtlasReport {
        records,
        summary,
        failures,
    })
}
