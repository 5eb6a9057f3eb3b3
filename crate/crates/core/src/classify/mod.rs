//! Rule-based verdicts on rooted contractibility.
//!
//! Positive rules are checked first. Negative rules are then tried in a
//! fixed order and the first that fires is reported, so a verdict never
//! depends on evaluation order. Graphs outside every rule get `Unknown`.

mod blocks;
mod detect;
mod subgraphs;

pub use blocks::{block_kind, component_blocks, matches_cactus, matches_summary, BlockInfo, BlockKind, ComponentBlocks};
pub use detect::{
    detect_bad_theta, detect_two_long_odd, enumerate_cycles, Detection, ThetaWitness, DEFAULT_CYCLE_CAP,
};
pub use subgraphs::{connected_subgraphs, SubgraphClass, DEFAULT_SUBGRAPH_CAP, DEEP_MAX_SUBGRAPH_VERTICES};

use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::generators::{complete, complete_bipartite};
use crate::graph::{canonical_form, chromatic_number, Graph, CHROMATIC_MAX_VERTICES};
use crate::mprime::{DecisionCache, MPrimeCertificate, DECIDE_MAX_VERTICES};

pub mod rule {
    pub const COR_FOREST: &str = "COR_FOREST";
    pub const COR_CACTUS: &str = "COR_CACTUS";
    pub const COR_SUMMARY: &str = "COR_SUMMARY";
    pub const THM_CHROMATIC: &str = "THM_CHROMATIC";
    pub const THM_THETA_SUBGRAPH: &str = "THM_THETA_SUBGRAPH";
    pub const COR_TWO_ODD: &str = "COR_TWO_ODD";
    pub const MPRIME_NEGATIVE: &str = "MPRIME_NEGATIVE";

    pub const POSITIVE: [&str; 3] = [COR_FOREST, COR_CACTUS, COR_SUMMARY];
    pub const NEGATIVE: [&str; 4] = [THM_CHROMATIC, THM_THETA_SUBGRAPH, COR_TWO_ODD, MPRIME_NEGATIVE];
}

/// Statement behind each rule id.
pub fn citation(rule_id: &str) -> &'static str {
    match rule_id {
        rule::COR_FOREST => "Forests are contractible.",
        rule::COR_CACTUS => "A cactus in which at most one cycle has more than 3 vertices is contractible; contractibility holds componentwise.",
        rule::COR_SUMMARY => "A graph whose blocks are K3, K2 or K1, except for at most one block per component that is K4, K_{1,1,2}, K_{1,1,3}, K_{2,3} or a cycle, is contractible.",
        rule::THM_CHROMATIC => "Every contractible graph is 6-colorable.",
        rule::THM_THETA_SUBGRAPH => "A triangle-free theta graph with exactly one odd path is not M'-contractible, hence not contractible, and neither is any graph containing it.",
        rule::COR_TWO_ODD => "A connected graph with two odd cycles of length at least 5 sharing at most one vertex is not contractible.",
        rule::MPRIME_NEGATIVE => "A graph that is not M'-contractible is not contractible, and neither is any graph containing it.",
        _ => "",
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Effort {
    #[default]
    Fast,
    Deep,
}

impl FromStr for Effort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Effort::Fast),
            "deep" => Ok(Effort::Deep),
            other => Err(Error::Validation(format!("unknown effort {other:?}; expected fast or deep"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub effort: Effort,
    /// Cap on enumerated cycles, and on paths per vertex pair.
    pub cycle_cap: usize,
    /// Cap on connected subgraphs examined in deep mode.
    pub subgraph_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            effort: Effort::Fast,
            cycle_cap: DEFAULT_CYCLE_CAP,
            subgraph_cap: DEFAULT_SUBGRAPH_CAP,
        }
    }
}

impl ClassifyOptions {
    pub fn deep() -> Self {
        ClassifyOptions {
            effort: Effort::Deep,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Contractible,
    NotContractible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Blocks { components: Vec<ComponentBlocks> },
    Chromatic { chromatic_number: usize },
    Theta(ThetaWitness),
    TwoOddCycles { first: Vec<usize>, second: Vec<usize> },
    MPrime {
        /// Edges of the subgraph, in host vertex ids.
        edges: Vec<(usize, usize)>,
        graph6: String,
        certificate: MPrimeCertificate,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Informational remarks that never change the status.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
    /// Rules that could not be decided within their caps.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub indeterminate: Vec<String>,
    /// Deep mode was requested but a cap limited it to the fast rules.
    pub fast_only: bool,
}

impl Verdict {
    fn new(status: Status, rule_id: Option<&'static str>, witness: Option<Witness>) -> Self {
        Verdict {
            status,
            rule: rule_id,
            citation: rule_id.map(citation),
            witness,
            annotations: Vec::new(),
            indeterminate: Vec::new(),
            fast_only: false,
        }
    }
}

/// Every rule that fires on a graph, for consistency checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RuleFirings {
    pub positive: Vec<&'static str>,
    pub negative: Vec<&'static str>,
    pub indeterminate: Vec<String>,
}

struct Engine<'a> {
    g: &'a Graph,
    opts: ClassifyOptions,
    cache: &'a DecisionCache,
    indeterminate: Vec<String>,
    fast_only: bool,
}

impl Engine<'_> {
    fn positive(&self, rule_id: &str, comps: &[ComponentBlocks]) -> bool {
        match rule_id {
            rule::COR_FOREST => blocks::is_forest(self.g),
            rule::COR_CACTUS => matches_cactus(comps),
            rule::COR_SUMMARY => matches_summary(comps),
            _ => unreachable!("not a positive rule"),
        }
    }

    fn negative(&mut self, rule_id: &'static str) -> Result<Option<Witness>> {
        let g = self.g;
        match rule_id {
            rule::THM_CHROMATIC => {
                if g.n() > CHROMATIC_MAX_VERTICES {
                    self.indeterminate
                        .push(format!("{rule_id}: more than {CHROMATIC_MAX_VERTICES} vertices"));
                    return Ok(None);
                }
                let chi = chromatic_number(g)?;
                Ok((chi >= 7).then_some(Witness::Chromatic { chromatic_number: chi }))
            }
            rule::THM_THETA_SUBGRAPH => Ok(self.detection(rule_id, detect_bad_theta(g, self.opts.cycle_cap)).map(Witness::Theta)),
            rule::COR_TWO_ODD => Ok(self
                .detection(rule_id, detect_two_long_odd(g, self.opts.cycle_cap))
                .map(|(first, second)| Witness::TwoOddCycles { first, second })),
            rule::MPRIME_NEGATIVE => self.mprime_negative(),
            _ => unreachable!("not a negative rule"),
        }
    }

    fn detection<T>(&mut self, rule_id: &str, d: Detection<T>) -> Option<T> {
        match d {
            Detection::Found(t) => Some(t),
            Detection::Absent => None,
            Detection::Indeterminate(why) => {
                self.indeterminate.push(format!("{rule_id}: {why}"));
                None
            }
        }
    }

    fn mprime_negative(&mut self) -> Result<Option<Witness>> {
        let g = self.g;
        let mut classes = match connected_subgraphs(g, DEEP_MAX_SUBGRAPH_VERTICES, self.opts.subgraph_cap) {
            Ok(c) => c,
            Err(Error::Capacity { .. }) => {
                self.fast_only = true;
                self.indeterminate
                    .push(format!("{}: subgraph enumeration over its cap", rule::MPRIME_NEGATIVE));
                Vec::new()
            }
            Err(e) => return Err(e),
        };
        if g.n() > DEEP_MAX_SUBGRAPH_VERTICES && g.n() <= DECIDE_MAX_VERTICES {
            classes.push(SubgraphClass {
                edges: g.edges(),
                graph: g.clone(),
                form: None,
            });
        }
        for class in classes {
            let d = self.cache.decide(&class.graph)?;
            if !d.contractible {
                let graph6 = match class.form {
                    Some(f) => f.graph6(),
                    None => crate::graph::format::to_graph6(&class.graph)?,
                };
                return Ok(Some(Witness::MPrime {
                    edges: class.edges,
                    graph6,
                    certificate: d.certificate,
                }));
            }
        }
        Ok(None)
    }

    fn negatives(&self) -> &'static [&'static str] {
        match self.opts.effort {
            Effort::Fast => &rule::NEGATIVE[..3],
            Effort::Deep => &rule::NEGATIVE[..],
        }
    }
}

fn annotations(g: &Graph) -> Vec<String> {
    let weak = [complete(5), complete_bipartite(3, 3)];
    let form = canonical_form(g).ok();
    if form.is_some() && weak.iter().any(|w| canonical_form(w).ok() == form) {
        vec!["weakly contractible (every host with a scheme has an unrooted minor); rooted contractibility is open".to_string()]
    } else {
        Vec::new()
    }
}

/// Classifies `g` with a private decision cache.
pub fn classify(g: &Graph, opts: ClassifyOptions) -> Result<Verdict> {
    classify_with_cache(g, opts, &DecisionCache::new())
}

pub fn classify_with_cache(g: &Graph, opts: ClassifyOptions, cache: &DecisionCache) -> Result<Verdict> {
    let mut e = Engine {
        g,
        opts,
        cache,
        indeterminate: Vec::new(),
        fast_only: false,
    };
    let comps = component_blocks(g);
    let mut verdict = None;
    for rule_id in rule::POSITIVE {
        if e.positive(rule_id, &comps) {
            verdict = Some(Verdict::new(
                Status::Contractible,
                Some(rule_id),
                Some(Witness::Blocks { components: comps.clone() }),
            ));
            break;
        }
    }
    if verdict.is_none() {
        for &rule_id in e.negatives() {
            if let Some(w) = e.negative(rule_id)? {
                verdict = Some(Verdict::new(Status::NotContractible, Some(rule_id), Some(w)));
                break;
            }
        }
    }
    let mut v = verdict.unwrap_or_else(|| Verdict::new(Status::Unknown, None, None));
    v.annotations = annotations(g);
    v.indeterminate = e.indeterminate;
    v.fast_only = e.fast_only;
    Ok(v)
}

/// Evaluates every rule independently.
pub fn rule_firings(g: &Graph, opts: ClassifyOptions, cache: &DecisionCache) -> Result<RuleFirings> {
    let mut e = Engine {
        g,
        opts,
        cache,
        indeterminate: Vec::new(),
        fast_only: false,
    };
    let comps = component_blocks(g);
    let positive = rule::POSITIVE.into_iter().filter(|r| e.positive(r, &comps)).collect();
    let mut negative = Vec::new();
    for &rule_id in e.negatives() {
        if e.negative(rule_id)?.is_some() {
            negative.push(rule_id);
        }
    }
    Ok(RuleFirings {
        positive,
        negative,
        indeterminate: e.indeterminate,
    })
}

#[cfg(test)]
mod tests;
