use super::*;
use crate::graph::generators::*;
use crate::graph::theta_recognize;

fn fast(g: &Graph) -> Verdict {
    classify(g, ClassifyOptions::default()).unwrap()
}

#[test]
fn forests_are_contractible() {
    for g in [path(6), star(5), path(3).disjoint_union(&star(2)).unwrap()] {
        let v = fast(&g);
        assert_eq!(v.status, Status::Contractible);
        assert_eq!(v.rule, Some(rule::COR_FOREST));
    }
}

#[test]
fn cacti_and_summary() {
    let v = fast(&cycle_chain(&[3, 3, 7, 3]));
    assert_eq!((v.status, v.rule), (Status::Contractible, Some(rule::COR_CACTUS)));
    let g = complete_multipartite(&[1, 1, 3]).disjoint_union(&cycle(3)).unwrap().with_edges(&[(0, 5)]).unwrap();
    let v = fast(&g);
    assert_eq!((v.status, v.rule), (Status::Contractible, Some(rule::COR_SUMMARY)));
}

#[test]
fn two_five_cycles_sharing_a_vertex() {
    let v = fast(&cycle_chain(&[5, 5]));
    assert_eq!((v.status, v.rule), (Status::NotContractible, Some(rule::COR_TWO_ODD)));
}

#[test]
fn k7_reports_chromatic_rule() {
    let v = fast(&complete(7));
    assert_eq!((v.status, v.rule), (Status::NotContractible, Some(rule::THM_CHROMATIC)));
    assert_eq!(v.witness, Some(Witness::Chromatic { chromatic_number: 7 }));
}

#[test]
fn bad_theta_witness_is_recognized() {
    for g in [theta(0, 2, 3).unwrap(), theta(1, 2, 2).unwrap(), petersen()] {
        let v = fast(&g);
        assert_eq!(v.status, Status::NotContractible);
        if let Some(Witness::Theta(w)) = &v.witness {
            let sig = theta_recognize(&w.subgraph(&g).0).unwrap();
            assert_eq!(sig.odd_count(), 1);
            assert!(!w.subgraph(&g).0.has_triangle());
        }
    }
}

#[test]
fn uncovered_graphs_are_unknown() {
    let v = fast(&complete(5));
    assert_eq!(v.status, Status::Unknown);
    assert_eq!(v.annotations.len(), 1);
    let v = fast(&complete_bipartite(3, 3));
    assert_eq!(v.status, Status::Unknown);
    assert_eq!(v.annotations.len(), 1);
    assert_eq!(fast(&complete(6)).status, Status::Unknown);
}

#[test]
fn deep_never_loses_a_fast_verdict() {
    for g in [complete(5), theta(0, 2, 3).unwrap(), cycle_chain(&[4, 4]), complete_bipartite(2, 4)] {
        let f = fast(&g);
        let d = classify(&g, ClassifyOptions::deep()).unwrap();
        if f.status != Status::Unknown {
            assert_eq!(f.status, d.status);
        }
    }
}

#[test]
fn deep_mode_also_fires_the_mprime_rule() {
    // the theta rule wins by order, but the doubled-graph rule fires too
    let g = theta(0, 2, 3).unwrap();
    let d = classify(&g, ClassifyOptions { effort: Effort::Deep, ..Default::default() }).unwrap();
    assert_eq!(d.rule, Some(rule::THM_THETA_SUBGRAPH));
    let cache = crate::mprime::DecisionCache::new();
    let f = rule_firings(&g, ClassifyOptions::deep(), &cache).unwrap();
    assert!(f.negative.contains(&rule::MPRIME_NEGATIVE));
    assert!(f.positive.is_empty());
}

#[test]
fn verdict_json_carries_rule_and_citation() {
    let v = serde_json::to_value(fast(&complete(7))).unwrap();
    assert_eq!(v["status"], "not_contractible");
    assert_eq!(v["rule"], "THM_CHROMATIC");
    assert!(v["citation"].as_str().unwrap().contains("6-colorable"));
}

#[test]
fn effort_parses() {
    assert_eq!("deep".parse::<Effort>().unwrap(), Effort::Deep);
    assert!("slow".parse::<Effort>().is_err());
}
