//! Searches for the forbidden structures behind the negative rules.

use serde::Serialize;

use crate::graph::{bit, bits, Graph, Mask, ThetaSignature};

/// Default ceiling on enumerated cycles (and on paths per vertex pair).
pub const DEFAULT_CYCLE_CAP: usize = 200_000;

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection<T> {
    Found(T),
    Absent,
    /// The enumeration hit its cap before finding anything.
    Indeterminate(String),
}

impl<T> Detection<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Detection::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// A theta subgraph: three internally disjoint paths between `x` and `y`,
/// each listed from `x` to `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaWitness {
    pub signature: ThetaSignature,
    pub paths: [Vec<usize>; 3],
}

impl ThetaWitness {
    /// The witness as a standalone graph on its own vertices, plus the map
    /// back to host vertices.
    pub fn subgraph(&self, host: &Graph) -> (Graph, Vec<usize>) {
        let vs: Mask = self.paths.iter().flatten().fold(0, |m, &v| m | bit(v));
        let order: Vec<usize> = bits(vs).collect();
        let idx = |v: usize| order.iter().position(|&x| x == v).expect("path vertex");
        let mut edges = Vec::new();
        for p in &self.paths {
            for w in p.windows(2) {
                debug_assert!(host.has_edge(w[0], w[1]));
                edges.push((idx(w[0]), idx(w[1])));
            }
        }
        (Graph::from_edges(order.len(), &edges).expect("theta paths are simple"), order)
    }
}

struct XyPath {
    interior: Mask,
    verts: Vec<usize>,
}

impl XyPath {
    fn inner(&self) -> usize {
        self.verts.len() - 2
    }
}

/// All simple `x`-`y` paths, shortest first, or `None` past `cap`.
fn paths_between(g: &Graph, x: usize, y: usize, cap: usize) -> Option<Vec<XyPath>> {
    fn go(g: &Graph, y: usize, cur: &mut Vec<usize>, used: Mask, out: &mut Vec<XyPath>, cap: usize) -> bool {
        let last = *cur.last().expect("nonempty");
        for w in bits(g.neighbor_mask(last) & !used) {
            if w == y {
                let interior = cur[1..].iter().fold(0, |m, &v| m | bit(v));
                let mut verts = cur.clone();
                verts.push(y);
                out.push(XyPath { interior, verts });
                if out.len() > cap {
                    return false;
                }
            } else {
                cur.push(w);
                let ok = go(g, y, cur, used | bit(w), out, cap);
                cur.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    let mut cur = vec![x];
    if !go(g, y, &mut cur, bit(x), &mut out, cap) {
        return None;
    }
    out.sort_by(|a, b| a.verts.len().cmp(&b.verts.len()).then_with(|| a.verts.cmp(&b.verts)));
    Some(out)
}

/// A triangle-free theta subgraph with exactly one odd internal path length.
/// Vertex pairs are tried in lexicographic order, then shorter paths first.
pub fn detect_bad_theta(g: &Graph, cap: usize) -> Detection<ThetaWitness> {
    let mut capped = None;
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            if g.degree(x) < 3 || g.degree(y) < 3 {
                continue;
            }
            let Some(paths) = paths_between(g, x, y, cap) else {
                capped.get_or_insert(format!("more than {cap} paths between {x} and {y}"));
                continue;
            };
            if let Some(w) = bad_triple(&paths, x, y) {
                return Detection::Found(w);
            }
        }
    }
    match capped {
        Some(why) => Detection::Indeterminate(why),
        None => Detection::Absent,
    }
}

fn bad_triple(paths: &[XyPath], x: usize, y: usize) -> Option<ThetaWitness> {
    let (odd, even): (Vec<&XyPath>, Vec<&XyPath>) = paths.iter().partition(|p| p.inner() % 2 == 1);
    for o in &odd {
        for (i, a) in even.iter().enumerate() {
            if a.interior & o.interior != 0 || (o.inner() == 1 && a.inner() == 0) {
                continue;
            }
            for b in &even[i + 1..] {
                if b.interior & (a.interior | o.interior) != 0 || (o.inner() == 1 && b.inner() == 0) {
                    continue;
                }
                let sig = ThetaSignature::new([o.inner(), a.inner(), b.inner()], x, y)?;
                return Some(ThetaWitness {
                    signature: sig,
                    paths: [o.verts.clone(), a.verts.clone(), b.verts.clone()],
                });
            }
        }
    }
    None
}

/// Cycles as vertex lists starting at their least vertex, each listed once.
/// `None` past `cap`.
pub fn enumerate_cycles(g: &Graph, cap: usize) -> Option<Vec<Vec<usize>>> {
    fn go(g: &Graph, s: usize, cur: &mut Vec<usize>, used: Mask, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        let last = *cur.last().expect("nonempty");
        for w in bits(g.neighbor_mask(last)) {
            if w == s && cur.len() >= 3 && cur[1] < last {
                out.push(cur.clone());
                if out.len() > cap {
                    return false;
                }
            } else if w > s && used & bit(w) == 0 {
                cur.push(w);
                let ok = go(g, s, cur, used | bit(w), out, cap);
                cur.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut cur = vec![s];
        if !go(g, s, &mut cur, bit(s), &mut out, cap) {
            return None;
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Some(out)
}

/// Two odd cycles of length at least five in one component, sharing at most
/// one vertex.
pub fn detect_two_long_odd(g: &Graph, cap: usize) -> Detection<(Vec<usize>, Vec<usize>)> {
    let Some(cycles) = enumerate_cycles(g, cap) else {
        return Detection::Indeterminate(format!("more than {cap} cycles"));
    };
    let long: Vec<(Mask, &Vec<usize>)> = cycles
        .iter()
        .filter(|c| c.len() >= 5 && c.len() % 2 == 1)
        .map(|c| (c.iter().fold(0, |m, &v| m | bit(v)), c))
        .collect();
    for (i, &(ma, a)) in long.iter().enumerate() {
        let comp = g.reach(ma, g.vertex_mask());
        for &(mb, b) in &long[i + 1..] {
            if (ma & mb).count_ones() <= 1 && comp & mb != 0 {
                return Detection::Found((a.clone(), b.clone()));
            }
        }
    }
    Detection::Absent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::theta_recognize;

    fn check_witness(g: &Graph, w: &ThetaWitness) {
        let (sub, _) = w.subgraph(g);
        let sig = theta_recognize(&sub).unwrap();
        assert_eq!(sig.lengths(), w.signature.lengths());
        assert_eq!(sig.odd_count(), 1);
        assert!(!sub.has_triangle());
    }

    #[test]
    fn bad_theta_examples() {
        let g = cycle(7).with_edges(&[(0, 3)]).unwrap();
        let w = detect_bad_theta(&g, 1000).found().unwrap();
        assert_eq!(w.signature.lengths(), [0, 2, 3]);
        check_witness(&g, &w);

        let g = theta(1, 2, 2).unwrap();
        let w = detect_bad_theta(&g, 1000).found().unwrap();
        assert_eq!(w.signature.lengths(), [1, 2, 2]);
        check_witness(&g, &w);

        assert_eq!(detect_bad_theta(&complete(4), 1000), Detection::Absent);
        assert_eq!(detect_bad_theta(&complete(6), 100_000), Detection::Absent);
        check_witness(&complete(7), &detect_bad_theta(&complete(7), 100_000).found().unwrap());
    }

    #[test]
    fn theta_search_reports_its_cap() {
        assert!(matches!(detect_bad_theta(&complete(8), 10), Detection::Indeterminate(_)));
    }

    #[test]
    fn cycle_enumeration_counts() {
        // K4 has 7 cycles, K5 has 37
        assert_eq!(enumerate_cycles(&complete(4), 100).unwrap().len(), 7);
        assert_eq!(enumerate_cycles(&complete(5), 100).unwrap().len(), 37);
        // Petersen: 12 five-cycles, 10 six-cycles, 15 eight-cycles, 20 nine-cycles
        assert_eq!(enumerate_cycles(&petersen(), 10_000).unwrap().len(), 57);
    }

    #[test]
    fn two_long_odd_examples() {
        let (a, b) = detect_two_long_odd(&cycle_chain(&[5, 5]), 1000).found().unwrap();
        assert_eq!((a.len(), b.len()), (5, 5));
        assert_eq!(detect_two_long_odd(&cycle(5), 1000), Detection::Absent);
        let (a, b) = detect_two_long_odd(&petersen(), 100_000).found().unwrap();
        let shared = a.iter().filter(|v| b.contains(v)).count();
        assert!(shared <= 1);
        // cycles in different components do not count
        assert_eq!(detect_two_long_odd(&cycle(5).disjoint_union(&cycle(5)).unwrap(), 1000), Detection::Absent);
    }
}
