use super::{bit, Graph, Mask};

fn extend(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: Mask) -> bool {
    let i = map.len();
    if i == h.n() {
        return true;
    }
    for c in 0..g.n() {
        if used & bit(c) != 0 || g.degree(c) < h.degree(i) {
            continue;
        }
        // every already-mapped pattern neighbor must land on a host neighbor
        let ok = h
            .neighbors(i)
            .filter(|&j| j < i)
            .all(|j| g.has_edge(map[j], c));
        if !ok {
            continue;
        }
        map.push(c);
        if extend(g, h, map, used | bit(c)) {
            return true;
        }
        map.pop();
    }
    false
}

/// Lexicographically least edge-preserving injection `V(h) -> V(g)`
/// (ordinary, not induced, subgraph), or `None`.
pub fn subgraph_contains(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return None;
    }
    let mut map = Vec::with_capacity(h.n());
    extend(g, h, &mut map, 0).then_some(map)
}
