use serde::Serialize;

use super::{bit, bits, mask_of, Graph, Mask};
use crate::error::{Error, Result};

/// A proper 2-coloring. `left` holds the least vertex of every component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// An odd cycle as a closed vertex sequence (first vertex not repeated).
pub type OddCycle = Vec<usize>;

fn two_color(g: &Graph) -> std::result::Result<Vec<u8>, OddCycle> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    // climb both ends to their common ancestor
                    let (mut a, mut b) = (v, w);
                    let mut up = vec![a];
                    let mut down = vec![b];
                    while depth[a] > depth[b] {
                        a = parent[a];
                        up.push(a);
                    }
                    while depth[b] > depth[a] {
                        b = parent[b];
                        down.push(b);
                    }
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        up.push(a);
                        down.push(b);
                    }
                    down.pop();
                    down.reverse();
                    up.extend(down);
                    return Err(up);
                }
            }
        }
    }
    Ok(color)
}

/// The canonical bipartition, or `None` when the graph has an odd cycle.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let color = two_color(g).ok()?;
    let (left, right) = (0..g.n()).partition(|&v| color[v] == 0);
    Some(Bipartition { left, right })
}

/// Some odd cycle, or `None` for bipartite graphs.
pub fn odd_cycle(g: &Graph) -> Option<OddCycle> {
    two_color(g).err()
}

/// Maximum matching using only edges between `a` and `b`, found by
/// augmenting paths with ascending tie-breaking. Pairs are `(a-side, b-side)`
/// sorted by the `a`-side vertex.
pub fn bipartite_matching(g: &Graph, a: &[usize], b: &[usize]) -> Result<Vec<(usize, usize)>> {
    let am = mask_of(a.iter().copied());
    let bm = mask_of(b.iter().copied());
    if am & bm != 0 {
        return Err(Error::Precondition("matching sides overlap".into()));
    }
    if (am | bm) & !g.vertex_mask() != 0 {
        return Err(Error::Precondition("matching side contains a missing vertex".into()));
    }
    let mut mate_of_b = vec![usize::MAX; g.n()];
    for u in bits(am) {
        let mut seen: Mask = 0;
        augment(g, u, bm, &mut seen, &mut mate_of_b);
    }
    let mut pairs: Vec<(usize, usize)> = bits(bm)
        .filter(|&v| mate_of_b[v] != usize::MAX)
        .map(|v| (mate_of_b[v], v))
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

fn augment(g: &Graph, u: usize, bm: Mask, seen: &mut Mask, mate_of_b: &mut [usize]) -> bool {
    for v in bits(g.neighbor_mask(u) & bm & !*seen) {
        *seen |= bit(v);
        if mate_of_b[v] == usize::MAX || augment(g, mate_of_b[v], bm, seen, mate_of_b) {
            mate_of_b[v] = u;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::generators::*;
    use super::*;

    fn is_cycle_in(g: &Graph, c: &[usize]) -> bool {
        let distinct = mask_of(c.iter().copied()).count_ones() as usize == c.len();
        distinct && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn even_cycle_alternates() {
        let bp = is_bipartite(&cycle(6)).unwrap();
        assert_eq!(bp.left, vec![0, 2, 4]);
        assert_eq!(bp.right, vec![1, 3, 5]);
    }

    #[test]
    fn c5_has_odd_witness() {
        assert!(is_bipartite(&cycle(5)).is_none());
        let c = odd_cycle(&cycle(5)).unwrap();
        assert_eq!(c.len(), 5);
        assert!(is_cycle_in(&cycle(5), &c));
    }

    #[test]
    fn k23_sides() {
        let bp = is_bipartite(&complete_bipartite(2, 3)).unwrap();
        let mut sizes = [bp.left.len(), bp.right.len()];
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
    }

    #[test]
    fn odd_witness_is_a_real_cycle() {
        for g in [complete(4), petersen(), theta(0, 2, 3).unwrap(), cycle_chain(&[4, 7])] {
            let c = odd_cycle(&g).unwrap();
            assert!(c.len() % 2 == 1 && is_cycle_in(&g, &c), "{c:?}");
        }
    }

    #[test]
    fn matchings() {
        // star center on the b side, leaves on the a side
        let s = star(3);
        let m = bipartite_matching(&s, &[1, 2, 3], &[0]).unwrap();
        assert_eq!(m.len(), 1);
        let c6 = cycle(6);
        assert_eq!(bipartite_matching(&c6, &[0, 2, 4], &[1, 3, 5]).unwrap().len(), 3);
        assert!(bipartite_matching(&c6, &[], &[1, 3, 5]).unwrap().is_empty());
        assert!(bipartite_matching(&c6, &[0], &[0]).is_err());
    }

    #[test]
    fn matching_ignores_same_side_edges() {
        let k4 = complete(4);
        let m = bipartite_matching(&k4, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(m.len(), 2);
        for (a, b) in m {
            assert!(a < 2 && b >= 2);
        }
    }
}
