use serde::Serialize;

use super::{bit, blocks::components_and_blocks, Graph};

/// Internal path lengths of a theta graph, sorted ascending, with its two
/// branch vertices `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaSignature {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    pub x: usize,
    pub y: usize,
}

impl ThetaSignature {
    /// Sorts the lengths; `None` if more than one is zero.
    pub fn new(lengths: [usize; 3], x: usize, y: usize) -> Option<Self> {
        let mut s = lengths;
        s.sort_unstable();
        if s[1] == 0 {
            return None;
        }
        let (x, y) = if x <= y { (x, y) } else { (y, x) };
        Some(ThetaSignature {
            k: s[0],
            l: s[1],
            m: s[2],
            x,
            y,
        })
    }

    pub fn lengths(&self) -> [usize; 3] {
        [self.k, self.l, self.m]
    }

    pub fn vertex_count(&self) -> usize {
        2 + self.k + self.l + self.m
    }

    pub fn odd_count(&self) -> usize {
        self.lengths().iter().filter(|&&x| x % 2 == 1).count()
    }
}

/// Recognizes graphs that are exactly a theta graph.
pub fn theta_recognize(g: &Graph) -> Option<ThetaSignature> {
    let branch: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    if branch.len() != 2 || (0..g.n()).any(|v| g.degree(v) != 3 && g.degree(v) != 2) {
        return None;
    }
    let (x, y) = (branch[0], branch[1]);
    let mut lengths = [0usize; 3];
    let mut seen = bit(x) | bit(y);
    for (i, start) in g.neighbors(x).enumerate() {
        let (mut prev, mut cur, mut internal) = (x, start, 0);
        while cur != y {
            if cur == x || seen & bit(cur) != 0 {
                return None;
            }
            seen |= bit(cur);
            internal += 1;
            let next = g.neighbors(cur).find(|&w| w != prev)?;
            prev = cur;
            cur = next;
        }
        lengths[i] = internal;
    }
    if seen != g.vertex_mask() {
        return None;
    }
    ThetaSignature::new(lengths, x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "length", rename_all = "snake_case")]
pub enum BlockShape {
    Vertex,
    Edge,
    Cycle(usize),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CactusCensus {
    pub is_cactus: bool,
    /// One entry per block, in block-decomposition order.
    pub blocks: Vec<BlockShape>,
    /// Odd cycle blocks with at least five vertices.
    pub long_odd_cycles: usize,
}

pub(crate) fn block_shape(g: &Graph, block: &[usize]) -> BlockShape {
    let m = block.iter().fold(0, |m, &v| m | bit(v));
    let (sub, _) = g.induced(m);
    match (sub.n(), sub.edge_count()) {
        (1, 0) => BlockShape::Vertex,
        (2, 1) => BlockShape::Edge,
        (n, e) if n >= 3 && e == n && (0..n).all(|v| sub.degree(v) == 2) => BlockShape::Cycle(n),
        _ => BlockShape::Other,
    }
}

/// Whether `g` is connected with every block an edge or a cycle, together
/// with a per-block census.
pub fn is_cactus(g: &Graph) -> CactusCensus {
    let (components, bd) = components_and_blocks(g);
    let blocks: Vec<BlockShape> = bd.blocks.iter().map(|b| block_shape(g, b)).collect();
    let long_odd_cycles = blocks
        .iter()
        .filter(|s| matches!(s, BlockShape::Cycle(l) if l % 2 == 1 && *l >= 5))
        .count();
    let shapes_ok = blocks
        .iter()
        .all(|s| matches!(s, BlockShape::Edge | BlockShape::Cycle(_)))
        || (g.n() == 1);
    CactusCensus {
        is_cactus: components.len() == 1 && shapes_ok,
        blocks,
        long_odd_cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::super::generators::*;
    use super::*;

    #[test]
    fn theta_examples() {
        let k23 = complete_bipartite(2, 3);
        let s = theta_recognize(&k23).unwrap();
        assert_eq!(s.lengths(), [1, 1, 1]);
        let chord7 = cycle(7).with_edges(&[(0, 3)]).unwrap();
        assert_eq!(theta_recognize(&chord7).unwrap().lengths(), [0, 2, 3]);
        assert!(theta_recognize(&cycle(5)).is_none());
        assert!(theta_recognize(&complete(4)).is_none());
    }

    #[test]
    fn theta_roundtrip_all_small() {
        for k in 0..=9 {
            for l in 0..=9 - k {
                for m in 0..=9 - k - l {
                    let Ok(g) = theta(k, l, m) else { continue };
                    let mut want = [k, l, m];
                    want.sort();
                    let s = theta_recognize(&g).unwrap();
                    assert_eq!(s.lengths(), want);
                    assert_eq!(s.vertex_count(), g.n());
                }
            }
        }
    }

    #[test]
    fn theta_rejects_disconnected_extras() {
        let g = theta(1, 1, 1).unwrap().disjoint_union(&cycle(3)).unwrap();
        assert!(theta_recognize(&g).is_none());
    }

    #[test]
    fn cactus_examples() {
        let bowtie = is_cactus(&cycle_chain(&[3, 3]));
        assert!(bowtie.is_cactus);
        assert_eq!(bowtie.long_odd_cycles, 0);
        assert!(!is_cactus(&complete(4)).is_cactus);
        let fives = is_cactus(&cycle_chain(&[5, 5]));
        assert!(fives.is_cactus);
        assert_eq!(fives.long_odd_cycles, 2);
        assert!(is_cactus(&path(5)).is_cactus);
        assert!(!is_cactus(&path(2).disjoint_union(&path(2)).unwrap()).is_cactus);
    }
}
