use serde::Serialize;

use super::{bit, bits, Graph, Mask};

/// Blocks (maximal subgraphs without a cut vertex) and the cut vertices
/// joining them. Isolated vertices are singleton blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Sorted vertex lists, ordered lexicographically.
    pub blocks: Vec<Vec<usize>>,
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn block_masks(&self) -> Vec<Mask> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0, |m, &v| m | bit(v)))
            .collect()
    }
}

struct Tarjan<'a> {
    g: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Mask>,
    cut: Mask,
}

impl Tarjan<'_> {
    fn dfs(&mut self, v: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[v] = self.time;
        self.low[v] = self.time;
        let mut children = 0;
        for w in self.g.neighbors(v) {
            if self.disc[w] == 0 {
                children += 1;
                self.stack.push((v, w));
                self.dfs(w, Some(v));
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent.is_some() || children > 1 {
                        self.cut |= bit(v);
                    }
                    let mut block = 0;
                    while let Some((a, b)) = self.stack.pop() {
                        block |= bit(a) | bit(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(w) != parent && self.disc[w] < self.disc[v] {
                self.stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        // A root with a single child is never a cut vertex.
        if parent.is_none() && children < 2 {
            self.cut &= !bit(v);
        }
    }
}

/// Connected components (sorted vertex lists, ordered by least vertex) and
/// the block decomposition.
pub fn components_and_blocks(g: &Graph) -> (Vec<Vec<usize>>, BlockDecomposition) {
    let n = g.n();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        cut: 0,
    };
    for v in 0..n {
        if t.disc[v] == 0 {
            if g.degree(v) == 0 {
                t.disc[v] = usize::MAX;
                t.blocks.push(bit(v));
            } else {
                t.dfs(v, None);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = t.blocks.iter().map(|&m| bits(m).collect()).collect();
    blocks.sort();
    let components = g
        .component_masks()
        .into_iter()
        .map(|m| bits(m).collect())
        .collect();
    (
        components,
        BlockDecomposition {
            blocks,
            cut_vertices: bits(t.cut).collect(),
        },
    )
}
