//! Block patterns behind the positive rules.

use serde::Serialize;

use crate::graph::generators::{complete_bipartite, complete_multipartite};
use crate::graph::{canonical_form, components_and_blocks, mask_of, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Vertex,
    Edge,
    Triangle,
    /// A cycle on at least four vertices.
    Cycle,
    K4,
    K112,
    K113,
    K23,
    Other,
}

impl BlockKind {
    /// Blocks allowed at most once per component.
    pub fn is_special(self) -> bool {
        matches!(self, BlockKind::Cycle | BlockKind::K4 | BlockKind::K112 | BlockKind::K113 | BlockKind::K23)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockInfo {
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentBlocks {
    pub vertices: Vec<usize>,
    pub blocks: Vec<BlockInfo>,
}

fn same(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).ok() == canonical_form(b).ok()
}

pub fn block_kind(sub: &Graph) -> BlockKind {
    let (n, e) = (sub.n(), sub.edge_count());
    match (n, e) {
        (1, 0) => BlockKind::Vertex,
        (2, 1) => BlockKind::Edge,
        (3, 3) => BlockKind::Triangle,
        _ if n >= 4 && e == n && (0..n).all(|v| sub.degree(v) == 2) => BlockKind::Cycle,
        (4, 6) => BlockKind::K4,
        (4, 5) if same(sub, &complete_multipartite(&[1, 1, 2])) => BlockKind::K112,
        (5, 7) if same(sub, &complete_multipartite(&[1, 1, 3])) => BlockKind::K113,
        (5, 6) if same(sub, &complete_bipartite(2, 3)) => BlockKind::K23,
        _ => BlockKind::Other,
    }
}

/// Blocks of each component, components in order of their least vertex.
pub fn component_blocks(g: &Graph) -> Vec<ComponentBlocks> {
    let (components, bd) = components_and_blocks(g);
    components
        .into_iter()
        .map(|comp| {
            let cm = mask_of(comp.iter().copied());
            let blocks = bd
                .blocks
                .iter()
                .filter(|b| cm & mask_of(b.iter().copied()) != 0)
                .map(|b| BlockInfo {
                    vertices: b.clone(),
                    kind: block_kind(&g.induced(mask_of(b.iter().copied())).0),
                })
                .collect();
            ComponentBlocks { vertices: comp, blocks }
        })
        .collect()
}

/// Every block a triangle, edge or vertex, except at most one special block
/// per component.
pub fn matches_summary(comps: &[ComponentBlocks]) -> bool {
    comps.iter().all(|c| {
        c.blocks.iter().all(|b| b.kind != BlockKind::Other)
            && c.blocks.iter().filter(|b| b.kind.is_special()).count() <= 1
    })
}

/// Every component a cactus with at most one cycle longer than three.
pub fn matches_cactus(comps: &[ComponentBlocks]) -> bool {
    comps.iter().all(|c| {
        c.blocks
            .iter()
            .all(|b| matches!(b.kind, BlockKind::Vertex | BlockKind::Edge | BlockKind::Triangle | BlockKind::Cycle))
            && c.blocks.iter().filter(|b| b.kind == BlockKind::Cycle).count() <= 1
    })
}

pub fn is_forest(g: &Graph) -> bool {
    let comps = crate::graph::components_and_blocks(g).0.len();
    g.edge_count() + comps == g.n()
}
