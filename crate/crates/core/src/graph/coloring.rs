use super::{bits, Graph, Mask};
use crate::error::{ensure_cap, Result};

/// Largest order accepted by [`chromatic_number`].
pub const CHROMATIC_MAX_VERTICES: usize = 24;

fn max_clique(g: &Graph, cand: Mask, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    max_clique(g, cand & g.neighbor_mask(v), size + 1, best);
    max_clique(g, cand & !(1 << v), size, best);
}

fn greedy_colors(g: &Graph) -> usize {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut color = vec![usize::MAX; g.n()];
    let mut used = 0;
    for v in order {
        let taken: u64 = g
            .neighbors(v)
            .filter(|&w| color[w] != usize::MAX)
            .fold(0, |m, w| m | 1 << color[w]);
        color[v] = (!taken).trailing_zeros() as usize;
        used = used.max(color[v] + 1);
    }
    used
}

/// Backtracking k-coloring, always branching on the vertex with the fewest
/// remaining colors. New colors are opened in order, which removes color
/// permutation symmetry.
fn colorable(g: &Graph, k: usize, color: &mut [usize], uncolored: Mask, opened: usize) -> bool {
    if uncolored == 0 {
        return true;
    }
    let mut pick = usize::MAX;
    let mut pick_forbidden = 0u64;
    let mut pick_key = (0u32, 0u32);
    for v in bits(uncolored) {
        let forbidden: u64 = bits(g.neighbor_mask(v) & !uncolored).fold(0, |m, w| m | 1 << color[w]);
        let key = (forbidden.count_ones(), g.degree(v) as u32);
        if pick == usize::MAX || key > pick_key {
            pick = v;
            pick_key = key;
            pick_forbidden = forbidden;
        }
    }
    let limit = k.min(opened + 1);
    for c in 0..limit {
        if pick_forbidden & (1 << c) != 0 {
            continue;
        }
        color[pick] = c;
        let next_opened = opened.max(c + 1);
        if colorable(g, k, color, uncolored & !(1 << pick), next_opened) {
            return true;
        }
    }
    color[pick] = usize::MAX;
    false
}

/// Exact chromatic number. Refuses graphs above [`CHROMATIC_MAX_VERTICES`].
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    ensure_cap("chromatic number vertex count", CHROMATIC_MAX_VERTICES, g.n())?;
    if g.n() == 0 {
        return Ok(0);
    }
    let mut lower = 0;
    max_clique(g, g.vertex_mask(), 0, &mut lower);
    let upper = greedy_colors(g);
    for k in lower..upper {
        let mut color = vec![usize::MAX; g.n()];
        if colorable(g, k, &mut color, g.vertex_mask(), 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}

#[cfg(test)]
mod tests {
    use super::super::generators::*;
    use super::*;
    use crate::error::Error;

    /// Brute force over all colorings with k colors.
    fn brute_chromatic(g: &Graph) -> usize {
        let n = g.n();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            let total = k.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let col: Vec<usize> = (0..n)
                    .map(|_| {
                        let x = c % k;
                        c /= k;
                        x
                    })
                    .collect();
                if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
                    return k;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn known_values() {
        assert_eq!(chromatic_number(&complete(4)).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&complete(7)).unwrap(), 7);
        assert_eq!(chromatic_number(&petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(3).unwrap()).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()).unwrap(), 0);
    }

    #[test]
    fn capacity() {
        let big = Graph::empty(CHROMATIC_MAX_VERTICES + 1).unwrap();
        assert!(matches!(chromatic_number(&big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        // every labeled graph on 5 vertices
        for code in 0u32..1 << 10 {
            let mut edges = Vec::new();
            let mut i = 0;
            for v in 1..5 {
                for u in 0..v {
                    if code >> i & 1 == 1 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            let g = Graph::from_edges(5, &edges).unwrap();
            assert_eq!(chromatic_number(&g).unwrap(), brute_chromatic(&g), "{g:?}");
        }
    }

    #[test]
    fn mycielski_grotzsch_is_four_chromatic() {
        // Grötzsch graph: triangle-free with chromatic number 4
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, 5 + (i + 1) % 5));
            edges.push((i, 5 + (i + 4) % 5));
            edges.push((5 + i, 10));
        }
        let g = Graph::from_edges(11, &edges).unwrap();
        assert!(!g.has_triangle());
        assert_eq!(chromatic_number(&g).unwrap(), 4);
    }
}
