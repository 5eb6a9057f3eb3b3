//! Random valid H-schemes, for property tests and benchmarks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{validate_hscheme, HScheme};
use crate::graph::{bit, bits, Graph, Mask};

/// Randomized depth-first search for a `from`-`to` path through `allowed`.
fn random_path<R: Rng>(rng: &mut R, g: &Graph, from: usize, to: usize, allowed: Mask) -> Option<Vec<usize>> {
    let mut path = vec![from];
    let mut visited = bit(from);
    let mut stack: Vec<Vec<usize>> = vec![shuffled(rng, g, from)];
    while let Some(options) = stack.last_mut() {
        match options.pop() {
            None => {
                stack.pop();
                path.pop();
            }
            Some(w) if w == to => {
                path.push(w);
                return Some(path);
            }
            Some(w) if visited & bit(w) == 0 && allowed & bit(w) != 0 => {
                visited |= bit(w);
                path.push(w);
                let next = shuffled(rng, g, w);
                stack.push(next);
            }
            Some(_) => {}
        }
    }
    None
}

fn shuffled<R: Rng>(rng: &mut R, g: &Graph, v: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = g.neighbors(v).collect();
    ns.shuffle(rng);
    ns
}

/// Random host of order `host_n` with edge probability `density`, random
/// roots, and randomly routed paths respecting the shared-endpoint rule.
/// Returns `None` when the routing gets stuck; callers retry.
pub fn random_scheme<R: Rng>(rng: &mut R, pattern: &Graph, host_n: usize, density: f64) -> Option<HScheme> {
    let k = pattern.n();
    if host_n < k {
        return None;
    }
    let edges: Vec<(usize, usize)> = (0..host_n)
        .flat_map(|u| (u + 1..host_n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let host = Graph::from_edges(host_n, &edges).ok()?;
    let mut order: Vec<usize> = (0..host_n).collect();
    order.shuffle(rng);
    let roots: Vec<usize> = order[..k].to_vec();
    let root_mask = roots.iter().fold(0, |m, &r| m | bit(r));
    // endpoints still shared by every path through each host vertex
    let mut common = vec![u64::MAX; host_n];
    let mut pattern_edges = pattern.edges();
    pattern_edges.shuffle(rng);
    let mut paths = BTreeMap::new();
    for (u, v) in pattern_edges {
        let e = bit(u) | bit(v);
        let allowed = bits(host.vertex_mask() & !root_mask)
            .filter(|&x| common[x] & e != 0)
            .fold(0, |m, x| m | bit(x));
        let p = random_path(rng, &host, roots[u], roots[v], allowed)?;
        for &x in &p[1..p.len() - 1] {
            common[x] &= e;
        }
        paths.insert((u, v), p);
    }
    let s = HScheme::new(pattern.clone(), host, roots, paths).ok()?;
    debug_assert!(validate_hscheme(&s).is_valid());
    Some(s)
}
