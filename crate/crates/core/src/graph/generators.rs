//! Standard graph families. All constructors panic above [`MAX_VERTICES`].

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    assert!(n <= MAX_VERTICES, "generator asked for {n} vertices");
    Graph::from_edges(n, edges).expect("generator produced a simple graph")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

/// Path on `n` vertices `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

/// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    build(n, &edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    build(leaves + 1, &edges)
}

/// Complete multipartite graph; parts take consecutive vertex ranges.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, p));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] != part_of[v])
        .collect();
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    complete_multipartite(&[a, b])
}

/// Outer 5-cycle 0..5, inner pentagram 5..10, spokes `i - i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    build(10, &edges)
}

/// Theta graph: branch vertices `0` and `1` joined by paths with `k`, `l`, `m`
/// internal vertices. Internal vertices are numbered path by path.
pub fn theta(k: usize, l: usize, m: usize) -> Result<Graph> {
    if [k, l, m].iter().filter(|&&x| x == 0).count() > 1 {
        return Err(Error::Precondition(
            "at most one theta path may be a direct edge".into(),
        ));
    }
    let n = 2 + k + l + m;
    if n > MAX_VERTICES {
        return Err(Error::capacity("vertex count", MAX_VERTICES, n));
    }
    let mut edges = Vec::new();
    let mut next = 2;
    for len in [k, l, m] {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::from_edges(n, &edges)
}

/// Cycles of the given lengths glued in a chain, consecutive cycles sharing
/// one vertex.
pub fn cycle_chain(lengths: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut anchor = 0;
    let mut next = 1;
    for &len in lengths {
        assert!(len >= 3);
        let mut ring = vec![anchor];
        for _ in 1..len {
            ring.push(next);
            next += 1;
        }
        for i in 0..len {
            edges.push((ring[i], ring[(i + 1) % len]));
        }
        anchor = *ring.last().unwrap();
    }
    build(next, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(complete(7).edge_count(), 21);
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().neighbors(0).count() == 3);
        let t = theta(0, 2, 3).unwrap();
        assert_eq!((t.n(), t.edge_count()), (7, 8));
        assert!(theta(0, 0, 3).is_err());
        let two_fives = cycle_chain(&[5, 5]);
        assert_eq!((two_fives.n(), two_fives.edge_count()), (9, 10));
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
    }
}
