//! Rooted cycle models from colored cycle schemes.
//!
//! After normalization every color class of a cycle scheme has the same
//! size, so a host larger than the cycle has no single-edge path. Contracting
//! each root into its successor-path neighbor leaves, inside each old path,
//! a path for the previous cycle edge. The smaller scheme is solved
//! recursively and its model pulled back through the contractions.

use std::collections::BTreeMap;

use super::{check_minor_model, MinorModel, Quotient};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, Mask};
use crate::scheme::{normalize_scheme, validate_colored_scheme, ColoredScheme, HScheme};

/// Pattern vertices in cyclic order, or `None` if the pattern is not a cycle.
fn cyclic_order(h: &Graph) -> Option<Vec<usize>> {
    let n = h.n();
    if n < 3 || !h.is_connected() || (0..n).any(|v| h.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = h.neighbors(0).next()?;
    while cur != 0 {
        order.push(cur);
        let next = h.neighbors(cur).find(|&x| x != prev)?;
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Builds a rooted model of the cycle pattern from a valid colored scheme.
pub fn untangle_cycle_scheme(c: &ColoredScheme) -> Result<MinorModel> {
    let s = &c.scheme;
    let order = cyclic_order(&s.pattern)
        .ok_or_else(|| Error::Precondition("pattern is not a cycle".into()))?;
    let report = validate_colored_scheme(c);
    if !report.is_valid() {
        return Err(Error::Precondition(format!(
            "colored scheme is invalid: {}",
            report.clause_list()
        )));
    }
    let sets = solve(s, &order)?;
    let model = MinorModel::from_masks(&s.pattern, &s.host, &sets, Some(&s.roots));
    let r = check_minor_model(&model);
    if !r.is_valid() {
        return Err(Error::Internal(format!("untangled model fails its check: {r:?}")));
    }
    Ok(model)
}

fn solve(s: &HScheme, order: &[usize]) -> Result<Vec<Mask>> {
    let norm = normalize_scheme(s).map_err(|e| match e {
        Error::Precondition(m) => Error::Internal(format!("intermediate cycle scheme rejected: {m}")),
        other => other,
    })?;
    let cs = &norm.colored.scheme;
    let n = order.len();
    let host = &cs.host;
    if host.n() == n {
        let sets: Vec<Mask> = cs.roots.iter().map(|&r| bit(r)).collect();
        return Ok(norm.lift(&sets));
    }

    // succ[i] is the neighbor of root i on its path to the next root
    let mut rep: Vec<Option<usize>> = (0..host.n()).map(Some).collect();
    let mut forward = Vec::with_capacity(n);
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        let p = cs
            .path_from(u, v)
            .ok_or_else(|| Error::Internal(format!("missing path {u}-{v}")))?;
        if p.len() < 3 {
            return Err(Error::Internal(format!("single-edge path {u}-{v} in a host larger than the cycle")));
        }
        rep[p[1]] = Some(cs.roots[u]);
        forward.push(p);
    }
    let q = Quotient::new(host, &rep);

    // the old path of (u_i, u_{i+1}) holds the new path of (u_{i-1}, u_i)
    let mut paths = BTreeMap::new();
    for i in 0..n {
        let prev = order[(i + n - 1) % n];
        let cur = order[i];
        let p = &forward[i];
        let succ_prev = forward[(i + n - 1) % n][1];
        let end = p
            .iter()
            .position(|&x| x == succ_prev)
            .ok_or_else(|| Error::Internal(format!("path of {cur} misses the contracted neighbor of {prev}")))?;
        let sub: Vec<usize> = p[1..=end]
            .iter()
            .rev()
            .map(|&x| q.map[x].expect("no deletions"))
            .collect();
        paths.insert((prev, cur), sub);
    }
    let roots = cs.roots.iter().map(|&r| q.map[r].expect("no deletions")).collect();
    let next = HScheme::new(cs.pattern.clone(), q.graph.clone(), roots, paths)?;
    let inner = solve(&next, order)?;
    let sets: Vec<Mask> = inner.iter().map(|&m| q.lift(m)).collect();
    Ok(norm.lift(&sets))
}
