//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Time limits are pinned below.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scheme_minor_core::atlas::{enumerate_connected_graphs, verify_atlas_claims, AtlasOptions};
use scheme_minor_core::classify::{
    classify, component_blocks, rule, rule_firings, ClassifyOptions, Status, Witness,
};
use scheme_minor_core::graph::generators::{complete, cycle, cycle_chain, theta};
use scheme_minor_core::graph::{is_bipartite, is_cactus, BlockShape};
use scheme_minor_core::minor::{check_minor_model, find_rooted_minor, untangle_cycle_scheme};
use scheme_minor_core::mprime::{
    build_induced_model, build_mprime, decide_mprime_contractible, find_inducing_stable_set,
    theta_mprime_verdict, verify_certificate, DecisionCache,
};
use scheme_minor_core::scheme::random::random_scheme;
use scheme_minor_core::scheme::{normalize_scheme, replay_trace, validate_colored_scheme};
use scheme_minor_core::graph::theta_recognize;
use scheme_minor_core::Graph;

const THETA_NEGATIVE_LIMIT: Duration = Duration::from_secs(60);
const K7_LIMIT: Duration = Duration::from_secs(10);
const ATLAS_LIMIT: Duration = Duration::from_secs(30 * 60);
const THETA_SWEEP_LIMIT: Duration = Duration::from_secs(15 * 60);
const RANDOM_SCHEMES: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Labeled graphs on `n` vertices from an edge-subset code.
fn graph_from_code(n: usize, code: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| code >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism classes on `n` vertices by exhaustive permutation dedupe.
/// Returns one labeled representative per class.
fn oracle_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let index = |a: usize, b: usize| pairs.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for code in 0u32..1 << pairs.len() {
        if seen.contains(&code) {
            continue;
        }
        for p in &perms {
            let img: u32 = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| code >> i & 1 == 1)
                .map(|(_, &(u, v))| 1u32 << index(p[u], p[v]))
                .sum();
            seen.insert(img);
        }
        reps.push(graph_from_code(n, code));
    }
    reps
}

fn connected_in(g: &Graph, set: &[usize]) -> bool {
    let Some(&start) = set.first() else { return false };
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let x = seen[i];
        for &y in set {
            if !seen.contains(&y) && g.has_edge(x, y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen.len() == set.len()
}

/// Every map from non-root host vertices to pattern vertices or "unused".
fn brute_rooted(g: &Graph, h: &Graph, roots: &[usize]) -> bool {
    let (n, k) = (g.n(), h.n());
    let free: Vec<usize> = (0..n).filter(|x| !roots.contains(x)).collect();
    let mut label = vec![k; n];
    for (v, &r) in roots.iter().enumerate() {
        label[r] = v;
    }
    'outer: for mut code in 0..(k + 1).pow(free.len() as u32) {
        for &x in &free {
            label[x] = code % (k + 1);
            code /= k + 1;
        }
        let sets: Vec<Vec<usize>> = (0..k).map(|v| (0..n).filter(|&x| label[x] == v).collect()).collect();
        if !sets.iter().all(|s| connected_in(g, s)) {
            continue;
        }
        for (u, v) in h.edges() {
            if !sets[u].iter().any(|&a| sets[v].iter().any(|&b| g.has_edge(a, b))) {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in injections(n, k - 1) {
        for x in 0..n {
            if !p.contains(&x) {
                let mut q = p.clone();
                q.push(x);
                out.push(q);
            }
        }
    }
    out
}

fn c1_theta_negatives() -> Outcome {
    let mut notes = Vec::new();
    for (k, l, m) in [(0, 2, 3), (1, 2, 2)] {
        let h = theta(k, l, m).unwrap();
        let t = Instant::now();
        let d = decide_mprime_contractible(&h).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure(!d.contractible, || format!("theta({k},{l},{m}) decided contractible"))?;
        ensure(d.certificate.kind() == "negative_exhaustive", || {
            format!("theta({k},{l},{m}) certificate {}", d.certificate.kind())
        })?;
        ensure(took < THETA_NEGATIVE_LIMIT, || format!("theta({k},{l},{m}) took {took:?}"))?;
        notes.push(format!("theta({k},{l},{m}) {took:.2?}"));
    }
    Ok(notes.join(", "))
}

fn c2_k7() -> Outcome {
    let t = Instant::now();
    let h = complete(7);
    let d = decide_mprime_contractible(&h).map_err(|e| e.to_string())?;
    ensure(d.contractible && d.certificate.kind() == "shift_automorphism", || {
        format!("K7 decision {} {}", d.contractible, d.certificate.kind())
    })?;
    ensure(verify_certificate(&h, &d.certificate).unwrap().is_valid(), || "certificate rejected".into())?;
    let v = classify(&h, ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.status == Status::NotContractible && v.rule == Some(rule::THM_CHROMATIC), || {
        format!("classify(K7) = {:?} via {:?}", v.status, v.rule)
    })?;
    ensure(v.witness == Some(Witness::Chromatic { chromatic_number: 7 }), || "chromatic witness".into())?;
    let took = t.elapsed();
    ensure(took < K7_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("shift certificate, chi = 7, {took:.2?}"))
}

fn c3_atlas() -> Outcome {
    let t = Instant::now();
    let expected = [1, 1, 2, 6, 21, 112];
    for n in 1..=6 {
        let oracle = oracle_classes(n).into_iter().filter(Graph::is_connected).count();
        let got = enumerate_connected_graphs(n).map_err(|e| e.to_string())?.len();
        ensure(oracle == expected[n - 1] && got == oracle, || {
            format!("n = {n}: enumerated {got}, oracle {oracle}, expected {}", expected[n - 1])
        })?;
    }
    let report = verify_atlas_claims(&AtlasOptions::up_to(6)).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("failures: {:?}", report.failures))?;
    ensure(report.summary.graphs == 143, || format!("{} records", report.summary.graphs))?;
    ensure(
        report.records.iter().all(|r| r.mprime_contractible && r.certificate_verified),
        || "unverified or negative record".into(),
    )?;
    let took = t.elapsed();
    ensure(took < ATLAS_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("143 graphs, certificates {:?}, {took:.2?}", report.summary.certificates))
}

fn c4_triangle_free_cross_check() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for h in enumerate_connected_graphs(n).unwrap() {
            if h.has_triangle() {
                continue;
            }
            let fast = find_inducing_stable_set(&h).unwrap().is_some();
            let m = build_mprime(&h).unwrap();
            let slow = find_rooted_minor(&m.graph, &h, &m.roots).unwrap().is_some();
            ensure(fast == slow, || format!("{h:?}: stable set {fast}, search {slow}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} triangle-free graphs agree"))
}

fn c5_theta_sweep() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for k in 0..=7 {
        for l in k..=7 - k {
            for m in l..=7 - k - l {
                if l == 0 {
                    continue;
                }
                let h = theta(k, l, m).unwrap();
                let sig = theta_recognize(&h).unwrap();
                let closed = theta_mprime_verdict(&sig);
                let d = decide_mprime_contractible(&h).map_err(|e| e.to_string())?;
                ensure(closed == d.contractible, || {
                    format!("theta({k},{l},{m}): closed form {closed}, decider {}", d.contractible)
                })?;
                ensure(verify_certificate(&h, &d.certificate).unwrap().is_valid(), || {
                    format!("theta({k},{l},{m}) certificate rejected")
                })?;
                checked += 1;
            }
        }
    }
    let took = t.elapsed();
    ensure(took < THETA_SWEEP_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("{checked} theta graphs agree, {took:.2?}"))
}

fn c6_bipartite() -> Outcome {
    let mut checked = 0;
    for n in 1..=6 {
        for h in enumerate_connected_graphs(n).unwrap() {
            if is_bipartite(&h).is_none() {
                continue;
            }
            let w = find_inducing_stable_set(&h)
                .unwrap()
                .ok_or_else(|| format!("{h:?}: no inducing stable set"))?;
            let model = build_induced_model(&h, &w).map_err(|e| e.to_string())?;
            ensure(check_minor_model(&model).is_valid(), || format!("{h:?}: model rejected"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} bipartite graphs certified"))
}

fn c7_normalizer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    let mut contractions = 0;
    while done < RANDOM_SCHEMES {
        let k = rng.gen_range(2..=5);
        let pattern = loop {
            let g = graph_from_code(k, rng.gen_range(0..1u32 << (k * (k - 1) / 2)));
            if g.edge_count() > 0 {
                break g;
            }
        };
        let host_n = rng.gen_range(k.max(4)..=14);
        let density = rng.gen_range(0.2..0.6);
        let Some(s) = random_scheme(&mut rng, &pattern, host_n, density) else { continue };
        let out = normalize_scheme(&s).map_err(|e| format!("normalize failed: {e}"))?;
        let r = validate_colored_scheme(&out.colored);
        ensure(r.is_valid(), || format!("output invalid: {r:?}"))?;
        let (g, origin) = replay_trace(&s.host, &out.trace).map_err(|e| e.to_string())?;
        ensure(g == out.colored.scheme.host && origin == out.origin, || "replay differs".into())?;
        contractions += out.trace.len();
        done += 1;
    }
    Ok(format!("{done} schemes, {contractions} trace steps replayed"))
}

fn c8_untangle() -> Outcome {
    for n in 3..=7 {
        let m = build_mprime(&cycle(n)).unwrap();
        let model = untangle_cycle_scheme(&m.scheme).map_err(|e| format!("C{n}: {e}"))?;
        ensure(check_minor_model(&model).is_valid(), || format!("C{n}: model rejected"))?;
        ensure(model.roots.as_deref() == Some(&m.roots[..]), || format!("C{n}: wrong roots"))?;
        let found = find_rooted_minor(&m.graph, &cycle(n), &m.roots).unwrap();
        ensure(found.is_some(), || format!("C{n}: search disagrees"))?;
    }
    Ok("C3..C7 untangled".into())
}

fn c9_search_oracle() -> Outcome {
    let patterns: Vec<Graph> = (1..=4).flat_map(oracle_classes).collect();
    let mut checked = 0u64;
    for n in 1..=6 {
        for g in oracle_classes(n) {
            for h in &patterns {
                if h.n() > n {
                    continue;
                }
                for roots in injections(n, h.n()) {
                    let got = find_rooted_minor(&g, h, &roots).map_err(|e| e.to_string())?;
                    let want = brute_rooted(&g, h, &roots);
                    ensure(got.is_some() == want, || format!("{g:?} {h:?} {roots:?}: search {}, oracle {want}", got.is_some()))?;
                    if let Some(m) = got {
                        ensure(check_minor_model(&m).is_valid(), || "invalid model".into())?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} rooted instances agree"))
}

fn c10_classifier() -> Outcome {
    let cache = DecisionCache::new();
    let mut graphs = 0;
    for n in 1..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let f = rule_firings(&g, ClassifyOptions::deep(), &cache).map_err(|e| e.to_string())?;
            ensure(f.positive.is_empty() || f.negative.is_empty(), || {
                format!("{g:?} fires {:?} and {:?}", f.positive, f.negative)
            })?;
            let census = is_cactus(&g);
            let long = census.blocks.iter().filter(|b| matches!(b, BlockShape::Cycle(l) if *l > 3)).count();
            if census.is_cactus && long <= 1 {
                let v = classify(&g, ClassifyOptions::default()).unwrap();
                ensure(v.status == Status::Contractible, || format!("cactus {g:?} is {:?}", v.status))?;
            }
            graphs += 1;
        }
    }
    let v = classify(&cycle_chain(&[5, 5]), ClassifyOptions::default()).unwrap();
    ensure(v.status == Status::NotContractible && v.rule == Some(rule::COR_TWO_ODD), || {
        format!("two 5-cycles: {:?} via {:?}", v.status, v.rule)
    })?;
    let mut cacti = 0;
    for big in 4..=9 {
        for triangles in 0..=3 {
            for pos in 0..=triangles {
                let mut lengths = vec![3; triangles];
                lengths.insert(pos, big);
                let g = cycle_chain(&lengths);
                let v = classify(&g, ClassifyOptions::default()).unwrap();
                ensure(v.status == Status::Contractible, || format!("cactus {lengths:?} is {:?}", v.status))?;
                ensure(!component_blocks(&g).is_empty(), || "no components".into())?;
                cacti += 1;
            }
        }
    }
    Ok(format!("{graphs} atlas graphs consistent, {cacti} cacti contractible"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("theta(0,2,3) and theta(1,2,2) are not M'-contractible", c1_theta_negatives),
        ("K7 is M'-contractible by a shift automorphism and has chromatic number 7", c2_k7),
        ("all connected graphs on at most 6 vertices are M'-contractible", c3_atlas),
        ("triangle-free graphs: inducing stable set iff rooted minor in M'(H)", c4_triangle_free_cross_check),
        ("theta closed form matches the decider for k+l+m <= 7", c5_theta_sweep),
        ("bipartite graphs yield verified induced models", c6_bipartite),
        ("normalizer output is colored and its trace replays", c7_normalizer),
        ("doubled cycle schemes untangle to rooted models", c8_untangle),
        ("rooted search agrees with the brute-force oracle", c9_search_oracle),
        ("classifier rules never conflict", c10_classifier),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{detail}] ({:.2?})", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{why}] ({:.2?})", i + 1, t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
