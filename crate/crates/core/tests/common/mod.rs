// SPDX-License-Identifier: MIT
//! Slow reference implementations. They work from raw edge lists and share
//! no code with the library beyond graph construction.
#![allow(dead_code)]

use std::collections::BTreeSet;

use causal_persuasion::{build_fixture, Dag, IndependenceOracle};
use itertools::Itertools;

pub fn fixture(name: &str) -> Dag {
    build_fixture(name.parse().unwrap())
}

pub fn dag(vars: &[&str], edges: &[(&str, &str)]) -> Dag {
    Dag::new(vars, edges.iter().copied()).unwrap()
}

pub fn edge_set(g: &Dag) -> BTreeSet<(String, String)> {
    g.edge_names().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn undirected_neighbors(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut nb = vec![Vec::new(); n];
    for &(a, b) in edges {
        nb[a].push(b);
        nb[b].push(a);
    }
    nb
}

fn descendants_incl(n: usize, edges: &[(usize, usize)], v: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if std::mem::replace(&mut seen[u], true) {
            continue;
        }
        stack.extend(edges.iter().filter(|e| e.0 == u).map(|e| e.1));
    }
    seen
}

/// Every simple path from `a` to `b`, ignoring edge direction.
pub fn simple_paths(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> Vec<Vec<usize>> {
    fn go(nb: &[Vec<usize>], b: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == b {
            out.push(path.clone());
            return;
        }
        for &m in &nb[last] {
            if !path.contains(&m) {
                path.push(m);
                go(nb, b, path, out);
                path.pop();
            }
        }
    }
    let nb = undirected_neighbors(n, edges);
    let mut out = Vec::new();
    go(&nb, b, &mut vec![a], &mut out);
    out
}

/// Path-by-path d-separation: every path needs a non-collider in `s` or a
/// collider with neither itself nor a descendant in `s`.
pub fn path_dsep(g: &Dag, a: usize, b: usize, s: &[usize]) -> bool {
    let edges = g.edges();
    let n = g.len();
    simple_paths(n, &edges, a, b).iter().all(|p| {
        p.windows(3).any(|w| {
            let (u, v, x) = (w[0], w[1], w[2]);
            let collider = edges.contains(&(u, v)) && edges.contains(&(x, v));
            if collider {
                let d = descendants_incl(n, &edges, v);
                !s.iter().any(|&z| d[z])
            } else {
                s.contains(&v)
            }
        })
    })
}

/// Truth index of each scope member, in scope order.
pub fn scope_map(o: &IndependenceOracle) -> Vec<usize> {
    o.scope().iter().collect()
}

/// Markov and minimality checked over every pair and every conditioning set.
pub fn brute_consistent(model: &Dag, o: &IndependenceOracle) -> bool {
    let map = scope_map(o);
    let truth = o.truth();
    let n = model.len();
    for (a, b) in (0..n).tuple_combinations() {
        let rest: Vec<usize> = (0..n).filter(|&k| k != a && k != b).collect();
        for s in rest.iter().copied().powerset() {
            let ts: Vec<usize> = s.iter().map(|&k| map[k]).collect();
            let data = path_dsep(truth, map[a], map[b], &ts);
            if model.adjacent(a, b) && data {
                return false;
            }
            if path_dsep(model, a, b, &s) && !data {
                return false;
            }
        }
    }
    true
}

/// Every DAG on `n` labelled nodes, as edge lists.
pub fn all_dags(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut out = Vec::new();
    for code in 0..3usize.pow(pairs.len() as u32) {
        let mut c = code;
        let mut edges = Vec::new();
        for &(a, b) in &pairs {
            match c % 3 {
                1 => edges.push((a, b)),
                2 => edges.push((b, a)),
                _ => {}
            }
            c /= 3;
        }
        if acyclic(n, &edges) {
            out.push(edges);
        }
    }
    out
}

fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n];
    for &(_, b) in edges {
        indeg[b] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = ready.pop() {
        done += 1;
        for &(a, b) in edges {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(b);
                }
            }
        }
    }
    done == n
}

pub fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn from_indices(names: &[String], edges: &[(usize, usize)]) -> Dag {
    Dag::new(names, edges.iter().map(|&(a, b)| (names[a].as_str(), names[b].as_str()))).unwrap()
}

/// Consistent DAGs found by trying every DAG on the scope.
pub fn brute_enumerate(o: &IndependenceOracle) -> BTreeSet<Vec<(String, String)>> {
    let names: Vec<String> = o.scope_names().iter().map(|s| s.to_string()).collect();
    all_dags(names.len())
        .iter()
        .map(|e| from_indices(&names, e))
        .filter(|m| brute_consistent(m, o))
        .map(|m| edge_set(&m).into_iter().collect())
        .collect()
}

pub fn as_edge_lists(models: &[Dag]) -> BTreeSet<Vec<(String, String)>> {
    models.iter().map(|m| edge_set(m).into_iter().collect()).collect()
}

/// Smallest adjacency code over all relabelings.
pub fn full_canonical(g: &Dag) -> (usize, u64) {
    let n = g.len();
    let edges = g.edges();
    let best = (0..n)
        .permutations(n)
        .map(|p| edges.iter().fold(0u64, |code, &(a, b)| code | 1 << (p[a] * n + p[b])))
        .min()
        .unwrap_or(0);
    (n, best)
}

/// No collider has correlated parents.
pub fn brute_simple(g: &Dag) -> bool {
    let n = g.len();
    for b in 0..n {
        for (a, c) in (0..n).tuple_combinations() {
            if a == b || c == b || g.adjacent(a, c) {
                continue;
            }
            if g.has_edge(a, b) && g.has_edge(c, b) && !path_dsep(g, a, c, &[]) {
                return false;
            }
        }
    }
    true
}

/// The graph with node names permuted by `perm` (old index -> new name index).
pub fn relabel(g: &Dag, names: &[String], perm: &[usize]) -> Dag {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    from_indices(names, &edges)
}
