// SPDX-License-Identifier: MIT
//! Named example worlds and graph generators for tests.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dag::{Dag, VariableId};
use crate::error::{Error, Result};
use crate::nodeset::{NodeSet, MAX_NODES};
use crate::world::is_simple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixtureId {
    Fig2a,
    Fig4a,
    Fig6a,
    Fig7a,
    Fig8a,
    Fig8b,
    Fig8c,
    Fig9,
    Fig10a,
    Fig10b,
    Fig11a,
    Fig12(usize),
    Fig13a,
    Fig14a,
    Fig15a(usize),
    Fig16a,
    Fig17a,
}

const PLAIN: [(&str, FixtureId); 15] = [
    ("fig2a", FixtureId::Fig2a),
    ("fig4a", FixtureId::Fig4a),
    ("fig6a", FixtureId::Fig6a),
    ("fig7a", FixtureId::Fig7a),
    ("fig8a", FixtureId::Fig8a),
    ("fig8b", FixtureId::Fig8b),
    ("fig8c", FixtureId::Fig8c),
    ("fig9", FixtureId::Fig9),
    ("fig10a", FixtureId::Fig10a),
    ("fig10b", FixtureId::Fig10b),
    ("fig11a", FixtureId::Fig11a),
    ("fig13a", FixtureId::Fig13a),
    ("fig14a", FixtureId::Fig14a),
    ("fig16a", FixtureId::Fig16a),
    ("fig17a", FixtureId::Fig17a),
];

/// Largest `n` for the parametric families; `fig12(n)` has `2n + 3` nodes.
pub const MAX_FAMILY_N: usize = 30;

impl FixtureId {
    /// Every fixture name; parametric ones are listed as `fig12(n)`.
    pub fn names() -> Vec<&'static str> {
        let mut v: Vec<&str> = PLAIN.iter().map(|(s, _)| *s).collect();
        v.extend(["fig12(n)", "fig15a(n)"]);
        v.sort_by_key(|s| {
            let digits: String = s[3..].chars().take_while(|c| c.is_ascii_digit()).collect();
            (digits.parse::<u32>().unwrap_or(0), *s)
        });
        v
    }

    /// Parses `name` with an optional family size; `fig12(3)` is also accepted.
    pub fn parse(name: &str, n: Option<usize>) -> Result<FixtureId> {
        let (base, inline) = match name.split_once('(') {
            Some((b, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
                let k = inner
                    .parse::<usize>()
                    .map_err(|_| Error::UnknownFixture(name.to_string()))?;
                (b, Some(k))
            }
            None => (name, None),
        };
        let size = match (inline, n) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Precondition(format!(
                    "fixture size given twice with different values ({a} and {b})"
                )))
            }
            (a, b) => a.or(b),
        };
        let family = |k: Option<usize>, f: fn(usize) -> FixtureId| -> Result<FixtureId> {
            match k {
                None => Err(Error::Precondition(format!("fixture `{base}` needs a size n >= 1"))),
                Some(k) if k == 0 || k > MAX_FAMILY_N => Err(Error::Precondition(format!(
                    "fixture `{base}` needs 1 <= n <= {MAX_FAMILY_N}, got {k}"
                ))),
                Some(k) => Ok(f(k)),
            }
        };
        match base {
            "fig12" => family(size, FixtureId::Fig12),
            "fig15a" => family(size, FixtureId::Fig15a),
            _ => {
                let id = PLAIN
                    .iter()
                    .find(|(s, _)| *s == base)
                    .map(|&(_, id)| id)
                    .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
                if size.is_some() {
                    return Err(Error::Precondition(format!("fixture `{base}` takes no size")));
                }
                Ok(id)
            }
        }
    }
}

impl FromStr for FixtureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FixtureId::parse(s, None)
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureId::Fig12(n) => write!(f, "fig12({n})"),
            FixtureId::Fig15a(n) => write!(f, "fig15a({n})"),
            other => {
                let name = PLAIN.iter().find(|(_, id)| id == other).map(|(s, _)| *s);
                f.write_str(name.unwrap_or("?"))
            }
        }
    }
}

fn build(vars: &[&str], edges: &[(&str, &str)]) -> Dag {
    Dag::new(vars, edges.iter().copied()).expect("fixture graphs are valid")
}

fn build_owned(vars: &[String], edges: &[(String, String)]) -> Dag {
    Dag::new(vars, edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
        .expect("fixture graphs are valid")
}

/// The true world of a named example.
pub fn build_fixture(id: FixtureId) -> Dag {
    match id {
        // Ability a and social skills s both drive earnings w and education e;
        // tenure t only affects earnings.
        FixtureId::Fig2a => build(
            &["a", "e", "s", "t", "w"],
            &[("a", "e"), ("a", "w"), ("s", "e"), ("s", "w"), ("t", "w")],
        ),
        FixtureId::Fig4a => build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]),
        // c ⊥ b | a, a collider at d from b and c, d -> e.
        FixtureId::Fig6a => build(
            &["a", "b", "c", "d", "e"],
            &[("c", "a"), ("a", "b"), ("c", "d"), ("b", "d"), ("a", "d"), ("d", "e")],
        ),
        // e confounds b and d, f confounds c and d; both stay hidden.
        FixtureId::Fig7a => build(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "b"), ("b", "c"), ("e", "b"), ("e", "d"), ("f", "c"), ("f", "d")],
        ),
        FixtureId::Fig8a => build(
            &["a", "b", "c", "d"],
            &[("c", "a"), ("b", "a"), ("c", "d"), ("b", "d")],
        ),
        // Collider at d whose parents share the cause a.
        FixtureId::Fig8b => build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        ),
        FixtureId::Fig8c => build(
            &["a", "b", "c", "d"],
            &[("c", "a"), ("b", "a"), ("c", "d"), ("b", "d"), ("c", "b")],
        ),
        // z is an obvious cause of y; v, w are non-obvious causes through x.
        FixtureId::Fig9 => build(
            &["v", "w", "x", "y", "z"],
            &[("v", "x"), ("w", "x"), ("x", "y"), ("z", "y")],
        ),
        FixtureId::Fig10a => build(
            &["u", "v", "w", "x", "y"],
            &[("v", "x"), ("w", "x"), ("u", "x"), ("x", "y")],
        ),
        FixtureId::Fig10b => build(
            &["u", "v", "w", "x", "y"],
            &[("v", "u"), ("w", "u"), ("u", "x"), ("x", "y")],
        ),
        // x and y share the hidden cause c; w drives x, z drives y.
        FixtureId::Fig11a => build(
            &["c", "w", "x", "y", "z"],
            &[("w", "x"), ("c", "x"), ("c", "y"), ("z", "y")],
        ),
        FixtureId::Fig12(n) => fig12(n),
        FixtureId::Fig13a => build(&["a", "b", "x", "y"], &[("y", "x"), ("y", "a"), ("b", "a")]),
        FixtureId::Fig14a => build(
            &["a", "b", "c", "x", "y"],
            &[("c", "y"), ("b", "y"), ("y", "a"), ("y", "x")],
        ),
        FixtureId::Fig15a(n) => fig15a(n),
        // c stays hidden; revealing b and d lets x <- d -> y through.
        FixtureId::Fig16a => build(
            &["a", "b", "c", "d", "x", "y"],
            &[("c", "d"), ("y", "d"), ("d", "a"), ("d", "x"), ("a", "x"), ("b", "x")],
        ),
        FixtureId::Fig17a => build(&["a", "b", "x", "y"], &[("x", "b"), ("b", "y"), ("a", "y")]),
    }
}

fn fig12(n: usize) -> Dag {
    let mut vars: Vec<String> = ["a", "x", "y"].iter().map(|s| s.to_string()).collect();
    let mut edges = vec![("a".to_string(), "x".to_string()), ("x".to_string(), "y".to_string())];
    for i in 1..=n {
        let (b, c) = (format!("b{i}"), format!("c{i}"));
        vars.push(b.clone());
        vars.push(c.clone());
        edges.push(("a".into(), c.clone()));
        edges.push((b, c.clone()));
        edges.push((c.clone(), "x".into()));
        edges.push((c.clone(), "y".into()));
        for j in 1..i {
            edges.push((c.clone(), format!("c{j}")));
        }
    }
    build_owned(&vars, &edges)
}

fn fig15a(n: usize) -> Dag {
    let mut vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let mut edges = vec![("z".to_string(), "y".to_string())];
    for i in 1..=n {
        let c = format!("c{i}");
        vars.push(c.clone());
        edges.push((c.clone(), "x".into()));
        edges.push((c, "y".into()));
    }
    build_owned(&vars, &edges)
}

/// The receiver's starting model drawn next to a fixture, where there is one.
pub fn fixture_prior(id: FixtureId) -> Option<Dag> {
    Some(match id {
        FixtureId::Fig2a => build(&["e", "w"], &[("w", "e")]),
        FixtureId::Fig11a => build(&["w", "x", "y"], &[("w", "x"), ("y", "x")]),
        FixtureId::Fig13a | FixtureId::Fig14a => {
            build(&["a", "x", "y"], &[("a", "y"), ("y", "x")])
        }
        FixtureId::Fig16a => build(&["a", "x", "y"], &[("y", "x"), ("y", "a"), ("x", "a")]),
        FixtureId::Fig17a => build(&["x", "y"], &[("y", "x")]),
        _ => return None,
    })
}

/// Random DAG over `n0, n1, ...`: a shuffled order with each forward edge
/// kept with probability `edge_prob`.
pub fn random_dag(seed: u64, n_vars: usize, edge_prob: f64) -> Result<Dag> {
    if n_vars == 0 || n_vars > MAX_NODES {
        return Err(Error::Precondition(format!(
            "random_dag needs 1 <= n_vars <= {MAX_NODES}, got {n_vars}"
        )));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::Precondition(format!("edge_prob must lie in [0, 1], got {edge_prob}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n_vars).map(|i| format!("n{i}")).collect();
    let mut order: Vec<usize> = (0..n_vars).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n_vars {
        for j in i + 1..n_vars {
            if rng.random_bool(edge_prob) {
                edges.push((names[order[i]].clone(), names[order[j]].clone()));
            }
        }
    }
    Ok(build_owned(&names, &edges))
}

pub const MAX_ENUM_NODES: usize = 5;

/// Every simple DAG with 2 to `max_n` nodes, one per isomorphism class.
///
/// Nodes are named `a, b, c, ...`. Classes are told apart by a canonical
/// form: nodes are grouped by (in-degree, out-degree), and the smallest
/// adjacency code over within-group relabelings is kept.
pub fn enumerate_simple_dags(max_n: usize) -> Result<Vec<Dag>> {
    if max_n > MAX_ENUM_NODES {
        return Err(Error::Precondition(format!(
            "enumerate_simple_dags is limited to {MAX_ENUM_NODES} nodes, got {max_n}"
        )));
    }
    let mut out = Vec::new();
    for n in 2..=max_n {
        let names: Vec<VariableId> = (0..n)
            .map(|i| VariableId::new(((b'a' + i as u8) as char).to_string()).expect("letter"))
            .collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut seen = BTreeSet::new();
        for code in 0..3u32.pow(pairs.len() as u32) {
            let mut parents = vec![NodeSet::EMPTY; n];
            let mut c = code;
            for &(i, j) in &pairs {
                match c % 3 {
                    1 => parents[j].insert(i),
                    2 => parents[i].insert(j),
                    _ => {}
                }
                c /= 3;
            }
            let Ok(g) = Dag::from_parts(names.clone(), parents) else {
                continue;
            };
            if seen.insert(canonical_code(&g)) && is_simple(&g).0 {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Minimum adjacency-matrix code over degree-class-preserving orderings.
fn canonical_code(g: &Dag) -> u64 {
    let n = g.len();
    let key = |i: usize| (g.parents_of(i).len(), g.children_of(i).len());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| key(i));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(last) if key(last[0]) == key(i) => last.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut best = u64::MAX;
    let mut current = Vec::with_capacity(n);
    permute_groups(&groups, 0, &mut current, &mut |ord: &[usize]| {
        let mut code = 0u64;
        for (p, &i) in ord.iter().enumerate() {
            for (q, &j) in ord.iter().enumerate() {
                if g.has_edge(i, j) {
                    code |= 1 << (p * n + q);
                }
            }
        }
        best = best.min(code);
    });
    best
}

fn permute_groups(groups: &[Vec<usize>], k: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == groups.len() {
        visit(current);
        return;
    }
    let mut g = groups[k].clone();
    heap_permutations(&mut g, groups[k].len(), &mut |perm: &[usize]| {
        let mark = current.len();
        current.extend_from_slice(perm);
        permute_groups(groups, k + 1, current, visit);
        current.truncate(mark);
    });
}

fn heap_permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        let swap = if k % 2 == 0 { i } else { 0 };
        items.swap(swap, k - 1);
    }
}
