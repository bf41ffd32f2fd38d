// SPDX-License-Identifier: MIT
//! Constraint-based discovery over an oracle: skeleton, V-structures,
//! orientation closure, consistency checks and enumeration of consistent
//! DAGs.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::dag::{Dag, VariableId};
use crate::dsep::d_separated;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::oracle::IndependenceOracle;
use crate::pattern::Pattern;

/// Data-level footprint of a collider `a -> center <- c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VStructureWitness {
    pub parents: (VariableId, VariableId),
    pub center: VariableId,
    pub controls: Vec<VariableId>,
    /// Neither parent is separable from the center.
    pub direct: bool,
}

impl fmt::Display for VStructureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, c) = &self.parents;
        write!(f, "{a} -> {} <- {c}", self.center)?;
        if self.controls.is_empty() {
            write!(f, " (no controls)")
        } else {
            let s: Vec<&str> = self.controls.iter().map(|v| v.as_str()).collect();
            write!(f, " (control {})", s.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MeekRule {
    R1,
    R2,
    R3,
    R4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeekFiring {
    pub rule: MeekRule,
    pub from: VariableId,
    pub to: VariableId,
}

impl fmt::Display for MeekFiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} orients {} -> {}", self.rule, self.from, self.to)
    }
}

/// Full output of a discovery run, kept for traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcRun {
    pub pattern: Pattern,
    pub vstructures: Vec<VStructureWitness>,
    pub firings: Vec<MeekFiring>,
}

/// Undirected edge `a - b` iff no subset of the rest of the scope
/// separates them.
pub fn ic_skeleton(o: &IndependenceOracle) -> Pattern {
    let k = o.len();
    let mut adj = vec![NodeSet::EMPTY; k];
    for a in 0..k {
        for b in a + 1..k {
            if o.separating_set(a, b).is_none() {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    Pattern::from_skeleton(o.scope_ids(), adj)
}

/// Local-index V-structure: `a < c`, centre `b`, first control set found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct VTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub controls: NodeSet,
}

/// Unshielded triples of the skeleton that behave as colliders in the data.
pub(crate) fn find_vstructures(skel: &Pattern, o: &IndependenceOracle) -> Vec<VTriple> {
    let k = o.len();
    let mut out = Vec::new();
    for b in 0..k {
        let nb = skel.neighbors_of(b);
        for a in nb.iter() {
            for c in nb.iter().filter(|&c| c > a) {
                if skel.adjacent(a, c) {
                    continue;
                }
                let rest = o.all().without(a).without(b).without(c);
                let witness = rest
                    .subsets_by_size()
                    .find(|&s| o.indep(a, c, s) && !o.indep(a, c, s.with(b)));
                if let Some(controls) = witness {
                    out.push(VTriple { a, b, c, controls });
                }
            }
        }
    }
    out
}

fn witness_of(t: &VTriple, o: &IndependenceOracle) -> VStructureWitness {
    let id = |i: usize| VariableId::new(o.name(i)).expect("scope names are valid");
    VStructureWitness {
        parents: (id(t.a), id(t.c)),
        center: id(t.b),
        controls: t.controls.iter().map(id).collect(),
        direct: true,
    }
}

/// Step 2: orient every direct V-structure towards its centre. Clashing or
/// cycle-creating demands are recorded as conflicts and left undirected.
pub fn ic_orient_vstructures(
    skeleton: &Pattern,
    o: &IndependenceOracle,
) -> Result<(Pattern, Vec<VStructureWitness>)> {
    check_pattern_scope(skeleton, o)?;
    let triples = find_vstructures(skeleton, o);
    let p = orient_triples(skeleton, &triples);
    Ok((p, triples.iter().map(|t| witness_of(t, o)).collect()))
}

fn orient_triples(skeleton: &Pattern, triples: &[VTriple]) -> Pattern {
    let mut p = skeleton.clone();
    let mut demands: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in triples {
        demands.insert((t.a, t.b));
        demands.insert((t.c, t.b));
    }
    apply_demands(&mut p, demands.iter().map(|&(x, y)| (x, y, ())));
    p
}

/// Applies `(from, to)` demands on undirected edges. Returns what was applied.
fn apply_demands<T: Copy>(
    p: &mut Pattern,
    demands: impl Iterator<Item = (usize, usize, T)> + Clone,
) -> Vec<(usize, usize, T)> {
    let wanted: BTreeSet<(usize, usize)> = demands.clone().map(|(x, y, _)| (x, y)).collect();
    let mut applied = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (x, y, tag) in demands {
        if !p.has_undirected(x, y) || done.contains(&(x, y)) {
            continue;
        }
        if wanted.contains(&(y, x)) || directed_path(p, y, x) {
            p.add_conflict(x, y);
            continue;
        }
        p.orient(x, y);
        done.insert((x, y));
        applied.push((x, y, tag));
    }
    applied
}

/// Directed path `from ⇒ to` using directed edges only.
fn directed_path(p: &Pattern, from: usize, to: usize) -> bool {
    let mut seen = NodeSet::singleton(from);
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for v in p.children_of(u).iter() {
            if v == to {
                return true;
            }
            if !seen.contains(v) {
                seen.insert(v);
                stack.push(v);
            }
        }
    }
    false
}

/// Which rule, if any, demands `i -> j` for the undirected edge `i - j`.
fn meek_demand(p: &Pattern, i: usize, j: usize) -> Option<MeekRule> {
    let pa_i = p.parents_of(i);
    // R1: a -> i - j, a and j nonadjacent
    if pa_i.iter().any(|a| !p.adjacent(a, j)) {
        return Some(MeekRule::R1);
    }
    // R2: i -> k -> j
    let pa_j = p.parents_of(j);
    if pa_j.iter().any(|k| p.has_directed(i, k)) {
        return Some(MeekRule::R2);
    }
    // R3: i - k -> j and i - l -> j, k and l nonadjacent
    let und_i = p.undirected_of(i);
    let mids = und_i.intersection(pa_j);
    for k in mids.iter() {
        if mids.iter().any(|l| l > k && !p.adjacent(k, l)) {
            return Some(MeekRule::R3);
        }
    }
    // R4: i - k -> l -> j, i adjacent to l, k and j nonadjacent
    for k in und_i.iter().filter(|&k| k != j && !p.adjacent(k, j)) {
        for l in pa_j.iter() {
            if p.has_directed(k, l) && p.adjacent(i, l) {
                return Some(MeekRule::R4);
            }
        }
    }
    None
}

/// Least fixed point of the four orientation rules.
pub fn meek_closure(p: &Pattern) -> Pattern {
    meek_closure_traced(p).0
}

/// [`meek_closure`] plus the list of rule firings in the order applied.
///
/// Rules are evaluated against the pattern as it stands at the start of each
/// round; an edge demanded both ways, or whose orientation would close a
/// directed cycle, is marked as a conflict and left undirected.
pub fn meek_closure_traced(p: &Pattern) -> (Pattern, Vec<MeekFiring>) {
    let mut p = p.clone();
    let mut firings = Vec::new();
    loop {
        let mut demands = Vec::new();
        for (i, j) in p.undirected_edges() {
            if let Some(r) = meek_demand(&p, i, j) {
                demands.push((i, j, r));
            }
            if let Some(r) = meek_demand(&p, j, i) {
                demands.push((j, i, r));
            }
        }
        let applied = apply_demands(&mut p, demands.into_iter());
        if applied.is_empty() {
            break;
        }
        for (i, j, rule) in applied {
            firings.push(MeekFiring {
                rule,
                from: p.variables()[i].clone(),
                to: p.variables()[j].clone(),
            });
        }
    }
    (p, firings)
}

pub fn ic_algorithm(o: &IndependenceOracle) -> Pattern {
    ic_run(o).pattern
}

/// Skeleton, V-structures and closure, keeping the intermediate evidence.
pub fn ic_run(o: &IndependenceOracle) -> IcRun {
    let skel = ic_skeleton(o);
    let triples = find_vstructures(&skel, o);
    let oriented = orient_triples(&skel, &triples);
    let (pattern, firings) = meek_closure_traced(&oriented);
    IcRun {
        pattern,
        vstructures: triples.iter().map(|t| witness_of(t, o)).collect(),
        firings,
    }
}

fn check_pattern_scope(p: &Pattern, o: &IndependenceOracle) -> Result<()> {
    let ids = o.scope_ids();
    if p.variables() == ids.as_slice() {
        Ok(())
    } else {
        Err(Error::Precondition(
            "pattern variables differ from oracle scope".to_string(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyVerdict {
    pub consistent: bool,
    /// `(a, b, S)`: the model separates `a`, `b` given `S` but the data do not.
    pub violated_markov: Option<(VariableId, VariableId, Vec<VariableId>)>,
    /// `((a, b), S)`: model edge whose endpoints `S` separates in the data.
    pub violated_minimality: Option<((VariableId, VariableId), Vec<VariableId>)>,
}

/// Markov and minimality check of `model` against `o`.
///
/// The first Markov violation is reported in order of conditioning-set size,
/// then pair, then set; the first minimality violation in edge order with the
/// oracle's first separating set.
pub fn is_consistent(model: &Dag, o: &IndependenceOracle) -> Result<ConsistencyVerdict> {
    o.check_model(model)?;
    if consistent_fast(model, o) {
        return Ok(ConsistencyVerdict {
            consistent: true,
            violated_markov: None,
            violated_minimality: None,
        });
    }
    let ids = o.scope_ids();
    let names = |s: NodeSet| s.iter().map(|i| ids[i].clone()).collect::<Vec<_>>();
    let violated_minimality = model.edges().into_iter().find_map(|(a, b)| {
        o.separating_set(a, b).map(|s| {
            let (lo, hi) = (a.min(b), a.max(b));
            ((ids[lo].clone(), ids[hi].clone()), names(s))
        })
    });
    let violated_markov = first_markov_violation(model, o)
        .map(|(a, b, s)| (ids[a].clone(), ids[b].clone(), names(s)));
    debug_assert!(violated_markov.is_some() || violated_minimality.is_some());
    Ok(ConsistencyVerdict {
        consistent: false,
        violated_markov,
        violated_minimality,
    })
}

fn first_markov_violation(model: &Dag, o: &IndependenceOracle) -> Option<(usize, usize, NodeSet)> {
    let k = o.len();
    let all = o.all();
    for size in 0..=k.saturating_sub(2) {
        for a in 0..k {
            for b in a + 1..k {
                let rest = all.without(a).without(b);
                for s in rest.subsets_of_size(size) {
                    if d_separated(model, a, b, s) && !o.indep(a, b, s) {
                        return Some((a, b, s));
                    }
                }
            }
        }
    }
    None
}

/// Exact consistency decision without violation reporting.
///
/// Minimality compares edges to the data skeleton. Markov is checked in its
/// local form (each node independent of its non-descendants given its
/// parents), which is equivalent to the global form because the data relation
/// is itself a d-separation relation.
pub(crate) fn consistent_fast(model: &Dag, o: &IndependenceOracle) -> bool {
    for (a, b) in model.edges() {
        if o.separating_set(a, b).is_some() {
            return false;
        }
    }
    let all = model.all();
    for v in 0..model.len() {
        let pa = model.parents_of(v);
        let others = all
            .difference(model.descendants_of(v))
            .difference(pa)
            .without(v);
        if others.iter().any(|u| !o.indep(v, u, pa)) {
            return false;
        }
    }
    true
}

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_scope: usize,
    pub max_undirected: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_scope: 12,
            max_undirected: 20,
        }
    }
}

pub fn enumerate_consistent_dags(o: &IndependenceOracle) -> Result<Vec<Dag>> {
    enumerate_consistent_dags_with(o, EnumBudget::default())
}

/// Every DAG on the scope consistent with `o`, sorted by edge list.
///
/// Candidates share the data skeleton and have no unshielded collider that
/// is not a V-structure in the data; both are necessary for consistency. Each
/// candidate is then filtered through the consistency check.
pub fn enumerate_consistent_dags_with(o: &IndependenceOracle, budget: EnumBudget) -> Result<Vec<Dag>> {
    if o.len() > budget.max_scope {
        return Err(Error::BudgetExceeded {
            budget: budget.max_scope,
        });
    }
    let skel = ic_skeleton(o);
    let triples = find_vstructures(&skel, o);
    let oriented = orient_triples(&skel, &triples);
    let pattern = meek_closure(&oriented);
    if pattern.undirected_edges().len() > budget.max_undirected {
        return Err(Error::BudgetExceeded {
            budget: budget.max_undirected,
        });
    }
    let allowed: BTreeSet<(usize, usize, usize)> = triples.iter().map(|t| (t.a, t.b, t.c)).collect();
    let mut out = Vec::new();
    let mut search = Orienter {
        skel: skel.skeleton(),
        edges: skel.undirected_edges(),
        allowed: &allowed,
        parents: vec![NodeSet::EMPTY; o.len()],
        visit: &mut |parents: &[NodeSet]| {
            let m = o.model(parents.to_vec()).expect("orientation search keeps acyclicity");
            if consistent_fast(&m, o) {
                out.push(m);
            }
        },
    };
    search.run(0);
    out.sort_by_key(|m| m.edges());
    Ok(out)
}

/// Backtracking over orientations of a skeleton.
struct Orienter<'a, F: FnMut(&[NodeSet])> {
    skel: Vec<NodeSet>,
    edges: Vec<(usize, usize)>,
    allowed: &'a BTreeSet<(usize, usize, usize)>,
    parents: Vec<NodeSet>,
    visit: &'a mut F,
}

impl<F: FnMut(&[NodeSet])> Orienter<'_, F> {
    fn run(&mut self, idx: usize) {
        if idx == self.edges.len() {
            (self.visit)(&self.parents);
            return;
        }
        let (lo, hi) = self.edges[idx];
        for (x, y) in [(lo, hi), (hi, lo)] {
            if self.admissible(x, y) {
                self.parents[y].insert(x);
                self.run(idx + 1);
                self.parents[y].remove(x);
            }
        }
    }

    /// Can `x -> y` be added without a cycle or a forbidden collider?
    fn admissible(&self, x: usize, y: usize) -> bool {
        for z in self.parents[y].iter() {
            if !self.skel[z].contains(x) && !self.allowed.contains(&(x.min(z), y, x.max(z))) {
                return false;
            }
        }
        // cycle iff y already reaches x
        let mut seen = NodeSet::singleton(x);
        let mut stack = vec![x];
        while let Some(u) = stack.pop() {
            for p in self.parents[u].iter() {
                if p == y {
                    return false;
                }
                if !seen.contains(p) {
                    seen.insert(p);
                    stack.push(p);
                }
            }
        }
        true
    }
}

/// Every consistent model has `a -> b`, and at least one exists.
///
/// Answers from the discovery pattern when it is conflict-free and one of its
/// extensions is consistent; otherwise enumerates.
pub fn uniquely_consistent_link(o: &IndependenceOracle, a: &str, b: &str) -> Result<bool> {
    let (la, lb) = (o.local_index(a)?, o.local_index(b)?);
    if la == lb {
        return Err(Error::Precondition(format!("a link needs two distinct variables, got `{a}` twice")));
    }
    if let Some(ans) = unique_link_fast(o, la, lb) {
        return Ok(ans);
    }
    Ok(unique_link_in(&enumerate_consistent_dags(o)?, la, lb))
}

/// Pattern-based answer, or `None` when the pattern cannot be trusted.
pub fn unique_link_fast(o: &IndependenceOracle, a: usize, b: usize) -> Option<bool> {
    let p = ic_algorithm(o);
    if p.has_conflict() {
        return None;
    }
    let ext = extend_pattern(&p)?;
    let m = o.model(ext).ok()?;
    consistent_fast(&m, o).then(|| p.has_directed(a, b))
}

/// Ground truth over an enumerated consistent set.
pub fn unique_link_in(models: &[Dag], a: usize, b: usize) -> bool {
    !models.is_empty() && models.iter().all(|m| m.has_edge(a, b))
}

/// One DAG extension of `p` that adds no unshielded collider, if any.
pub fn extend_pattern(p: &Pattern) -> Option<Vec<NodeSet>> {
    // Dor-Tarsi: repeatedly remove a sink whose undirected neighbours are
    // adjacent to all its other neighbours, orienting those edges into it.
    let n = p.len();
    let mut parents: Vec<NodeSet> = (0..n).map(|i| p.parents_of(i)).collect();
    let mut alive = NodeSet::full(n);
    while !alive.is_empty() {
        let pick = alive.iter().find(|&v| {
            let has_child = p.children_of(v).intersects(alive);
            if has_child {
                return false;
            }
            let und = p.undirected_of(v).intersection(alive);
            let nbrs = p.neighbors_of(v).intersection(alive);
            und.iter()
                .all(|u| nbrs.without(u).iter().all(|w| p.adjacent(u, w)))
        })?;
        for u in p.undirected_of(pick).intersection(alive).iter() {
            parents[pick].insert(u);
        }
        alive.remove(pick);
    }
    Some(parents)
}
