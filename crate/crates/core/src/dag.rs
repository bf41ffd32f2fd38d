// SPDX-License-Identifier: MIT
//! Named DAGs with bitmask adjacency.
//!
//! Variables are kept sorted by byte order, so index order is lexicographic
//! order and every set-valued output is deterministic.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nodeset::{NodeSet, MAX_NODES};

/// A validated variable name: non-empty, no whitespace, no commas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VariableId(String);

impl VariableId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
            return Err(Error::InvalidName(name));
        }
        Ok(VariableId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for VariableId {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for VariableId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for VariableId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PartialEq<str> for VariableId {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for VariableId {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

/// Shape of an ordered triple `a, b, c` around its middle node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Triplet {
    /// `a -> b <- c`
    Collider,
    /// `a -> b -> c` or `a <- b <- c`
    Chain,
    /// `a <- b -> c`
    Fork,
    /// `b` is not adjacent to both ends, or `a` and `c` are adjacent.
    NotATriplet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dag {
    names: Vec<VariableId>,
    parents: Vec<NodeSet>,
    children: Vec<NodeSet>,
}

impl Dag {
    /// Builds a DAG from variable names and `(from, to)` edges.
    ///
    /// Fails on invalid or duplicate names, unknown endpoints, self-loops,
    /// repeated edges, and cycles.
    pub fn new<V, A, B>(
        variables: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Dag>
    where
        V: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        for v in variables {
            let id = VariableId::new(v.as_ref())?;
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateVariable(id.0));
            }
        }
        if seen.len() > MAX_NODES {
            return Err(Error::TooManyVariables(seen.len()));
        }
        let names: Vec<VariableId> = seen.into_iter().collect();
        let mut parents = vec![NodeSet::EMPTY; names.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = lookup(&names, a)?;
            let j = lookup(&names, b)?;
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if parents[j].contains(i) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            parents[j].insert(i);
        }
        Dag::from_parts(names, parents)
    }

    /// Builds a DAG from sorted, unique names and per-node parent sets.
    pub(crate) fn from_parts(names: Vec<VariableId>, parents: Vec<NodeSet>) -> Result<Dag> {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(names.len(), parents.len());
        if !acyclic(&parents) {
            return Err(Error::Cycle);
        }
        let mut children = vec![NodeSet::EMPTY; names.len()];
        for (j, ps) in parents.iter().enumerate() {
            for i in ps.iter() {
                children[i].insert(j);
            }
        }
        Ok(Dag {
            names,
            parents,
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Like [`Dag::index_of`] but with an error for unknown names.
    pub fn index(&self, name: &str) -> Result<usize> {
        lookup(&self.names, name)
    }

    /// Resolves a list of names to a node set.
    pub fn set_of<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<NodeSet> {
        names.into_iter().map(|n| self.index(n.as_ref())).collect()
    }

    pub fn names_of(&self, s: NodeSet) -> Vec<&str> {
        s.iter().map(|i| self.name(i)).collect()
    }

    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn parents_of(&self, i: usize) -> NodeSet {
        self.parents[i]
    }

    pub fn children_of(&self, i: usize) -> NodeSet {
        self.children[i]
    }

    pub fn neighbors_of(&self, i: usize) -> NodeSet {
        self.parents[i].union(self.children[i])
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.parents[a].contains(b) || self.parents[b].contains(a)
    }

    pub fn edge_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    /// Edges `(from, to)` sorted by `from`, then `to`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, ch) in self.children.iter().enumerate() {
            out.extend(ch.iter().map(|j| (i, j)));
        }
        out
    }

    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    /// Nodes with a directed path into some member of `s`, members excluded
    /// unless they are themselves ancestors of another member.
    pub fn ancestors_of_set(&self, s: NodeSet) -> NodeSet {
        closure(&self.parents, s)
    }

    pub fn ancestors_of(&self, i: usize) -> NodeSet {
        self.ancestors_of_set(NodeSet::singleton(i))
    }

    pub fn descendants_of(&self, i: usize) -> NodeSet {
        closure(&self.children, NodeSet::singleton(i))
    }

    /// `from ⇒ to`: a directed path of length at least one.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        self.ancestors_of(to).contains(from)
    }

    /// `from ⇒ to` using only nodes outside `avoid` as intermediate steps.
    pub fn reaches_avoiding(&self, from: usize, to: usize, avoid: NodeSet) -> bool {
        let mut seen = NodeSet::singleton(from);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for v in self.children[u].iter() {
                if v == to {
                    return true;
                }
                if !seen.contains(v) && !avoid.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        false
    }

    pub fn ancestors(&self, v: &str) -> Result<Vec<&str>> {
        Ok(self.names_of(self.ancestors_of(self.index(v)?)))
    }

    pub fn descendants(&self, v: &str) -> Result<Vec<&str>> {
        Ok(self.names_of(self.descendants_of(self.index(v)?)))
    }

    pub fn parents(&self, v: &str) -> Result<Vec<&str>> {
        Ok(self.names_of(self.parents_of(self.index(v)?)))
    }

    pub fn triplet_at(&self, a: usize, b: usize, c: usize) -> Triplet {
        if !self.adjacent(a, b) || !self.adjacent(b, c) || self.adjacent(a, c) {
            return Triplet::NotATriplet;
        }
        match (self.has_edge(a, b), self.has_edge(c, b)) {
            (true, true) => Triplet::Collider,
            (false, false) => Triplet::Fork,
            _ => Triplet::Chain,
        }
    }

    pub fn classify_triplet(&self, a: &str, b: &str, c: &str) -> Result<Triplet> {
        let (ia, ib, ic) = (self.index(a)?, self.index(b)?, self.index(c)?);
        if ia == ib || ib == ic || ia == ic {
            return Err(Error::Precondition(format!(
                "triplet needs distinct variables, got ({a}, {b}, {c})"
            )));
        }
        Ok(self.triplet_at(ia, ib, ic))
    }

    /// Connected by a directed path either way, or sharing an ancestor.
    pub fn correlated_at(&self, a: usize, b: usize) -> bool {
        let anc_a = self.ancestors_of(a);
        let anc_b = self.ancestors_of(b);
        anc_a.contains(b) || anc_b.contains(a) || anc_a.intersects(anc_b)
    }

    pub fn correlated(&self, a: &str, b: &str) -> Result<bool> {
        let (ia, ib) = (self.index(a)?, self.index(b)?);
        if ia == ib {
            return Err(Error::Precondition(format!("correlated needs distinct variables, got {a} twice")));
        }
        Ok(self.correlated_at(ia, ib))
    }

    /// Subgraph induced on `keep`, with indices renumbered in name order.
    pub fn induced(&self, keep: NodeSet) -> Dag {
        let members: Vec<usize> = keep.iter().collect();
        let local = |s: NodeSet| -> NodeSet {
            members
                .iter()
                .enumerate()
                .filter(|&(_, &g)| s.contains(g))
                .map(|(k, _)| k)
                .collect()
        };
        let names = members.iter().map(|&g| self.names[g].clone()).collect();
        let parents = members.iter().map(|&g| local(self.parents[g])).collect();
        Dag::from_parts(names, parents).expect("induced subgraph of a DAG is acyclic")
    }
}

impl fmt::Display for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edge_names()
            .into_iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect();
        write!(f, "[{}] {{{}}}", self.names.join(","), edges.join(", "))
    }
}

/// True iff `edges` has no directed cycle over `variables`.
pub fn is_acyclic<V, A, B>(
    variables: impl IntoIterator<Item = V>,
    edges: impl IntoIterator<Item = (A, B)>,
) -> Result<bool>
where
    V: AsRef<str>,
    A: AsRef<str>,
    B: AsRef<str>,
{
    match Dag::new(variables, edges) {
        Ok(_) => Ok(true),
        Err(Error::Cycle) | Err(Error::SelfLoop(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn lookup(names: &[VariableId], name: &str) -> Result<usize> {
    names
        .binary_search_by(|v| v.as_str().cmp(name))
        .map_err(|_| Error::UnknownVariable(name.to_string()))
}

/// Nodes reachable from `start` by one or more steps along `step`.
fn closure(step: &[NodeSet], start: NodeSet) -> NodeSet {
    let mut out = NodeSet::EMPTY;
    let mut frontier = start;
    while let Some(i) = frontier.first() {
        frontier.remove(i);
        let fresh = step[i].difference(out);
        out = out.union(fresh);
        frontier = frontier.union(fresh);
    }
    out
}

pub(crate) fn acyclic(parents: &[NodeSet]) -> bool {
    let n = parents.len();
    let mut placed = NodeSet::EMPTY;
    loop {
        let ready: NodeSet = (0..n)
            .filter(|&i| !placed.contains(i) && parents[i].is_subset(placed))
            .collect();
        if ready.is_empty() {
            return placed.len() == n;
        }
        placed = placed.union(ready);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> Dag {
        Dag::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Dag::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(Error::Cycle)
        );
        assert_eq!(
            Dag::new(["a"], [("a", "a")]),
            Err(Error::SelfLoop("a".into()))
        );
        assert_eq!(
            Dag::new(["a", "b"], [("a", "b"), ("a", "b")]),
            Err(Error::DuplicateEdge("a".into(), "b".into()))
        );
        assert!(matches!(Dag::new(["a b"], Vec::<(&str, &str)>::new()), Err(Error::InvalidName(_))));
        assert!(matches!(Dag::new(["a,b"], Vec::<(&str, &str)>::new()), Err(Error::InvalidName(_))));
        assert!(matches!(Dag::new([""], Vec::<(&str, &str)>::new()), Err(Error::InvalidName(_))));
        assert!(matches!(Dag::new(["a", "a"], Vec::<(&str, &str)>::new()), Err(Error::DuplicateVariable(_))));
        assert!(matches!(Dag::new(["a"], [("a", "z")]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap());
        assert!(!is_acyclic(["a", "b"], [("a", "b"), ("b", "a")]).unwrap());
        assert!(!is_acyclic(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")]).unwrap());
    }

    #[test]
    fn ancestry() {
        let g = chain();
        assert_eq!(g.ancestors("c").unwrap(), ["a", "b"]);
        assert_eq!(g.descendants("a").unwrap(), ["b", "c"]);
        assert!(g.descendants("c").unwrap().is_empty());
        let iso = Dag::new(["a", "z"], [("a", "z")]).unwrap();
        assert!(iso.ancestors("a").unwrap().is_empty());
        assert!(g.ancestors("q").is_err());
    }

    #[test]
    fn triplets() {
        let col = Dag::new(["a", "b", "c"], [("a", "b"), ("c", "b")]).unwrap();
        assert_eq!(col.classify_triplet("a", "b", "c").unwrap(), Triplet::Collider);
        assert_eq!(chain().classify_triplet("a", "b", "c").unwrap(), Triplet::Chain);
        assert_eq!(chain().classify_triplet("c", "b", "a").unwrap(), Triplet::Chain);
        let fork = Dag::new(["a", "b", "c"], [("b", "a"), ("b", "c")]).unwrap();
        assert_eq!(fork.classify_triplet("a", "b", "c").unwrap(), Triplet::Fork);
        let shielded = Dag::new(["a", "b", "c"], [("a", "b"), ("c", "b"), ("a", "c")]).unwrap();
        assert_eq!(shielded.classify_triplet("a", "b", "c").unwrap(), Triplet::NotATriplet);
        assert!(col.classify_triplet("a", "a", "c").is_err());
    }

    #[test]
    fn correlation() {
        assert!(chain().correlated("a", "c").unwrap());
        let col = Dag::new(["a", "b", "c"], [("a", "b"), ("c", "b")]).unwrap();
        assert!(!col.correlated("a", "c").unwrap());
        assert!(col.correlated("a", "a").is_err());
    }

    #[test]
    fn induced_renumbers() {
        let g = Dag::new(["a", "b", "c", "d"], [("a", "c"), ("c", "d"), ("b", "d")]).unwrap();
        let h = g.induced(g.set_of(["a", "c", "d"]).unwrap());
        assert_eq!(h.edge_names(), [("a", "c"), ("c", "d")]);
    }

    #[test]
    fn avoiding_paths() {
        let g = Dag::new(["c", "x", "y"], [("c", "x"), ("x", "y")]).unwrap();
        let (c, x, y) = (0, 1, 2);
        assert!(g.reaches_avoiding(c, y, NodeSet::EMPTY));
        assert!(!g.reaches_avoiding(c, y, NodeSet::singleton(x)));
        assert!(g.reaches_avoiding(c, x, NodeSet::singleton(y)));
    }
}
