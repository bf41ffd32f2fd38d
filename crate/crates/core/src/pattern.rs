// SPDX-License-Identifier: MIT
//! Partially directed graphs.

use std::collections::BTreeSet;

use crate::dag::{Dag, VariableId};
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// Mixed graph of directed and undirected edges over sorted variables.
///
/// `conflicts` lists unordered pairs on which orientation demands clashed;
/// such edges are left undirected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    names: Vec<VariableId>,
    parents: Vec<NodeSet>,
    undirected: Vec<NodeSet>,
    conflicts: BTreeSet<(usize, usize)>,
}

impl Pattern {
    pub fn new<V, A, B, C, D>(
        variables: impl IntoIterator<Item = V>,
        directed: impl IntoIterator<Item = (A, B)>,
        undirected: impl IntoIterator<Item = (C, D)>,
    ) -> Result<Pattern>
    where
        V: AsRef<str>,
        A: AsRef<str>,
        B: AsRef<str>,
        C: AsRef<str>,
        D: AsRef<str>,
    {
        let base = Dag::new(variables, Vec::<(&str, &str)>::new())?;
        let mut p = Pattern::empty(base.variables().to_vec());
        let mut add = |a: &str, b: &str, dir: bool| -> Result<()> {
            let (i, j) = (base.index(a)?, base.index(b)?);
            if i == j {
                return Err(Error::SelfLoop(a.to_string()));
            }
            if p.adjacent(i, j) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            if dir {
                p.parents[j].insert(i);
            } else {
                p.undirected[i].insert(j);
                p.undirected[j].insert(i);
            }
            Ok(())
        };
        for (a, b) in directed {
            add(a.as_ref(), b.as_ref(), true)?;
        }
        for (a, b) in undirected {
            add(a.as_ref(), b.as_ref(), false)?;
        }
        Ok(p)
    }

    pub(crate) fn empty(names: Vec<VariableId>) -> Pattern {
        let n = names.len();
        Pattern {
            names,
            parents: vec![NodeSet::EMPTY; n],
            undirected: vec![NodeSet::EMPTY; n],
            conflicts: BTreeSet::new(),
        }
    }

    /// Undirected graph over the given symmetric adjacency.
    pub(crate) fn from_skeleton(names: Vec<VariableId>, adj: Vec<NodeSet>) -> Pattern {
        let mut p = Pattern::empty(names);
        p.undirected = adj;
        p
    }

    /// Every edge of `g` directed as in `g`.
    pub fn from_dag(g: &Dag) -> Pattern {
        let mut p = Pattern::empty(g.variables().to_vec());
        for i in 0..g.len() {
            p.parents[i] = g.parents_of(i);
        }
        p
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

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .binary_search_by(|v| v.as_str().cmp(name))
            .map_err(|_| Error::UnknownVariable(name.to_string()))
    }

    /// Directed in-neighbours of `i`.
    pub fn parents_of(&self, i: usize) -> NodeSet {
        self.parents[i]
    }

    pub fn children_of(&self, i: usize) -> NodeSet {
        (0..self.len()).filter(|&j| self.parents[j].contains(i)).collect()
    }

    pub fn undirected_of(&self, i: usize) -> NodeSet {
        self.undirected[i]
    }

    pub fn neighbors_of(&self, i: usize) -> NodeSet {
        self.parents[i].union(self.children_of(i)).union(self.undirected[i])
    }

    pub fn has_directed(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    pub fn has_undirected(&self, a: usize, b: usize) -> bool {
        self.undirected[a].contains(b)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_directed(a, b) || self.has_directed(b, a) || self.has_undirected(a, b)
    }

    /// Turns the undirected edge `a - b` into `a -> b`.
    pub(crate) fn orient(&mut self, a: usize, b: usize) {
        debug_assert!(self.has_undirected(a, b));
        self.undirected[a].remove(b);
        self.undirected[b].remove(a);
        self.parents[b].insert(a);
    }

    pub(crate) fn add_conflict(&mut self, a: usize, b: usize) {
        self.conflicts.insert((a.min(b), a.max(b)));
    }

    /// Edges `(from, to)` sorted by `from`, then `to`.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|j| self.parents[j].iter().map(move |i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Undirected edges as `(lo, hi)` pairs, sorted.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.undirected[i].iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn directed_names(&self) -> Vec<(&str, &str)> {
        self.directed_edges()
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    pub fn undirected_names(&self) -> Vec<(&str, &str)> {
        self.undirected_edges()
            .into_iter()
            .map(|(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    pub fn conflicts(&self) -> Vec<(usize, usize)> {
        self.conflicts.iter().copied().collect()
    }

    pub fn conflict_names(&self) -> Vec<(&str, &str)> {
        self.conflicts
            .iter()
            .map(|&(a, b)| (self.name(a), self.name(b)))
            .collect()
    }

    pub fn has_conflict(&self) -> bool {
        !self.conflicts.is_empty()
    }

    pub fn is_fully_directed(&self) -> bool {
        self.undirected.iter().all(|u| u.is_empty())
    }

    /// Symmetric adjacency of the underlying skeleton.
    pub fn skeleton(&self) -> Vec<NodeSet> {
        (0..self.len()).map(|i| self.neighbors_of(i)).collect()
    }
}
