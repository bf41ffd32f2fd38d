// SPDX-License-Identifier: MIT
//! Conditional-independence oracle: the truth DAG's d-separation relation,
//! queryable only inside a scope.
//!
//! Besides the name-level API, the oracle exposes a *local* index space:
//! local index `k` is the `k`-th scope member in name order. A model DAG over
//! the scope has exactly these indices, which is what the discovery code uses.

use std::sync::{Arc, OnceLock};

use crate::dag::{Dag, VariableId};
use crate::dsep::{check_query, d_separated};
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

#[derive(Clone, Debug)]
pub struct IndependenceOracle {
    truth: Arc<Dag>,
    scope: NodeSet,
    members: Vec<usize>,
    seps: OnceLock<Vec<Option<NodeSet>>>,
}

impl IndependenceOracle {
    /// Oracle over every variable of `truth`.
    pub fn new(truth: Dag) -> Self {
        let scope = truth.all();
        Self::build(Arc::new(truth), scope)
    }

    pub fn with_scope<S: AsRef<str>>(truth: Dag, scope: impl IntoIterator<Item = S>) -> Result<Self> {
        let s = truth.set_of(scope)?;
        Ok(Self::build(Arc::new(truth), s))
    }

    /// Oracle over `scope`, given as truth indices.
    pub fn from_truth_set(truth: Arc<Dag>, scope: NodeSet) -> Self {
        debug_assert!(scope.is_subset(truth.all()));
        Self::build(truth, scope)
    }

    fn build(truth: Arc<Dag>, scope: NodeSet) -> Self {
        IndependenceOracle {
            members: scope.iter().collect(),
            truth,
            scope,
            seps: OnceLock::new(),
        }
    }

    pub fn truth(&self) -> &Dag {
        &self.truth
    }

    pub fn truth_arc(&self) -> &Arc<Dag> {
        &self.truth
    }

    /// Scope as truth indices.
    pub fn scope(&self) -> NodeSet {
        self.scope
    }

    pub fn scope_names(&self) -> Vec<&str> {
        self.truth.names_of(self.scope)
    }

    pub fn scope_ids(&self) -> Vec<VariableId> {
        self.members.iter().map(|&g| self.truth.variables()[g].clone()).collect()
    }

    /// Number of scope variables.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All local indices.
    pub fn all(&self) -> NodeSet {
        NodeSet::full(self.len())
    }

    pub fn name(&self, local: usize) -> &str {
        self.truth.name(self.members[local])
    }

    pub fn local_index(&self, name: &str) -> Result<usize> {
        let g = self.truth.index(name)?;
        self.members
            .binary_search(&g)
            .map_err(|_| Error::OutOfScope(name.to_string()))
    }

    pub fn local_set<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<NodeSet> {
        names.into_iter().map(|n| self.local_index(n.as_ref())).collect()
    }

    pub fn to_truth(&self, local: NodeSet) -> NodeSet {
        local.iter().map(|k| self.members[k]).collect()
    }

    /// Local-index independence query; callers guarantee a valid query.
    pub fn indep(&self, a: usize, b: usize, s: NodeSet) -> bool {
        d_separated(&self.truth, self.members[a], self.members[b], self.to_truth(s))
    }

    /// First separating set of local `a`, `b` in size-then-lexicographic
    /// order, memoised per oracle.
    pub fn separating_set(&self, a: usize, b: usize) -> Option<NodeSet> {
        let k = self.len();
        let table = self.seps.get_or_init(|| {
            let mut t = vec![None; k * k];
            for x in 0..k {
                for y in x + 1..k {
                    let rest = self.all().without(x).without(y);
                    let s = rest.subsets_by_size().find(|&s| self.indep(x, y, s));
                    t[x * k + y] = s;
                    t[y * k + x] = s;
                }
            }
            t
        });
        table[a * k + b]
    }

    pub fn is_independent<S: AsRef<str>>(
        &self,
        a: &str,
        b: &str,
        s: impl IntoIterator<Item = S>,
    ) -> Result<bool> {
        let (la, lb) = (self.local_index(a)?, self.local_index(b)?);
        let ls = self.local_set(s)?;
        check_query(&self.truth, self.members[la], self.members[lb], self.to_truth(ls))?;
        Ok(self.indep(la, lb, ls))
    }

    /// Same truth, narrower scope.
    pub fn restrict<S: AsRef<str>>(&self, new_scope: impl IntoIterator<Item = S>) -> Result<Self> {
        let local = self.local_set(new_scope)?;
        Ok(self.restrict_local(local))
    }

    pub fn restrict_local(&self, local: NodeSet) -> Self {
        Self::build(self.truth.clone(), self.to_truth(local))
    }

    pub fn find_separating_set(&self, a: &str, b: &str) -> Result<Option<Vec<&str>>> {
        let (la, lb) = (self.local_index(a)?, self.local_index(b)?);
        if la == lb {
            return Err(Error::Precondition(format!("separating set needs two distinct variables, got `{a}` twice")));
        }
        Ok(self
            .separating_set(la, lb)
            .map(|s| s.iter().map(|k| self.name(k)).collect()))
    }

    /// A model DAG over the scope built from local parent sets.
    pub fn model(&self, parents: Vec<NodeSet>) -> Result<Dag> {
        Dag::from_parts(self.scope_ids(), parents)
    }

    /// Checks that `model` lives on exactly this scope.
    pub fn check_model(&self, model: &Dag) -> Result<()> {
        let same = model.len() == self.len()
            && model
                .variables()
                .iter()
                .zip(&self.members)
                .all(|(v, &g)| *v == self.truth.variables()[g]);
        if same {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "model variables [{}] differ from oracle scope [{}]",
                model.names_of(model.all()).join(","),
                self.scope_names().join(",")
            )))
        }
    }
}
