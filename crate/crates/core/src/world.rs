// SPDX-License-Identifier: MIT
//! World classification and cause catalogues.

use serde::Serialize;

use crate::dag::{Dag, VariableId};
use crate::dsep::d_separated;
use crate::error::{Error, Result};
use crate::ic::{enumerate_consistent_dags_with, ic_algorithm, EnumBudget};
use crate::nodeset::NodeSet;
use crate::oracle::IndependenceOracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorldProfile {
    pub simple: bool,
    pub rich: bool,
    /// Collider `(a, b, c)` whose parents `a`, `c` are correlated.
    pub witness_nonsimple: Option<(VariableId, VariableId, VariableId)>,
    /// An edge left undirected by discovery on the full scope.
    pub witness_nonrich: Option<(VariableId, VariableId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauseCatalog {
    pub x: VariableId,
    pub y: VariableId,
    pub obvious: Vec<VariableId>,
    pub nonobvious: Vec<VariableId>,
    pub confounders: Vec<VariableId>,
    /// Set when `x` is not an ancestor of `y`, so non-obvious causes are
    /// undefined and reported empty.
    pub nonobvious_unavailable: Option<String>,
}

/// First collider with correlated parents, as local triple `(a, b, c)`.
pub fn nonsimple_witness(g: &Dag) -> Option<(usize, usize, usize)> {
    for b in 0..g.len() {
        let pa = g.parents_of(b);
        for a in pa.iter() {
            for c in pa.iter().filter(|&c| c > a) {
                if !g.adjacent(a, c) && g.correlated_at(a, c) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Every collider's parents are uncorrelated.
pub fn is_simple(g: &Dag) -> (bool, Option<(VariableId, VariableId, VariableId)>) {
    match nonsimple_witness(g) {
        None => (true, None),
        Some((a, b, c)) => (
            false,
            Some((ids(g, a), ids(g, b), ids(g, c))),
        ),
    }
}

/// The truth is the only model consistent with its own full-scope data.
///
/// On the full scope the data are faithful to `g`, so the discovery pattern is
/// exact and `g` is unique iff the pattern is fully directed.
pub fn is_rich(g: &Dag) -> Result<(bool, Option<(VariableId, VariableId)>)> {
    is_rich_with(g, EnumBudget::default())
}

pub fn is_rich_with(g: &Dag, budget: EnumBudget) -> Result<(bool, Option<(VariableId, VariableId)>)> {
    if g.len() > budget.max_scope {
        return Err(Error::BudgetExceeded {
            budget: budget.max_scope,
        });
    }
    let p = ic_algorithm(&IndependenceOracle::new(g.clone()));
    Ok(match p.undirected_edges().first() {
        None => (true, None),
        Some(&(a, b)) => (false, Some((ids(g, a), ids(g, b)))),
    })
}

/// Ground-truth richness by enumeration.
pub fn is_rich_enumerated(g: &Dag, budget: EnumBudget) -> Result<bool> {
    let ms = enumerate_consistent_dags_with(&IndependenceOracle::new(g.clone()), budget)?;
    Ok(ms.len() == 1 && ms[0] == *g)
}

pub fn profile(g: &Dag) -> Result<WorldProfile> {
    let (simple, witness_nonsimple) = is_simple(g);
    let (rich, witness_nonrich) = is_rich(g)?;
    Ok(WorldProfile {
        simple,
        rich,
        witness_nonsimple,
        witness_nonrich,
    })
}

/// Model edges `a -> b` with no directed path `a ⇒ b` in the truth.
pub fn defective_links<'m>(model: &'m Dag, truth: &Dag) -> Result<Vec<(&'m str, &'m str)>> {
    let mut out = Vec::new();
    for (a, b) in model.edge_names() {
        if !truth.reaches(truth.index(a)?, truth.index(b)?) {
            out.push((a, b));
        }
    }
    // still validate isolated model variables
    for v in model.variables() {
        truth.index(v)?;
    }
    Ok(out)
}

/// Ancestors of `y` other than `x` that are uncorrelated with `x`.
pub fn obvious_causes(truth: &Dag, x: usize, y: usize) -> NodeSet {
    truth
        .ancestors_of(y)
        .without(x)
        .iter()
        .filter(|&z| !truth.correlated_at(z, x))
        .collect()
}

/// Ancestors of `x` that `x` separates from `y`; empty unless `x ⇒ y`.
pub fn nonobvious_causes(truth: &Dag, x: usize, y: usize) -> NodeSet {
    if !truth.reaches(x, y) {
        return NodeSet::EMPTY;
    }
    truth
        .ancestors_of(x)
        .iter()
        .filter(|&w| w != y && d_separated(truth, w, y, NodeSet::singleton(x)))
        .collect()
}

/// Variables with a directed path to `x` avoiding `y` and one to `y`
/// avoiding `x`.
pub fn confounders(truth: &Dag, x: usize, y: usize) -> NodeSet {
    (0..truth.len())
        .filter(|&c| c != x && c != y)
        .filter(|&c| {
            truth.reaches_avoiding(c, x, NodeSet::singleton(y))
                && truth.reaches_avoiding(c, y, NodeSet::singleton(x))
        })
        .collect()
}

fn pair(truth: &Dag, x: &str, y: &str) -> Result<(usize, usize)> {
    let (ix, iy) = (truth.index(x)?, truth.index(y)?);
    if ix == iy {
        return Err(Error::Precondition(format!("cause queries need x != y, got `{x}` twice")));
    }
    Ok((ix, iy))
}

pub fn find_obvious_causes<'g>(truth: &'g Dag, x: &str, y: &str) -> Result<Vec<&'g str>> {
    let (ix, iy) = pair(truth, x, y)?;
    Ok(truth.names_of(obvious_causes(truth, ix, iy)))
}

pub fn find_nonobvious_causes<'g>(truth: &'g Dag, x: &str, y: &str) -> Result<Vec<&'g str>> {
    let (ix, iy) = pair(truth, x, y)?;
    Ok(truth.names_of(nonobvious_causes(truth, ix, iy)))
}

pub fn find_confounders<'g>(truth: &'g Dag, x: &str, y: &str) -> Result<Vec<&'g str>> {
    let (ix, iy) = pair(truth, x, y)?;
    Ok(truth.names_of(confounders(truth, ix, iy)))
}

pub fn cause_catalog(truth: &Dag, x: &str, y: &str) -> Result<CauseCatalog> {
    let (ix, iy) = pair(truth, x, y)?;
    let list = |s: NodeSet| s.iter().map(|i| ids(truth, i)).collect();
    Ok(CauseCatalog {
        x: ids(truth, ix),
        y: ids(truth, iy),
        obvious: list(obvious_causes(truth, ix, iy)),
        nonobvious: list(nonobvious_causes(truth, ix, iy)),
        confounders: list(confounders(truth, ix, iy)),
        nonobvious_unavailable: (!truth.reaches(ix, iy))
            .then(|| format!("{x} is not an ancestor of {y}")),
    })
}

fn ids(g: &Dag, i: usize) -> VariableId {
    g.variables()[i].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dag(vars: &[&str], edges: &[(&str, &str)]) -> Dag {
        Dag::new(vars, edges.iter().copied()).unwrap()
    }

    #[test]
    fn defects() {
        let truth = dag(&["a", "b"], &[("a", "b")]);
        let model = dag(&["a", "b"], &[("b", "a")]);
        assert_eq!(defective_links(&model, &truth).unwrap(), [("b", "a")]);
        assert!(defective_links(&truth, &truth).unwrap().is_empty());
        let chain = dag(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let short = dag(&["a", "c"], &[("a", "c")]);
        assert!(defective_links(&short, &chain).unwrap().is_empty());
    }

    #[test]
    fn causes_on_small_worlds() {
        let fork = dag(&["c", "x", "y"], &[("c", "x"), ("c", "y")]);
        assert_eq!(find_confounders(&fork, "x", "y").unwrap(), ["c"]);
        let xy = dag(&["x", "y"], &[("x", "y")]);
        assert!(find_confounders(&xy, "x", "y").unwrap().is_empty());
        assert!(find_obvious_causes(&xy, "x", "y").unwrap().is_empty());
        let chain = dag(&["w", "x", "y"], &[("w", "x"), ("x", "y")]);
        assert_eq!(find_nonobvious_causes(&chain, "x", "y").unwrap(), ["w"]);
        let cat = cause_catalog(&chain, "y", "x").unwrap();
        assert!(cat.nonobvious.is_empty());
        assert!(cat.nonobvious_unavailable.is_some());
    }

    #[test]
    fn richness() {
        let chain = dag(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(!is_rich(&chain).unwrap().0);
        let col = dag(&["a", "b", "c"], &[("a", "b"), ("c", "b")]);
        assert_eq!(is_rich(&col).unwrap(), (true, None));
    }
}
