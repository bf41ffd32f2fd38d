// SPDX-License-Identifier: MIT
//! Debunking one link of a receiver's model.

use std::sync::Arc;

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::ic::enumerate_consistent_dags_with;
use crate::nodeset::NodeSet;
use crate::oracle::IndependenceOracle;
use crate::world::{confounders, is_simple, nonobvious_causes, obvious_causes};

use super::{
    check_prior, explain, fmt_set, marginally_independent, rank_proposals, walk_supersets, Plan, PlanConfig, Walk,
};

/// Consistent models on a disclosure where the target is unpreservable.
type Hit = Vec<Dag>;

/// Smallest disclosure on which no consistent model keeps the prior link
/// `from -> to` as a directed path.
///
/// Writing the link as `x <- y` (so `x = to`, `y = from`), the candidates
/// tried first are an obvious cause of `y` given `x`, then pairs drawn from
/// the non-obvious causes of `x` and the confounders that are parents of `x`,
/// then the parents of a direct V-structure at or above `x`. Smaller
/// disclosures are still checked exhaustively, so the result is minimal.
///
/// A disclosure can debunk while admitting no consistent model at all; the
/// plan then has `proposal_consistent = false` and, when one exists, a
/// `replacement` plan that also proposes a consistent model.
pub fn plan_debunk(truth: &Dag, prior: &Dag, link: (&str, &str), cfg: &PlanConfig) -> Result<Plan> {
    cfg.validate()?;
    let (from, to) = link;
    let (pf, pt) = (prior.index(from)?, prior.index(to)?);
    if !prior.has_edge(pf, pt) {
        return Err(Error::Precondition(format!("{from} -> {to} is not a link of the prior")));
    }
    let base = check_prior(truth, prior)?;
    if base.len() > cfg.budget {
        return Err(Error::BudgetExceeded { budget: cfg.budget });
    }
    let (y, x) = (truth.index(from)?, truth.index(to)?);
    if truth.reaches(y, x) && is_simple(truth).0 {
        return Ok(Plan::infeasible(
            truth,
            base,
            vec![format!(
                "{from} -> {to} is not defective and the world is simple, so it can never be debunked"
            )],
        ));
    }
    let arc = Arc::new(truth.clone());
    let test = |d: NodeSet| -> Result<Option<Hit>> {
        let o = IndependenceOracle::from_truth_set(arc.clone(), d);
        let (a, b) = (o.local_index(from)?, o.local_index(to)?);
        let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
        Ok(models.iter().all(|m| !m.reaches(a, b)).then_some(models))
    };

    let mut shortcut = None;
    for (route, extra) in candidates(truth, x, y) {
        let d = base.union(extra);
        if d == base || d.len() > cfg.budget {
            continue;
        }
        if let Some(hit) = test(d)? {
            shortcut = Some((route, d, hit));
            break;
        }
    }
    let limit = shortcut.as_ref().map_or(cfg.budget, |(_, d, _)| d.len() - 1);
    let (d, models, mut trace) = match walk_supersets(truth, base, limit, test)? {
        Walk::Found(d, models) => (d, models, vec![format!("exhaustive search: first debunking disclosure is {}", fmt_set(truth, d))]),
        Walk::NotFound { examined, truncated } => match shortcut {
            Some((route, d, models)) => (
                d,
                models,
                vec![
                    format!("{route}: disclose {}", fmt_set(truth, d)),
                    format!("checked {examined} smaller disclosures; none debunks"),
                ],
            ),
            None if truncated => return Err(Error::BudgetExceeded { budget: cfg.budget }),
            None => {
                return Ok(Plan::infeasible(
                    truth,
                    base,
                    vec![format!("examined all {examined} disclosures; {from} ⇒ {to} always stays consistent")],
                ))
            }
        },
    };
    trace.push(format!("no consistent model on {} has {from} ⇒ {to}", fmt_set(truth, d)));
    let mut plan = match rank_proposals(&models, truth, cfg.truthful_only, |_| true).first() {
        Some(p) => {
            let o = IndependenceOracle::from_truth_set(arc.clone(), d);
            trace.extend(explain(&o, p, truth));
            let mut plan = Plan::accepted(truth, base, d, (*p).clone(), trace);
            plan.proposal_consistent = Some(true);
            plan
        }
        None => {
            trace.push("no consistent model exists on this disclosure; the receiver is left without one".into());
            let mut plan = Plan::accepted(truth, base, d, truth.induced(d), trace);
            plan.proposal = None;
            plan.proposal_consistent = Some(false);
            plan
        }
    };
    if plan.proposal_consistent == Some(false) {
        plan.replacement = replacement(truth, &arc, base, d, from, to, cfg)?.map(Box::new);
    }
    Ok(plan)
}

/// Smallest superset of `d` that debunks and admits a proposable model.
fn replacement(
    truth: &Dag,
    arc: &Arc<Dag>,
    base: NodeSet,
    d: NodeSet,
    from: &str,
    to: &str,
    cfg: &PlanConfig,
) -> Result<Option<Plan>> {
    let walk = walk_supersets(truth, d, cfg.budget, |e| {
        let o = IndependenceOracle::from_truth_set(arc.clone(), e);
        let (a, b) = (o.local_index(from)?, o.local_index(to)?);
        let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
        if models.is_empty() || models.iter().any(|m| m.reaches(a, b)) {
            return Ok(None);
        }
        Ok(rank_proposals(&models, truth, cfg.truthful_only, |_| true)
            .first()
            .map(|m| ((*m).clone(), explain(&o, m, truth))))
    })?;
    Ok(match walk {
        Walk::Found(e, (p, mut trace)) => {
            trace.insert(0, format!("extend the disclosure to {} to propose a consistent model", fmt_set(truth, e)));
            let mut plan = Plan::accepted(truth, base, e, p, trace);
            plan.proposal_consistent = Some(true);
            Some(plan)
        }
        Walk::NotFound { .. } => None,
    })
}

/// Candidate extra variables for debunking `x <- y`, in trial order.
fn candidates(truth: &Dag, x: usize, y: usize) -> Vec<(&'static str, NodeSet)> {
    let mut out = Vec::new();
    for z in obvious_causes(truth, x, y).iter() {
        out.push(("obvious cause", NodeSet::singleton(z)));
    }
    let pool = nonobvious_causes(truth, x, y).union(confounders(truth, x, y).intersection(truth.parents_of(x)));
    for v in pool.iter() {
        for w in pool.iter().filter(|&w| w > v) {
            if marginally_independent(truth, v, w) {
                out.push(("upstream V-structure", NodeSet::singleton(v).with(w)));
            }
        }
    }
    for u in truth.ancestors_of(x).with(x).iter() {
        let pa = truth.parents_of(u);
        for a in pa.iter() {
            for c in pa.iter().filter(|&c| c > a) {
                if !truth.adjacent(a, c) && marginally_independent(truth, a, c) {
                    out.push(("parents of an upstream V-structure", NodeSet::singleton(a).with(c)));
                }
            }
        }
    }
    out
}
