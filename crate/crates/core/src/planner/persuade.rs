// SPDX-License-Identifier: MIT
//! Persuading a receiver that `x` causes `y`.

use std::sync::Arc;

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::ic::{consistent_fast, enumerate_consistent_dags_with, extend_pattern, ic_algorithm, unique_link_fast, unique_link_in};
use crate::nodeset::NodeSet;
use crate::oracle::IndependenceOracle;
use crate::world::{confounders, defective_links, is_simple, nonobvious_causes, obvious_causes};

use super::{
    check_prior, debunk_in, explain, fmt_set, marginally_independent, pair, paths_unique, prior_edges,
    rank_proposals, walk_supersets, Goal, GoalMode, Plan, PlanConfig, ReceiverKind, ReceiverSpec, Walk,
};

/// Most notes kept about disclosures that debunked but were not accepted.
const MAX_NOTES: usize = 12;

/// A naive receiver takes `x -> y` on `{x, y}` whenever the two are
/// correlated, and nothing can persuade it otherwise.
pub fn persuade_naive(truth: &Dag, x: &str, y: &str) -> Result<Plan> {
    let (ix, iy) = pair(truth, x, y)?;
    let base = NodeSet::singleton(ix).with(iy);
    if !truth.correlated_at(ix, iy) {
        return Ok(Plan::infeasible(
            truth,
            base,
            vec![format!("{x} and {y} are uncorrelated, so no disclosure supports a link")],
        ));
    }
    let proposal = Dag::new([x, y], [(x, y)])?;
    let trace = vec![
        format!("{x} and {y} are correlated"),
        format!("naive receiver accepts {x} -> {y} on {{{x},{y}}}"),
    ];
    Ok(Plan::accepted(truth, base, base, proposal, trace))
}

/// Makes `x -> y` uniquely consistent with as few disclosed variables as
/// possible.
pub fn persuade_sophisticated(truth: &Dag, x: &str, y: &str, cfg: &PlanConfig) -> Result<Plan> {
    cfg.validate()?;
    let (ix, iy) = pair(truth, x, y)?;
    let base = NodeSet::singleton(ix).with(iy);
    if !truth.correlated_at(ix, iy) {
        return Ok(Plan::infeasible(
            truth,
            base,
            vec![format!("{x} and {y} are uncorrelated, so no consistent model links them")],
        ));
    }
    if truth.reaches(iy, ix) && is_simple(truth).0 {
        return Ok(Plan::infeasible(
            truth,
            base,
            vec![format!(
                "{y} causes {x} in a simple world, so no disclosure makes {x} -> {y} uniquely consistent"
            )],
        ));
    }
    let arc = Arc::new(truth.clone());
    let test = |d: NodeSet| direct_link(&arc, d, ix, iy, cfg);

    let mut shortcut = None;
    for (route, extra) in constructions(truth, ix, iy) {
        let d = base.union(extra);
        if d.len() > cfg.budget {
            continue;
        }
        if let Some(found) = test(d)? {
            shortcut = Some((route, d, found));
            break;
        }
    }
    let limit = shortcut.as_ref().map_or(cfg.budget, |(_, d, _)| d.len() - 1);
    match walk_supersets(truth, base, limit, test)? {
        Walk::Found(d, (proposal, mut trace)) => {
            trace.insert(0, format!("exhaustive search: first accepted disclosure is {}", fmt_set(truth, d)));
            Ok(Plan::accepted(truth, base, d, proposal, trace))
        }
        Walk::NotFound { examined, truncated } => match shortcut {
            Some((route, d, (proposal, mut trace))) => {
                trace.insert(0, format!("{route}: disclose {}", fmt_set(truth, d)));
                trace.push(format!("checked {examined} smaller disclosures; none works"));
                Ok(Plan::accepted(truth, base, d, proposal, trace))
            }
            None if truncated => Err(Error::BudgetExceeded { budget: cfg.budget }),
            None => Ok(Plan::infeasible(
                truth,
                base,
                vec![format!(
                    "examined all {examined} disclosures containing {{{x},{y}}}; {x} -> {y} is never uniquely consistent"
                )],
            )),
        },
    }
}

/// Disclosures suggested by the three V-structure constructions, in order.
fn constructions(truth: &Dag, x: usize, y: usize) -> Vec<(&'static str, NodeSet)> {
    let mut out = Vec::new();
    for z in obvious_causes(truth, x, y).iter() {
        out.push(("obvious cause", NodeSet::singleton(z)));
    }
    let non = nonobvious_causes(truth, x, y);
    for v in non.iter() {
        for w in non.iter().filter(|&w| w > v) {
            if marginally_independent(truth, v, w) {
                out.push(("two non-obvious causes", NodeSet::singleton(v).with(w)));
            }
        }
    }
    let conf = confounders(truth, x, y);
    for w in non.iter() {
        for c in conf.iter() {
            if c != w && marginally_independent(truth, c, w) {
                out.push(("non-obvious cause and confounder", NodeSet::singleton(w).with(c)));
            }
        }
    }
    out
}

/// A blank sophisticated receiver accepts on `d` iff `x -> y` is uniquely
/// consistent there; returns the proposal and trace.
fn direct_link(
    truth: &Arc<Dag>,
    d: NodeSet,
    ix: usize,
    iy: usize,
    cfg: &PlanConfig,
) -> Result<Option<(Dag, Vec<String>)>> {
    let o = IndependenceOracle::from_truth_set(truth.clone(), d);
    let (x, y) = (o.local_index(truth.name(ix))?, o.local_index(truth.name(iy))?);
    let proposal = match unique_link_fast(&o, x, y) {
        Some(false) => return Ok(None),
        Some(true) => {
            let mut picks = Vec::new();
            let induced = truth.induced(d);
            if consistent_fast(&induced, &o) {
                picks.push(induced);
            }
            if let Some(m) = extend_pattern(&ic_algorithm(&o)).and_then(|p| o.model(p).ok()) {
                picks.push(m);
            }
            let clean = |m: &Dag| defective_links(m, truth).map(|v| v.is_empty()).unwrap_or(false);
            let pick = picks.iter().find(|m| clean(m)).cloned().or_else(|| {
                (!cfg.truthful_only).then(|| picks.first().cloned()).flatten()
            });
            match pick {
                Some(m) => m,
                None => {
                    let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
                    match rank_proposals(&models, truth, cfg.truthful_only, |m| m.has_edge(x, y)).first() {
                        Some(m) => (*m).clone(),
                        None => return Ok(None),
                    }
                }
            }
        }
        None => {
            let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
            if !unique_link_in(&models, x, y) {
                return Ok(None);
            }
            match rank_proposals(&models, truth, cfg.truthful_only, |_| true).first() {
                Some(m) => (*m).clone(),
                None => return Ok(None),
            }
        }
    };
    let mut trace = explain(&o, &proposal, truth);
    trace.push(format!(
        "{} -> {} is uniquely consistent; sophisticated receiver accepts",
        o.name(x),
        o.name(y)
    ));
    Ok(Some((proposal, trace)))
}

/// Minimal-disclosure search for any receiver and goal.
///
/// The base is the prior's variables plus `x` and `y`. A disclosure works
/// when the prior (if any) is debunked and some consistent model meeting the
/// goal is acceptable to the receiver; truthful models are proposed first.
pub fn plan_search(truth: &Dag, receiver: &ReceiverSpec, goal: &Goal, cfg: &PlanConfig) -> Result<Plan> {
    cfg.validate()?;
    let (ix, iy) = pair(truth, &goal.x, &goal.y)?;
    let mut base = NodeSet::singleton(ix).with(iy);
    if let Some(prior) = &receiver.prior {
        base = base.union(check_prior(truth, prior)?);
    }
    if base.len() > cfg.budget {
        return Err(Error::BudgetExceeded { budget: cfg.budget });
    }
    let arc = Arc::new(truth.clone());
    let mut notes = Vec::new();
    let walk = walk_supersets(truth, base, cfg.budget, |d| {
        evaluate(&arc, d, receiver, goal, cfg, &mut notes)
    })?;
    match walk {
        Walk::Found(d, (proposal, mut trace)) => {
            let mut head = notes;
            head.push(format!("first accepted disclosure is {}", fmt_set(truth, d)));
            head.append(&mut trace);
            Ok(Plan::accepted(truth, base, d, proposal, head))
        }
        Walk::NotFound { truncated: true, .. } => Err(Error::BudgetExceeded { budget: cfg.budget }),
        Walk::NotFound { examined, .. } => {
            let mut trace = notes;
            trace.push(format!(
                "examined all {examined} disclosures containing {}; none is accepted",
                fmt_set(truth, base)
            ));
            Ok(Plan::infeasible(truth, base, trace))
        }
    }
}

fn evaluate(
    truth: &Arc<Dag>,
    d: NodeSet,
    receiver: &ReceiverSpec,
    goal: &Goal,
    cfg: &PlanConfig,
    notes: &mut Vec<String>,
) -> Result<Option<(Dag, Vec<String>)>> {
    let o = IndependenceOracle::from_truth_set(truth.clone(), d);
    let (x, y) = (o.local_index(&goal.x)?, o.local_index(&goal.y)?);
    if goal.mode == GoalMode::RuleOut && o.separating_set(x, y).is_none() {
        return Ok(None);
    }
    let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
    let mut trace = Vec::new();
    if let Some(prior) = &receiver.prior {
        let edges = prior_edges(&o, prior)?;
        let (debunked, link) = debunk_in(&models, &edges);
        if !debunked {
            return Ok(None);
        }
        trace.push(match link {
            Some(k) => {
                let (a, b) = edges[k];
                format!("prior debunked: no consistent model has {} ⇒ {}", o.name(a), o.name(b))
            }
            None => "prior debunked: its links cannot all be kept together".into(),
        });
    }
    let mut met = |m: &Dag| goal.met_by(m).unwrap_or(false);
    let candidates = rank_proposals(&models, truth, cfg.truthful_only, &mut met);
    let blank_direct = receiver.prior.is_none() && goal.mode == GoalMode::EstablishDirect;
    let pick = candidates.into_iter().find(|p| match receiver.kind {
        ReceiverKind::Naive => true,
        ReceiverKind::Sophisticated if blank_direct => unique_link_in(&models, x, y),
        ReceiverKind::Sophisticated => paths_unique(&models, p, x, y).is_none(),
    });
    match pick {
        Some(p) => {
            trace.extend(explain(&o, p, truth));
            trace.push(format!("{:?} receiver accepts the proposal", receiver.kind).to_lowercase());
            Ok(Some((p.clone(), trace)))
        }
        None => {
            if receiver.prior.is_some() && notes.len() < MAX_NOTES {
                notes.push(format!(
                    "{}: prior debunked but no acceptable proposal meets the goal",
                    fmt_set(truth, d)
                ));
            }
            Ok(None)
        }
    }
}

/// Dispatches on the receiver: blank naive and blank sophisticated receivers
/// get the dedicated planners for `x -> y`; a receiver with a prior is
/// searched for `x ⇒ y`.
pub fn persuade(truth: &Dag, receiver: &ReceiverSpec, x: &str, y: &str, cfg: &PlanConfig) -> Result<Plan> {
    cfg.validate()?;
    match (&receiver.prior, receiver.kind) {
        (None, ReceiverKind::Naive) if !cfg.truthful_only => persuade_naive(truth, x, y),
        (None, ReceiverKind::Sophisticated) => persuade_sophisticated(truth, x, y, cfg),
        (None, _) => plan_search(truth, receiver, &Goal::new(x, y, GoalMode::EstablishDirect)?, cfg),
        (Some(_), _) => plan_search(truth, receiver, &Goal::new(x, y, GoalMode::EstablishAncestral)?, cfg),
    }
}
