// SPDX-License-Identifier: MIT
//! Ruling out a link, and nitpicking a naive receiver's model.

use crate::dag::{Dag, VariableId};
use crate::dsep::d_separated;
use crate::error::{Error, Result};
use crate::world::defective_links;

use super::persuade::plan_search;
use super::{pair, Goal, GoalMode, Plan, PlanConfig, ReceiverKind, ReceiverSpec};

/// Smallest set separating `x` and `y` in the truth, lexicographic among
/// equal sizes; `None` when they are adjacent.
pub fn minimal_dsep_set(truth: &Dag, x: &str, y: &str) -> Result<Option<Vec<VariableId>>> {
    let (ix, iy) = pair(truth, x, y)?;
    if truth.adjacent(ix, iy) {
        return Ok(None);
    }
    let rest = truth.all().without(ix).without(iy);
    Ok(rest
        .subsets_by_size()
        .find(|&s| d_separated(truth, ix, iy, s))
        .map(|s| s.iter().map(|i| truth.variables()[i].clone()).collect()))
}

/// Persuades the receiver that `x` and `y` have no causal connection.
///
/// Adjacent variables stay adjacent in every consistent model, so that case
/// is infeasible outright. Otherwise disclosures are searched smallest first;
/// only those containing a set that separates `x` and `y` can work.
pub fn plan_dissuade(
    truth: &Dag,
    prior: &Dag,
    x: &str,
    y: &str,
    kind: ReceiverKind,
    cfg: &PlanConfig,
) -> Result<Plan> {
    let (px, py) = (prior.index(x)?, prior.index(y)?);
    if !prior.adjacent(px, py) {
        return Err(Error::Precondition(format!("prior has no link between {x} and {y} to rule out")));
    }
    let (ix, iy) = pair(truth, x, y)?;
    if truth.adjacent(ix, iy) {
        let base = truth.set_of(prior.variables())?;
        return Ok(Plan::infeasible(
            truth,
            base,
            vec![format!("{x} and {y} are adjacent in the truth, so no set separates them")],
        ));
    }
    let goal = Goal::new(x, y, GoalMode::RuleOut)?;
    plan_search(truth, &ReceiverSpec::with_prior(kind, prior.clone()), &goal, cfg)
}

/// Debunks some defective link of a naive receiver's model and uses the
/// opening to propose a consistent model meeting `goal`, possibly deceptive.
pub fn nitpick_search(truth: &Dag, prior: &Dag, goal: &Goal, cfg: &PlanConfig) -> Result<Plan> {
    cfg.validate()?;
    let defects = defective_links(prior, truth)?;
    if defects.is_empty() {
        let (ix, iy) = pair(truth, &goal.x, &goal.y)?;
        let base = truth.set_of(prior.variables())?.with(ix).with(iy);
        return Ok(Plan::infeasible(
            truth,
            base,
            vec!["prior has no defective link, so it can never be debunked".into()],
        ));
    }
    let mut plan = plan_search(truth, &ReceiverSpec::with_prior(ReceiverKind::Naive, prior.clone()), goal, cfg)?;
    let listed: Vec<String> = defects.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
    plan.trace.insert(0, format!("defective prior links: {}", listed.join(", ")));
    Ok(plan)
}
