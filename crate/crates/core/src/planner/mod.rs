// SPDX-License-Identifier: MIT
//! Choosing what to disclose, and what model to propose, to a receiver.
//!
//! Every planner walks supersets of a base variable set in order of size,
//! then lexicographically, and stops at the first acceptable disclosure, so
//! returned plans are minimal within the searched space.

mod debunk;
mod dissuade;
mod persuade;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dag::{Dag, VariableId};
use crate::dsep::d_separated;
use crate::error::{Error, Result};
use crate::ic::{consistent_fast, enumerate_consistent_dags_with, ic_run, unique_link_in, EnumBudget};
use crate::io::GraphJson;
use crate::nodeset::NodeSet;
use crate::oracle::IndependenceOracle;
use crate::world::defective_links;

pub use debunk::plan_debunk;
pub use dissuade::{minimal_dsep_set, nitpick_search, plan_dissuade};
pub use persuade::{persuade, persuade_naive, persuade_sophisticated, plan_search};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReceiverKind {
    Naive,
    Sophisticated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceiverSpec {
    pub kind: ReceiverKind,
    pub prior: Option<Dag>,
}

impl ReceiverSpec {
    pub fn blank(kind: ReceiverKind) -> Self {
        ReceiverSpec { kind, prior: None }
    }

    pub fn with_prior(kind: ReceiverKind, prior: Dag) -> Self {
        ReceiverSpec {
            kind,
            prior: Some(prior),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoalMode {
    /// `x -> y` in the proposal.
    EstablishDirect,
    /// A directed path from `x` to `y`.
    EstablishAncestral,
    /// `x`, `y` nonadjacent with no directed path either way.
    RuleOut,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Goal {
    pub x: VariableId,
    pub y: VariableId,
    pub mode: GoalMode,
}

impl Goal {
    pub fn new(x: &str, y: &str, mode: GoalMode) -> Result<Goal> {
        if x == y {
            return Err(Error::Precondition(format!("goal needs x != y, got `{x}` twice")));
        }
        Ok(Goal {
            x: VariableId::new(x)?,
            y: VariableId::new(y)?,
            mode,
        })
    }

    /// Whether `m` realises the goal; `m` must contain `x` and `y`.
    pub fn met_by(&self, m: &Dag) -> Result<bool> {
        let (x, y) = (m.index(&self.x)?, m.index(&self.y)?);
        Ok(match self.mode {
            GoalMode::EstablishDirect => m.has_edge(x, y),
            GoalMode::EstablishAncestral => m.reaches(x, y),
            GoalMode::RuleOut => !m.adjacent(x, y) && !m.reaches(x, y) && !m.reaches(y, x),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
            Verdict::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub disclosure: Vec<VariableId>,
    #[serde(serialize_with = "ser_proposal")]
    pub proposal: Option<Dag>,
    pub verdict: Verdict,
    #[serde(rename = "new_variables")]
    pub new_variable_count: usize,
    pub trace: Vec<String>,
    /// Only set by debunk plans, where the disclosure may admit no model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proposal_consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replacement: Option<Box<Plan>>,
}

fn ser_proposal<S: Serializer>(p: &Option<Dag>, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.as_ref().map(GraphJson::from_dag).serialize(s)
}

impl Plan {
    pub fn is_accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn disclosure_names(&self) -> Vec<&str> {
        self.disclosure.iter().map(|v| v.as_str()).collect()
    }

    pub(crate) fn infeasible(truth: &Dag, base: NodeSet, trace: Vec<String>) -> Plan {
        Plan {
            disclosure: ids(truth, base),
            proposal: None,
            verdict: Verdict::Infeasible,
            new_variable_count: 0,
            trace,
            proposal_consistent: None,
            replacement: None,
        }
    }

    pub(crate) fn accepted(truth: &Dag, base: NodeSet, disclosure: NodeSet, proposal: Dag, trace: Vec<String>) -> Plan {
        Plan {
            disclosure: ids(truth, disclosure),
            proposal: Some(proposal),
            verdict: Verdict::Accepted,
            new_variable_count: disclosure.difference(base).len(),
            trace,
            proposal_consistent: None,
            replacement: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanConfig {
    /// Largest disclosure, and largest scope handed to enumeration.
    pub budget: usize,
    /// Only propose models without defective links.
    pub truthful_only: bool,
}

pub const DEFAULT_BUDGET: usize = 12;

impl Default for PlanConfig {
    fn default() -> Self {
        PlanConfig {
            budget: DEFAULT_BUDGET,
            truthful_only: false,
        }
    }
}

impl PlanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget < 2 {
            return Err(Error::Precondition(format!("budget must be at least 2, got {}", self.budget)));
        }
        Ok(())
    }

    pub(crate) fn enum_budget(&self) -> EnumBudget {
        EnumBudget {
            max_scope: self.budget,
            ..EnumBudget::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DebunkOutcome {
    pub debunked: bool,
    /// A prior edge no consistent model keeps as a directed path.
    pub link: Option<(VariableId, VariableId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Acceptance {
    pub accepted: bool,
    pub trace: Vec<String>,
}

pub(crate) fn ids(g: &Dag, s: NodeSet) -> Vec<VariableId> {
    s.iter().map(|i| g.variables()[i].clone()).collect()
}

pub(crate) fn fmt_set(g: &Dag, s: NodeSet) -> String {
    format!("{{{}}}", g.names_of(s).join(","))
}

/// Prior edges as local indices of a disclosure oracle.
fn prior_edges(o: &IndependenceOracle, prior: &Dag) -> Result<Vec<(usize, usize)>> {
    prior
        .edge_names()
        .into_iter()
        .map(|(a, b)| Ok((o.local_index(a)?, o.local_index(b)?)))
        .collect()
}

/// Debunk test over an enumerated consistent set.
pub(crate) fn debunk_in(models: &[Dag], edges: &[(usize, usize)]) -> (bool, Option<usize>) {
    let preserved = models
        .iter()
        .any(|m| edges.iter().all(|&(a, b)| m.reaches(a, b)));
    if preserved {
        return (false, None);
    }
    let link = edges
        .iter()
        .position(|&(a, b)| models.iter().all(|m| !m.reaches(a, b)));
    (true, link)
}

/// No model consistent with the data on `disclosure` keeps every prior edge
/// `a -> b` as a directed path `a ⇒ b`.
pub fn debunks<S: AsRef<str>>(
    truth: &Dag,
    disclosure: impl IntoIterator<Item = S>,
    prior: &Dag,
    cfg: &PlanConfig,
) -> Result<DebunkOutcome> {
    let o = IndependenceOracle::with_scope(truth.clone(), disclosure)?;
    let edges = prior_edges(&o, prior)?;
    for v in prior.variables() {
        o.local_index(v)?;
    }
    let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
    let (debunked, link) = debunk_in(&models, &edges);
    let link = link.map(|k| {
        let (a, b) = edges[k];
        (VariableId::new(o.name(a)).expect("valid"), VariableId::new(o.name(b)).expect("valid"))
    });
    Ok(DebunkOutcome { debunked, link })
}

/// Checks the prior against the data on its own variables.
pub(crate) fn check_prior(truth: &Dag, prior: &Dag) -> Result<NodeSet> {
    let base = truth.set_of(prior.variables())?;
    let o = IndependenceOracle::from_truth_set(std::sync::Arc::new(truth.clone()), base);
    if !consistent_fast(prior, &o) {
        return Err(Error::Precondition(format!(
            "prior {prior} is not consistent with the data on its variables"
        )));
    }
    Ok(base)
}

/// Undirected edges lying on some simple path between `x` and `y`.
pub(crate) fn path_edges(m: &Dag, x: usize, y: usize) -> Vec<(usize, usize)> {
    fn walk(m: &Dag, u: usize, y: usize, seen: NodeSet, path: &mut Vec<usize>, out: &mut Vec<(usize, usize)>) {
        if u == y {
            for w in path.windows(2) {
                let e = (w[0].min(w[1]), w[0].max(w[1]));
                if !out.contains(&e) {
                    out.push(e);
                }
            }
            return;
        }
        for v in m.neighbors_of(u).iter() {
            if !seen.contains(v) {
                path.push(v);
                walk(m, v, y, seen.with(v), path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(m, x, y, NodeSet::singleton(x), &mut vec![x], &mut out);
    out.sort_unstable();
    out
}

/// Sophisticated rule: every link on every skeleton path between `x` and
/// `y` is oriented the same way in all consistent models. Returns the first
/// offending link.
pub(crate) fn paths_unique(models: &[Dag], proposal: &Dag, x: usize, y: usize) -> Option<(usize, usize)> {
    path_edges(proposal, x, y).into_iter().find_map(|(a, b)| {
        let (u, v) = if proposal.has_edge(a, b) { (a, b) } else { (b, a) };
        (!unique_link_in(models, u, v)).then_some((u, v))
    })
}

/// Whether a receiver adopts `plan.proposal` on `plan.disclosure`.
///
/// A prior must be debunked first. A naive receiver then takes any
/// consistent model. A sophisticated one needs `x -> y` uniquely consistent
/// when it holds no prior and the goal is a direct link, and otherwise needs
/// every link on every skeleton path between `x` and `y` uniquely consistent.
pub fn receiver_accepts(
    receiver: &ReceiverSpec,
    plan: &Plan,
    truth: &Dag,
    goal: &Goal,
    cfg: &PlanConfig,
) -> Result<Acceptance> {
    let proposal = plan
        .proposal
        .as_ref()
        .ok_or_else(|| Error::Precondition("plan has no proposal".into()))?;
    let o = IndependenceOracle::with_scope(truth.clone(), &plan.disclosure)?;
    o.check_model(proposal)?;
    let (x, y) = (o.local_index(&goal.x)?, o.local_index(&goal.y)?);
    if let Some(prior) = &receiver.prior {
        for v in prior.variables() {
            o.local_index(v).map_err(|_| {
                Error::Precondition(format!("prior variable `{v}` missing from the disclosure"))
            })?;
        }
    }
    let models = enumerate_consistent_dags_with(&o, cfg.enum_budget())?;
    let mut trace = Vec::new();
    if let Some(prior) = &receiver.prior {
        let (debunked, link) = debunk_in(&models, &prior_edges(&o, prior)?);
        if !debunked {
            trace.push("prior model extends consistently to the disclosure; not debunked".into());
            return Ok(Acceptance { accepted: false, trace });
        }
        trace.push(match link {
            Some(k) => {
                let (a, b) = prior.edge_names()[k];
                format!("prior debunked: no consistent model has {a} ⇒ {b}")
            }
            None => "prior debunked: its links cannot all be kept together".into(),
        });
    }
    if !consistent_fast(proposal, &o) {
        trace.push("proposal is not consistent with the disclosed data".into());
        return Ok(Acceptance { accepted: false, trace });
    }
    let accepted = match receiver.kind {
        ReceiverKind::Naive => true,
        ReceiverKind::Sophisticated
            if receiver.prior.is_none() && goal.mode == GoalMode::EstablishDirect =>
        {
            let ok = unique_link_in(&models, x, y);
            if !ok {
                trace.push(format!("{} -> {} is not uniquely consistent", goal.x, goal.y));
            }
            ok
        }
        ReceiverKind::Sophisticated => match paths_unique(&models, proposal, x, y) {
            None => true,
            Some((a, b)) => {
                trace.push(format!("link {} -> {} is not uniquely consistent", o.name(a), o.name(b)));
                false
            }
        },
    };
    if accepted {
        trace.push(format!("{:?} receiver adopts the proposal", receiver.kind).to_lowercase());
    }
    Ok(Acceptance { accepted, trace })
}

/// Outcome of a walk over disclosure supersets.
pub(crate) enum Walk<T> {
    Found(NodeSet, T),
    /// `truncated` when larger supersets were skipped by the size limit.
    NotFound { examined: usize, truncated: bool },
}

/// Visits `base ∪ extra` for every `extra` outside `base`, smallest first,
/// while the disclosure has at most `limit` variables.
pub(crate) fn walk_supersets<T>(
    truth: &Dag,
    base: NodeSet,
    limit: usize,
    mut f: impl FnMut(NodeSet) -> Result<Option<T>>,
) -> Result<Walk<T>> {
    let rest = truth.all().difference(base);
    let mut examined = 0;
    for k in 0..=rest.len() {
        if base.len() + k > limit {
            return Ok(Walk::NotFound {
                examined,
                truncated: true,
            });
        }
        for extra in rest.subsets_of_size(k) {
            let d = base.union(extra);
            examined += 1;
            if let Some(t) = f(d)? {
                return Ok(Walk::Found(d, t));
            }
        }
    }
    Ok(Walk::NotFound {
        examined,
        truncated: false,
    })
}

/// Models ordered for proposing: non-defective first, then by edge list.
pub(crate) fn rank_proposals<'m>(
    models: &'m [Dag],
    truth: &Dag,
    truthful_only: bool,
    mut keep: impl FnMut(&Dag) -> bool,
) -> Vec<&'m Dag> {
    let mut honest = Vec::new();
    let mut other = Vec::new();
    for m in models.iter().filter(|m| keep(m)) {
        let clean = defective_links(m, truth).map(|d| d.is_empty()).unwrap_or(false);
        if clean {
            honest.push(m);
        } else if !truthful_only {
            other.push(m);
        }
    }
    honest.extend(other);
    honest
}

/// Discovery narrative for a disclosure plus the proposal's defects.
pub(crate) fn explain(o: &IndependenceOracle, proposal: &Dag, truth: &Dag) -> Vec<String> {
    let run = ic_run(o);
    let mut out = Vec::new();
    for v in &run.vstructures {
        out.push(format!("V-structure {v}"));
    }
    for f in &run.firings {
        out.push(format!("{f}"));
    }
    for (a, b) in run.pattern.conflict_names() {
        out.push(format!("conflicting orientations on {a} - {b}"));
    }
    match defective_links(proposal, truth) {
        Ok(d) if d.is_empty() => out.push("proposal has no defective link".into()),
        Ok(d) => {
            let s: Vec<String> = d.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            out.push(format!("proposal is deceptive: defective {}", s.join(", ")));
        }
        Err(_) => {}
    }
    out
}

/// Truth-level pair lookup with `x != y`.
pub(crate) fn pair(truth: &Dag, x: &str, y: &str) -> Result<(usize, usize)> {
    let (ix, iy) = (truth.index(x)?, truth.index(y)?);
    if ix == iy {
        return Err(Error::Precondition(format!("x and y must differ, got `{x}` twice")));
    }
    Ok((ix, iy))
}

pub(crate) fn marginally_independent(truth: &Dag, a: usize, b: usize) -> bool {
    d_separated(truth, a, b, NodeSet::EMPTY)
}
