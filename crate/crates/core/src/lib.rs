// SPDX-License-Identifier: MIT
//! Causal discovery over oracle data and minimal-disclosure persuasion.
//!
//! The "data" is the d-separation relation of a true DAG, seen through a
//! scope of disclosed variables. On top of that sit consistency checks,
//! enumeration of consistent models, world classification and planners that
//! choose which variables to reveal to a receiver.

pub mod dag;
pub mod dsep;
pub mod error;
pub mod fixtures;
pub mod ic;
pub mod io;
pub mod nodeset;
pub mod oracle;
pub mod pattern;
pub mod planner;
pub mod world;

pub use dag::{is_acyclic, Dag, Triplet, VariableId};
pub use dsep::d_separates;
pub use error::{Error, Result};
pub use ic::{
    enumerate_consistent_dags, enumerate_consistent_dags_with, ic_algorithm, ic_orient_vstructures,
    ic_run, ic_skeleton, is_consistent, meek_closure, meek_closure_traced, uniquely_consistent_link,
    ConsistencyVerdict, EnumBudget, IcRun, MeekFiring, MeekRule, VStructureWitness,
};
pub use nodeset::NodeSet;
pub use oracle::IndependenceOracle;
pub use pattern::Pattern;
pub use planner::{
    debunks, minimal_dsep_set, nitpick_search, persuade, persuade_naive, persuade_sophisticated,
    plan_debunk, plan_dissuade, plan_search, receiver_accepts, Goal, GoalMode, Plan, PlanConfig,
    ReceiverKind, ReceiverSpec, Verdict,
};
pub use world::{
    cause_catalog, defective_links, find_confounders, find_nonobvious_causes, find_obvious_causes,
    is_rich, is_simple, profile, CauseCatalog, WorldProfile,
};
pub use fixtures::{build_fixture, enumerate_simple_dags, fixture_prior, random_dag, FixtureId};
