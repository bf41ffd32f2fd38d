// SPDX-License-Identifier: MIT
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`: names must be non-empty with no whitespace or commas")]
    InvalidName(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("edge {0} -> {1} listed twice")]
    DuplicateEdge(String, String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("edge set contains a directed cycle")]
    Cycle,
    #[error("graph has {0} variables, more than the supported {max}", max = crate::nodeset::MAX_NODES)]
    TooManyVariables(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("variable `{0}` is outside the oracle scope")]
    OutOfScope(String),
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
