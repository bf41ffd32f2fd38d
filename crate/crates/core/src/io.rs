// SPDX-License-Identifier: MIT
//! Graph JSON and DOT text.
//!
//! A graph is `{"variables": [...], "edges": [["a", "b"], ...]}` where each
//! pair is a directed edge `a -> b`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::pattern::Pattern;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub variables: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn from_dag(g: &Dag) -> GraphJson {
        GraphJson {
            variables: g.variables().iter().map(|v| v.to_string()).collect(),
            edges: g
                .edge_names()
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        }
    }

    pub fn to_dag(&self) -> Result<Dag> {
        Dag::new(&self.variables, self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternJson {
    pub directed: Vec<(String, String)>,
    pub undirected: Vec<(String, String)>,
    pub conflict: bool,
}

impl PatternJson {
    pub fn from_pattern(p: &Pattern) -> PatternJson {
        let own = |v: Vec<(&str, &str)>| v.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        PatternJson {
            directed: own(p.directed_names()),
            undirected: own(p.undirected_names()),
            conflict: p.has_conflict(),
        }
    }
}

pub fn parse_graph(text: &str) -> Result<Dag> {
    let g: GraphJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    g.to_dag()
}

pub fn graph_to_json(g: &Dag) -> String {
    serde_json::to_string(&GraphJson::from_dag(g)).expect("graph JSON serialises")
}

pub fn pattern_to_json(p: &Pattern) -> String {
    serde_json::to_string(&PatternJson::from_pattern(p)).expect("pattern JSON serialises")
}

fn quote(name: &str) -> String {
    if name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && !name.starts_with(|c: char| c.is_ascii_digit()) {
        name.to_string()
    } else {
        format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn dot(vars: &[&str], directed: &[(&str, &str)], undirected: &[(&str, &str)]) -> String {
    let mut s = String::from("digraph {\n");
    for v in vars {
        let _ = writeln!(s, "  {};", quote(v));
    }
    for (a, b) in directed {
        let _ = writeln!(s, "  {} -> {};", quote(a), quote(b));
    }
    for (a, b) in undirected {
        let _ = writeln!(s, "  {} -- {};", quote(a), quote(b));
    }
    s.push_str("}\n");
    s
}

pub fn graph_to_dot(g: &Dag) -> String {
    let vars: Vec<&str> = g.variables().iter().map(|v| v.as_str()).collect();
    dot(&vars, &g.edge_names(), &[])
}

/// Undirected pattern edges are written `a -- b`.
pub fn pattern_to_dot(p: &Pattern) -> String {
    let vars: Vec<&str> = p.variables().iter().map(|v| v.as_str()).collect();
    dot(&vars, &p.directed_names(), &p.undirected_names())
}
