//! The audit trail of a decomposition: one record per reduction that fired,
//! with the vertices it was bound to and the graph it acted on.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::checks;
use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    Base,
    #[serde(rename = "Claim1-Path")]
    Claim1Path,
    #[serde(rename = "Claim1-Cycle3")]
    Claim1Cycle3,
    #[serde(rename = "Claim1-Cycle4")]
    Claim1Cycle4,
    #[serde(rename = "Subclaim1-Merge")]
    Subclaim1Merge,
    #[serde(rename = "Subclaim2-Merge")]
    Subclaim2Merge,
    #[serde(rename = "Lemma1-Case1")]
    Lemma1Case1,
    #[serde(rename = "Lemma1-Case2")]
    Lemma1Case2,
    #[serde(rename = "Lemma1-Case3")]
    Lemma1Case3,
    #[serde(rename = "Claim2-Case1")]
    Claim2Case1,
    #[serde(rename = "Claim2-Case2-OddOdd")]
    Claim2Case2OddOdd,
    #[serde(rename = "Claim2-Subcase2.1")]
    Claim2Subcase21,
    #[serde(rename = "Claim2-Subcase2.2")]
    Claim2Subcase22,
    Claim3,
    Claim4,
    #[serde(rename = "Case1-Deg3Neighbor")]
    Case1Deg3Neighbor,
    #[serde(rename = "Subcase2.1-Y3")]
    Subcase21Y3,
    #[serde(rename = "Subcase2.2-Y4")]
    Subcase22Y4,
    ComponentSplit,
}

impl Branch {
    pub const ALL: [Branch; 19] = [
        Branch::Base,
        Branch::Claim1Path,
        Branch::Claim1Cycle3,
        Branch::Claim1Cycle4,
        Branch::Subclaim1Merge,
        Branch::Subclaim2Merge,
        Branch::Lemma1Case1,
        Branch::Lemma1Case2,
        Branch::Lemma1Case3,
        Branch::Claim2Case1,
        Branch::Claim2Case2OddOdd,
        Branch::Claim2Subcase21,
        Branch::Claim2Subcase22,
        Branch::Claim3,
        Branch::Claim4,
        Branch::Case1Deg3Neighbor,
        Branch::Subcase21Y3,
        Branch::Subcase22Y4,
        Branch::ComponentSplit,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Branch::Base => "Base",
            Branch::Claim1Path => "Claim1-Path",
            Branch::Claim1Cycle3 => "Claim1-Cycle3",
            Branch::Claim1Cycle4 => "Claim1-Cycle4",
            Branch::Subclaim1Merge => "Subclaim1-Merge",
            Branch::Subclaim2Merge => "Subclaim2-Merge",
            Branch::Lemma1Case1 => "Lemma1-Case1",
            Branch::Lemma1Case2 => "Lemma1-Case2",
            Branch::Lemma1Case3 => "Lemma1-Case3",
            Branch::Claim2Case1 => "Claim2-Case1",
            Branch::Claim2Case2OddOdd => "Claim2-Case2-OddOdd",
            Branch::Claim2Subcase21 => "Claim2-Subcase2.1",
            Branch::Claim2Subcase22 => "Claim2-Subcase2.2",
            Branch::Claim3 => "Claim3",
            Branch::Claim4 => "Claim4",
            Branch::Case1Deg3Neighbor => "Case1-Deg3Neighbor",
            Branch::Subcase21Y3 => "Subcase2.1-Y3",
            Branch::Subcase22Y4 => "Subcase2.2-Y4",
            Branch::ComponentSplit => "ComponentSplit",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.tag() == tag)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Names under which a reduction binds its vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    U,
    V,
    X,
    Y,
    Z,
    W,
    A,
    B,
    T,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::U => "u",
            Role::V => "v",
            Role::X => "x",
            Role::Y => "y",
            Role::Z => "z",
            Role::W => "w",
            Role::A => "a",
            Role::B => "b",
            Role::T => "t",
        };
        f.write_str(s)
    }
}

pub type Bindings = BTreeMap<Role, VertexId>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub branch: Branch,
    /// Recursion depth of the call that fired this branch (0 = top level).
    pub depth: usize,
    pub bindings: Bindings,
    /// Sizes and counters of the step: `n`, `m`, `j` (absorbed triangles),
    /// `k` (paths before a merge), and part sizes such as `n_I`, `n_J`.
    pub counts: BTreeMap<String, usize>,
    /// Edges of the graph the branch acted on.
    pub state: Vec<Edge>,
}

impl TraceStep {
    pub fn state_graph(&self, n: usize) -> Graph {
        Graph::from_edges(n, self.state.iter().map(|e| (e.lo(), e.hi())))
            .expect("trace states are recorded from simple graphs")
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.depth, self.branch)?;
        for (role, v) in &self.bindings {
            write!(f, " {role}={v}")?;
        }
        for (key, c) in &self.counts {
            write!(f, " {key}:{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Vertex count of the host graph; every state lives in this id space.
    pub n: usize,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn histogram(&self) -> BTreeMap<Branch, usize> {
        let mut h = BTreeMap::new();
        for s in &self.steps {
            *h.entry(s.branch).or_insert(0) += 1;
        }
        h
    }

    pub fn contains(&self, branch: Branch) -> bool {
        self.steps.iter().any(|s| s.branch == branch)
    }

    /// One step per line, `depth tag role=vertex ... key:count ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {index} ({branch}): {message}")]
pub struct ReplayError {
    pub index: usize,
    pub branch: Branch,
    pub message: String,
}

/// Re-checks every step's branch precondition against its recorded state.
pub fn replay(trace: &ReductionTrace) -> Result<(), ReplayError> {
    for (index, step) in trace.steps.iter().enumerate() {
        let g = step.state_graph(trace.n);
        checks::check(step.branch, &g, &step.bindings).map_err(|message| ReplayError {
            index,
            branch: step.branch,
            message,
        })?;
    }
    Ok(())
}
