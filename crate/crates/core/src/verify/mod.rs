//! Independent certificate checking.
//!
//! Everything here works from raw vertex sequences and edge counts and uses
//! none of the decomposer's machinery, so a decomposer bug cannot hide
//! behind a matching verifier bug.

mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::decompose::Decomposition;
use crate::graph::{Graph, VertexId};

pub use oracle::{minimum_decomposition, OracleError, DEFAULT_ORACLE_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FailureKind {
    NotAPath,
    EdgeMissing,
    EdgeRepeated,
    EdgeForeign,
    BoundExceeded,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub failures: Vec<Failure>,
    pub path_count: usize,
    pub bound: usize,
    pub odd_lower_bound: usize,
}

impl VerificationReport {
    pub fn has(&self, kind: FailureKind) -> bool {
        self.failures.iter().any(|f| f.kind == kind)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} paths {} bound {} odd_lower_bound {}",
            if self.valid { "valid" } else { "invalid" },
            self.path_count,
            self.bound,
            self.odd_lower_bound
        )?;
        for x in &self.failures {
            writeln!(f, "{} {}", x.kind, x.detail)?;
        }
        Ok(())
    }
}

/// Half the number of odd-degree vertices: each is the end of some path.
pub fn odd_degree_lower_bound(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) % 2 == 1).count() / 2
}

fn pair(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

/// Checks that `d` partitions the edges of `g` into simple paths and, when
/// it claims to meet its bound, that it does. Reports every failure found.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> VerificationReport {
    let mut failures = Vec::new();
    let mut fail = |kind, detail: String| failures.push(Failure { kind, detail });

    let mut used: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (i, p) in d.paths.iter().enumerate() {
        let vs = p.vertices();
        if vs.len() < 2 {
            fail(FailureKind::NotAPath, format!("path {i} has no edge"));
        }
        let mut seen = BTreeSet::new();
        if let Some(&r) = vs.iter().find(|&&v| !seen.insert(v)) {
            fail(
                FailureKind::NotAPath,
                format!("path {i} repeats vertex {r}"),
            );
        }
        for w in vs.windows(2) {
            let e = pair(w[0], w[1]);
            if w[0] == w[1] || !g.has_edge(e.0, e.1) {
                fail(
                    FailureKind::EdgeForeign,
                    format!("path {i} uses ({}, {}) which is not an edge", e.0, e.1),
                );
                continue;
            }
            *used.entry(e).or_insert(0) += 1;
        }
    }
    for u in 0..g.n() {
        for &v in g.neighbors(u) {
            if u < v {
                match used.get(&(u, v)).copied().unwrap_or(0) {
                    0 => fail(
                        FailureKind::EdgeMissing,
                        format!("({u}, {v}) is not covered"),
                    ),
                    1 => {}
                    k => fail(
                        FailureKind::EdgeRepeated,
                        format!("({u}, {v}) is covered {k} times"),
                    ),
                }
            }
        }
    }
    if d.bound_met && d.paths.len() > d.claimed_bound {
        fail(
            FailureKind::BoundExceeded,
            format!(
                "{} paths against a claimed bound of {}",
                d.paths.len(),
                d.claimed_bound
            ),
        );
    }
    VerificationReport {
        valid: failures.is_empty(),
        failures,
        path_count: d.paths.len(),
        bound: d.claimed_bound,
        odd_lower_bound: odd_degree_lower_bound(g),
    }
}
