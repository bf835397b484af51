use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::GraphError;

/// A vertex removal order in which every vertex has at most two neighbors
/// among the vertices that come after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EliminationOrder {
    order: Vec<VertexId>,
}

impl EliminationOrder {
    pub fn as_slice(&self) -> &[VertexId] {
        &self.order
    }

    /// Checks the order against `g`: a permutation of the vertex set where
    /// each vertex has degree <= 2 in the subgraph induced by itself and the
    /// vertices after it.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.order.len() != g.n() {
            return false;
        }
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= g.n() || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.order
            .iter()
            .enumerate()
            .all(|(i, &v)| g.neighbors(v).iter().filter(|&&u| pos[u] > i).count() <= 2)
    }
}

/// Min-degree-first peeling: repeatedly removes the lowest-id vertex of
/// minimum remaining degree, failing once that minimum exceeds two.
pub fn degeneracy_order(g: &Graph) -> Result<EliminationOrder, GraphError> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: BTreeSet<(usize, VertexId)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut order = Vec::with_capacity(n);

    while let Some(&(d, v)) = queue.iter().next() {
        if d > 2 {
            return Err(GraphError::NotTwoDegenerate {
                stuck: queue
                    .iter()
                    .map(|&(_, u)| u)
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            });
        }
        queue.remove(&(d, v));
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }
    Ok(EliminationOrder { order })
}
