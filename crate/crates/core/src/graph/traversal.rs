use std::collections::VecDeque;

use super::{Edge, EdgeSet, Graph, Path, VertexId};
use crate::error::GraphError;

/// One connected component, described by its members (ascending) and the
/// statistics the decomposer branches on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<VertexId>,
    pub edge_count: usize,
}

impl Component {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3 && self.edge_count == 3
    }

    pub fn is_isolated_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// The component as a graph over the host's id space.
    pub fn graph(&self, host: &Graph) -> Graph {
        host.restrict(&self.vertices)
    }
}

/// Breadth-first sweep from `start` that never enters `blocked` vertices.
fn sweep(g: &Graph, start: VertexId, blocked: &[bool], mark: &mut [bool]) -> Vec<VertexId> {
    let mut members = vec![start];
    mark[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !mark[w] && !blocked[w] {
                mark[w] = true;
                members.push(w);
                queue.push_back(w);
            }
        }
    }
    members.sort_unstable();
    members
}

/// All components including isolated vertices, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Component> {
    let blocked = vec![false; g.n()];
    let mut mark = vec![false; g.n()];
    let mut out = Vec::new();
    for v in 0..g.n() {
        if mark[v] {
            continue;
        }
        let vertices = sweep(g, v, &blocked, &mut mark);
        let degree_sum: usize = vertices.iter().map(|&u| g.degree(u)).sum();
        out.push(Component {
            vertices,
            edge_count: degree_sum / 2,
        });
    }
    out
}

/// Shortest `s`–`t` path avoiding the given vertices and edges.
///
/// Ties are broken by breadth-first search that expands neighbors in
/// ascending id order and fixes each parent at first discovery.
pub fn shortest_path(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    forbidden_vertices: &[VertexId],
    forbidden_edges: &EdgeSet,
) -> Result<Path, GraphError> {
    let n = g.n();
    let mut blocked = vec![false; n];
    for &v in forbidden_vertices {
        blocked[v] = true;
    }
    if blocked[s] || blocked[t] {
        return Err(GraphError::NoPath { s, t });
    }
    let mut parent = vec![usize::MAX; n];
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        for &w in g.neighbors(u) {
            if parent[w] != usize::MAX || blocked[w] {
                continue;
            }
            if !forbidden_edges.is_empty() && forbidden_edges.contains(&Edge::new(u, w)) {
                continue;
            }
            parent[w] = u;
            queue.push_back(w);
        }
    }
    if parent[t] == usize::MAX {
        return Err(GraphError::NoPath { s, t });
    }
    let mut vertices = vec![t];
    let mut cur = t;
    while cur != s {
        cur = parent[cur];
        vertices.push(cur);
    }
    vertices.reverse();
    Path::new(vertices)
}

/// Components of `g - v` that contain a neighbor of `v`, in ascending order
/// of smallest member. Empty when `v` is isolated.
pub fn cut_components(g: &Graph, v: VertexId) -> Vec<Vec<VertexId>> {
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    let mut mark = vec![false; g.n()];
    let mut parts = Vec::new();
    for &u in g.neighbors(v) {
        if !mark[u] {
            parts.push(sweep(g, u, &blocked, &mut mark));
        }
    }
    parts.sort();
    parts
}

/// Does removing `v` split the component that contains it?
pub fn is_cut_vertex(g: &Graph, v: VertexId) -> bool {
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    let mut mark = vec![false; g.n()];
    let mut nbrs = g.neighbors(v).iter();
    match nbrs.next() {
        None => false,
        Some(&first) => {
            sweep(g, first, &blocked, &mut mark);
            nbrs.any(|&u| !mark[u])
        }
    }
}

/// Components that are exactly a 3-cycle, as sorted triples ordered by
/// smallest member.
pub fn triangle_components(g: &Graph) -> Vec<[VertexId; 3]> {
    connected_components(g)
        .into_iter()
        .filter(Component::is_triangle)
        .map(|c| [c.vertices[0], c.vertices[1], c.vertices[2]])
        .collect()
}
