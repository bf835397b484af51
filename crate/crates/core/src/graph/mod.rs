//! Simple undirected graphs over dense integer ids, plus the path and cycle
//! shapes the decomposer manipulates.
//!
//! Removing edges never renumbers vertices: a graph with edges masked out
//! keeps the same vertex count and the removed vertices simply become
//! isolated. Every derived view therefore shares ids with its host.

mod degeneracy;
mod traversal;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub use degeneracy::{degeneracy_order, EliminationOrder};
pub use traversal::{
    connected_components, cut_components, is_cut_vertex, shortest_path, triangle_components,
    Component,
};

pub type VertexId = usize;

/// Unordered vertex pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn touches(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

pub type EdgeSet = BTreeSet<Edge>;

/// Immutable simple graph. Neighbor lists are kept sorted so that every
/// traversal visits neighbors in ascending id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, out-of-range ids and repeated
    /// pairs (in either orientation).
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::IdOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert(Edge::new(u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj, m: seen.len() })
    }

    fn from_edge_set(n: usize, edges: &EdgeSet) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self {
            adj,
            m: edges.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in ascending `(lo, hi)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge(u, v))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn non_isolated(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).filter(|&v| !self.adj[v].is_empty())
    }

    /// Vertex count that every path bound in this crate is measured against.
    pub fn non_isolated_count(&self) -> usize {
        self.non_isolated().count()
    }

    /// Same vertex set, with the given edges removed. Pairs that are not
    /// edges are ignored.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        let kept: EdgeSet = self.edges().filter(|e| !removed.contains(e)).collect();
        Graph::from_edge_set(self.n(), &kept)
    }

    /// Same vertex set, keeping only edges with both endpoints in `keep`.
    pub fn restrict(&self, keep: &[VertexId]) -> Graph {
        let mut mask = vec![false; self.n()];
        for &v in keep {
            mask[v] = true;
        }
        let kept: EdgeSet = self.edges().filter(|e| mask[e.0] && mask[e.1]).collect();
        Graph::from_edge_set(self.n(), &kept)
    }

    /// Same vertex set, with `extra` edges added. Existing pairs are kept once.
    pub fn with_edges(&self, extra: &EdgeSet) -> Graph {
        let mut all = self.edge_set();
        all.extend(extra.iter().copied());
        Graph::from_edge_set(self.n(), &all)
    }

    /// Is this graph (ignoring isolated vertices) exactly one triangle?
    pub fn is_triangle(&self) -> bool {
        self.m == 3 && self.non_isolated_count() == 3
    }
}

/// A simple path: an ordered vertex sequence with no repeats. A single
/// vertex is a path of length zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(GraphError::RepeatedVertex(v));
            }
        }
        Ok(Self { vertices })
    }

    /// Wraps a raw vertex sequence without checking it. Only for certificates
    /// read from outside, which must go through the verifier before use.
    pub fn unchecked(vertices: Vec<VertexId>) -> Self {
        Self { vertices }
    }

    /// Like [`Path::new`], additionally requiring every consecutive pair to
    /// be an edge of `g`.
    pub fn in_graph(g: &Graph, vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        let p = Self::new(vertices)?;
        for e in p.edges() {
            if !g.has_edge(e.0, e.1) {
                return Err(GraphError::MissingEdge(e.0, e.1));
            }
        }
        Ok(p)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.vertices
    }

    /// Edge count `|P|`.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Path { vertices }
    }

    /// Appends `tail` after the last vertex, keeping the path simple.
    pub fn extend(&mut self, tail: &[VertexId]) -> Result<(), GraphError> {
        for &v in tail {
            if self.vertices.contains(&v) {
                return Err(GraphError::RepeatedVertex(v));
            }
            self.vertices.push(v);
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// A cycle stored as its ring of distinct vertices; the closing edge runs
/// from the last ring vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle {
    ring: Vec<VertexId>,
}

impl Cycle {
    pub fn new(ring: Vec<VertexId>) -> Result<Self, GraphError> {
        if ring.len() < 3 {
            return Err(GraphError::ShortCycle(ring.len()));
        }
        Path::new(ring.clone())?;
        Ok(Self { ring })
    }

    pub fn in_graph(g: &Graph, ring: Vec<VertexId>) -> Result<Self, GraphError> {
        let c = Self::new(ring)?;
        for e in c.edges() {
            if !g.has_edge(e.0, e.1) {
                return Err(GraphError::MissingEdge(e.0, e.1));
            }
        }
        Ok(c)
    }

    pub fn ring(&self) -> &[VertexId] {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ring.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.ring.len();
        (0..k).map(move |i| Edge::new(self.ring[i], self.ring[(i + 1) % k]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }
}
