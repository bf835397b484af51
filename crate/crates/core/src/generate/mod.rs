//! Seeded 2-degenerate test graphs.
//!
//! Random graphs are grown one vertex at a time, each new vertex attaching
//! to at most two earlier ones; reading the insertion order backwards is an
//! elimination order, so every output is 2-degenerate by construction.

mod families;

use rand::seq::{index, SliceRandom};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{degeneracy_order, Edge, EdgeSet, Graph, VertexId};

pub use families::{family, FAMILY_NAMES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} needs at least {min} vertices, got {n}")]
    TooSmall {
        family: String,
        n: usize,
        min: usize,
    },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    /// Give every vertex after the first at least one back-edge.
    pub connect: bool,
    /// Probability that a new vertex attaches to two earlier vertices.
    pub p2: f64,
    pub family: Option<String>,
    /// Add edges until at most one vertex of degree at most 2 is left.
    pub densify: bool,
}

impl GenSpec {
    pub fn random(n: usize, seed: u64, p2: f64) -> Self {
        Self {
            n,
            seed,
            connect: true,
            p2,
            family: None,
            densify: false,
        }
    }

    fn validate(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.p2) {
            return Err(GenError::InvalidSpec(format!(
                "p2 = {} is not a probability",
                self.p2
            )));
        }
        if self.n == 0 {
            return Err(GenError::InvalidSpec("n must be at least 1".into()));
        }
        Ok(())
    }
}

/// Builds the graph described by `spec`. Identical specs give identical
/// graphs.
pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    if let Some(name) = &spec.family {
        return family(name, spec.n);
    }
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let g = if spec.densify {
        dense(spec.n, spec.p2, &mut rng)
    } else {
        grow(spec.n, spec.connect, spec.p2, &mut rng)
    };
    // Random labels, so that id-based tie-breaks do not follow insertion.
    let mut label: Vec<VertexId> = (0..g.n()).collect();
    label.shuffle(&mut rng);
    let edges = g.edges().map(|e| (label[e.lo()], label[e.hi()]));
    Ok(Graph::from_edges(g.n(), edges).expect("relabeling keeps the graph simple"))
}

/// Insertion growth: vertex `i` attaches to up to two of `0..i`.
fn grow(n: usize, connect: bool, p2: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 1..n {
        let k = if i >= 2 && rng.random_bool(p2) {
            2
        } else if connect || rng.random_bool(0.5) {
            1
        } else {
            0
        };
        for j in index::sample(rng, i, k).into_iter() {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, edges).expect("insertion never repeats a pair")
}

/// A connected graph with a single vertex of degree at most 2. Besides a
/// plain densified graph this may be a gluing of densified pieces at their
/// low vertices, which is the only way to get low cut vertices once every
/// other vertex has degree 3 or more.
fn dense(n: usize, p2: f64, rng: &mut ChaCha8Rng) -> Graph {
    match rng.random_range(0..3) {
        1 => {
            if let Some((g, _)) = rooted(n, p2, rng) {
                return g;
            }
        }
        2 if n >= 12 => {
            // Pendant 0 on hub 1, which joins the low vertices of two pieces.
            let a = rng.random_range(5..=n - 7);
            if let (Some(left), Some(right)) = (rooted(a, p2, rng), rooted(n - 2 - a, p2, rng)) {
                let mut edges = vec![(0, 1)];
                for (offset, (g, root)) in [(2, left), (2 + a, right)] {
                    edges.extend(g.edges().map(|e| (e.lo() + offset, e.hi() + offset)));
                    edges.push((1, root + offset));
                }
                return Graph::from_edges(n, edges).expect("pieces are disjoint");
            }
        }
        _ => {}
    }
    densify(&grow(n, true, p2, rng), rng)
}

/// A connected graph whose only low vertex, returned alongside, has degree
/// exactly 2. Either a densified graph or a new vertex joined to the low
/// vertices of two smaller such graphs.
fn rooted(n: usize, p2: f64, rng: &mut ChaCha8Rng) -> Option<(Graph, VertexId)> {
    if n < 5 {
        return None;
    }
    if n >= 11 && rng.random_bool(0.5) {
        let a = rng.random_range(5..=n - 6);
        let (left, ra) = rooted(a, p2, rng)?;
        let (right, rb) = rooted(n - 1 - a, p2, rng)?;
        let mut edges: Vec<_> = left.edges().map(|e| (e.lo(), e.hi())).collect();
        edges.extend(right.edges().map(|e| (e.lo() + a, e.hi() + a)));
        edges.extend([(n - 1, ra), (n - 1, rb + a)]);
        return Some((
            Graph::from_edges(n, edges).expect("pieces are disjoint"),
            n - 1,
        ));
    }
    for _ in 0..8 {
        let g = densify(&grow(n, true, p2, rng), rng);
        let low: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) <= 2).collect();
        if let [root] = low[..] {
            if g.degree(root) == 2 {
                return Some((g, root));
            }
        }
    }
    None
}

/// Adds edges at vertices of degree at most 2, keeping the graph
/// 2-degenerate, until a single such vertex of degree 2 remains or no
/// addition fits.
pub fn densify(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let n = g.n();
    let mut edges: EdgeSet = g.edge_set();
    let mut cur = g.clone();
    loop {
        let mut low: Vec<VertexId> = (0..n).filter(|&v| cur.degree(v) <= 2).collect();
        if low.is_empty() || low.len() == 1 && cur.degree(low[0]) == 2 {
            return cur;
        }
        low.shuffle(rng);
        let mut added = false;
        'search: for &u in &low {
            let mut targets: Vec<VertexId> =
                (0..n).filter(|&w| w != u && !cur.has_edge(u, w)).collect();
            targets.shuffle(rng);
            // Joining two low vertices helps twice; try those first.
            targets.sort_by_key(|&w| cur.degree(w) > 2);
            for w in targets {
                let mut trial = edges.clone();
                trial.insert(Edge::new(u, w));
                let candidate = Graph::empty(n).with_edges(&trial);
                if degeneracy_order(&candidate).is_ok() {
                    edges = trial;
                    cur = candidate;
                    added = true;
                    break 'search;
                }
            }
        }
        if !added {
            return cur;
        }
    }
}
