//! Path decomposition of 2-degenerate graphs within `floor(n/2)` paths.
//!
//! A connected graph is reduced by a fixed cascade of local reductions.
//! Each one removes a few edges around a vertex of degree at most two,
//! decomposes what is left recursively, and puts the removed edges back
//! without exceeding the budget. Every reduction that fires is logged in a
//! [`ReductionTrace`] together with the graph it acted on, so the run can be
//! re-checked afterwards with [`replay`].

mod checks;
mod cycle;
mod lemma;
mod trace;

use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{
    cut_components, degeneracy_order, is_cut_vertex, shortest_path, triangle_components, Cycle,
    Edge, EdgeSet, Graph, Path, VertexId,
};

pub use cycle::{merge_cycle_into_decomposition, merge_cycle_with_triangle};
pub use lemma::absorb_triangles;
pub use trace::{replay, Bindings, Branch, ReductionTrace, ReplayError, Role, TraceStep};

/// A set of paths meant to partition a graph's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<Path>,
    /// `floor(n/2)` over the non-isolated vertices of the host.
    pub claimed_bound: usize,
    /// Whether the bound applies. False exactly when the host has a
    /// triangle component, which always costs two paths.
    pub bound_met: bool,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("graph is not 2-degenerate: vertices {stuck:?} all keep degree at least 3")]
    NotTwoDegenerate { stuck: Vec<VertexId> },
    /// A fact every reduction relies on did not hold. Always a bug.
    #[error("internal invariant violated: {message}")]
    InternalInvariantViolation {
        message: String,
        trace: Box<ReductionTrace>,
    },
    #[error("precondition of {op} failed: {message}")]
    Precondition { op: &'static str, message: String },
    #[error("{triangle:?} is not a triangle component meeting the path")]
    TriangleNotComponent { triangle: [VertexId; 3] },
    #[error("no path of the decomposition meets the cycle")]
    NoIntersectingPath,
    #[error("cycle and triangle do not fit: {detail}")]
    GeometryMismatch { detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Step<T> = Result<T, DecomposeError>;

fn violation(message: impl Into<String>) -> DecomposeError {
    DecomposeError::InternalInvariantViolation {
        message: message.into(),
        trace: Box::default(),
    }
}

/// Any failure inside the engine means the reductions went wrong.
fn internal(e: impl Into<DecomposeError>) -> DecomposeError {
    match e.into() {
        v @ DecomposeError::InternalInvariantViolation { .. } => v,
        other => violation(other.to_string()),
    }
}

fn edges(pairs: &[(VertexId, VertexId)]) -> EdgeSet {
    pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
}

fn bind(pairs: &[(Role, VertexId)]) -> Bindings {
    pairs.iter().copied().collect()
}

fn other_neighbor(g: &Graph, v: VertexId, not: VertexId) -> Option<VertexId> {
    g.neighbors(v).iter().copied().find(|&w| w != not)
}

/// Makes the path ending at `anchor` continue through `tail`. The anchor
/// has degree one in the graph the paths decompose, so exactly one path
/// ends there.
fn extend_at(paths: &mut [Path], anchor: VertexId, tail: &[VertexId]) -> Step<()> {
    let ends: Vec<usize> = (0..paths.len())
        .filter(|&i| paths[i].first() == anchor || paths[i].last() == anchor)
        .collect();
    let &[i] = ends.as_slice() else {
        return Err(violation(format!(
            "{} paths end at {anchor}, expected one",
            ends.len()
        )));
    };
    if paths[i].last() != anchor {
        paths[i] = paths[i].reversed();
    }
    paths[i].extend(tail).map_err(internal)
}

/// Bookkeeping of a reduction that removes a carrier path: everything taken
/// out of the host, the triangle components this leaves, and the edges to
/// put back afterwards as `(edge, endpoint the path arrives at)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderPlan {
    pub removed: EdgeSet,
    pub carrier_path: Path,
    pub triangle_components: Vec<[VertexId; 3]>,
    pub reattach_instructions: Vec<(Edge, VertexId)>,
    remainder: Graph,
}

impl RemainderPlan {
    /// `pre_removed` are edges set aside before the carrier is chosen; the
    /// reattachment list puts them back in order as a chain.
    fn new(
        g: &Graph,
        pre_removed: EdgeSet,
        carrier: Path,
        reattach: Vec<(Edge, VertexId)>,
    ) -> Self {
        let mut removed = pre_removed;
        removed.extend(carrier.edges());
        let after = g.without_edges(&removed);
        let triangles = triangle_components(&after);
        let tri_edges: EdgeSet = triangles
            .iter()
            .flat_map(|t| {
                [
                    Edge::new(t[0], t[1]),
                    Edge::new(t[1], t[2]),
                    Edge::new(t[0], t[2]),
                ]
            })
            .collect();
        Self {
            remainder: after.without_edges(&tri_edges),
            removed,
            carrier_path: carrier,
            triangle_components: triangles,
            reattach_instructions: reattach,
        }
    }

    fn j(&self) -> usize {
        self.triangle_components.len()
    }

    /// The reattached edges as an anchor followed by the vertices the path
    /// ending at the anchor continues through.
    fn chain(&self) -> Step<Option<(VertexId, Vec<VertexId>)>> {
        let Some(&(_, anchor)) = self.reattach_instructions.first() else {
            return Ok(None);
        };
        let mut tail = Vec::new();
        let mut at = anchor;
        for &(e, from) in &self.reattach_instructions {
            if from != at || !e.touches(from) {
                return Err(violation(format!(
                    "reattachment {e} does not continue from {at}"
                )));
            }
            at = if e.lo() == from { e.hi() } else { e.lo() };
            tail.push(at);
        }
        Ok(Some((anchor, tail)))
    }
}

#[derive(Default)]
struct Engine {
    steps: Vec<TraceStep>,
    depth: usize,
}

impl Engine {
    fn record(
        &mut self,
        branch: Branch,
        g: &Graph,
        bindings: Bindings,
        counts: &[(&str, usize)],
    ) -> Step<()> {
        checks::check(branch, g, &bindings)
            .map_err(|m| violation(format!("{branch} entered without its precondition: {m}")))?;
        self.steps.push(TraceStep {
            branch,
            depth: self.depth,
            bindings,
            counts: counts.iter().map(|&(k, c)| (k.to_string(), c)).collect(),
            state: g.edges().collect(),
        });
        Ok(())
    }

    fn into_trace(self, n: usize) -> ReductionTrace {
        ReductionTrace {
            n,
            steps: self.steps,
        }
    }

    /// Decomposes a remainder one level down, one component at a time.
    fn rest(&mut self, h: &Graph, parent_m: usize) -> Step<Vec<Path>> {
        if h.m() >= parent_m {
            return Err(violation(format!(
                "recursion on {} edges from a graph with {parent_m}",
                h.m()
            )));
        }
        self.depth += 1;
        let out = self.components(h);
        self.depth -= 1;
        out
    }

    fn components(&mut self, h: &Graph) -> Step<Vec<Path>> {
        let comps = checks::nontrivial_components(h);
        if comps.len() >= 2 {
            self.record(
                Branch::ComponentSplit,
                h,
                Bindings::new(),
                &[("components", comps.len())],
            )?;
        }
        let mut out = Vec::new();
        for c in &comps {
            if c.is_triangle() {
                return Err(violation(format!(
                    "triangle component {:?} left over",
                    c.vertices
                )));
            }
            if comps.len() == 1 {
                out.extend(self.connected(h)?);
            } else {
                out.extend(self.connected(&c.graph(h))?);
            }
        }
        Ok(out)
    }

    /// Decomposes a connected non-triangle graph into at most `floor(n/2)`
    /// paths.
    fn connected(&mut self, g: &Graph) -> Step<Vec<Path>> {
        if g.m() == 0 {
            return Ok(Vec::new());
        }
        let paths = self.dispatch(g)?;
        let n = g.non_isolated_count();
        if paths.len() > n / 2 {
            return Err(violation(format!(
                "{} paths for a component on {n} vertices",
                paths.len()
            )));
        }
        Ok(paths)
    }

    fn dispatch(&mut self, g: &Graph) -> Step<Vec<Path>> {
        if g.non_isolated_count() <= 3 {
            return self.base(g);
        }
        let low = checks::low_vertices(g);
        if low.len() >= 2 {
            let (u, v) = closest_low_pair(g, &low)
                .ok_or_else(|| violation("low vertices in different components"))?;
            return self.two_low(g, u, v);
        }
        let &[v] = low.as_slice() else {
            return Err(violation("no vertex of degree at most 2"));
        };
        if g.degree(v) == 1 {
            let x = g.neighbors(v)[0];
            let (w, z) = pendant_roles(g, v, x)?;
            return self.pendant(g, v, x, w, z);
        }
        if is_cut_vertex(g, v) {
            return self.degree2_cut(g, v);
        }
        // Either degree-3 neighbor of v may act as x; try them in id order.
        let cands: Vec<VertexId> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&x| g.degree(x) == 3)
            .collect();
        if let Some(&x) = cands.iter().find(|&&x| is_cut_vertex(g, x)) {
            return self.x_cut(g, v, x);
        }
        for &x in &cands {
            if let Some(&z) = g.neighbors(x).iter().find(|&&z| z != v && g.degree(z) == 3) {
                return self.deg3_neighbor(g, v, x, z);
            }
        }
        match *cands.as_slice() {
            [x, y] => {
                let z = g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .find(|&z| z != v && g.degree(z) == 4 && g.has_edge(y, z))
                    .ok_or_else(|| violation(format!("{x} and {y} share no degree-4 neighbor")))?;
                let w = g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .find(|&w| w != v && w != z)
                    .ok_or_else(|| violation(format!("{x} has no third neighbor")))?;
                self.y3(g, v, x, y, z, w)
            }
            [x] => {
                let y = other_neighbor(g, v, x).unwrap();
                if !g.has_edge(x, y) {
                    return Err(violation(format!("{x} and {y} are not adjacent")));
                }
                let z = g
                    .neighbors(x)
                    .iter()
                    .copied()
                    .find(|&z| z != v && z != y)
                    .unwrap();
                self.y4(g, v, x, y, z)
            }
            _ => Err(violation(format!("{v} has no neighbor of degree 3"))),
        }
    }

    fn base(&mut self, g: &Graph) -> Step<Vec<Path>> {
        self.record(
            Branch::Base,
            g,
            Bindings::new(),
            &[("n", g.non_isolated_count()), ("m", g.m())],
        )?;
        let verts: Vec<VertexId> = g.non_isolated().collect();
        let path = match verts.as_slice() {
            &[a, b] => vec![a, b],
            _ => {
                let mid = *verts.iter().find(|&&q| g.degree(q) == 2).unwrap();
                let ends: Vec<VertexId> = verts.iter().copied().filter(|&q| q != mid).collect();
                vec![ends[0], mid, ends[1]]
            }
        };
        Ok(vec![Path::new(path).map_err(internal)?])
    }

    /// Removes a carrier path, decomposes the rest, folds the triangle
    /// components back into the carrier, and reattaches the set-aside edges.
    fn run_plan(&mut self, g: &Graph, plan: RemainderPlan) -> Step<Vec<Path>> {
        let (lemma_paths, absorbed) =
            lemma::absorb(&plan.carrier_path, &plan.triangle_components).map_err(internal)?;
        for a in absorbed {
            let state = Graph::from_edges(g.n(), a.state.iter().map(|e| (e.lo(), e.hi())))
                .map_err(internal)?;
            self.record(a.branch, &state, a.bindings, &[])?;
        }
        let mut out = self.rest(&plan.remainder, g.m())?;
        if let Some((anchor, tail)) = plan.chain()? {
            extend_at(&mut out, anchor, &tail)?;
        }
        out.extend(lemma_paths);
        Ok(out)
    }

    fn counts<'a>(g: &Graph, extra: &[(&'a str, usize)]) -> Vec<(&'a str, usize)> {
        let mut c = vec![("n", g.non_isolated_count()), ("m", g.m())];
        c.extend_from_slice(extra);
        c
    }

    fn two_low(&mut self, g: &Graph, u: VertexId, v: VertexId) -> Step<Vec<Path>> {
        let core = shortest_path(g, u, v, &[], &EdgeSet::new()).map_err(internal)?;
        let cv = core.vertices();
        let mut walk = Vec::with_capacity(cv.len() + 2);
        if g.degree(u) == 2 {
            walk.push(other_neighbor(g, u, cv[1]).unwrap());
        }
        walk.extend_from_slice(cv);
        if g.degree(v) == 2 {
            walk.push(other_neighbor(g, v, cv[cv.len() - 2]).unwrap());
        }
        let uv = [(Role::U, u), (Role::V, v)];

        if let Ok(p) = Path::new(walk.clone()) {
            let plan = RemainderPlan::new(g, EdgeSet::new(), p, Vec::new());
            self.record(
                Branch::Claim1Path,
                g,
                bind(&uv),
                &Self::counts(g, &[("j", plan.j())]),
            )?;
            return self.run_plan(g, plan);
        }

        // The walk closed up: its ends coincide and it is a 3- or 4-cycle.
        let ring = walk[..walk.len() - 1].to_vec();
        let c = Cycle::in_graph(g, ring).map_err(internal)?;
        let mut hubs: Vec<VertexId> = c
            .ring()
            .iter()
            .copied()
            .filter(|&q| q != u && q != v)
            .collect();
        hubs.sort_unstable();
        let (branch, bindings) = match *hubs.as_slice() {
            [x] => (Branch::Claim1Cycle3, bind(&[uv[0], uv[1], (Role::X, x)])),
            [x, y] => (
                Branch::Claim1Cycle4,
                bind(&[uv[0], uv[1], (Role::X, x), (Role::Y, y)]),
            ),
            _ => return Err(violation(format!("closed walk of length {}", c.len()))),
        };
        self.record(branch, g, bindings.clone(), &Self::counts(g, &[]))?;

        let after = g.without_edges(&c.edge_set());
        let triangles = triangle_components(&after);
        match *triangles.as_slice() {
            [] => {
                let rest = self.rest(&after, g.m())?;
                self.record(Branch::Subclaim1Merge, g, bindings, &[("k", rest.len())])?;
                merge_cycle_into_decomposition(&c, &rest, u, v).map_err(internal)
            }
            [t] => {
                let t_edges = edges(&[(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
                let mut local = c.edge_set();
                local.extend(t_edges.iter().copied());
                let local = Graph::empty(g.n()).with_edges(&local);
                self.record(Branch::Subclaim2Merge, &local, bindings, &[])?;
                let mut out = self.rest(&after.without_edges(&t_edges), g.m())?;
                out.extend(merge_cycle_with_triangle(&c, t).map_err(internal)?);
                Ok(out)
            }
            _ => Err(violation(format!(
                "{} triangle components after removing the cycle",
                triangles.len()
            ))),
        }
    }

    fn pendant(
        &mut self,
        g: &Graph,
        v: VertexId,
        x: VertexId,
        w: VertexId,
        z: VertexId,
    ) -> Step<Vec<Path>> {
        let none = EdgeSet::new();
        if let Ok(core) = shortest_path(g, w, z, &[v, x], &none) {
            let mut p = core;
            p.extend(&[x]).map_err(internal)?;
            let plan = RemainderPlan::new(
                g,
                edges(&[(v, x), (x, w)]),
                p,
                vec![(Edge::new(x, w), w), (Edge::new(v, x), x)],
            );
            let b = bind(&[(Role::V, v), (Role::X, x), (Role::W, w), (Role::Z, z)]);
            self.record(
                Branch::Claim2Case1,
                g,
                b,
                &Self::counts(g, &[("j", plan.j())]),
            )?;
            return self.run_plan(g, plan);
        }

        // x separates w from z once v is gone.
        let keep: Vec<VertexId> = (0..g.n()).filter(|&q| q != v && q != x).collect();
        let h = g.restrict(&keep);
        let mut sides = cut_components(
            &g.restrict(&(0..g.n()).filter(|&q| q != v).collect::<Vec<_>>()),
            x,
        );
        if sides.len() != 2 {
            return Err(violation(format!("{x} splits off {} sides", sides.len())));
        }
        let j_at = usize::from(!sides[0].contains(&w));
        let mut j_side = sides.remove(j_at);
        let mut i_side = sides.remove(0);
        let (mut w, mut z) = (w, z);
        let both_odd = i_side.len() % 2 == 1 && j_side.len() % 2 == 1;
        if both_odd {
            let b = bind(&[(Role::V, v), (Role::X, x), (Role::W, w), (Role::Z, z)]);
            self.record(
                Branch::Claim2Case2OddOdd,
                g,
                b,
                &Self::counts(g, &[("n_I", i_side.len()), ("n_J", j_side.len())]),
            )?;
            let mut out = self.rest(&h.restrict(&i_side), g.m())?;
            out.extend(self.rest(&h.restrict(&j_side), g.m())?);
            out.push(Path::new(vec![v, x, w]).map_err(internal)?);
            out.push(Path::new(vec![x, z]).map_err(internal)?);
            return Ok(out);
        }
        // Let J, the side of w, be the even one.
        if j_side.len() % 2 == 1 {
            std::mem::swap(&mut i_side, &mut j_side);
            std::mem::swap(&mut w, &mut z);
        }
        let jg = h.restrict(&j_side);
        let nbrs: Vec<VertexId> = jg.neighbors(w).to_vec();
        if nbrs.len() != 2 {
            return Err(violation(format!(
                "{w} has {} neighbors inside its side",
                nbrs.len()
            )));
        }
        let sizes = [("n_I", i_side.len()), ("n_J", j_side.len())];

        if is_cut_vertex(&jg, w) {
            let parts = cut_components(&jg, w);
            let (odd, even) = match (parts[0].len() % 2, parts.get(1)) {
                (1, Some(p1)) => (&parts[0], p1),
                (_, Some(p1)) => (p1, &parts[0]),
                _ => return Err(violation(format!("{w} does not split its side in two"))),
            };
            let a = *nbrs.iter().find(|q| odd.contains(q)).unwrap();
            let b = *nbrs.iter().find(|q| even.contains(q)).unwrap();
            let bindings = bind(&[
                (Role::V, v),
                (Role::X, x),
                (Role::W, w),
                (Role::Z, z),
                (Role::A, a),
                (Role::B, b),
            ]);
            self.record(
                Branch::Claim2Subcase21,
                g,
                bindings,
                &Self::counts(g, &sizes),
            )?;
            let mut even_w = even.clone();
            even_w.push(w);
            let mut out = self.rest(&jg.restrict(odd), g.m())?;
            out.extend(self.rest(&jg.restrict(&even_w), g.m())?);
            out.extend(self.rest(&h.restrict(&i_side), g.m())?);
            out.push(Path::new(vec![a, w, x, z]).map_err(internal)?);
            out.push(Path::new(vec![v, x]).map_err(internal)?);
            return Ok(out);
        }

        let a = *nbrs
            .iter()
            .find(|&&q| g.degree(q) == 3)
            .ok_or_else(|| violation(format!("{w} has no degree-3 neighbor in its side")))?;
        let b = *nbrs.iter().find(|&&q| q != a).unwrap();
        let base = g.without_edges(&edges(&[(v, x), (x, w), (w, a)]));
        let mut p = shortest_path(&base, a, b, &[w, x, v], &none).map_err(internal)?;
        p.extend(&[w]).map_err(internal)?;
        let plan = RemainderPlan::new(
            g,
            edges(&[(v, x), (x, w), (w, a)]),
            p,
            vec![
                (Edge::new(a, w), a),
                (Edge::new(w, x), w),
                (Edge::new(x, v), x),
            ],
        );
        let bindings = bind(&[
            (Role::V, v),
            (Role::X, x),
            (Role::W, w),
            (Role::Z, z),
            (Role::A, a),
            (Role::B, b),
        ]);
        let mut counts = Self::counts(g, &sizes);
        counts.push(("j", plan.j()));
        self.record(Branch::Claim2Subcase22, g, bindings, &counts)?;
        self.run_plan(g, plan)
    }

    fn degree2_cut(&mut self, g: &Graph, v: VertexId) -> Step<Vec<Path>> {
        let (x, y) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        let sides = cut_components(g, v);
        let side_of = |q: VertexId| sides.iter().find(|s| s.contains(&q)).cloned().unwrap();
        let (mut xs, ys) = (side_of(x), side_of(y));
        self.record(
            Branch::Claim3,
            g,
            bind(&[(Role::V, v), (Role::X, x), (Role::Y, y)]),
            &Self::counts(g, &[("n_X", xs.len()), ("n_Y", ys.len())]),
        )?;
        xs.push(v);
        let mut out = self.rest(&g.restrict(&xs), g.m())?;
        extend_at(&mut out, v, &[y])?;
        out.extend(self.rest(&g.restrict(&ys), g.m())?);
        Ok(out)
    }

    fn x_cut(&mut self, g: &Graph, v: VertexId, x: VertexId) -> Step<Vec<Path>> {
        let y = other_neighbor(g, v, x).unwrap();
        let route = shortest_path(g, x, y, &[v], &EdgeSet::new()).map_err(internal)?;
        let z = route.vertices()[1];
        let after = g.without_edges(&edges(&[(x, z), (v, x)]));
        let comps = checks::nontrivial_components(&after);
        let [a_side, b_side] = comps.as_slice() else {
            return Err(violation(format!(
                "{} components after cutting at {x}",
                comps.len()
            )));
        };
        let (a_side, b_side) = if a_side.vertices.contains(&v) {
            (a_side, b_side)
        } else {
            (b_side, a_side)
        };
        self.record(
            Branch::Claim4,
            g,
            bind(&[(Role::V, v), (Role::X, x), (Role::Y, y), (Role::Z, z)]),
            &Self::counts(g, &[("n_A", a_side.order()), ("n_B", b_side.order())]),
        )?;
        let mut a_paths = self.rest(&a_side.graph(&after), g.m())?;
        let mut b_paths = self.rest(&b_side.graph(&after), g.m())?;
        extend_at(&mut b_paths, x, &[z])?;
        extend_at(&mut a_paths, v, &[x])?;
        a_paths.extend(b_paths);
        Ok(a_paths)
    }

    fn deg3_neighbor(
        &mut self,
        g: &Graph,
        v: VertexId,
        x: VertexId,
        z: VertexId,
    ) -> Step<Vec<Path>> {
        let pre = edges(&[(x, z)]);
        let base = g.without_edges(&pre);
        let core = shortest_path(&base, z, v, &[x], &EdgeSet::new()).map_err(internal)?;
        let next = core.vertices()[1];
        let t = g
            .neighbors(z)
            .iter()
            .copied()
            .find(|&q| q != x && q != next)
            .ok_or_else(|| violation(format!("{z} has no third neighbor")))?;
        let mut verts = vec![t];
        verts.extend_from_slice(core.vertices());
        verts.push(x);
        let p = Path::new(verts).map_err(internal)?;
        let plan = RemainderPlan::new(g, pre, p, vec![(Edge::new(x, z), x)]);
        self.record(
            Branch::Case1Deg3Neighbor,
            g,
            bind(&[(Role::V, v), (Role::X, x), (Role::Z, z), (Role::T, t)]),
            &Self::counts(g, &[("j", plan.j())]),
        )?;
        self.run_plan(g, plan)
    }

    fn y3(
        &mut self,
        g: &Graph,
        v: VertexId,
        x: VertexId,
        y: VertexId,
        z: VertexId,
        w: VertexId,
    ) -> Step<Vec<Path>> {
        let p = Path::new(vec![y, z, x, w]).map_err(internal)?;
        let plan = RemainderPlan::new(
            g,
            edges(&[(v, x), (v, y)]),
            p,
            vec![(Edge::new(v, y), y), (Edge::new(v, x), v)],
        );
        self.record(
            Branch::Subcase21Y3,
            g,
            bind(&[
                (Role::V, v),
                (Role::X, x),
                (Role::Y, y),
                (Role::Z, z),
                (Role::W, w),
            ]),
            &Self::counts(g, &[("j", plan.j())]),
        )?;
        self.run_plan(g, plan)
    }

    fn y4(
        &mut self,
        g: &Graph,
        v: VertexId,
        x: VertexId,
        y: VertexId,
        z: VertexId,
    ) -> Step<Vec<Path>> {
        let pre = edges(&[(x, y), (x, v)]);
        let base = g.without_edges(&pre);
        let core = shortest_path(&base, z, v, &[x], &EdgeSet::new()).map_err(internal)?;
        let mut verts = vec![x];
        verts.extend_from_slice(core.vertices());
        let p = Path::new(verts).map_err(internal)?;
        let plan = RemainderPlan::new(g, pre, p, vec![(Edge::new(x, y), y), (Edge::new(x, v), x)]);
        self.record(
            Branch::Subcase22Y4,
            g,
            bind(&[(Role::V, v), (Role::X, x), (Role::Y, y), (Role::Z, z)]),
            &Self::counts(g, &[("j", plan.j())]),
        )?;
        self.run_plan(g, plan)
    }
}

/// Closest two vertices of degree at most 2, ties broken by smaller first
/// id, then smaller second id.
fn closest_low_pair(g: &Graph, low: &[VertexId]) -> Option<(VertexId, VertexId)> {
    let d = checks::min_low_distance(g, low)?;
    let mut is_low = vec![false; g.n()];
    for &q in low {
        is_low[q] = true;
    }
    let mut dist = vec![usize::MAX; g.n()];
    for &u in low {
        // Any other low vertex within distance d is at distance exactly d.
        let mut seen = vec![u];
        dist[u] = 0;
        let mut frontier = vec![u];
        let mut best = None;
        for level in 1..=d {
            let mut next = Vec::new();
            for &a in &frontier {
                for &b in g.neighbors(a) {
                    if dist[b] == usize::MAX {
                        dist[b] = level;
                        seen.push(b);
                        next.push(b);
                    }
                }
            }
            frontier = next;
        }
        for &q in &seen {
            if q != u && is_low[q] && best.is_none_or(|b| q < b) {
                best = Some(q);
            }
            dist[q] = usize::MAX;
        }
        if let Some(v) = best {
            return Some((u.min(v), u.max(v)));
        }
    }
    None
}

fn pendant_roles(g: &Graph, v: VertexId, x: VertexId) -> Step<(VertexId, VertexId)> {
    let others: Vec<VertexId> = g.neighbors(x).iter().copied().filter(|&q| q != v).collect();
    let &[p, q] = others.as_slice() else {
        return Err(violation(format!(
            "{x}, the neighbor of pendant {v}, has degree {}",
            g.degree(x)
        )));
    };
    match (g.degree(p), g.degree(q)) {
        (3, _) => Ok((p, q)),
        (_, 3) => Ok((q, p)),
        _ => Err(violation(format!("neither {p} nor {q} has degree 3"))),
    }
}

fn attach_trace(e: DecomposeError, engine: Engine, n: usize) -> DecomposeError {
    match e {
        DecomposeError::InternalInvariantViolation { message, .. } => {
            DecomposeError::InternalInvariantViolation {
                message,
                trace: Box::new(engine.into_trace(n)),
            }
        }
        other => other,
    }
}

fn finish(
    g: &Graph,
    engine: Engine,
    result: Step<Vec<Path>>,
    bound_met: bool,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    match result {
        Ok(paths) => Ok((
            Decomposition {
                paths,
                claimed_bound: g.non_isolated_count() / 2,
                bound_met,
            },
            engine.into_trace(g.n()),
        )),
        Err(e) => Err(attach_trace(e, engine, g.n())),
    }
}

fn require_two_degenerate(g: &Graph) -> Result<(), DecomposeError> {
    match degeneracy_order(g) {
        Ok(_) => Ok(()),
        Err(GraphError::NotTwoDegenerate { stuck }) => {
            Err(DecomposeError::NotTwoDegenerate { stuck })
        }
        Err(e) => Err(e.into()),
    }
}

/// Decomposes every component of a 2-degenerate graph. Triangle components
/// get two paths each and make `bound_met` false; everything else stays
/// within `floor(n/2)` per component.
pub fn decompose(g: &Graph) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    require_two_degenerate(g)?;
    let mut engine = Engine::default();
    let comps = checks::nontrivial_components(g);
    let has_triangle = comps.iter().any(|c| c.is_triangle());
    let result = (|| {
        if comps.len() >= 2 {
            engine.record(
                Branch::ComponentSplit,
                g,
                Bindings::new(),
                &[("components", comps.len())],
            )?;
        }
        let mut out = Vec::new();
        for c in &comps {
            if c.is_triangle() {
                let [a, b, t] = [c.vertices[0], c.vertices[1], c.vertices[2]];
                out.push(Path::new(vec![a, b, t]).map_err(internal)?);
                out.push(Path::new(vec![t, a]).map_err(internal)?);
            } else if comps.len() == 1 {
                out.extend(engine.connected(g)?);
            } else {
                out.extend(engine.connected(&c.graph(g))?);
            }
        }
        Ok(out)
    })();
    finish(g, engine, result, !has_triangle)
}

/// Checks the common preconditions of the single-component entry points.
fn require_component(op: &'static str, g: &Graph) -> Result<(), DecomposeError> {
    require_two_degenerate(g)?;
    let comps = checks::nontrivial_components(g);
    let fail = |message: &str| DecomposeError::Precondition {
        op,
        message: message.to_string(),
    };
    if comps.len() > 1 {
        return Err(fail("graph is not connected"));
    }
    if g.is_triangle() {
        return Err(fail("graph is a triangle"));
    }
    Ok(())
}

/// Decomposes one connected, 2-degenerate, non-triangle graph (isolated
/// vertices are ignored) into at most `floor(n/2)` paths.
pub fn decompose_connected(g: &Graph) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    require_component("decompose_connected", g)?;
    let mut engine = Engine::default();
    let result = engine.connected(g);
    finish(g, engine, result, true)
}

/// Runs a single named reduction on `g` after checking that its
/// precondition holds for the given vertices.
fn run_reduction(
    op: &'static str,
    g: &Graph,
    branches: &[Branch],
    bindings: Bindings,
    body: impl FnOnce(&mut Engine) -> Step<Vec<Path>>,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    require_component(op, g)?;
    let mut first_err = None;
    let admitted = branches
        .iter()
        .any(|&b| match checks::check(b, g, &bindings) {
            Ok(()) => true,
            Err(m) => {
                first_err.get_or_insert(m);
                false
            }
        });
    if !admitted {
        return Err(DecomposeError::Precondition {
            op,
            message: first_err.unwrap_or_default(),
        });
    }
    let mut engine = Engine::default();
    let result = body(&mut engine);
    finish(g, engine, result, true)
}

/// Two vertices of degree at most 2 at minimum distance: remove a path or
/// short cycle through both and recurse.
pub fn reduce_two_low_degree(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let (u, v) = (u.min(v), u.max(v));
    let mut bindings = bind(&[(Role::U, u), (Role::V, v)]);
    // The cycle variants also name the cycle's other vertices.
    if v < g.n() {
        let d = checks::distances(g, u, &[])[v];
        if checks::walk_closes(g, u, v, d) {
            let hubs = g.neighbors(u).iter().copied().filter(|&q| q != v);
            bindings.extend([Role::X, Role::Y].into_iter().zip(hubs));
        }
    }
    run_reduction(
        "reduce_two_low_degree",
        g,
        &[
            Branch::Claim1Path,
            Branch::Claim1Cycle3,
            Branch::Claim1Cycle4,
        ],
        bindings,
        |e| e.connected_two_low(g, u, v),
    )
}

impl Engine {
    fn connected_two_low(&mut self, g: &Graph, u: VertexId, v: VertexId) -> Step<Vec<Path>> {
        let paths = self.two_low(g, u, v)?;
        self.bounded(g, paths)
    }

    fn bounded(&self, g: &Graph, paths: Vec<Path>) -> Step<Vec<Path>> {
        let n = g.non_isolated_count();
        if paths.len() > n / 2 {
            return Err(violation(format!("{} paths for {n} vertices", paths.len())));
        }
        Ok(paths)
    }
}

/// `v` is the only vertex of degree at most 2 and is pendant on `x`; `w` is
/// a degree-3 neighbor of `x` and `z` its third neighbor.
pub fn reduce_pendant(
    g: &Graph,
    v: VertexId,
    x: VertexId,
    w: VertexId,
    z: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let b = bind(&[(Role::V, v), (Role::X, x), (Role::W, w), (Role::Z, z)]);
    require_component("reduce_pendant", g)?;
    checks::pendant_shared(g, &b).map_err(|message| DecomposeError::Precondition {
        op: "reduce_pendant",
        message,
    })?;
    let mut engine = Engine::default();
    let result = engine
        .pendant(g, v, x, w, z)
        .and_then(|p| engine.bounded(g, p));
    finish(g, engine, result, true)
}

/// `v` is the only vertex of degree at most 2, has degree 2, and separates
/// the graph.
pub fn reduce_degree2_cut(
    g: &Graph,
    v: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let mut b = bind(&[(Role::V, v)]);
    if v < g.n() && g.degree(v) == 2 {
        b.insert(Role::X, g.neighbors(v)[0]);
        b.insert(Role::Y, g.neighbors(v)[1]);
    }
    run_reduction("reduce_degree2_cut", g, &[Branch::Claim3], b, |e| {
        let p = e.degree2_cut(g, v)?;
        e.bounded(g, p)
    })
}

/// `v` (degree 2, not a cut vertex) has a degree-3 neighbor `x` that is a
/// cut vertex.
pub fn reduce_x_cut(
    g: &Graph,
    v: VertexId,
    x: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let mut b = bind(&[(Role::V, v), (Role::X, x)]);
    if v < g.n() && x < g.n() {
        if let Some(y) = other_neighbor(g, v, x) {
            b.insert(Role::Y, y);
            if let Ok(route) = shortest_path(g, x, y, &[v], &EdgeSet::new()) {
                b.insert(Role::Z, route.vertices()[1]);
            }
        }
    }
    run_reduction("reduce_x_cut", g, &[Branch::Claim4], b, |e| {
        let p = e.x_cut(g, v, x)?;
        e.bounded(g, p)
    })
}

/// `v`'s neighbor `x` (degree 3, not a cut vertex) has another degree-3
/// neighbor `z`.
pub fn reduce_case_deg3_neighbor(
    g: &Graph,
    v: VertexId,
    x: VertexId,
    z: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let mut b = bind(&[(Role::V, v), (Role::X, x), (Role::Z, z)]);
    if z < g.n() {
        if let Some(t) = g.neighbors(z).iter().copied().find(|&q| q != x) {
            b.insert(Role::T, t);
        }
    }
    run_reduction(
        "reduce_case_deg3_neighbor",
        g,
        &[Branch::Case1Deg3Neighbor],
        b,
        |e| {
            let p = e.deg3_neighbor(g, v, x, z)?;
            e.bounded(g, p)
        },
    )
}

/// Both neighbors `x`, `y` of `v` have degree 3 and no other degree-3
/// neighbor; `z` is their common degree-4 neighbor and `w` the third
/// neighbor of `x`.
pub fn reduce_case_y3(
    g: &Graph,
    v: VertexId,
    x: VertexId,
    y: VertexId,
    z: VertexId,
    w: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let b = bind(&[
        (Role::V, v),
        (Role::X, x),
        (Role::Y, y),
        (Role::Z, z),
        (Role::W, w),
    ]);
    run_reduction("reduce_case_y3", g, &[Branch::Subcase21Y3], b, |e| {
        let p = e.y3(g, v, x, y, z, w)?;
        e.bounded(g, p)
    })
}

/// `x` has degree 3 and no other degree-3 neighbor, `y` has degree 4 and is
/// adjacent to `x`; `z` is the third neighbor of `x`.
pub fn reduce_case_y4(
    g: &Graph,
    v: VertexId,
    x: VertexId,
    y: VertexId,
    z: VertexId,
) -> Result<(Decomposition, ReductionTrace), DecomposeError> {
    let b = bind(&[(Role::V, v), (Role::X, x), (Role::Y, y), (Role::Z, z)]);
    run_reduction("reduce_case_y4", g, &[Branch::Subcase22Y4], b, |e| {
        let p = e.y4(g, v, x, y, z)?;
        e.bounded(g, p)
    })
}
