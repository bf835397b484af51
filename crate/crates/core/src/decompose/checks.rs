//! Branch preconditions, evaluated on the graph a branch acted on.
//!
//! The engine runs the same check when it enters a branch (a failure there
//! is an internal invariant violation) and [`super::replay`] runs it again
//! from the recorded state.

use std::collections::VecDeque;

use super::trace::{Bindings, Branch, Role};
use crate::graph::{
    connected_components, cut_components, is_cut_vertex, Component, Edge, EdgeSet, Graph, VertexId,
};

pub(crate) type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn role(g: &Graph, b: &Bindings, r: Role) -> Result<VertexId, String> {
    match b.get(&r) {
        Some(&v) if v < g.n() => Ok(v),
        Some(&v) => Err(format!("{r}={v} is out of range")),
        None => Err(format!("no vertex bound to {r}")),
    }
}

pub(crate) fn low_vertices(g: &Graph) -> Vec<VertexId> {
    (0..g.n())
        .filter(|&v| (1..=2).contains(&g.degree(v)))
        .collect()
}

pub(crate) fn nontrivial_components(g: &Graph) -> Vec<Component> {
    connected_components(g)
        .into_iter()
        .filter(|c| c.edge_count > 0)
        .collect()
}

fn is_connected(g: &Graph) -> bool {
    nontrivial_components(g).len() == 1
}

/// BFS distances from `s` in `g` minus the `blocked` vertices.
pub(crate) fn distances(g: &Graph, s: VertexId, blocked: &[VertexId]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    for &b in blocked {
        dist[b] = usize::MAX - 1;
    }
    if dist[s] != usize::MAX {
        return vec![usize::MAX; g.n()];
    }
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    for &b in blocked {
        dist[b] = usize::MAX;
    }
    dist
}

/// Smallest distance between two distinct vertices of `low`, found with one
/// multi-source search: every edge joining two search trees closes a
/// candidate route.
pub(crate) fn min_low_distance(g: &Graph, low: &[VertexId]) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut source = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &s in low {
        dist[s] = 0;
        source[s] = s;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                source[w] = source[u];
                queue.push_back(w);
            }
        }
    }
    g.edges()
        .filter(|e| source[e.lo()] != usize::MAX && source[e.lo()] != source[e.hi()])
        .map(|e| dist[e.lo()] + dist[e.hi()] + 1)
        .min()
}

/// Does the Claim-1 walk around `u` and `v` close into a cycle? Only
/// possible when both have degree 2 and they are at most two apart.
pub(crate) fn walk_closes(g: &Graph, u: VertexId, v: VertexId, dist: usize) -> bool {
    if g.degree(u) != 2 || g.degree(v) != 2 {
        return false;
    }
    match dist {
        1 => {
            let ou: Vec<_> = g.neighbors(u).iter().filter(|&&w| w != v).collect();
            let ov: Vec<_> = g.neighbors(v).iter().filter(|&&w| w != u).collect();
            ou == ov
        }
        2 => g.neighbors(u) == g.neighbors(v),
        _ => false,
    }
}

fn has_triangle_component(g: &Graph) -> bool {
    connected_components(g).iter().any(Component::is_triangle)
}

fn ring_edges(ring: &[VertexId]) -> EdgeSet {
    let k = ring.len();
    (0..k)
        .map(|i| Edge::new(ring[i], ring[(i + 1) % k]))
        .collect()
}

/// Cycle of a Claim-1 cycle step: u–v–x for length 3, u–x–v–y for length 4.
fn claim1_ring(g: &Graph, b: &Bindings) -> Result<Vec<VertexId>, String> {
    let u = role(g, b, Role::U)?;
    let v = role(g, b, Role::V)?;
    let x = role(g, b, Role::X)?;
    Ok(match b.get(&Role::Y) {
        Some(_) => vec![u, x, v, role(g, b, Role::Y)?],
        None => vec![u, v, x],
    })
}

pub(crate) fn check(branch: Branch, g: &Graph, b: &Bindings) -> Check {
    match branch {
        Branch::Base => base(g),
        Branch::Claim1Path | Branch::Claim1Cycle3 | Branch::Claim1Cycle4 => claim1(branch, g, b),
        Branch::Subclaim1Merge => subclaim1(g, b),
        Branch::Subclaim2Merge => subclaim2(g, b),
        Branch::Lemma1Case1 => lemma(1, g, b),
        Branch::Lemma1Case2 => lemma(2, g, b),
        Branch::Lemma1Case3 => lemma(3, g, b),
        Branch::Claim2Case1
        | Branch::Claim2Case2OddOdd
        | Branch::Claim2Subcase21
        | Branch::Claim2Subcase22 => pendant(branch, g, b),
        Branch::Claim3 => degree2_cut(g, b),
        Branch::Claim4 => x_cut(g, b),
        Branch::Case1Deg3Neighbor => deg3_neighbor(g, b),
        Branch::Subcase21Y3 => y3(g, b),
        Branch::Subcase22Y4 => y4(g, b),
        Branch::ComponentSplit => {
            let k = nontrivial_components(g).len();
            ensure(k >= 2, || {
                format!("{k} nontrivial components, need at least 2")
            })
        }
    }
}

fn base(g: &Graph) -> Check {
    ensure(is_connected(g), || "graph is not connected".into())?;
    let n = g.non_isolated_count();
    ensure(n <= 3, || format!("{n} vertices is not a base case"))?;
    ensure(!g.is_triangle(), || "a triangle is not a base case".into())
}

fn claim1(branch: Branch, g: &Graph, b: &Bindings) -> Check {
    ensure(is_connected(g), || "graph is not connected".into())?;
    let u = role(g, b, Role::U)?;
    let v = role(g, b, Role::V)?;
    ensure(u < v, || format!("expected u < v, got {u}, {v}"))?;
    let low = low_vertices(g);
    ensure(low.contains(&u) && low.contains(&v), || {
        format!("{u} and {v} are not both of degree at most 2")
    })?;
    let d = distances(g, u, &[])[v];
    let best = min_low_distance(g, &low).unwrap_or(usize::MAX);
    ensure(d == best, || {
        format!("dist({u},{v}) = {d} but the closest pair is {best} apart")
    })?;
    let expected = match (walk_closes(g, u, v, d), d) {
        (false, _) => Branch::Claim1Path,
        (true, 1) => Branch::Claim1Cycle3,
        (true, _) => Branch::Claim1Cycle4,
    };
    ensure(expected == branch, || {
        format!("the walk around {u},{v} calls for {expected}")
    })?;
    if branch != Branch::Claim1Path {
        let ring = claim1_ring(g, b)?;
        let common: Vec<_> = if d == 1 {
            g.neighbors(u).iter().copied().filter(|&w| w != v).collect()
        } else {
            g.neighbors(u).to_vec()
        };
        let bound: Vec<_> = ring.iter().copied().filter(|&w| w != u && w != v).collect();
        let mut sorted = bound.clone();
        sorted.sort_unstable();
        ensure(sorted == common && sorted == bound, || {
            format!("cycle vertices {bound:?} differ from the common neighbors {common:?}")
        })?;
    }
    Ok(())
}

fn subclaim1(g: &Graph, b: &Bindings) -> Check {
    let ring = claim1_ring(g, b)?;
    let (u, v) = (ring[0], role(g, b, Role::V)?);
    ensure(g.degree(u) == 2 && g.degree(v) == 2, || {
        format!("{u} and {v} must have degree 2")
    })?;
    let c = ring_edges(&ring);
    ensure(c.iter().all(|e| g.has_edge(e.lo(), e.hi())), || {
        "cycle edge missing".into()
    })?;
    let rest = g.without_edges(&c);
    ensure(!has_triangle_component(&rest), || {
        "the remainder has a triangle component".into()
    })?;
    ensure(
        ring.iter().any(|&w| w != u && w != v && rest.degree(w) > 0),
        || "no remainder edge meets the cycle".into(),
    )
}

fn subclaim2(g: &Graph, b: &Bindings) -> Check {
    let ring = claim1_ring(g, b)?;
    let (u, v) = (ring[0], role(g, b, Role::V)?);
    ensure(g.non_isolated_count() == 5, || {
        "cycle and triangle must span 5 vertices".into()
    })?;
    ensure(g.m() == ring.len() + 3, || {
        format!("{} edges for a {}-cycle", g.m(), ring.len())
    })?;
    ensure(g.degree(u) == 2 && g.degree(v) == 2, || {
        format!("{u} and {v} must have degree 2")
    })?;
    let c = ring_edges(&ring);
    ensure(c.iter().all(|e| g.has_edge(e.lo(), e.hi())), || {
        "cycle edge missing".into()
    })?;
    let t = g.without_edges(&c);
    ensure(t.is_triangle(), || {
        "the cycle's complement is not a triangle".into()
    })?;
    let shared = ring.iter().filter(|&&w| t.degree(w) > 0).count();
    ensure(shared == ring.len() - 2, || {
        format!("triangle shares {shared} cycle vertices")
    })
}

/// State is the current carrier path plus the triangle being absorbed.
fn lemma(case: usize, g: &Graph, b: &Bindings) -> Check {
    let a = role(g, b, Role::A)?;
    let end = role(g, b, Role::B)?;
    let (x, y, z) = (
        role(g, b, Role::X)?,
        role(g, b, Role::Y)?,
        role(g, b, Role::Z)?,
    );
    let tri: EdgeSet = [Edge::new(x, y), Edge::new(y, z), Edge::new(x, z)]
        .into_iter()
        .collect();
    ensure(tri.iter().all(|e| g.has_edge(e.lo(), e.hi())), || {
        "triangle edge missing".into()
    })?;
    let path_graph = g.without_edges(&tri);

    let mut walk = vec![a];
    let mut prev = usize::MAX;
    loop {
        let cur = *walk.last().unwrap();
        let next: Vec<_> = path_graph
            .neighbors(cur)
            .iter()
            .filter(|&&w| w != prev)
            .collect();
        match next.as_slice() {
            [] => break,
            [&w] if !walk.contains(&w) => {
                prev = cur;
                walk.push(w);
            }
            _ => return Err("the carrier is not a path starting at a".into()),
        }
    }
    ensure(
        walk.len() - 1 == path_graph.m() && *walk.last().unwrap() == end,
        || "the carrier is not a single a-b path".into(),
    )?;
    let pos = |q: VertexId| walk.iter().position(|&w| w == q);
    let on_path = [x, y, z].iter().filter(|&&q| pos(q).is_some()).count();
    ensure(on_path == 4 - case, || {
        format!("triangle meets the path in {on_path} vertices")
    })?;
    let i = pos(x).ok_or("x is not on the path")?;
    ensure(walk[..i].iter().all(|&q| q != y && q != z), || {
        "x is not the first triangle vertex".into()
    })?;
    match case {
        1 => {
            let (j, k) = (pos(y).unwrap(), pos(z).unwrap());
            ensure(j < k, || "y must precede z".into())?;
            ensure(role(g, b, Role::W)? == walk[k - 1], || {
                "w must precede z".into()
            })
        }
        2 => {
            let j = pos(y).ok_or("y is not on the path")?;
            ensure(role(g, b, Role::W)? == walk[j - 1], || {
                "w must precede y".into()
            })
        }
        _ => ensure(y < z, || "expected y < z".into()),
    }
}

fn unique_low(g: &Graph, v: VertexId) -> Check {
    ensure(is_connected(g), || "graph is not connected".into())?;
    let low = low_vertices(g);
    ensure(low == [v], || {
        format!("{v} is not the only vertex of degree at most 2 ({low:?})")
    })
}

fn other_neighbors(g: &Graph, x: VertexId, skip: &[VertexId]) -> Vec<VertexId> {
    g.neighbors(x)
        .iter()
        .copied()
        .filter(|w| !skip.contains(w))
        .collect()
}

/// The part of the pendant precondition that holds before the subcase is
/// known.
pub(crate) fn pendant_shared(g: &Graph, b: &Bindings) -> Check {
    let v = role(g, b, Role::V)?;
    unique_low(g, v)?;
    ensure(g.degree(v) == 1, || format!("{v} is not pendant"))?;
    let x = role(g, b, Role::X)?;
    ensure(g.neighbors(v) == [x], || {
        format!("{x} is not the neighbor of {v}")
    })?;
    ensure(g.degree(x) == 3, || {
        format!("d({x}) = {}, expected 3", g.degree(x))
    })?;
    let (w, z) = (role(g, b, Role::W)?, role(g, b, Role::Z)?);
    let mut wz = [w, z];
    wz.sort_unstable();
    ensure(other_neighbors(g, x, &[v]) == wz, || {
        "w, z are not the other neighbors of x".into()
    })?;
    ensure(g.degree(w) == 3, || {
        format!("d({w}) = {}, expected 3", g.degree(w))
    })
}

fn pendant(branch: Branch, g: &Graph, b: &Bindings) -> Check {
    pendant_shared(g, b)?;
    let (v, x) = (role(g, b, Role::V)?, role(g, b, Role::X)?);
    let (w, z) = (role(g, b, Role::W)?, role(g, b, Role::Z)?);
    let apart = distances(g, w, &[v, x])[z] == usize::MAX;
    if branch == Branch::Claim2Case1 {
        return ensure(!apart, || format!("{x} separates {w} from {z}"));
    }
    ensure(apart, || format!("{x} does not separate {w} from {z}"))?;
    let rest: Vec<VertexId> = (0..g.n()).filter(|&q| q != v && q != x).collect();
    let h = g.restrict(&rest);
    let side = |s: VertexId| -> Vec<VertexId> {
        let d = distances(&h, s, &[]);
        (0..g.n()).filter(|&q| d[q] != usize::MAX).collect()
    };
    let (i_side, j_side) = (side(z), side(w));
    let (ni, nj) = (i_side.len(), j_side.len());
    if branch == Branch::Claim2Case2OddOdd {
        return ensure(ni % 2 == 1 && nj % 2 == 1, || {
            format!("sides of {ni} and {nj} vertices")
        });
    }
    ensure(nj % 2 == 0, || {
        format!("the side of {w} has {nj} vertices, expected even")
    })?;
    let jg = h.restrict(&j_side);
    let (a, bb) = (role(g, b, Role::A)?, role(g, b, Role::B)?);
    let mut ab = [a, bb];
    ab.sort_unstable();
    ensure(other_neighbors(&jg, w, &[]) == ab, || {
        "a, b are not the neighbors of w in J".into()
    })?;
    let cut = is_cut_vertex(&jg, w);
    if branch == Branch::Claim2Subcase21 {
        ensure(cut, || format!("{w} is not a cut vertex of J"))?;
        let parts = cut_components(&jg, w);
        let part_of = |q: VertexId| parts.iter().find(|p| p.contains(&q)).map(Vec::len);
        ensure(part_of(a).is_some_and(|s| s % 2 == 1), || {
            "a is not on the odd side".into()
        })?;
        ensure(part_of(bb).is_some_and(|s| s % 2 == 0), || {
            "b is not on the even side".into()
        })
    } else {
        ensure(!cut, || format!("{w} is a cut vertex of J"))?;
        ensure(g.degree(a) == 3, || {
            format!("d({a}) = {}, expected 3", g.degree(a))
        })
    }
}

fn degree2_cut(g: &Graph, b: &Bindings) -> Check {
    let v = role(g, b, Role::V)?;
    unique_low(g, v)?;
    ensure(g.degree(v) == 2, || format!("{v} does not have degree 2"))?;
    ensure(is_cut_vertex(g, v), || format!("{v} is not a cut vertex"))?;
    let xy = [role(g, b, Role::X)?, role(g, b, Role::Y)?];
    ensure(g.neighbors(v) == xy, || {
        "x, y are not the neighbors of v".into()
    })
}

/// Shared setup of the last four branches: `v` is the only low vertex, has
/// degree 2 and does not separate the graph; `x` is a degree-3 neighbor.
fn final_setup(g: &Graph, b: &Bindings) -> Result<(VertexId, VertexId), String> {
    let v = role(g, b, Role::V)?;
    unique_low(g, v)?;
    ensure(g.degree(v) == 2, || format!("{v} does not have degree 2"))?;
    ensure(!is_cut_vertex(g, v), || format!("{v} is a cut vertex"))?;
    let x = role(g, b, Role::X)?;
    ensure(g.has_edge(v, x), || format!("{x} is not a neighbor of {v}"))?;
    ensure(g.degree(x) == 3, || {
        format!("d({x}) = {}, expected 3", g.degree(x))
    })?;
    Ok((v, x))
}

fn no_deg3_neighbor(g: &Graph, x: VertexId, v: VertexId) -> Check {
    ensure(
        g.neighbors(x).iter().all(|&q| q == v || g.degree(q) != 3),
        || format!("{x} has a degree-3 neighbor"),
    )
}

fn x_cut(g: &Graph, b: &Bindings) -> Check {
    let (v, x) = final_setup(g, b)?;
    ensure(is_cut_vertex(g, x), || format!("{x} is not a cut vertex"))?;
    let y = role(g, b, Role::Y)?;
    ensure(other_neighbors(g, v, &[x]) == [y], || {
        format!("{y} is not v's other neighbor")
    })?;
    let z = role(g, b, Role::Z)?;
    ensure(z != v && g.has_edge(x, z), || {
        format!("{z} is not a neighbor of {x}")
    })?;
    let from_y = distances(g, y, &[v]);
    ensure(
        from_y[z] != usize::MAX && from_y[z] + 1 == from_y[x],
        || format!("{z} is not on a shortest {x}-{y} path avoiding {v}"),
    )
}

fn deg3_neighbor(g: &Graph, b: &Bindings) -> Check {
    let (v, x) = final_setup(g, b)?;
    ensure(!is_cut_vertex(g, x), || format!("{x} is a cut vertex"))?;
    let z = role(g, b, Role::Z)?;
    ensure(z != v && g.has_edge(x, z), || {
        format!("{z} is not a neighbor of {x}")
    })?;
    ensure(g.degree(z) == 3, || {
        format!("d({z}) = {}, expected 3", g.degree(z))
    })?;
    let t = role(g, b, Role::T)?;
    ensure(t != x && g.has_edge(z, t), || {
        format!("{t} is not a neighbor of {z} besides {x}")
    })
}

fn y3(g: &Graph, b: &Bindings) -> Check {
    let (v, x) = final_setup(g, b)?;
    let y = role(g, b, Role::Y)?;
    ensure(other_neighbors(g, v, &[x]) == [y], || {
        format!("{y} is not v's other neighbor")
    })?;
    ensure(g.degree(y) == 3, || {
        format!("d({y}) = {}, expected 3", g.degree(y))
    })?;
    for q in [x, y] {
        ensure(!is_cut_vertex(g, q), || format!("{q} is a cut vertex"))?;
        no_deg3_neighbor(g, q, v)?;
    }
    let z = role(g, b, Role::Z)?;
    ensure(g.has_edge(x, z) && g.has_edge(y, z), || {
        format!("{z} is not a common neighbor")
    })?;
    ensure(g.degree(z) == 4, || {
        format!("d({z}) = {}, expected 4", g.degree(z))
    })?;
    let w = role(g, b, Role::W)?;
    ensure(other_neighbors(g, x, &[v, z]) == [w], || {
        format!("{w} is not x's third neighbor")
    })
}

fn y4(g: &Graph, b: &Bindings) -> Check {
    let (v, x) = final_setup(g, b)?;
    ensure(!is_cut_vertex(g, x), || format!("{x} is a cut vertex"))?;
    no_deg3_neighbor(g, x, v)?;
    let y = role(g, b, Role::Y)?;
    ensure(other_neighbors(g, v, &[x]) == [y], || {
        format!("{y} is not v's other neighbor")
    })?;
    ensure(g.degree(y) == 4, || {
        format!("d({y}) = {}, expected 4", g.degree(y))
    })?;
    ensure(g.has_edge(x, y), || format!("{x} and {y} are not adjacent"))?;
    let z = role(g, b, Role::Z)?;
    ensure(other_neighbors(g, x, &[v, y]) == [z], || {
        format!("{z} is not x's third neighbor")
    })
}
