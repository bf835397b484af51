//! Folding triangle components back into the path whose removal created
//! them: a path meeting `j` such triangles plus the triangles themselves
//! split into exactly `j + 1` paths.

use std::collections::BTreeSet;

use super::trace::{Bindings, Branch, Role};
use super::DecomposeError;
use crate::graph::{triangle_components, Edge, EdgeSet, Graph, Path, VertexId};

/// One absorption step: the branch, its bound vertices, and the carrier
/// path plus the triangle it swallowed.
pub(crate) struct Absorbed {
    pub branch: Branch,
    pub bindings: Bindings,
    pub state: EdgeSet,
}

fn triangle_edges(t: [VertexId; 3]) -> [Edge; 3] {
    [
        Edge::new(t[0], t[1]),
        Edge::new(t[1], t[2]),
        Edge::new(t[0], t[2]),
    ]
}

/// Walks the carrier from its first vertex; at the first vertex `x` lying on
/// a pending triangle, splits carrier plus triangle into a finished path `Q`
/// and a new carrier `R`, according to how many triangle vertices the
/// carrier visits. Assumes the triangles are triangle components of the
/// host minus the carrier's edges.
pub(crate) fn absorb(
    p: &Path,
    triangles: &[[VertexId; 3]],
) -> Result<(Vec<Path>, Vec<Absorbed>), DecomposeError> {
    let mut pending: Vec<[VertexId; 3]> = triangles.to_vec();
    let mut cur: Vec<VertexId> = p.vertices().to_vec();
    let mut out = Vec::with_capacity(triangles.len() + 1);
    let mut log = Vec::with_capacity(triangles.len());

    while !pending.is_empty() {
        let (i, ti) = cur
            .iter()
            .enumerate()
            .find_map(|(i, c)| pending.iter().position(|t| t.contains(c)).map(|ti| (i, ti)))
            .ok_or(DecomposeError::TriangleNotComponent {
                triangle: pending[0],
            })?;
        let t = pending.remove(ti);
        let x = cur[i];
        let mut others = t.into_iter().filter(|&q| q != x);
        let (o1, o2) = (others.next().unwrap(), others.next().unwrap());
        let pos = |q: VertexId| cur.iter().position(|&c| c == q);

        let mut bindings: Bindings = [
            (Role::A, cur[0]),
            (Role::B, cur[cur.len() - 1]),
            (Role::X, x),
        ]
        .into_iter()
        .collect();
        let mut state: EdgeSet = cur.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        state.extend(triangle_edges(t));

        let (branch, q, r) = match (pos(o1), pos(o2)) {
            (Some(p1), Some(p2)) => {
                let (j, k) = (p1.min(p2), p1.max(p2));
                let (y, z, w) = (cur[j], cur[k], cur[k - 1]);
                bindings.extend([(Role::Y, y), (Role::Z, z), (Role::W, w)]);
                let mut q = cur[..=i].to_vec();
                q.extend([y, z, w]);
                let mut r: Vec<VertexId> = cur[i..k].iter().rev().copied().collect();
                r.extend_from_slice(&cur[k..]);
                (Branch::Lemma1Case1, q, r)
            }
            (Some(j), None) | (None, Some(j)) => {
                let (y, w) = (cur[j], cur[j - 1]);
                let z = if cur[j] == o1 { o2 } else { o1 };
                bindings.extend([(Role::Y, y), (Role::Z, z), (Role::W, w)]);
                let mut q = cur[..=i].to_vec();
                q.extend([y, w]);
                let mut r: Vec<VertexId> = cur[i..j].iter().rev().copied().collect();
                r.push(z);
                r.extend_from_slice(&cur[j..]);
                (Branch::Lemma1Case2, q, r)
            }
            (None, None) => {
                let (y, z) = (o1.min(o2), o1.max(o2));
                bindings.extend([(Role::Y, y), (Role::Z, z)]);
                let mut q = cur[..=i].to_vec();
                q.extend([y, z]);
                let mut r = vec![z];
                r.extend_from_slice(&cur[i..]);
                (Branch::Lemma1Case3, q, r)
            }
        };
        let invalid = |_| DecomposeError::TriangleNotComponent { triangle: t };
        out.push(Path::new(q).map_err(invalid)?);
        Path::new(r.clone()).map_err(invalid)?;
        log.push(Absorbed {
            branch,
            bindings,
            state,
        });
        cur = r;
    }
    out.push(Path::new(cur)?);
    Ok((out, log))
}

/// Splits `p` together with the given triangles into `triangles.len() + 1`
/// paths. Each triple must be a triangle component of `g` minus the edges
/// of `p` that shares a vertex with `p`.
pub fn absorb_triangles(
    p: &Path,
    triangles: &[[VertexId; 3]],
    g: &Graph,
) -> Result<Vec<Path>, DecomposeError> {
    let p = Path::in_graph(g, p.vertices().to_vec())?;
    let components: BTreeSet<[VertexId; 3]> = triangle_components(&g.without_edges(&p.edge_set()))
        .into_iter()
        .collect();
    let mut seen = BTreeSet::new();
    for &t in triangles {
        let mut sorted = t;
        sorted.sort_unstable();
        let ok = components.contains(&sorted)
            && seen.insert(sorted)
            && sorted.iter().any(|&q| p.contains(q));
        if !ok {
            return Err(DecomposeError::TriangleNotComponent { triangle: t });
        }
    }
    absorb(&p, triangles).map(|(paths, _)| paths)
}
