//! Putting a removed short cycle back: either into one path of the
//! remainder's decomposition, or together with a triangle it touches.

use super::DecomposeError;
use crate::graph::{Cycle, Path, VertexId};

fn path(vertices: Vec<VertexId>) -> Result<Path, DecomposeError> {
    Path::new(vertices).map_err(DecomposeError::from)
}

/// Replaces the first path that visits a cycle vertex other than `u`, `v`
/// by two paths covering it and the cycle. `u` and `v` must be cycle
/// vertices whose only edges are cycle edges, so no path visits them.
///
/// With `x` the first cycle vertex met along that path `W` (from `a` to
/// `b`) and `y` the remaining one on a 4-cycle:
/// `aWx, x-v(-y)-u` and `u-x, xWb`.
pub fn merge_cycle_into_decomposition(
    c: &Cycle,
    paths: &[Path],
    u: VertexId,
    v: VertexId,
) -> Result<Vec<Path>, DecomposeError> {
    let ring = c.ring();
    let mismatch = |detail: &str| DecomposeError::GeometryMismatch {
        detail: detail.to_string(),
    };
    if !(3..=4).contains(&ring.len()) || !c.contains(u) || !c.contains(v) || u == v {
        return Err(mismatch("expected a 3- or 4-cycle through u and v"));
    }
    let hubs: Vec<VertexId> = ring.iter().copied().filter(|&q| q != u && q != v).collect();
    if ring.len() == 4 {
        let iu = ring.iter().position(|&q| q == u).unwrap();
        if ring[(iu + 2) % 4] != v {
            return Err(mismatch("u and v must be opposite on a 4-cycle"));
        }
    }
    let idx = paths
        .iter()
        .position(|p| hubs.iter().any(|&h| p.contains(h)))
        .ok_or(DecomposeError::NoIntersectingPath)?;
    let w = paths[idx].vertices();
    if w.contains(&u) || w.contains(&v) {
        return Err(mismatch("u and v must not lie on the remainder's paths"));
    }
    let at = w.iter().position(|q| hubs.contains(q)).unwrap();
    let x = w[at];

    let mut w1 = w[..=at].to_vec();
    w1.push(v);
    if let Some(&y) = hubs.iter().find(|&&h| h != x) {
        w1.push(y);
    }
    w1.push(u);
    let mut w2 = vec![u];
    w2.extend_from_slice(&w[at..]);

    let mut out = paths.to_vec();
    out[idx] = path(w1)?;
    out.insert(idx + 1, path(w2)?);
    Ok(out)
}

/// Two paths covering a short cycle and a triangle hanging off it. The
/// cycle's vertices outside the triangle play `u < v`; shared vertices are
/// `x < y`.
///
/// A triangle through one vertex of a 3-cycle gives `u-v-x-a-b, u-x-b`.
/// A triangle `{x, y, a}` on the diagonal of a 4-cycle `u-x-v-y` gives
/// `v-y-a-x-u, u-y-x-v`.
pub fn merge_cycle_with_triangle(c: &Cycle, t: [VertexId; 3]) -> Result<Vec<Path>, DecomposeError> {
    let ring = c.ring();
    let mut shared: Vec<VertexId> = ring.iter().copied().filter(|q| t.contains(q)).collect();
    let mut outer: Vec<VertexId> = ring.iter().copied().filter(|q| !t.contains(q)).collect();
    let mut apex: Vec<VertexId> = t.iter().copied().filter(|q| !c.contains(*q)).collect();
    shared.sort_unstable();
    outer.sort_unstable();
    apex.sort_unstable();
    let mismatch = |detail: String| DecomposeError::GeometryMismatch { detail };
    match (ring.len(), shared.as_slice()) {
        (3, &[x]) => {
            let (u, v) = (outer[0], outer[1]);
            let (a, b) = (apex[0], apex[1]);
            Ok(vec![path(vec![u, v, x, a, b])?, path(vec![u, x, b])?])
        }
        (4, &[x, y]) => {
            let (u, v) = (outer[0], outer[1]);
            let iu = ring.iter().position(|&q| q == u).unwrap();
            if ring[(iu + 2) % 4] != v {
                return Err(mismatch(
                    "the triangle must sit on a diagonal of the 4-cycle".into(),
                ));
            }
            let a = apex[0];
            Ok(vec![path(vec![v, y, a, x, u])?, path(vec![u, y, x, v])?])
        }
        (len, s) => Err(mismatch(format!(
            "a triangle sharing {} vertices with a {len}-cycle",
            s.len()
        ))),
    }
}
