//! Named graph families, including small fixtures built to steer the
//! decomposer into one particular reduction.
//!
//! The fixtures complete their outer vertices with two small gadgets that
//! have no pendant vertex:
//!
//! * `D'` (4 vertices): triangle `p q r` plus `s` joined to `p` and `q`.
//!   Only `r` and `s` have degree 2, so each gets one more edge.
//! * `D` (5 vertices): `D'` plus `t` joined to `r` and `s`. Only `t` has
//!   degree 2.

use super::GenError;
use crate::graph::{Graph, VertexId};

pub const FAMILY_NAMES: [&str; 12] = [
    "path",
    "cycle",
    "star",
    "caterpillar",
    "theta",
    "friendship",
    "triangle-chain",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
    "fig5c",
];

/// `D'` on `[p, q, r, s]`.
fn gadget_small(ids: [VertexId; 4], out: &mut Vec<(VertexId, VertexId)>) {
    let [p, q, r, s] = ids;
    out.extend([(p, q), (q, r), (p, r), (s, p), (s, q)]);
}

/// `D` on `[p, q, r, s, t]`.
fn gadget(ids: [VertexId; 5], out: &mut Vec<(VertexId, VertexId)>) {
    let [p, q, r, s, t] = ids;
    gadget_small([p, q, r, s], out);
    out.extend([(t, r), (t, s)]);
}

fn build(n: usize, edges: Vec<(VertexId, VertexId)>) -> Graph {
    Graph::from_edges(n, edges).expect("family edges are simple")
}

fn need(name: &str, n: usize, min: usize) -> Result<(), GenError> {
    if n < min {
        Err(GenError::TooSmall {
            family: name.to_string(),
            n,
            min,
        })
    } else {
        Ok(())
    }
}

/// The named family at `n` vertices. The `fig*` fixtures have a fixed size
/// and ignore `n`.
pub fn family(name: &str, n: usize) -> Result<Graph, GenError> {
    let g = match name {
        "path" => {
            need(name, n, 1)?;
            build(n, (1..n).map(|i| (i - 1, i)).collect())
        }
        "cycle" => {
            need(name, n, 3)?;
            build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
        }
        "star" => {
            need(name, n, 1)?;
            build(n, (1..n).map(|i| (0, i)).collect())
        }
        "caterpillar" => {
            // Spine 0..s, then one leaf per spine vertex until n is reached.
            need(name, n, 1)?;
            let spine = n.div_ceil(2);
            let mut e: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
            e.extend((spine..n).map(|leaf| (leaf - spine, leaf)));
            build(n, e)
        }
        "theta" => {
            // Poles 0 and 1 joined by three internally disjoint paths that
            // share the other vertices as evenly as possible.
            need(name, n, 4)?;
            let inner = n - 2;
            let mut next = 2;
            let mut e = Vec::new();
            for k in 0..3 {
                let len = inner / 3 + usize::from(k < inner % 3);
                let mut prev = 0;
                for _ in 0..len {
                    e.push((prev, next));
                    prev = next;
                    next += 1;
                }
                e.push((prev, 1));
            }
            build(n, e)
        }
        "friendship" => {
            // Triangles through hub 0; a pendant on the hub when n is even.
            need(name, n, 3)?;
            let mut e = Vec::new();
            for i in 0..(n - 1) / 2 {
                let (a, b) = (2 * i + 1, 2 * i + 2);
                e.extend([(0, a), (0, b), (a, b)]);
            }
            if n.is_multiple_of(2) {
                e.push((0, n - 1));
            }
            build(n, e)
        }
        "triangle-chain" => {
            // Triangles {2i, 2i+1, 2i+2} glued at single vertices; a pendant
            // at the end when n is even.
            need(name, n, 3)?;
            let mut e = Vec::new();
            let mut i = 0;
            while 2 * i + 2 < n {
                let (a, b, c) = (2 * i, 2 * i + 1, 2 * i + 2);
                e.extend([(a, b), (b, c), (a, c)]);
                i += 1;
            }
            if n.is_multiple_of(2) {
                e.push((n - 2, n - 1));
            }
            build(n, e)
        }
        "fig4a" => fig4a(),
        "fig4b" => fig4b(),
        "fig5a" => fig5a(),
        "fig5b" => fig5b(),
        "fig5c" => fig5c(),
        other => return Err(GenError::UnknownFamily(other.to_string())),
    };
    Ok(g)
}

/// Pendant `v`=0 on `x`=1, whose other neighbors `w`=2 and `z`=3 are still
/// joined once `x` is gone: through `a`=4 and `b`=5, which with `z` form a
/// triangle.
fn fig4a() -> Graph {
    build(
        6,
        vec![
            (4, 5),
            (5, 3),
            (3, 4),
            (2, 4),
            (2, 5),
            (1, 2),
            (1, 3),
            (0, 1),
        ],
    )
}

/// `v`=0 with neighbors `x`=1 and `y`=4. `x` is a cut vertex: one side is
/// `D` hanging from `w`=10, the other is `D'` on 2..=5 whose degree-2
/// vertices are `y` and `z`=5.
fn fig4b() -> Graph {
    let mut e = Vec::new();
    gadget_small([2, 3, 4, 5], &mut e);
    gadget([6, 7, 8, 9, 10], &mut e);
    e.extend([(0, 1), (0, 4), (1, 5), (1, 10)]);
    build(11, e)
}

/// `v`=0 with neighbors `x`=1 and `y`=3; `x` also sees `w`=2 and the
/// degree-3 vertex `z`=6, all inside a copy of `D` on 2..=6.
fn fig5a() -> Graph {
    let mut e = Vec::new();
    gadget([2, 3, 4, 5, 6], &mut e);
    e.extend([(1, 2), (1, 6), (0, 1), (0, 3)]);
    build(7, e)
}

/// `v`=0 with degree-3 neighbors `x`=1 and `y`=2 whose other neighbors all
/// have degree 4: the common neighbor `z`=3, `w`=6 for `x`, and 7 for `y`.
/// 6 and 7 are the degree-2 vertices of `D'` on 4..=7.
fn fig5b() -> Graph {
    let mut e = Vec::new();
    gadget_small([4, 5, 6, 7], &mut e);
    e.extend([
        (3, 6),
        (3, 7),
        (2, 3),
        (2, 7),
        (1, 3),
        (1, 6),
        (0, 1),
        (0, 2),
    ]);
    build(8, e)
}

/// `v`=0 with neighbors `x`=1 (degree 3) and `y`=2 (degree 4), adjacent;
/// the third neighbor of `x` is `z`=3 in `D'` on 3..=6.
fn fig5c() -> Graph {
    let mut e = Vec::new();
    gadget_small([3, 4, 5, 6], &mut e);
    e.extend([(2, 5), (2, 6), (1, 2), (1, 3), (0, 1), (0, 2)]);
    build(7, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{connected_components, degeneracy_order};

    #[test]
    fn every_family_is_connected_and_two_degenerate() {
        for name in FAMILY_NAMES {
            for n in [7, 8, 12] {
                let g = family(name, n).unwrap();
                assert!(degeneracy_order(&g).is_ok(), "{name} {n}");
                assert_eq!(connected_components(&g).len(), 1, "{name} {n}");
            }
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(family("cycle", 5).unwrap().m(), 5);
        let f = family("friendship", 7).unwrap();
        assert_eq!((f.n(), f.m(), f.degree(0)), (7, 9, 6));
        let t = family("theta", 8).unwrap();
        assert_eq!((t.degree(0), t.degree(1), t.m()), (3, 3, 9));
    }

    #[test]
    fn figure_degrees() {
        let degrees = |g: &Graph| (0..g.n()).map(|v| g.degree(v)).collect::<Vec<_>>();
        assert_eq!(degrees(&fig4a()), vec![1, 3, 3, 3, 3, 3]);
        assert_eq!(degrees(&fig5b()), vec![2, 3, 3, 4, 3, 3, 4, 4]);
        assert_eq!(degrees(&fig5c()), vec![2, 3, 4, 4, 3, 3, 3]);
    }

    #[test]
    fn unknown_family() {
        assert_eq!(
            family("petersen", 10),
            Err(GenError::UnknownFamily("petersen".into()))
        );
        assert!(family("cycle", 2).is_err());
    }
}
