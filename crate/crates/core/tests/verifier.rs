//! The verifier against deliberate corruptions, and the exact oracle
//! against hand counts and the parity bound.

use pathdecomp::decompose::decompose;
use pathdecomp::format::{
    parse_decomposition, parse_edge_list, write_decomposition, write_edge_list,
};
use pathdecomp::generate::{generate, GenSpec};
use pathdecomp::verify::{
    minimum_decomposition, odd_degree_lower_bound, verify_decomposition, FailureKind, OracleError,
};
use pathdecomp::{Decomposition, Graph, Path};

fn sample(seed: u64) -> (Graph, Decomposition) {
    let g = generate(&GenSpec::random(12, seed, 0.6)).unwrap();
    let (d, _) = decompose(&g).unwrap();
    assert!(verify_decomposition(&g, &d).valid);
    (g, d)
}

#[test]
fn dropping_an_edge_is_reported_missing() {
    for seed in 0..50 {
        let (g, mut d) = sample(seed);
        let i = d.paths.iter().position(|p| !p.is_empty()).unwrap();
        let mut vs = d.paths[i].vertices().to_vec();
        let dropped = (vs[vs.len() - 2], vs[vs.len() - 1]);
        vs.pop();
        if vs.len() < 2 {
            d.paths.remove(i);
        } else {
            d.paths[i] = Path::unchecked(vs);
        }
        let r = verify_decomposition(&g, &d);
        assert!(!r.valid);
        assert!(r.has(FailureKind::EdgeMissing));
        let (lo, hi) = (dropped.0.min(dropped.1), dropped.0.max(dropped.1));
        assert!(r
            .failures
            .iter()
            .any(|f| f.detail.contains(&format!("({lo}, {hi})"))));
    }
}

#[test]
fn duplicating_an_edge_is_reported_repeated() {
    for seed in 0..50 {
        let (g, mut d) = sample(seed);
        let vs = d.paths[0].vertices().to_vec();
        d.paths.push(Path::unchecked(vec![vs[0], vs[1]]));
        let r = verify_decomposition(&g, &d);
        assert!(!r.valid);
        assert!(r.has(FailureKind::EdgeRepeated));
    }
}

#[test]
fn splicing_a_repeated_vertex_is_not_a_path() {
    for seed in 0..50 {
        let (g, mut d) = sample(seed);
        // Walk back along the first edge: a-b-a repeats a.
        let mut vs = d.paths[0].vertices().to_vec();
        vs.insert(2, vs[0]);
        d.paths[0] = Path::unchecked(vs);
        let r = verify_decomposition(&g, &d);
        assert!(!r.valid);
        assert!(r.has(FailureKind::NotAPath));
    }
}

#[test]
fn foreign_edges_and_exceeded_bounds() {
    let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let d = Decomposition {
        paths: vec![
            Path::unchecked(vec![0, 1, 2, 3]),
            Path::unchecked(vec![0, 2]),
        ],
        claimed_bound: 1,
        bound_met: true,
    };
    let r = verify_decomposition(&p4, &d);
    assert!(r.has(FailureKind::EdgeForeign));
    assert!(r.has(FailureKind::BoundExceeded));
    assert!(!r.has(FailureKind::EdgeMissing));
}

/// Edges of the tree with Prüfer-like parent choices taken from `code`.
fn tree(n: usize, mut code: u64) -> Graph {
    let mut e = Vec::new();
    for v in 1..n {
        e.push(((code % v as u64) as usize, v));
        code = code
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407)
            >> 7;
    }
    Graph::from_edges(n, e).unwrap()
}

#[test]
fn oracle_meets_the_parity_bound_on_trees() {
    for n in 2..=15 {
        for code in 0..40u64 {
            let g = tree(n, code.wrapping_mul(0x9e37_79b9) + n as u64);
            let (min, w) = minimum_decomposition(&g, 16).unwrap();
            assert_eq!(min, odd_degree_lower_bound(&g), "n={n} code={code}");
            assert!(verify_decomposition(&g, &w).valid);
        }
    }
}

#[test]
fn oracle_hand_counts() {
    let g = |n, e: &[(usize, usize)]| Graph::from_edges(n, e.iter().copied()).unwrap();
    let min = |h: &Graph| minimum_decomposition(h, 16).unwrap().0;
    assert_eq!(min(&g(2, &[(0, 1)])), 1);
    assert_eq!(min(&g(3, &[(0, 1), (1, 2), (2, 0)])), 2);
    assert_eq!(min(&g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])), 2);
    assert_eq!(min(&g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])), 2);
    // Two disjoint triangles need two paths each.
    assert_eq!(
        min(&g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])),
        4
    );
    let too_big: Vec<(usize, usize)> = (0..17).map(|i| (i, i + 1)).collect();
    assert_eq!(
        minimum_decomposition(&g(18, &too_big), 16).unwrap_err(),
        OracleError::TooLarge { m: 17, limit: 16 }
    );
}

#[test]
fn oracle_is_never_above_a_known_decomposition_at_sixteen_edges() {
    for seed in 0..20 {
        let g = generate(&GenSpec::random(9, seed, 1.0)).unwrap();
        if g.m() > 16 {
            continue;
        }
        let (d, _) = decompose(&g).unwrap();
        let (min, _) = minimum_decomposition(&g, 16).unwrap();
        assert!(min <= d.paths.len());
    }
}

#[test]
fn text_formats_round_trip() {
    for seed in 0..30 {
        let g = generate(&GenSpec::random(25, seed, 0.5)).unwrap();
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        let (d, _) = decompose(&g).unwrap();
        let dtext = write_decomposition(&d);
        assert_eq!(parse_decomposition(&dtext).unwrap(), d);
    }
}

#[test]
fn edge_list_details() {
    let g = parse_edge_list("# comment\n\n0 1\n1 2\n").unwrap();
    assert_eq!((g.n(), g.m()), (3, 2));
    let g = parse_edge_list("p 5 1\n3 4\n").unwrap();
    assert_eq!((g.n(), g.m()), (5, 1));
    assert_eq!(write_edge_list(&g), "p 5 1\n3 4\n");
    let err = parse_edge_list("0 1\n1 0\n").unwrap_err();
    assert_eq!(err.line, 2);
    assert!(parse_edge_list("0 x\n").is_err());
}
