//! Universal properties of the decomposer on generated graphs.

use proptest::prelude::*;

use pathdecomp::decompose::{decompose, replay, Branch};
use pathdecomp::generate::{generate, GenSpec};
use pathdecomp::graph::connected_components;
use pathdecomp::verify::{minimum_decomposition, odd_degree_lower_bound, verify_decomposition};
use pathdecomp::Graph;

fn spec() -> impl Strategy<Value = GenSpec> {
    (
        1usize..60,
        any::<u64>(),
        0.0f64..=1.0,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(n, seed, p2, connect, densify)| GenSpec {
            n,
            seed,
            connect,
            p2,
            family: None,
            densify,
        })
}

/// Per-component budget: floor(n/2) for ordinary components, 2 for
/// triangles.
fn budget(g: &Graph) -> usize {
    connected_components(g)
        .iter()
        .filter(|c| c.edge_count > 0)
        .map(|c| if c.is_triangle() { 2 } else { c.order() / 2 })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn output_is_a_certified_partition(spec in spec()) {
        let g = generate(&spec).unwrap();
        let (d, t) = decompose(&g).unwrap();
        let r = verify_decomposition(&g, &d);
        prop_assert!(r.valid, "{}", r);
        prop_assert!(d.paths.len() <= budget(&g));
        prop_assert!(d.paths.len() >= odd_degree_lower_bound(&g));
        prop_assert_eq!(d.claimed_bound, g.non_isolated_count() / 2);
        let has_triangle = connected_components(&g).iter().any(|c| c.is_triangle());
        prop_assert_eq!(d.bound_met, !has_triangle);
        prop_assert!(replay(&t).is_ok());
    }

    #[test]
    fn same_graph_same_answer(spec in spec()) {
        let g = generate(&spec).unwrap();
        let first = decompose(&g).unwrap();
        let again = decompose(&g.clone()).unwrap();
        prop_assert_eq!(first, again);
    }

    #[test]
    fn recursion_shrinks_the_edge_set(spec in spec()) {
        let g = generate(&spec).unwrap();
        let (_, t) = decompose(&g).unwrap();
        // A deeper step always acts on fewer edges than the step that
        // spawned it, which is the closest shallower step before it.
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for s in &t.steps {
            if s.branch.tag().starts_with("Lemma1") || s.branch.tag().starts_with("Subclaim") {
                continue;
            }
            while stack.last().is_some_and(|&(d, _)| d >= s.depth) {
                stack.pop();
            }
            if let Some(&(_, m)) = stack.last() {
                prop_assert!(s.state.len() < m);
            }
            stack.push((s.depth, s.state.len()));
        }
    }

    #[test]
    fn never_below_the_exact_minimum(spec in (2usize..9, any::<u64>(), 0.0f64..=1.0)) {
        let g = generate(&GenSpec::random(spec.0, spec.1, spec.2)).unwrap();
        let (d, _) = decompose(&g).unwrap();
        let (min, witness) = minimum_decomposition(&g, 16).unwrap();
        prop_assert!(verify_decomposition(&g, &witness).valid);
        prop_assert!(min <= d.paths.len());
        prop_assert!(min >= odd_degree_lower_bound(&g));
    }
}

#[test]
fn densified_graphs_reach_the_rare_branches() {
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..400 {
        let spec = GenSpec {
            densify: true,
            ..GenSpec::random(12 + (seed % 40) as usize, seed, 0.5)
        };
        let (_, t) = decompose(&generate(&spec).unwrap()).unwrap();
        seen.extend(t.histogram().into_keys());
    }
    for b in [
        Branch::Claim2Case1,
        Branch::Claim3,
        Branch::Case1Deg3Neighbor,
    ] {
        assert!(seen.contains(&b), "{b}");
    }
}
