//! Randomized invariants: the optimized solvers must agree with the
//! subset-scan reference solvers, witnesses must actually be optimal
//! structures, the boundary classes must partition the free problem, and the
//! text format must round-trip.

use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use sscg::generate::{build, Method, Model};
use sscg::graph::{EdgeKind, Graph, Role, VertexMeta};
use sscg::oracle::{naive, solve, BoundaryConstraint, OracleBudget, Problem, Witness};

fn plain_meta(n: usize) -> Vec<VertexMeta> {
    (0..n)
        .map(|_| VertexMeta {
            role: Role::Ordinary,
            created_at: 0,
        })
        .collect()
}

/// Random simple graph on 2..=10 vertices, represented by one bool per
/// vertex pair.
fn random_graph() -> impl Strategy<Value = Graph> {
    (2usize..=10)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                proptest::collection::vec(any::<bool>(), pairs),
            )
        })
        .prop_map(|(n, present, kinds)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if present[idx] {
                        let kind = if kinds[idx] {
                            EdgeKind::Iterative
                        } else {
                            EdgeKind::NonIterative
                        };
                        edges.push((u, v, kind));
                    }
                    idx += 1;
                }
            }
            Graph::new(n, edges, plain_meta(n)).expect("pairs are distinct and in range")
        })
}

fn check_witness(g: &Graph, problem: Problem, optimum: u32, witness: &Witness) {
    match (problem, witness) {
        (Problem::Matching, Witness::Edges(edges)) => {
            assert_eq!(edges.len() as u32, optimum);
            let mut used = HashSet::new();
            for &(u, v) in edges {
                assert!(g.has_edge(u, v), "witness edge ({u},{v}) not in graph");
                assert!(used.insert(u) && used.insert(v), "matching reuses a vertex");
            }
        }
        (Problem::IndependentSet, Witness::Vertices(vs)) => {
            assert_eq!(vs.len() as u32, optimum);
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    assert!(!g.has_edge(u, v), "witness vertices {u},{v} are adjacent");
                }
            }
        }
        (Problem::DominatingSet, Witness::Vertices(vs)) => {
            assert_eq!(vs.len() as u32, optimum);
            let set: HashSet<_> = vs.iter().copied().collect();
            for v in 0..g.vertex_count() as u32 {
                let dominated = set.contains(&v)
                    || g.neighbors(v)
                        .unwrap()
                        .iter()
                        .any(|&(w, _)| set.contains(&w));
                assert!(dominated, "vertex {v} is not dominated");
            }
        }
        _ => panic!("witness shape does not fit the problem"),
    }
}

proptest! {
    #[test]
    fn optimized_solvers_agree_with_reference(g in random_graph()) {
        let budget = OracleBudget::default();
        for problem in [Problem::Matching, Problem::IndependentSet, Problem::DominatingSet] {
            let fast = solve(&g, problem, BoundaryConstraint::Free, &budget).unwrap();
            let (ref_opt, ref_count) = match problem {
                Problem::Matching => naive::max_matching(&g).unwrap(),
                Problem::IndependentSet => naive::max_independent_set(&g).unwrap(),
                Problem::DominatingSet => naive::min_dominating_set(&g).unwrap(),
            };
            prop_assert_eq!(fast.optimum, Some(ref_opt), "optimum differs for {}", problem.name());
            prop_assert_eq!(&fast.count, &ref_count, "count differs for {}", problem.name());
        }
    }

    #[test]
    fn witnesses_are_valid_optimal_structures(g in random_graph()) {
        let budget = OracleBudget {
            witness_cap: 40,
            ..OracleBudget::default()
        };
        for problem in [Problem::Matching, Problem::IndependentSet, Problem::DominatingSet] {
            let result = solve(&g, problem, BoundaryConstraint::Free, &budget).unwrap();
            let optimum = result.optimum.expect("free problems are feasible");
            prop_assert!(!result.witnesses.is_empty());
            for witness in &result.witnesses {
                check_witness(&g, problem, optimum, witness);
            }
            if !result.truncated {
                prop_assert_eq!(BigUint::from(result.witnesses.len()), result.count.clone());
            }
        }
    }

    #[test]
    fn edge_lists_round_trip(g in random_graph(), level in 0u32..6) {
        let mut buf = Vec::new();
        sscg::formats::write_edge_list(&g, "fractal", level, &mut buf).unwrap();
        let (back, model, back_level) = sscg::formats::read_edge_list(buf.as_slice()).unwrap();
        prop_assert_eq!(model, "fractal");
        prop_assert_eq!(back_level, level);
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.metas(), g.metas());
    }

    #[test]
    fn boundary_classes_partition_the_free_problem(
        model in prop_oneof![Just(Model::Fractal), Just(Model::NonFractal)],
        n in 0u32..=2,
        problem in prop_oneof![
            Just(Problem::Matching),
            Just(Problem::IndependentSet),
            Just(Problem::DominatingSet),
        ],
    ) {
        let g = build(model, Method::EdgeReplacement, n).unwrap();
        let budget = OracleBudget::default();
        let free = solve(&g, problem, BoundaryConstraint::Free, &budget).unwrap();
        let classes: Vec<_> = (0..3u8)
            .map(|k| solve(&g, problem, BoundaryConstraint::Exactly(k), &budget).unwrap())
            .collect();

        let free_opt = free.optimum.expect("free problems are feasible");
        let feasible: Vec<_> = classes.iter().filter_map(|c| c.optimum).collect();
        let class_best = if problem == Problem::DominatingSet {
            *feasible.iter().min().unwrap()
        } else {
            *feasible.iter().max().unwrap()
        };
        prop_assert_eq!(free_opt, class_best);

        let combined: BigUint = classes
            .iter()
            .filter(|c| c.optimum == Some(free_opt))
            .map(|c| c.count.clone())
            .sum();
        prop_assert_eq!(combined, free.count.clone());

        let first = solve(&g, problem, BoundaryConstraint::ExactlyOneAt(0), &budget).unwrap();
        let second = solve(&g, problem, BoundaryConstraint::ExactlyOneAt(1), &budget).unwrap();
        let k1 = &classes[1];
        match (first.optimum, second.optimum) {
            (Some(a), Some(b)) => {
                let best = if problem == Problem::DominatingSet { a.min(b) } else { a.max(b) };
                prop_assert_eq!(k1.optimum, Some(best));
                let expected: BigUint = [&first, &second]
                    .iter()
                    .filter(|r| r.optimum == Some(best))
                    .map(|r| r.count.clone())
                    .sum();
                prop_assert_eq!(k1.count.clone(), expected);
            }
            (Some(_), None) => prop_assert_eq!(k1.optimum, first.optimum),
            (None, Some(_)) => prop_assert_eq!(k1.optimum, second.optimum),
            (None, None) => prop_assert_eq!(k1.optimum, None),
        }
    }
}
