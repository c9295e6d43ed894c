use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use transversal::generators::{
    gen_random_list_coloring, gen_random_local_sparse, reduce_list_coloring,
};
use transversal::io::{graph_to_json, parse_graph};
use transversal::ksfree::{minimize_mono_coloring, same_color_bound, split_by_coloring};
use transversal::lll::moser_tardos_it;
use transversal::nibble::{build_schedule, run_iteration, NibbleState};
use transversal::oracle::{brute_force_transversal, count_by_enumeration, OracleMode};
use transversal::reducer::{halving_step, plan_reduction};
use transversal::seed::derive_seed;
use transversal::MultipartiteGraph;

/// Small multipartite graphs with consecutive ids and a random subset of
/// the cross-part pairs as edges.
fn small_graph(max_parts: usize, max_size: usize) -> impl Strategy<Value = MultipartiteGraph> {
    prop::collection::vec(1..=max_size, 1..=max_parts).prop_flat_map(|sizes| {
        let mut parts = Vec::new();
        let mut next = 0;
        for &s in &sizes {
            parts.push((next..next + s).collect::<Vec<_>>());
            next += s;
        }
        let mut pairs = Vec::new();
        for (a, pa) in parts.iter().enumerate() {
            for pb in &parts[a + 1..] {
                for &u in pa {
                    for &v in pb {
                        pairs.push((u, v));
                    }
                }
            }
        }
        let n = pairs.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |keep| {
            let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
            MultipartiteGraph::new(parts.clone(), edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjacency_is_symmetric_and_bounded(g in small_graph(5, 4)) {
        let stats = g.compute_stats();
        prop_assert!(stats.local_degree <= stats.max_degree);
        let mut degree_sum = 0;
        for v in g.vertices() {
            degree_sum += g.degree(v);
            for &w in g.neighbors(v) {
                prop_assert!(g.is_adjacent(w, v));
                prop_assert_ne!(g.part_of(v), g.part_of(w));
            }
        }
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn json_round_trip(g in small_graph(5, 4)) {
        prop_assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn deleting_vertices_keeps_the_rest(g in small_graph(4, 4), mask in any::<u64>()) {
        let removed: HashSet<usize> = g.vertices().filter(|v| mask >> (v % 64) & 1 == 1).collect();
        let h = g.delete_vertices(&removed);
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - removed.len());
        for v in h.vertices() {
            prop_assert_eq!(h.part_of(v), g.part_of(v));
            for &w in h.neighbors(v) {
                prop_assert!(g.is_adjacent(v, w) && !removed.contains(&w));
            }
        }
    }

    #[test]
    fn pruned_search_matches_enumeration(g in small_graph(5, 3), s in 2usize..=4) {
        let res = brute_force_transversal(&g, s, OracleMode::Count, 1_000_000).unwrap();
        let count = count_by_enumeration(&g, s).unwrap();
        prop_assert_eq!(res.count, Some(count));
        prop_assert_eq!(res.exists, count > 0);
        if let Some(t) = &res.witness {
            prop_assert!(g.is_ks_free_transversal(t, s).unwrap());
        }
    }

    #[test]
    fn resampling_output_is_independent(g in small_graph(5, 4), seed in any::<u64>()) {
        let rep = moser_tardos_it(&g, seed, 2_000).unwrap();
        match &rep.transversal {
            Some(t) => prop_assert!(g.is_independent_transversal(t).unwrap()),
            None => prop_assert_eq!(rep.resample_count, 2_000),
        }
    }

    #[test]
    fn coloring_bounds_same_color_degree(
        seed in any::<u64>(),
        s in 2usize..=5,
        delta in 1usize..=12,
    ) {
        let g = gen_random_local_sparse(8, 6, delta, delta, seed).unwrap();
        let c = minimize_mono_coloring(&g, s, seed).unwrap();
        let bound = same_color_bound(g.max_degree(), s);
        prop_assert!(c.max_same_color_degree(&g).unwrap() <= bound);
        prop_assert_eq!(c.count_mono(&g).unwrap(), c.mono_edge_count);
        prop_assert!(c.moves.len() <= g.edge_count());
        for m in &c.moves {
            prop_assert!(m.mono_after < m.mono_before);
        }
        let h = split_by_coloring(&g, &c).unwrap();
        prop_assert_eq!(h.edge_count(), c.mono_edge_count);
        for v in g.vertices() {
            prop_assert!(h.degree(v) <= g.degree(v));
            prop_assert!(h.degree(v) <= bound);
        }
    }

    #[test]
    fn random_instances_respect_caps(
        r in 2usize..8, n in 1usize..10, delta in 0usize..8, extra in 0usize..4, seed in any::<u64>()
    ) {
        let local = delta.saturating_sub(extra);
        let g = gen_random_local_sparse(r, n, delta, local, seed).unwrap();
        let stats = g.compute_stats();
        prop_assert!(stats.max_degree <= delta);
        prop_assert!(stats.local_degree <= local);
        prop_assert_eq!(g.intra_part_edge_count(), 0);
        prop_assert_eq!(g, gen_random_local_sparse(r, n, delta, local, seed).unwrap());
    }

    #[test]
    fn list_coloring_transversals_map_to_proper_colorings(seed in any::<u64>()) {
        let inst = gen_random_list_coloring(6, 2, 3, 4, seed).unwrap();
        let red = reduce_list_coloring(&inst).unwrap();
        let res = brute_force_transversal(&red.graph, 2, OracleMode::Decide, 1_000_000).unwrap();
        if let Some(t) = res.witness {
            prop_assert!(inst.is_proper_coloring(&red.coloring_from(&t)));
        }
    }

    #[test]
    fn nibble_rounds_keep_partial_and_live_apart(seed in any::<u64>()) {
        let g = gen_random_local_sparse(20, 12, 8, 2, seed).unwrap();
        let sched = build_schedule(8.max(g.max_degree()), 0.5).unwrap();
        let mut st = NibbleState::new(Arc::new(g), Some(sched));
        for t in 0..6 {
            st = run_iteration(&st, derive_seed(seed, &[t]));
            prop_assert!(st.check_invariants().is_ok());
        }
    }

    #[test]
    fn halving_schedule_follows_the_recurrence(
        delta in 2usize..2_000_000, gamma in 0.001f64..0.5, eps in 0.05f64..1.0
    ) {
        let sched = plan_reduction(delta, gamma, eps).unwrap();
        prop_assert_eq!(sched.delta_seq.len(), sched.j as usize + 1);
        for w in sched.delta_seq.windows(2) {
            prop_assert_eq!(w[1], halving_step(w[0]));
        }
        for w in sched.d_seq.windows(2) {
            prop_assert_eq!(w[1], halving_step(w[0]));
        }
    }
}
