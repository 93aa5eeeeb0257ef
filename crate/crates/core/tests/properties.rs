mod common;

use common::{
    backtrack_longest_cycle, backtrack_longest_path, brute_force_connectivity, brute_force_disjoint_paths, random_graph,
};
use proptest::prelude::*;
use randsub::assembly::{
    combine_disjoint_cycles, greedy_cluster_decomposition, local_search_max_cut, merge_two_cycles, DecompositionParams,
};
use randsub::connectivity::{
    absorb_vertices, find_small_separator, find_t_connected_subgraph, menger_paths, vertex_connectivity_at_least,
};
use randsub::dfs::{dfs_explore, MoveKind};
use randsub::exact::{exact_connectivity, exact_longest_cycle, exact_longest_path};
use randsub::graph::Adjacency;
use randsub::harness::{bound_dfs_cycle, bound_linear_path};
use randsub::rotation::{endpoint_closure, rotate};
use randsub::{sample_subgraph, ExposureOracle, Graph, Path, SampleView};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, 0.15f64..0.9, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn oracle_answers_are_order_free(g in graph_strategy(25), p in 0.0f64..=1.0, seed in any::<u64>(), rev in any::<bool>()) {
        let sample = sample_subgraph(&g, p, seed).unwrap();
        let mut edges: Vec<_> = g.edges().collect();
        if rev {
            edges.reverse();
        }
        let mut oracle = ExposureOracle::new(&g, p, seed).unwrap();
        for (u, v) in edges {
            // ask with the endpoints swapped as well
            let answer = if rev { oracle.query(v, u).unwrap() } else { oracle.query(u, v).unwrap() };
            prop_assert_eq!(answer, sample.has_edge(u, v));
        }
        prop_assert_eq!(oracle.positives(), sample.edge_count());
    }

    #[test]
    fn dfs_stack_is_an_exposed_path(g in graph_strategy(30), p in 0.1f64..=1.0, seed in any::<u64>()) {
        let mut oracle = ExposureOracle::new(&g, p, seed).unwrap();
        let sigma: Vec<usize> = g.vertices().collect();
        let trace = dfs_explore(&mut oracle, &sigma, None).unwrap();
        let view = SampleView::new(&g, p, seed).unwrap();
        let mut stack: Vec<usize> = Vec::new();
        let mut pushes = 0;
        for ev in &trace.events {
            match ev.kind {
                MoveKind::Root => {
                    prop_assert!(stack.is_empty());
                    stack.push(ev.vertex);
                }
                MoveKind::Push => {
                    prop_assert!(view.has_edge(*stack.last().unwrap(), ev.vertex));
                    stack.push(ev.vertex);
                    pushes += 1;
                }
                MoveKind::Pop => {
                    prop_assert_eq!(stack.pop(), Some(ev.vertex));
                }
            }
            // every positive answer adds one vertex to S ∪ U
            prop_assert_eq!(ev.positives, pushes);
            prop_assert_eq!(ev.u, stack.len());
            prop_assert_eq!(ev.s + ev.u + ev.t, g.vertex_count());
        }
        prop_assert!(trace.complete);
        // positive edges join comparable vertices
        for (u, v) in sample_subgraph(&g, p, seed).unwrap().edges() {
            prop_assert!(trace.comparable(u, v));
        }
        trace.best_path.validate(&view).unwrap();
    }

    #[test]
    fn rotations_keep_vertex_set(g in graph_strategy(14)) {
        let p = exact_longest_path(&g).unwrap().witness.unwrap();
        prop_assume!(p.length() >= 2);
        let end = p.end().unwrap();
        for &pivot in g.neighbors(end) {
            if let Ok(r) = rotate(&g, &p, pivot) {
                prop_assert_eq!(r.length(), p.length());
                let mut a = r.vertices().to_vec();
                let mut b = p.vertices().to_vec();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
                prop_assert_eq!(r.start(), p.start());
                r.validate(&g).unwrap();
            }
        }
        let closure = endpoint_closure(&g, &p, p.start().unwrap(), None).unwrap();
        for &e in &closure.endpoints {
            let w = closure.path_to(&g, e).unwrap();
            w.validate(&g).unwrap();
            prop_assert_eq!(w.end(), Some(e));
            prop_assert_eq!(w.start(), p.start());
        }
    }

    #[test]
    fn menger_matches_brute_force(g in graph_strategy(11), split in 1usize..4, t in 1usize..6) {
        let n = g.vertex_count();
        prop_assume!(split + 2 <= n);
        let a: Vec<usize> = (0..split).collect();
        let b: Vec<usize> = (split..n).step_by(2).collect();
        prop_assume!(a.len() > 1 || b.len() > 1);
        let set = menger_paths(&g, &a, &b, t).unwrap();
        let best = brute_force_disjoint_paths(&g, &a, &b);
        prop_assert_eq!(set.len(), best.min(t));
        let mut used = vec![0usize; n];
        for path in &set.paths {
            path.validate(&g).unwrap();
            let vs = path.vertices();
            prop_assert!(a.contains(&vs[0]));
            prop_assert!(b.contains(vs.last().unwrap()));
            for &v in &vs[1..vs.len() - 1] {
                prop_assert!(!a.contains(&v) && !b.contains(&v));
            }
            for &v in vs {
                used[v] += 1;
            }
        }
        for (v, &count) in used.iter().enumerate() {
            let shared = (a.len() == 1 && a[0] == v) || (b.len() == 1 && b[0] == v);
            prop_assert!(shared || count <= 1);
        }
    }

    #[test]
    fn connectivity_agrees_with_enumeration(g in graph_strategy(11)) {
        let kappa = brute_force_connectivity(&g);
        prop_assert_eq!(exact_connectivity(&g), kappa);
        for t in 1..=5 {
            prop_assert_eq!(vertex_connectivity_at_least(&g, t), g.vertex_count() > t && kappa >= t);
        }
        if let Some(sep) = find_small_separator(&g, kappa + 1) {
            prop_assert!(sep.len() <= kappa);
        }
    }

    #[test]
    fn extracted_subgraphs_are_certified(g in graph_strategy(16), t in 1usize..4) {
        if let Some(c) = find_t_connected_subgraph(&g, t) {
            prop_assert!(brute_force_connectivity(c.graph()) >= t);
            prop_assert!(c.vertex_count() > t);
            for (u, v) in c.host_edges() {
                prop_assert!(g.has_edge(u, v));
            }
            let grown = absorb_vertices(&c, &g, t).unwrap();
            prop_assert!(brute_force_connectivity(grown.graph()) >= t);
        }
    }

    #[test]
    fn exact_solvers_match_backtracking(g in graph_strategy(9)) {
        let path = exact_longest_path(&g).unwrap();
        prop_assert_eq!(path.optimum, backtrack_longest_path(&g));
        path.witness.unwrap().validate(&g).unwrap();
        let cycle = exact_longest_cycle(&g).unwrap();
        prop_assert_eq!(cycle.optimum, backtrack_longest_cycle(&g));
        if let Some(c) = cycle.witness {
            c.validate(&g).unwrap();
            prop_assert_eq!(c.length(), cycle.optimum);
        }
    }

    #[test]
    fn local_search_cut_is_half(g in graph_strategy(40), seed in any::<u64>()) {
        let cut = local_search_max_cut(&g, 2, seed);
        let crossing = g.edges().filter(|&(u, v)| cut.side[u] != cut.side[v]).count();
        prop_assert_eq!(crossing, cut.cut);
        prop_assert!(2 * cut.cut >= g.edge_count());
    }

    #[test]
    fn decomposition_invariants(g in graph_strategy(40), t in 2usize..4) {
        let k = g.min_degree().max(1);
        let dec = greedy_cluster_decomposition(&g, &g, DecompositionParams { t, epsilon: 0.3, k }).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut x_parts: Vec<usize> = Vec::new();
        for c in &dec.clusters {
            prop_assert!(vertex_connectivity_at_least(c.subgraph.graph(), t));
            for (u, v) in c.subgraph.host_edges() {
                prop_assert!(seen.insert((u.min(v), u.max(v))), "clusters share an edge");
            }
            x_parts.extend(&c.x_part);
        }
        x_parts.sort_unstable();
        prop_assert_eq!(x_parts, dec.x.clone());
    }

    #[test]
    fn merges_respect_pigeonhole(g in graph_strategy(16), t in 2usize..5) {
        // two disjoint cycles from the exact solver on each half
        let n = g.vertex_count();
        let left: Vec<usize> = (0..n / 2).collect();
        let right: Vec<usize> = (n / 2..n).collect();
        let cl = exact_longest_cycle(g.induced_subgraph(&left).unwrap().graph()).unwrap().witness;
        let cr = exact_longest_cycle(g.induced_subgraph(&right).unwrap().graph()).unwrap().witness;
        let (Some(cl), Some(cr)) = (cl, cr) else { return Ok(()) };
        let c1 = cl.map(|v| left[v]);
        let c2 = cr.map(|v| right[v]);
        match merge_two_cycles(&g, &c1, &c2, t) {
            Ok(m) => {
                m.cycle.validate(&g).unwrap();
                prop_assert!(m.gap * m.paths_found <= c1.length());
                if m.paths_found == t {
                    prop_assert!(m.cycle.length() as f64 >= m.bound - 1e-9);
                }
                let combined = combine_disjoint_cycles(&g, &[c1.clone(), c2.clone()], t).unwrap();
                combined.cycle.validate(&g).unwrap();
            }
            Err(randsub::Error::TooFewPaths { found, .. }) => prop_assert!(found < 2),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn bounds_are_monotone(c1 in 4.0f64..1000.0, dc in 0.0f64..1000.0, k in 1.0f64..5000.0, bip in any::<bool>()) {
        let c2 = c1 + dc;
        prop_assert!(bound_linear_path(c1, k, bip, false).unwrap() <= bound_linear_path(c2, k, bip, false).unwrap());
        prop_assert!(bound_dfs_cycle(1.0, c1, k, bip) <= bound_dfs_cycle(1.0, c2, k, bip));
        let cap = if bip { 2.0 * k } else { k };
        prop_assert!(bound_linear_path(c1, k, bip, false).unwrap() <= cap);
    }
}

#[test]
fn path_witness_sanity() {
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)], false).unwrap();
    assert!(Path::new(vec![0, 2]).validate(&g).is_err());
    assert!(Path::new(vec![0, 1, 0]).validate(&g).is_err());
}
