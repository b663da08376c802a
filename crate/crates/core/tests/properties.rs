//! Randomized checks of the exact searches against brute force, of every
//! construction against the verifier, and of certificate revalidation.

use proptest::prelude::*;
use stoc_core::bounds::{
    clique_cover_number, independence_number, log_rate_at_least, log_rate_at_most, mais,
    max_b_avoiding, max_matching, oracle_max_code, BoundCertificate,
};
use stoc_core::code::Scope;
use stoc_core::construct::{clique_partition_code, edge_to_vertex_code, matching_code};
use stoc_core::design::{affine_design, family_from_design};
use stoc_core::graph::Graph;
use stoc_core::interleave::{build_interleaved_graph, greedy_coloring, Mode};
use stoc_core::limits::Limits;
use stoc_core::linear::LinearCode;
use stoc_core::rational::ratio;

fn graph_strategy(max_n: usize, directed: bool) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && (directed || u < v) && bits[u * n + v])
                .collect();
            Graph::new(n, &edges, directed).unwrap()
        })
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|v| m & (1 << v) != 0).collect())
}

fn brute_independence(g: &Graph) -> usize {
    subsets(g.n())
        .filter(|s| {
            s.iter()
                .all(|&u| s.iter().all(|&v| u == v || !g.adjacent(u, v)))
        })
        .map(|s| s.len())
        .max()
        .unwrap()
}

fn brute_dag(g: &Graph) -> usize {
    subsets(g.n())
        .filter(|s| g.is_dag(s).unwrap().is_acyclic())
        .map(|s| s.len())
        .max()
        .unwrap()
}

/// Minimum clique partition by dynamic programming over vertex masks.
fn brute_clique_cover(g: &Graph) -> usize {
    let n = g.n();
    let full = (1usize << n) - 1;
    let is_clique = |m: usize| {
        (0..n).all(|u| {
            (0..n).all(|v| u == v || m & (1 << u) == 0 || m & (1 << v) == 0 || g.mutual(u, v))
        })
    };
    let cliques: Vec<bool> = (0..=full).map(is_clique).collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for m in 1..=full {
        let low = m & m.wrapping_neg();
        let mut sub = m;
        while sub > 0 {
            if sub & low != 0 && cliques[sub] && best[m ^ sub] != usize::MAX {
                best[m] = best[m].min(best[m ^ sub] + 1);
            }
            sub = (sub - 1) & m;
        }
    }
    best[full]
}

fn brute_matching(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let n = g.n();
        let Some(u) = (from..n).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used, u + 1);
        for v in u + 1..n {
            if !used[v] && g.adjacent(u, v) {
                used[v] = true;
                best = best.max(1 + go(g, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.n()], 0)
}

fn both_verifiers_pass(code: &LinearCode, g: &Graph) -> bool {
    let rank = code.verify(g, Scope::All).unwrap().passed();
    let explicit = code
        .enumerate(&Limits::default())
        .unwrap()
        .verify(g, Scope::All)
        .unwrap()
        .passed();
    rank && explicit
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn independence_is_exact(g in graph_strategy(10, false)) {
        let set = independence_number(&g, &Limits::default()).unwrap();
        prop_assert_eq!(set.len(), brute_independence(&g));
        BoundCertificate::independence(&g, &Limits::default()).unwrap().revalidate(&g).unwrap();
    }

    #[test]
    fn mais_is_exact(g in graph_strategy(9, true)) {
        let set = mais(&g, &Limits::default()).unwrap();
        prop_assert!(g.is_dag(&set).unwrap().is_acyclic());
        prop_assert_eq!(set.len(), brute_dag(&g));
        // Independent sets are DAG sets.
        prop_assert!(independence_number(&g, &Limits::default()).unwrap().len() <= set.len());
        BoundCertificate::mais(&g, &Limits::default()).unwrap().revalidate(&g).unwrap();
    }

    #[test]
    fn mais_equals_independence_when_symmetric(g in graph_strategy(10, false)) {
        prop_assert_eq!(mais(&g, &Limits::default()).unwrap().len(), brute_independence(&g));
    }

    #[test]
    fn clique_cover_is_exact(g in graph_strategy(8, false)) {
        let parts = clique_cover_number(&g, &Limits::default()).unwrap();
        prop_assert_eq!(parts.len(), brute_clique_cover(&g));
        BoundCertificate::clique_cover(&g, &Limits::default()).unwrap().revalidate(&g).unwrap();
    }

    #[test]
    fn matching_is_exact(g in graph_strategy(10, false)) {
        let m = max_matching(&g);
        prop_assert_eq!(m.len(), brute_matching(&g));
        BoundCertificate::matching(&g).revalidate(&g).unwrap();
    }

    #[test]
    fn constructions_verify(g in graph_strategy(7, false), q in prop_oneof![Just(2u32), Just(3u32)]) {
        let parts = clique_cover_number(&g, &Limits::default()).unwrap();
        let code = clique_partition_code(&g, &parts, q).unwrap();
        prop_assert!(both_verifiers_pass(&code, &g));
        prop_assert_eq!(code.rate().exact.unwrap(), ratio((g.n() - parts.len()) as i64, g.n() as i64));
        let m = max_matching(&g);
        prop_assert!(both_verifiers_pass(&matching_code(&g, &m, q).unwrap(), &g));
        if (0..g.n()).all(|v| g.degree(v) > 0) && g.n() <= 5 {
            prop_assert!(both_verifiers_pass(&edge_to_vertex_code(&g, q).unwrap(), &g));
        }
    }

    #[test]
    fn oracle_sits_between_construction_and_bound(g in graph_strategy(4, false)) {
        let lim = Limits::default();
        let oracle = oracle_max_code(&g, 2, &lim).unwrap();
        prop_assert!(oracle.verify(&g, Scope::All).unwrap().passed());
        let parts = clique_cover_number(&g, &lim).unwrap();
        let construction = ratio((g.n() - parts.len()) as i64, g.n() as i64);
        let upper = BoundCertificate::independence(&g, &lim).unwrap().value;
        let size = num_bigint::BigUint::from(oracle.len());
        prop_assert!(log_rate_at_least(2, g.n(), &size, &construction));
        prop_assert!(log_rate_at_most(2, g.n(), &size, &upper));
    }

    #[test]
    fn b_avoiding_is_superadditive(
        b in proptest::collection::btree_set(1u64..=5, 1..=3),
        n in 1usize..=15,
        m in 1usize..=15,
    ) {
        let b: Vec<u64> = b.into_iter().collect();
        let lim = Limits::default();
        let gap = *b.iter().max().unwrap() as usize;
        let an = max_b_avoiding(&b, n, &lim).unwrap();
        let am = max_b_avoiding(&b, m, &lim).unwrap();
        // A copy of the second set shifted past the first by max(B) stays avoiding.
        let joined: Vec<usize> = an.iter().copied().chain(am.iter().map(|x| x + n + gap)).collect();
        for (i, &x) in joined.iter().enumerate() {
            for &y in &joined[i + 1..] {
                prop_assert!(!b.contains(&((y - x) as u64)));
            }
        }
        prop_assert!(max_b_avoiding(&b, n + m + gap, &lim).unwrap().len() >= an.len() + am.len());
    }

    #[test]
    fn sampled_interleaved_codes_verify(seed in any::<u64>()) {
        let k3 = Graph::complete(3);
        let parity = clique_partition_code(&k3, &[vec![0, 1, 2]], 3).unwrap().enumerate(&Limits::default()).unwrap();
        let family = family_from_design(&affine_design(2).unwrap()).unwrap();
        let ig = build_interleaved_graph(&k3, &greedy_coloring(&k3), &family).unwrap();
        let code = ig.interleaved_code(&parity, Mode::Sample { seed, count: 40 }, &Limits::default()).unwrap();
        prop_assert!(code.verify(&ig.graph, Scope::All).unwrap().passed());
    }
}

fn cube() -> Graph {
    let k2 = Graph::complete(2);
    k2.cartesian_product(&k2)
        .unwrap()
        .cartesian_product(&k2)
        .unwrap()
}

#[test]
fn interleaving_keeps_triangle_free_graphs_triangle_free() {
    for g in [Graph::cycle(5), cube()] {
        assert!(g.is_triangle_free());
        let coloring = greedy_coloring(&g);
        for q in [2, 3, 5] {
            let family = family_from_design(&affine_design(q).unwrap()).unwrap();
            if family.size() < coloring.c {
                continue;
            }
            let ig = build_interleaved_graph(&g, &coloring, &family).unwrap();
            assert!(ig.graph.is_triangle_free(), "q = {q}, n = {}", g.n());
        }
    }
}

#[test]
fn interleaved_linear_codes_verify() {
    let lim = Limits::default();
    for g in [Graph::cycle(5), Graph::complete(3), cube()] {
        let parts = clique_cover_number(&g, &lim).unwrap();
        let seed = clique_partition_code(&g, &parts, 2).unwrap();
        let coloring = greedy_coloring(&g);
        let family = family_from_design(&affine_design(3).unwrap()).unwrap();
        let ig = build_interleaved_graph(&g, &coloring, &family).unwrap();
        let code = ig.interleaved_linear_code(&seed).unwrap();
        assert!(code.verify(&ig.graph, Scope::All).unwrap().passed());
        assert_eq!(code.rate().exact, seed.rate().exact);
    }
}
