//! Agreement of the left-right planarity test with an independent
//! Kuratowski-subdivision oracle, plus structural properties.

mod common;

use common::{graph_from_mask, kuratowski_nonplanar, random_graph, random_permutation};
use graphtok::graph::fixtures;
use graphtok::planarity::is_planar;
use graphtok::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn agrees_with_oracle_on_all_graphs_up_to_6_nodes() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0u64..(1 << pairs) {
            let g = graph_from_mask(n, mask);
            let fast = is_planar(&g).planar;
            let slow = !kuratowski_nonplanar(&g);
            assert_eq!(fast, slow, "disagreement at n={n}, mask={mask:#b}");
        }
    }
}

#[test]
fn agrees_with_oracle_on_sampled_graphs_at_7_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x97A11);
    for _ in 0..10_000 {
        let mask: u64 = rng.gen_range(0..1 << 21);
        let g = graph_from_mask(7, mask);
        let fast = is_planar(&g).planar;
        let slow = !kuratowski_nonplanar(&g);
        assert_eq!(fast, slow, "disagreement at n=7, mask={mask:#b}");
    }
}

#[test]
fn adding_edges_never_restores_planarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xCAFE);
    for _ in 0..200 {
        let n = rng.gen_range(5..=10);
        let mut g = random_graph(&mut rng, n, 0.2);
        let mut seen_nonplanar = false;
        loop {
            let absent: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            if absent.is_empty() {
                break;
            }
            let &(u, v) = &absent[rng.gen_range(0..absent.len())];
            g = g.with_edge(u, v).unwrap();
            let planar = is_planar(&g).planar;
            if seen_nonplanar {
                assert!(!planar, "planarity came back after an edge addition");
            }
            seen_nonplanar = !planar;
        }
    }
}

#[test]
fn verdict_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut graphs: Vec<Graph> = vec![
        fixtures::petersen(),
        fixtures::complete_bipartite(3, 3),
        fixtures::complete(5),
        fixtures::cycle(9),
    ];
    for _ in 0..6 {
        let n = rng.gen_range(6..=10);
        graphs.push(random_graph(&mut rng, n, 0.4));
    }
    for g in &graphs {
        let baseline = is_planar(g).planar;
        for _ in 0..50 {
            let perm = random_permutation(&mut rng, g.n());
            let relabeled = g.permuted(&perm).unwrap();
            assert_eq!(is_planar(&relabeled).planar, baseline);
        }
    }
}

/// Larger-scale sanity beyond the exhaustive range: subgraphs of a grid
/// are always planar, and subdividing edges never changes the verdict.
#[test]
fn structural_families_at_larger_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB16);

    for _ in 0..20 {
        let side = rng.gen_range(3..=8);
        let index = |r: usize, c: usize| r * side + c;
        let mut edges = Vec::new();
        for r in 0..side {
            for c in 0..side {
                if c + 1 < side && rng.gen_bool(0.8) {
                    edges.push((index(r, c), index(r, c + 1)));
                }
                if r + 1 < side && rng.gen_bool(0.8) {
                    edges.push((index(r, c), index(r + 1, c)));
                }
            }
        }
        let g = Graph::new(side * side, edges).unwrap();
        assert!(is_planar(&g).planar, "grid subgraph must be planar");
    }

    for base in [
        fixtures::complete(5),
        fixtures::complete_bipartite(3, 3),
        fixtures::petersen(),
    ] {
        let mut g = base;
        for _ in 0..60 {
            let &(u, v) = &g.edges()[rng.gen_range(0..g.edge_count())];
            let w = g.n();
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&e| e != (u, v))
                .collect();
            edges.push((u, w));
            edges.push((w, v));
            g = Graph::new(w + 1, edges).unwrap();
        }
        assert!(
            !is_planar(&g).planar,
            "subdivision of a non-planar graph stays non-planar (n={})",
            g.n()
        );
        let perm = random_permutation(&mut rng, g.n());
        assert!(!is_planar(&g.permuted(&perm).unwrap()).planar);
    }
}
