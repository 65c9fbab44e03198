//! Spectra of the fixed constructions against an exact integer-arithmetic
//! oracle, plus reconstruction and trace properties on random graphs.

mod common;

use common::{integer_laplacian_multiplicity, random_graph};
use graphtok::constructions::{bipartite_twin_pair, clique_join_twin_pair, ClaimedDelta};
use graphtok::graph::fixtures::*;
use graphtok::spectra::{
    compare_spectra, eigendecompose, verify_twin_edge_lemma, TOL_EIG, TOL_MATCH,
};
use graphtok::{Graph, LaplacianKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Asserts that the float spectrum matches `expected` (with multiplicit­ies)
/// and that every distinct expected value has exactly that multiplicity
/// according to fraction-free integer elimination.
fn assert_integer_spectrum(g: &Graph, expected: &[i64]) {
    let eig = eigendecompose(&g.laplacian(LaplacianKind::Combinatorial), TOL_EIG).unwrap();
    assert_eq!(eig.dim(), expected.len());
    for (got, &want) in eig.values().iter().zip(expected) {
        assert!(
            (got - want as f64).abs() < 1e-9,
            "float spectrum {:?} vs expected {expected:?}",
            eig.values()
        );
    }
    let mut distinct = expected.to_vec();
    distinct.dedup();
    for lambda in distinct {
        let want = expected.iter().filter(|&&x| x == lambda).count();
        assert_eq!(
            integer_laplacian_multiplicity(g, lambda),
            want,
            "multiplicity of {lambda}"
        );
    }
}

#[test]
fn k24_pair_spectra_match_the_integer_oracle() {
    let pair = bipartite_twin_pair(6).unwrap();
    assert_integer_spectrum(&pair.g1, &[0, 2, 2, 2, 4, 6]);
    assert_integer_spectrum(&pair.g2, &[0, 2, 2, 2, 6, 6]);
}

#[test]
fn clique_join_pair_spectra_match_the_integer_oracle() {
    let pair = clique_join_twin_pair(6).unwrap();
    assert_integer_spectrum(&pair.g1, &[0, 4, 6, 6, 6, 6]);
    assert_integer_spectrum(&pair.g2, &[0, 6, 6, 6, 6, 6]);
}

#[test]
fn c4_diagonal_pair_spectra() {
    let c4 = cycle(4);
    assert_integer_spectrum(&c4, &[0, 2, 2, 4]);
    assert_integer_spectrum(&c4.with_edge(0, 2).unwrap(), &[0, 2, 4, 4]);
}

#[test]
fn path3_pair_spectra() {
    let p3 = path(3);
    assert_integer_spectrum(&p3, &[0, 1, 3]);
    assert_integer_spectrum(&p3.with_edge(0, 2).unwrap(), &[0, 3, 3]);
}

#[test]
fn twin_pair_shift_is_visible_in_compare_spectra() {
    for n in [5, 6, 8, 12] {
        for pair in [
            bipartite_twin_pair(n).unwrap(),
            clique_join_twin_pair(n).unwrap(),
        ] {
            let ClaimedDelta::EigenvalueShift { from, to, .. } = pair.claimed_delta else {
                unreachable!()
            };
            let e1 =
                eigendecompose(&pair.g1.laplacian(LaplacianKind::Combinatorial), TOL_EIG).unwrap();
            let e2 =
                eigendecompose(&pair.g2.laplacian(LaplacianKind::Combinatorial), TOL_EIG).unwrap();
            let diff = compare_spectra(&e1, &e2, TOL_MATCH).unwrap();
            assert_eq!(diff.matched, n - 1);
            assert_eq!(diff.changed.len(), 1);
            let (old, new) = diff.changed[0];
            assert!((old - from).abs() < 1e-7, "{old} vs {from}");
            assert!((new - to).abs() < 1e-7, "{new} vs {to}");
        }
    }
}

#[test]
fn reconstruction_residual_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xEC0);
    for _ in 0..20 {
        let n = rng.gen_range(2..=64);
        let g = random_graph(&mut rng, n, 0.4);
        let l = g.laplacian(LaplacianKind::Combinatorial);
        let eig = eigendecompose(&l, TOL_EIG).unwrap();
        let mut reconstructed = graphtok::DenseMatrix::zeros(n, n);
        for i in 0..n {
            let u = eig.vectors().column(i);
            reconstructed += eig.values()[i] * u * u.transpose();
        }
        let err = (&reconstructed - &l).amax();
        let bound = 10.0 * TOL_EIG * l.amax().max(1.0);
        assert!(err <= bound, "n={n}: reconstruction {err:e} > {bound:e}");
    }
}

#[test]
fn eigenvalue_sum_equals_degree_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5FA);
    for _ in 0..20 {
        let n = rng.gen_range(2..=40);
        let g = random_graph(&mut rng, n, 0.5);
        let eig = eigendecompose(&g.laplacian(LaplacianKind::Combinatorial), TOL_EIG).unwrap();
        let sum: f64 = eig.values().iter().sum();
        let trace: usize = g.degrees().iter().sum();
        assert!((sum - trace as f64).abs() < 1e-8 * (trace as f64 + 1.0));
    }
}

#[test]
fn sym_normalized_spectrum_stays_in_zero_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x025);
    for _ in 0..10 {
        let n = rng.gen_range(2..=24);
        let g = random_graph(&mut rng, n, 0.3);
        let eig = eigendecompose(&g.laplacian(LaplacianKind::SymNormalized), TOL_EIG).unwrap();
        for &v in eig.values() {
            assert!((-1e-9..=2.0 + 1e-9).contains(&v), "{v}");
        }
    }
}

#[test]
fn exhaustive_twin_sweep_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x714);
    let mut found = 0;
    for _ in 0..60 {
        let n = rng.gen_range(5..=16);
        let p = [0.3, 0.5, 0.7][rng.gen_range(0..3)];
        let g = random_graph(&mut rng, n, p);
        for (u, v) in g.twin_pairs() {
            found += 1;
            let report = verify_twin_edge_lemma(&g, u, v, 1e-7).unwrap();
            assert!(report.twins);
            assert!(
                report.pass,
                "twins ({u},{v}) in {:?}: {report:?}",
                g.edges()
            );
        }
    }
    assert!(found > 0, "sweep found no twin pairs; widen the sizes");
}
