#![allow(dead_code)] // each test target uses a subset of these oracles

//! Shared brute-force oracles for the integration suites. Everything here
//! is deliberately independent of the implementation paths it checks: the
//! planarity oracle enumerates Kuratowski subdivisions, the spectrum oracle
//! works in exact integer arithmetic.

use graphtok::Graph;
use rand::Rng;

/// True iff the graph contains a subdivision of K5 or K3,3 as a subgraph.
/// Valid as a non-planarity oracle for any graph; feasible for n <= 7.
pub fn kuratowski_nonplanar(g: &Graph) -> bool {
    contains_k5_subdivision(g) || contains_k33_subdivision(g)
}

fn contains_k5_subdivision(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 {
        return false;
    }
    let nodes: Vec<usize> = (0..n).collect();
    for branch in subsets_of_size(&nodes, 5) {
        let extras: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|v| !branch.contains(v))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                pairs.push((branch[i], branch[j]));
            }
        }
        if subdivision_exists(g, &pairs, &extras) {
            return true;
        }
    }
    false
}

fn contains_k33_subdivision(g: &Graph) -> bool {
    let n = g.n();
    if n < 6 {
        return false;
    }
    let nodes: Vec<usize> = (0..n).collect();
    for branch in subsets_of_size(&nodes, 6) {
        let extras: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|v| !branch.contains(v))
            .collect();
        // All bipartitions of the six branch nodes into two sides of three.
        for side in subsets_of_size(&branch, 3) {
            if !side.contains(&branch[0]) {
                continue; // fix branch[0]'s side to halve the enumeration
            }
            let other: Vec<usize> = branch
                .iter()
                .copied()
                .filter(|v| !side.contains(v))
                .collect();
            let mut pairs = Vec::new();
            for &a in &side {
                for &b in &other {
                    pairs.push((a, b));
                }
            }
            if subdivision_exists(g, &pairs, &extras) {
                return true;
            }
        }
    }
    false
}

/// Do internally-disjoint paths exist for every pair, where each path is a
/// direct edge optionally subdivided by extra nodes, each used at most once?
fn subdivision_exists(g: &Graph, pairs: &[(usize, usize)], extras: &[usize]) -> bool {
    // Assignment: extras[i] -> Some(pair index) or None (unused).
    let mut assignment = vec![usize::MAX; extras.len()];
    try_assign(g, pairs, extras, &mut assignment, 0)
}

fn try_assign(
    g: &Graph,
    pairs: &[(usize, usize)],
    extras: &[usize],
    assignment: &mut [usize],
    idx: usize,
) -> bool {
    if idx == extras.len() {
        return pairs.iter().enumerate().all(|(p, &(a, b))| {
            let internal: Vec<usize> = extras
                .iter()
                .zip(assignment.iter())
                .filter(|&(_, &asn)| asn == p)
                .map(|(&x, _)| x)
                .collect();
            path_through(g, a, b, &internal)
        });
    }
    for choice in std::iter::once(usize::MAX).chain(0..pairs.len()) {
        assignment[idx] = choice;
        if try_assign(g, pairs, extras, assignment, idx + 1) {
            return true;
        }
    }
    false
}

/// Is there a path a ~ b whose internal nodes are exactly `internal`
/// (in some order), with every edge present in g?
fn path_through(g: &Graph, a: usize, b: usize, internal: &[usize]) -> bool {
    match internal {
        [] => g.has_edge(a, b),
        [x] => g.has_edge(a, *x) && g.has_edge(*x, b),
        [x, y] => {
            (g.has_edge(a, *x) && g.has_edge(*x, *y) && g.has_edge(*y, b))
                || (g.has_edge(a, *y) && g.has_edge(*y, *x) && g.has_edge(*x, b))
        }
        _ => unreachable!("at most two extra nodes at n <= 7"),
    }
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

/// The graph on `n` nodes whose edge set is encoded by the bits of `mask`
/// over the pairs (0,1), (0,2), ..., (n-2, n-1) in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges).expect("mask graphs are valid")
}

/// Erdős–Rényi sample, kept here so test sweeps do not depend on the
/// generator under test in `constructions`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("random graphs are valid")
}

/// Uniform random permutation of 0..n.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Multiplicity of the integer eigenvalue `lambda` in the combinatorial
/// Laplacian of `g`, computed exactly as `n - rank(L - lambda*I)` by
/// fraction-free Gaussian elimination over i128.
pub fn integer_laplacian_multiplicity(g: &Graph, lambda: i64) -> usize {
    let n = g.n();
    let mut m = vec![0i128; n * n];
    for (v, d) in g.degrees().into_iter().enumerate() {
        m[v * n + v] = d as i128 - lambda as i128;
    }
    for &(u, v) in g.edges() {
        m[u * n + v] = -1;
        m[v * n + u] = -1;
    }
    n - integer_rank(&mut m, n)
}

/// Rank by Bareiss fraction-free elimination; exact for the small integer
/// matrices used in the tests.
fn integer_rank(m: &mut [i128], n: usize) -> usize {
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    let mut row = 0;
    for col in 0..n {
        let Some(pivot_row) = (row..n).find(|&r| m[r * n + col] != 0) else {
            continue;
        };
        for c in 0..n {
            m.swap(row * n + c, pivot_row * n + c);
        }
        let pivot = m[row * n + col];
        for r in (row + 1)..n {
            for c in (col + 1)..n {
                let val = m[r * n + c] * pivot - m[r * n + col] * m[row * n + c];
                m[r * n + c] = val / prev_pivot;
            }
            m[r * n + col] = 0;
        }
        prev_pivot = pivot;
        row += 1;
        rank += 1;
        if row == n {
            break;
        }
    }
    rank
}
