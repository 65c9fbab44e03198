//! Canonical simple-graph representation, matrix views, and the exact
//! combinatorial oracles the rest of the crate verifies against.

use serde::{Deserialize, Serialize};

use crate::{DenseMatrix, Error, Result};

/// Which Laplacian to build from a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianKind {
    /// `L = D - A`.
    Combinatorial,
    /// `L_sym = I - D^{-1/2} A D^{-1/2}`, with the `D^{-1/2}` entry of an
    /// isolated node taken as 0 (so its row keeps the diagonal 1).
    SymNormalized,
}

/// An undirected simple graph with a canonical edge list.
///
/// Edges are stored with the smaller endpoint first and globally sorted, so
/// two equal graphs always serialize to identical bytes. No self-loops, no
/// duplicates, all endpoints `< n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from a node count and an edge list.
    ///
    /// Input edges may appear in any orientation and with duplicates; the
    /// result is canonicalized. Out-of-range endpoints and self-loops are
    /// rejected with the offending pair.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canonical: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canonical.push((u.min(v), u.max(v)));
        }
        canonical.sort_unstable();
        canonical.dedup();
        Ok(Self {
            n,
            edges: canonical,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list: `(min, max)` pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency lists for all nodes at once (each list sorted).
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Returns a copy with the edge `(u, v)` added.
    ///
    /// Fails if the edge is already present or invalid.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if self.has_edge(u, v) {
            return Err(Error::AlreadyAdjacent { u, v });
        }
        let mut edges = self.edges.clone();
        edges.push((u, v));
        Self::new(self.n, edges)
    }

    /// Relabels nodes: node `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: perm.len(),
                right: self.n,
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::NotAPermutation(perm.to_vec()));
            }
            seen[p] = true;
        }
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Symmetric 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency(&self) -> DenseMatrix {
        let mut a = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Diagonal degree matrix `D`.
    pub fn degree_matrix(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n, self.n);
        for (v, deg) in self.degrees().into_iter().enumerate() {
            d[(v, v)] = deg as f64;
        }
        d
    }

    /// Graph Laplacian of the requested kind.
    pub fn laplacian(&self, kind: LaplacianKind) -> DenseMatrix {
        match kind {
            LaplacianKind::Combinatorial => {
                let mut l = self.degree_matrix();
                for &(u, v) in &self.edges {
                    l[(u, v)] = -1.0;
                    l[(v, u)] = -1.0;
                }
                l
            }
            LaplacianKind::SymNormalized => {
                let degrees = self.degrees();
                let inv_sqrt: Vec<f64> = degrees
                    .iter()
                    .map(|&d| if d > 0 { 1.0 / (d as f64).sqrt() } else { 0.0 })
                    .collect();
                let mut l = DenseMatrix::identity(self.n, self.n);
                for &(u, v) in &self.edges {
                    let w = inv_sqrt[u] * inv_sqrt[v];
                    l[(u, v)] = -w;
                    l[(v, u)] = -w;
                }
                l
            }
        }
    }

    /// Row-stochastic transition matrix `P = D^{-1} A`.
    ///
    /// Rows of isolated nodes are all-zero (the degree is clamped to 1, which
    /// avoids a division by zero and leaves the zero adjacency row intact).
    pub fn transition_matrix(&self) -> DenseMatrix {
        let degrees = self.degrees();
        let mut p = DenseMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            p[(u, v)] = 1.0 / degrees[u] as f64;
            p[(v, u)] = 1.0 / degrees[v] as f64;
        }
        p
    }

    /// Entry `(u, v)` of the integer power `A^k`: the number of walks of
    /// length `k` from `u` to `v`. Overflow of 64-bit counts is an error.
    pub fn walk_count(&self, u: usize, v: usize, k: usize) -> Result<u64> {
        for node in [u, v] {
            if node >= self.n {
                return Err(Error::NodeOutOfRange { node, n: self.n });
            }
        }
        let power = self.adjacency_power(k)?;
        Ok(power[u * self.n + v])
    }

    /// The diagonal of `A^k`: per-node counts of closed walks of length `k`.
    ///
    /// Counts are exact; if any entry of `A^k` exceeds the 64-bit range the
    /// computation refuses with an error naming `k` rather than saturating.
    pub fn closed_walk_diagonal(&self, k: usize) -> Result<Vec<u64>> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "walk length must be at least 1".into(),
            ));
        }
        let power = self.adjacency_power(k)?;
        Ok((0..self.n).map(|v| power[v * self.n + v]).collect())
    }

    /// Integer `A^k` in row-major order with checked 64-bit arithmetic.
    fn adjacency_power(&self, k: usize) -> Result<Vec<u64>> {
        let n = self.n;
        let mut a = vec![0u64; n * n];
        for &(u, v) in &self.edges {
            a[u * n + v] = 1;
            a[v * n + u] = 1;
        }
        if k == 0 {
            let mut id = vec![0u64; n * n];
            for i in 0..n {
                id[i * n + i] = 1;
            }
            return Ok(id);
        }
        let mut acc = a.clone();
        for _ in 1..k {
            acc = checked_matmul(&acc, &a, n).ok_or(Error::WalkCountOverflow { k })?;
        }
        Ok(acc)
    }

    /// Exact triangle count.
    ///
    /// Computed twice — by neighbor-intersection enumeration and as
    /// `Tr(A^3) / 6` with integer matrix powers. A disagreement means an
    /// oracle bug and panics.
    pub fn triangle_count(&self) -> u64 {
        let adj = self.adjacency_lists();
        let mut by_enumeration = 0u64;
        for &(u, v) in &self.edges {
            // Common neighbors w with u < v < w close a triangle exactly once.
            let (mut i, mut j) = (0, 0);
            let (nu, nv) = (&adj[u], &adj[v]);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if nu[i] > v {
                            by_enumeration += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        let diag = self
            .closed_walk_diagonal(3)
            .expect("A^3 overflowed 64-bit counts");
        let trace: u64 = diag.iter().sum();
        assert_eq!(trace % 6, 0, "Tr(A^3) not divisible by 6");
        let by_trace = trace / 6;
        assert_eq!(
            by_enumeration, by_trace,
            "triangle count oracles disagree: enumeration {by_enumeration}, trace {by_trace}"
        );
        by_enumeration
    }

    /// True iff the graph has a single connected component.
    ///
    /// Decided with a disjoint-set union and cross-checked by traversal.
    pub fn is_connected(&self) -> bool {
        let mut dsu = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        let by_dsu = (1..self.n).all(|v| dsu.find(v) == dsu.find(0));

        let adj = self.adjacency_lists();
        let mut visited = vec![false; self.n];
        let mut stack = vec![0usize];
        visited[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        let by_traversal = count == self.n;
        assert_eq!(by_dsu, by_traversal, "connectivity oracles disagree");
        by_dsu
    }

    /// Connected components as sorted node lists, sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Non-adjacent node pairs with identical neighborhoods, in canonical order.
    pub fn twin_pairs(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency_lists();
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) && adj[u] == adj[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Parses the JSON graph format `{"n": int, "edges": [[u, v], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawGraph = serde_json::from_str(text)?;
        Self::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }

    /// Serializes to the canonical JSON graph format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }
}

/// Parses a dataset file: either a single graph object or an array of them.
pub fn parse_dataset(text: &str) -> Result<Vec<Graph>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawGraph::deserialize(deserializer)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// `u64` matrix product with overflow detection. `None` on overflow.
fn checked_matmul(a: &[u64], b: &[u64], n: usize) -> Option<Vec<u64>> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc: u64 = 0;
            for l in 0..n {
                let term = a[i * n + l].checked_mul(b[l * n + j])?;
                acc = acc.checked_add(term)?;
            }
            out[i * n + j] = acc;
        }
    }
    Some(out)
}

/// Disjoint-set union with path compression and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Convenience constructors for the small fixed graphs used throughout the
/// tests and the verification suite.
pub mod fixtures {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).expect("valid path")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    pub fn star(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|v| (0, v))).expect("valid star")
    }

    /// `K_{a,b}` with the size-`a` partition first: nodes `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(
            a + b,
            (0..a).flat_map(move |u| (a..a + b).map(move |v| (u, v))),
        )
        .expect("valid complete bipartite graph")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, edges).expect("valid Petersen graph")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn builds_triangle_with_three_edges() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn dedups_reversed_pairs() {
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        match Graph::new(4, [(0, 4)]) {
            Err(Error::EdgeOutOfRange { u: 0, v: 4, n: 4 }) => {}
            other => panic!("expected range error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_self_loop() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
    }

    #[test]
    fn laplacian_of_cycle_is_two_regular() {
        let l = cycle(3).laplacian(LaplacianKind::Combinatorial);
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 2.0 } else { -1.0 };
                assert_eq!(l[(i, j)], expected);
            }
        }
    }

    #[test]
    fn laplacian_of_single_edge() {
        let l = path(2).laplacian(LaplacianKind::Combinatorial);
        assert_eq!(l[(0, 0)], 1.0);
        assert_eq!(l[(0, 1)], -1.0);
        assert_eq!(l[(1, 0)], -1.0);
        assert_eq!(l[(1, 1)], 1.0);
    }

    #[test]
    fn laplacian_diagonal_of_k24_partition_first() {
        let l = complete_bipartite(2, 4).laplacian(LaplacianKind::Combinatorial);
        let diag: Vec<f64> = (0..6).map(|i| l[(i, i)]).collect();
        assert_eq!(diag, vec![4.0, 4.0, 2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn sym_normalized_keeps_isolated_diagonal_one() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let l = g.laplacian(LaplacianKind::SymNormalized);
        assert_eq!(l[(2, 2)], 1.0);
        assert_eq!(l[(2, 0)], 0.0);
        assert_eq!(l[(0, 1)], -1.0);
    }

    #[test]
    fn transition_matrix_of_cycle3() {
        let p = cycle(3).transition_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { 0.0 } else { 0.5 };
                assert_eq!(p[(i, j)], expected);
            }
        }
    }

    #[test]
    fn transition_matrix_of_single_edge_swaps() {
        let p = path(2).transition_matrix();
        assert_eq!(p[(0, 1)], 1.0);
        assert_eq!(p[(1, 0)], 1.0);
        assert_eq!(p[(0, 0)], 0.0);
    }

    #[test]
    fn isolated_node_row_is_zero() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let p = g.transition_matrix();
        for j in 0..3 {
            assert_eq!(p[(2, j)], 0.0);
        }
    }

    #[test]
    fn triangle_counts_for_fixtures() {
        assert_eq!(complete(3).triangle_count(), 1);
        assert_eq!(complete(4).triangle_count(), 4);
        assert_eq!(complete_bipartite(2, 4).triangle_count(), 0);
        let with_twin_edge = complete_bipartite(2, 4).with_edge(0, 1).unwrap();
        assert_eq!(with_twin_edge.triangle_count(), 4);
    }

    #[test]
    fn closed_walks_on_cycle3() {
        assert_eq!(cycle(3).closed_walk_diagonal(3).unwrap(), vec![2, 2, 2]);
    }

    #[test]
    fn closed_walks_of_length_one_are_zero() {
        let g = Graph::new(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.closed_walk_diagonal(1).unwrap(), vec![0; 5]);
    }

    #[test]
    fn closed_walks_on_single_edge() {
        assert_eq!(path(2).closed_walk_diagonal(2).unwrap(), vec![1, 1]);
    }

    #[test]
    fn walk_count_overflow_is_detected() {
        let g = complete(24);
        // 23^k grows past u64 well before k = 40.
        let err = g.closed_walk_diagonal(40).unwrap_err();
        assert!(matches!(err, Error::WalkCountOverflow { k: 40 }));
    }

    #[test]
    fn connectivity() {
        assert!(cycle(3).is_connected());
        let two_edges = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
    }

    #[test]
    fn twin_pairs_in_k24() {
        let g = complete_bipartite(2, 4);
        let twins = g.twin_pairs();
        assert!(twins.contains(&(0, 1)));
        // The size-4 partition nodes are pairwise twins as well.
        assert_eq!(twins.len(), 1 + 6);
    }

    #[test]
    fn json_round_trip_is_identity() {
        let g = Graph::new(4, [(3, 2), (0, 1), (1, 0)]).unwrap();
        let text = g.to_json();
        let back = Graph::from_json(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(text, back.to_json());
    }

    #[test]
    fn json_parse_rejects_bad_edges() {
        let err = Graph::from_json(r#"{"n": 2, "edges": [[0, 7]]}"#).unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn dataset_parsing_accepts_one_graph_or_an_array() {
        let single = parse_dataset(r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(single.len(), 1);
        let many =
            parse_dataset(r#"[{"n": 2, "edges": [[0, 1]]}, {"n": 3, "edges": []}]"#).unwrap();
        assert_eq!(many.len(), 2);
        assert_eq!(many[1].n(), 3);
        assert!(parse_dataset(r#"[{"n": 2, "edges": [[0, 4]]}]"#).is_err());
    }

    #[test]
    fn permuted_relabels_edges() {
        let g = path(3);
        let p = g.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.edges(), &[(0, 1), (0, 2)]);
    }

    // triangle_count cross-checks its two routes internally and panics on
    // disagreement, so running it is the assertion.
    #[test]
    fn triangle_oracles_agree_up_to_64_nodes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7714);
        for n in [16usize, 32, 48, 64] {
            for _ in 0..4 {
                let p = rng.gen_range(0.1..0.8);
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::new(n, edges).unwrap().triangle_count();
            }
        }
    }
}
