//! Generators for the constructive gadgets behind the theorem checks and
//! the synthetic datasets: switching pairs, twin-node pairs, the layered
//! permutation walk gadget, the set-intersection triangle gadget, and the
//! bridge-pair / Erdős–Rényi samplers.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Graph, Result};

/// A validated switching set: node subset whose induced subgraph is regular
/// while every outside node sees 0, half, or all of it.
///
/// Complementing the S-edges of the half-degree outside nodes preserves the
/// spectrum and every random-walk return probability while potentially
/// changing the topology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchingSet {
    members: Vec<usize>,
    internal_degree: usize,
    outside_profile: BTreeMap<usize, usize>,
}

impl SwitchingSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn internal_degree(&self) -> usize {
        self.internal_degree
    }

    /// Neighbor-count-in-S for every node outside S.
    pub fn outside_profile(&self) -> &BTreeMap<usize, usize> {
        &self.outside_profile
    }
}

/// Checks the switching-set conditions for `s` in `g` and returns the
/// recorded evidence, or an error naming the violating node/condition.
pub fn validate_switching_set(g: &Graph, s: &[usize]) -> Result<SwitchingSet> {
    let size = s.len();
    if size == 0 || !size.is_multiple_of(2) {
        return Err(Error::SwitchingSetOddSize(size));
    }
    let members: BTreeSet<usize> = s.iter().copied().collect();
    if members.len() != size {
        return Err(Error::InvalidParameter(
            "switching set contains duplicate nodes".into(),
        ));
    }
    if let Some(&node) = members.iter().find(|&&v| v >= g.n()) {
        return Err(Error::NodeOutOfRange { node, n: g.n() });
    }

    let mut internal_degree = None;
    for &v in &members {
        let got = g
            .neighbors(v)
            .iter()
            .filter(|w| members.contains(w))
            .count();
        match internal_degree {
            None => internal_degree = Some(got),
            Some(expected) if got != expected => {
                return Err(Error::SwitchingSetNotRegular {
                    node: v,
                    got,
                    expected,
                })
            }
            _ => {}
        }
    }
    let internal_degree = internal_degree.expect("nonempty set");

    let half = size / 2;
    let mut outside_profile = BTreeMap::new();
    for v in 0..g.n() {
        if members.contains(&v) {
            continue;
        }
        let count = g
            .neighbors(v)
            .iter()
            .filter(|w| members.contains(w))
            .count();
        if count != 0 && count != half && count != size {
            return Err(Error::SwitchingSetBadProfile {
                node: v,
                count,
                half,
                size,
            });
        }
        outside_profile.insert(v, count);
    }

    Ok(SwitchingSet {
        members: members.into_iter().collect(),
        internal_degree,
        outside_profile,
    })
}

/// Applies the switch: every outside node with exactly half of S as
/// neighbors has its edges into S complemented; everything else is kept.
/// The degree of every node is invariant.
///
/// The evidence is revalidated against `g` first, so a stale set is
/// rejected instead of producing a wrong graph.
pub fn gm_switch(g: &Graph, set: &SwitchingSet) -> Result<Graph> {
    let fresh = validate_switching_set(g, &set.members)?;
    if &fresh != set {
        return Err(Error::SwitchingSetStale);
    }
    let members = &set.members;
    let half = members.len() / 2;
    let mut edges: BTreeSet<(usize, usize)> = g.edges().iter().copied().collect();
    for (&v, &count) in &set.outside_profile {
        if count != half {
            continue;
        }
        for &s in members {
            let key = (v.min(s), v.max(s));
            if !edges.remove(&key) {
                edges.insert(key);
            }
        }
    }
    Graph::new(g.n(), edges)
}

/// All valid switching sets of a graph, by exhaustive subset enumeration.
/// Intended for small-graph sweeps; rejects n > 20.
pub fn enumerate_switching_sets(g: &Graph) -> Result<Vec<SwitchingSet>> {
    let n = g.n();
    if n > 20 {
        return Err(Error::InvalidParameter(
            "exhaustive switching-set enumeration is limited to n <= 20".into(),
        ));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if let Ok(set) = validate_switching_set(g, &subset) {
            out.push(set);
        }
    }
    Ok(out)
}

/// What a gadget pair claims to differ in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimedDelta {
    /// g1 planar, g2 not, with identical random-walk tokens.
    PlanarityFlip,
    /// Exactly one Laplacian eigenvalue moves `from -> to` and g2 gains
    /// `triangle_delta` triangles, after joining the `twins` by an edge.
    EigenvalueShift {
        from: f64,
        to: f64,
        triangle_delta: u64,
        twins: (usize, usize),
    },
}

/// Two same-size graphs plus the claim a verification check will test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GadgetPair {
    pub g1: Graph,
    pub g2: Graph,
    pub label: String,
    pub claimed_delta: ClaimedDelta,
}

/// The 12-node switching pair: `g1` is planar, `g2 = gm_switch(g1, S)` is
/// not, and both share every random-walk return probability.
///
/// Node order: the switching set `s1..s4` is `0..4`, the active outside
/// nodes `u1..u6` are `4..10`, the inert nodes `x1, x2` are `10, 11`.
pub fn planar_gm_pair() -> GadgetPair {
    let (s1, s2, s3, s4) = (0, 1, 2, 3);
    let (u1, u2, u3, u4, u5, u6) = (4, 5, 6, 7, 8, 9);
    let (x1, x2) = (10, 11);
    let edges = vec![
        // Every active outside node sees exactly two of the four S nodes.
        (u1, s1),
        (u1, s2),
        (u2, s3),
        (u2, s4),
        (u3, s1),
        (u3, s3),
        (u4, s2),
        (u4, s4),
        (u5, s1),
        (u5, s4),
        (u6, s2),
        (u6, s3),
        // Structural edges strictly outside S.
        (u1, u3),
        (u1, u4),
        (u1, u5),
        (u1, u6),
        (u1, x2),
        (u2, u3),
        (u2, u4),
        (u2, u5),
        (u2, u6),
        (u2, x1),
        (u3, u5),
        (u3, u6),
        (u3, x2),
        (u4, u5),
        (u4, u6),
        (u4, x1),
        (u6, x1),
        (u6, x2),
    ];
    let g1 = Graph::new(12, edges).expect("the fixed 12-node graph is valid");
    let set = validate_switching_set(&g1, &[s1, s2, s3, s4])
        .expect("S is a valid switching set by construction");
    let g2 = gm_switch(&g1, &set).expect("switch of a validated set succeeds");
    GadgetPair {
        g1,
        g2,
        label: "planar_gm_pair".into(),
        claimed_delta: ClaimedDelta::PlanarityFlip,
    }
}

/// Case 1 twin pair: `g1 = K_{2,n-2}` with the size-2 partition first
/// (twins 0 and 1); `g2` adds the twin edge. The twins share degree
/// `n - 2`, so that eigenvalue moves to `n` and `n - 2` triangles appear;
/// every truncated spectral tokenization keeping the k smallest eigenpairs
/// (k <= n-2) is blind to the change.
pub fn bipartite_twin_pair(n: usize) -> Result<GadgetPair> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "twin pairs need n >= 5, got {n}"
        )));
    }
    let g1 = Graph::new(n, (2..n).flat_map(|v| [(0, v), (1, v)]))?;
    let g2 = g1.with_edge(0, 1)?;
    Ok(GadgetPair {
        g1,
        g2,
        label: "bipartite_twin_pair".into(),
        claimed_delta: ClaimedDelta::EigenvalueShift {
            from: (n - 2) as f64,
            to: n as f64,
            triangle_delta: (n - 2) as u64,
            twins: (0, 1),
        },
    })
}

/// Case 2 twin pair: `g1` joins a clique on `0..n-2` with the two
/// non-adjacent twins `n-2, n-1` connected to every clique node. Adding the
/// twin edge moves the eigenvalue `n - 2` to `n` and creates `n - 2`
/// triangles; truncations keeping the k largest eigenpairs (k <= n-2) are
/// blind to it.
pub fn clique_join_twin_pair(n: usize) -> Result<GadgetPair> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "twin pairs need n >= 5, got {n}"
        )));
    }
    let clique = n - 2;
    let (u, v) = (n - 2, n - 1);
    let mut edges: Vec<(usize, usize)> = (0..clique)
        .flat_map(|a| ((a + 1)..clique).map(move |b| (a, b)))
        .collect();
    for c in 0..clique {
        edges.push((c, u));
        edges.push((c, v));
    }
    let g1 = Graph::new(n, edges)?;
    let g2 = g1.with_edge(u, v)?;
    Ok(GadgetPair {
        g1,
        g2,
        label: "clique_join_twin_pair".into(),
        claimed_delta: ClaimedDelta::EigenvalueShift {
            from: (n - 2) as f64,
            to: n as f64,
            triangle_delta: (n - 2) as u64,
            twins: (u, v),
        },
    })
}

/// A permutation of five elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation5([usize; 5]);

impl Permutation5 {
    pub const IDENTITY: Permutation5 = Permutation5([0, 1, 2, 3, 4]);

    pub fn new(mapping: [usize; 5]) -> Result<Self> {
        let mut seen = [false; 5];
        for &x in &mapping {
            if x >= 5 || seen[x] {
                return Err(Error::NotAPermutation(mapping.to_vec()));
            }
            seen[x] = true;
        }
        Ok(Permutation5(mapping))
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut mapping = [0, 1, 2, 3, 4];
        mapping.shuffle(rng);
        Permutation5(mapping)
    }
}

/// Where `s` lands under the chain `perms[last] ∘ … ∘ perms[0]`.
pub fn compose_chain(perms: &[Permutation5], s: usize) -> usize {
    perms.iter().fold(s, |x, p| p.apply(x))
}

/// A layered walk gadget with its closing edge and computed walk length.
#[derive(Debug, Clone, Serialize)]
pub struct WalkGadget {
    pub graph: Graph,
    /// Number of 5-node layers (`perms.len() + 1`).
    pub layers: usize,
    /// Node id of index `s` in the first layer.
    pub source: usize,
    /// Node id of index `t` in the last layer.
    pub target: usize,
    /// Length of a closed walk that visits every layer once and returns
    /// through the closing edge: `layers`.
    pub spanning_walk_length: usize,
}

/// Builds the layered permutation gadget.
///
/// `perms[i]` is the perfect matching between layer `i` and layer `i + 1`
/// (node `a` of layer `i` joins node `perms[i](a)` of layer `i + 1`), and a
/// single closing edge joins node `s` of the first layer to node `t` of the
/// last. A spanning closed walk through all layers exists iff the chained
/// permutations map `s` to `t`.
pub fn s5_walk_gadget(perms: &[Permutation5], s: usize, t: usize) -> Result<WalkGadget> {
    if perms.len() < 2 {
        return Err(Error::InvalidParameter(
            "the walk gadget needs at least two permutations".into(),
        ));
    }
    if s >= 5 || t >= 5 {
        return Err(Error::InvalidParameter(format!(
            "layer indices must be in 0..5, got s={s}, t={t}"
        )));
    }
    let layers = perms.len() + 1;
    let n = 5 * layers;
    let mut edges = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        for a in 0..5 {
            edges.push((5 * i + a, 5 * (i + 1) + p.apply(a)));
        }
    }
    let source = s;
    let target = 5 * (layers - 1) + t;
    edges.push((source, target));
    Ok(WalkGadget {
        graph: Graph::new(n, edges)?,
        layers,
        source,
        target,
        spanning_walk_length: layers,
    })
}

impl WalkGadget {
    /// Number of closed walks at the source of spanning length that use the
    /// closing edge exactly once, from integer walk counts on the gadget
    /// with the closing edge removed. Nonzero iff the permutation chain
    /// maps `s` to `t`, and each direction of the spanning cycle counts
    /// once.
    ///
    /// For odd spanning lengths this equals the closed-walk diagonal of the
    /// full gadget at the source (the layered part is bipartite, so no
    /// other closed walk of that length exists); that identity is asserted.
    pub fn spanning_walk_count(&self) -> Result<u64> {
        let closing = (self.source.min(self.target), self.source.max(self.target));
        let without_closing: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != closing)
            .collect();
        let open = Graph::new(self.graph.n(), without_closing)?;
        let monotone = open.walk_count(self.target, self.source, self.spanning_walk_length - 1)?;
        let count = 2 * monotone;
        if self.spanning_walk_length % 2 == 1 {
            let diag = self.graph.closed_walk_diagonal(self.spanning_walk_length)?;
            assert_eq!(
                diag[self.source], count,
                "trace oracle disagrees with the closing-edge count"
            );
        }
        Ok(count)
    }

    pub fn spanning_walk_exists(&self) -> Result<bool> {
        Ok(self.spanning_walk_count()? > 0)
    }
}

/// Square 0/1 matrix used as gadget input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: bits.len(),
                right: n * n,
            });
        }
        Ok(BitMatrix { n, bits })
    }

    /// Decodes row-major bits from a mask; handy for exhaustive sweeps.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let bits = (0..n * n).map(|i| mask >> i & 1 == 1).collect();
        BitMatrix { n, bits }
    }

    pub fn random<R: Rng>(n: usize, density: f64, rng: &mut R) -> Self {
        let bits = (0..n * n).map(|_| rng.gen_bool(density)).collect();
        BitMatrix { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }
}

/// Tripartite triangle gadget on `3n` nodes: `a` encodes the bipartite
/// edges between the first and second part, `b` (index-aligned: `b[j][i]`
/// joins node `j` of the second part to node `i` of the third) encodes the
/// second-to-third edges, and a fixed perfect matching joins part one to
/// part three. The gadget has a triangle iff some `a[i][j] && b[j][i]`.
pub fn disjointness_triangle_gadget(a: &BitMatrix, b: &BitMatrix) -> Result<Graph> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    if n == 0 {
        return Err(Error::InvalidParameter("gadget needs n >= 1".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) {
                edges.push((i, n + j));
            }
            if b.get(j, i) {
                edges.push((n + j, 2 * n + i));
            }
        }
        edges.push((i, 2 * n + i));
    }
    Graph::new(3 * n, edges)
}

/// The direct intersection witness `∃ (i,j): a[i][j] && b[j][i]`,
/// independent of the gadget construction.
pub fn disjointness_witness(a: &BitMatrix, b: &BitMatrix) -> bool {
    let n = a.n().min(b.n());
    (0..n).any(|i| (0..n).any(|j| a.get(i, j) && b.get(j, i)))
}

/// Erdős–Rényi graph: each pair `(u, v)`, `u < v` in lexicographic order,
/// gets an edge independently with probability `p`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

const BRIDGE_RETRY_BUDGET: usize = 64;

/// Two dense Erdős–Rényi halves, either joined by three random inter-half
/// edges (`connected = true`) or kept apart with the three extra edges
/// placed inside the halves instead.
///
/// Halves are regenerated until both are internally connected (bounded
/// retries), so the final connectivity always matches the label: connected
/// halves plus inter-half edges are connected, and with no inter-half edge
/// the graph cannot be.
pub fn bridge_pair_graph<R: Rng>(n: usize, p: f64, connected: bool, rng: &mut R) -> Result<Graph> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "bridge pairs need an even n >= 4, got {n}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let half = n / 2;
    for _ in 0..BRIDGE_RETRY_BUDGET {
        let lower = erdos_renyi(half, p, rng)?;
        let upper = erdos_renyi(half, p, rng)?;
        if !lower.is_connected() || !upper.is_connected() {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = lower.edges().to_vec();
        edges.extend(upper.edges().iter().map(|&(u, v)| (u + half, v + half)));

        if connected {
            let mut cross: Vec<(usize, usize)> = (0..half)
                .flat_map(|u| (half..n).map(move |v| (u, v)))
                .collect();
            cross.shuffle(rng);
            edges.extend(cross.into_iter().take(3));
        } else {
            let present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            let mut free: Vec<(usize, usize)> = (0..half)
                .flat_map(|u| ((u + 1)..half).map(move |v| (u, v)))
                .chain((half..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))
                .filter(|e| !present.contains(e))
                .collect();
            if free.len() < 3 {
                continue;
            }
            free.shuffle(rng);
            edges.extend(free.into_iter().take(3));
        }

        let g = Graph::new(n, edges)?;
        if g.is_connected() == connected {
            return Ok(g);
        }
    }
    Err(Error::RetryBudgetExhausted {
        attempts: BRIDGE_RETRY_BUDGET,
        reason: format!("could not realize a bridge pair with n={n}, p={p}"),
    })
}
