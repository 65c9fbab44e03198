//! # graphtok
//!
//! Graph tokenization and verification toolkit.
//!
//! The crate implements three node-level tokenization families for simple
//! undirected graphs — spectral (Laplacian eigenpairs), random-walk (return
//! probabilities of the transition matrix), and adjacency rows (optionally
//! compressed by a shared Gaussian projection) — together with the
//! combinatorial gadgets that expose their blind spots:
//!
//! * a 12-node switching pair that is planar/non-planar with identical
//!   random-walk tokens ([`constructions::planar_gm_pair`]),
//! * twin-node pairs whose truncated spectral tokens coincide while the
//!   triangle counts differ ([`constructions::bipartite_twin_pair`],
//!   [`constructions::clique_join_twin_pair`]),
//! * a layered permutation gadget reducing walk detection to composing
//!   permutations of five elements ([`constructions::s5_walk_gadget`]),
//! * a tripartite gadget whose triangles witness set intersection
//!   ([`constructions::disjointness_triangle_gadget`]).
//!
//! Every gadget ships with an exact combinatorial oracle (integer walk
//! counts, neighbor-intersection triangle counts, a left-right planarity
//! test) and [`analysis::run_verification_suite`] machine-checks the claimed
//! properties against those oracles.

use thiserror::Error;

pub mod analysis;
pub mod constructions;
pub mod graph;
pub mod planarity;
pub mod spectra;
pub mod tokens;

pub use graph::{Graph, LaplacianKind};

/// Dense double-precision matrix used throughout the crate.
pub type DenseMatrix = nalgebra::DMatrix<f64>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("edge ({u}, {v}) has an endpoint out of range for {n} nodes")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },

    #[error("self-loop at node {0} is not allowed")]
    SelfLoop(usize),

    #[error("node index {node} out of range for {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |M[{i},{j}] - M[{j},{i}]| = {diff:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("matrix entry ({i}, {j}) is not finite")]
    NonFinite { i: usize, j: usize },

    #[error("eigendecomposition did not converge within the iteration budget")]
    EigenDidNotConverge,

    #[error("eigendecomposition residual {residual:e} exceeds tolerance {tol:e}")]
    EigenResidual { residual: f64, tol: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("walk counts for length {k} overflow 64-bit integers")]
    WalkCountOverflow { k: usize },

    #[error("nodes {u} and {v} are already adjacent")]
    AlreadyAdjacent { u: usize, v: usize },

    #[error("switching set must be nonempty and of even size, got {0}")]
    SwitchingSetOddSize(usize),

    #[error(
        "induced subgraph on the switching set is not regular: \
         node {node} has internal degree {got}, expected {expected}"
    )]
    SwitchingSetNotRegular {
        node: usize,
        got: usize,
        expected: usize,
    },

    #[error(
        "node {node} outside the switching set has {count} neighbors in it; \
         allowed counts are 0, {half} and {size}"
    )]
    SwitchingSetBadProfile {
        node: usize,
        count: usize,
        half: usize,
        size: usize,
    },

    #[error("switching-set evidence does not match this graph (stale set)")]
    SwitchingSetStale,

    #[error("not a permutation of 0..5: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("generator gave up after {attempts} attempts: {reason}")]
    RetryBudgetExhausted { attempts: usize, reason: String },

    #[error("detector epsilon underflows: n^k = {n}^{k} exceeds the double range; use the exact walk-count oracle")]
    DetectorEpsilonUnderflow { n: usize, k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
