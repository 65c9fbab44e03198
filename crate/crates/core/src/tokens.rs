//! The three node-token families — spectral, random-walk and adjacency —
//! plus truncated, projected, combined and padded variants.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::graph::LaplacianKind;
use crate::spectra::{self, EigenSystem};
use crate::{DenseMatrix, Error, Graph, Result};

/// Which end of the spectrum a truncated spectral tokenization keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumEnd {
    Smallest,
    Largest,
}

/// Tokenization family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenFamily {
    Spectral,
    RandomWalk,
    Adjacency,
    AdjacencyProjected,
    Combined,
}

/// Family-specific parameter record carried alongside a token matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TokenParams {
    Spectral {
        /// Number of eigenpairs kept.
        level: usize,
        kind: LaplacianKind,
        which: SpectrumEnd,
        drop_trivial: bool,
    },
    RandomWalk {
        walk_length: usize,
    },
    Adjacency,
    AdjacencyProjected {
        dim: usize,
        seed: u64,
    },
    Combined {
        parts: Vec<TokenParams>,
    },
}

impl TokenParams {
    pub fn family(&self) -> TokenFamily {
        match self {
            TokenParams::Spectral { .. } => TokenFamily::Spectral,
            TokenParams::RandomWalk { .. } => TokenFamily::RandomWalk,
            TokenParams::Adjacency => TokenFamily::Adjacency,
            TokenParams::AdjacencyProjected { .. } => TokenFamily::AdjacencyProjected,
            TokenParams::Combined { .. } => TokenFamily::Combined,
        }
    }
}

/// An `n × d` matrix of per-node tokens plus tokenizer metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenMatrix {
    pub tokens: DenseMatrix,
    pub params: TokenParams,
    /// Set when zero columns were appended by [`pad_tokens`].
    pub padded_width: Option<usize>,
}

impl TokenMatrix {
    pub fn rows(&self) -> usize {
        self.tokens.nrows()
    }

    pub fn width(&self) -> usize {
        self.tokens.ncols()
    }

    pub fn family(&self) -> TokenFamily {
        self.params.family()
    }

    /// Largest absolute entrywise difference to another token matrix.
    pub fn max_abs_diff(&self, other: &TokenMatrix) -> Result<f64> {
        if self.rows() != other.rows() || self.width() != other.width() {
            return Err(Error::DimensionMismatch {
                left: self.rows() * self.width(),
                right: other.rows() * other.width(),
            });
        }
        Ok((&self.tokens - &other.tokens).amax())
    }

    /// CSV rendering: header `node,c0,c1,...`, doubles at 17 significant
    /// digits so values round-trip exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("node");
        for c in 0..self.width() {
            write!(out, ",c{c}").unwrap();
        }
        out.push('\n');
        for r in 0..self.rows() {
            write!(out, "{r}").unwrap();
            for c in 0..self.width() {
                write!(out, ",{:.16e}", self.tokens[(r, c)]).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Sidecar metadata as a JSON string.
    pub fn sidecar_json(&self) -> String {
        #[derive(Serialize)]
        struct Sidecar<'a> {
            rows: usize,
            cols: usize,
            padded_width: Option<usize>,
            #[serde(flatten)]
            params: &'a TokenParams,
        }
        serde_json::to_string_pretty(&Sidecar {
            rows: self.rows(),
            cols: self.width(),
            padded_width: self.padded_width,
            params: &self.params,
        })
        .expect("sidecar serialization cannot fail")
    }
}

/// Spectral tokens built directly from a graph.
///
/// Row `v` is `(u_{i1}(v), …, u_{ik}(v), λ_{i1}, …, λ_{ik})` where the `k`
/// indices are the smallest or largest positions of the (ascending,
/// sign-canonicalized) eigensystem of the requested Laplacian. `level: None`
/// keeps everything available. `drop_trivial` removes the first eigenvector
/// before slicing, mirroring the padded experimental variant.
pub fn spectral_tokens(
    g: &Graph,
    level: Option<usize>,
    kind: LaplacianKind,
    which: SpectrumEnd,
    drop_trivial: bool,
) -> Result<TokenMatrix> {
    let eig = spectra::eigendecompose(&g.laplacian(kind), spectra::TOL_EIG)?;
    spectral_tokens_from(&eig, level, kind, which, drop_trivial)
}

/// Spectral tokens from an already-computed eigensystem.
///
/// Used when two graphs must be tokenized over a shared eigenvector block
/// (cospectral comparisons); `kind` only labels the metadata.
pub fn spectral_tokens_from(
    eig: &EigenSystem,
    level: Option<usize>,
    kind: LaplacianKind,
    which: SpectrumEnd,
    drop_trivial: bool,
) -> Result<TokenMatrix> {
    let n = eig.dim();
    let start = usize::from(drop_trivial);
    let available = n - start;
    let k = level.unwrap_or(available);
    if k < 1 || k > available {
        return Err(Error::InvalidParameter(format!(
            "spectral level {k} out of range 1..={available}"
        )));
    }
    let first = match which {
        SpectrumEnd::Smallest => start,
        SpectrumEnd::Largest => n - k,
    };
    let mut tokens = DenseMatrix::zeros(n, 2 * k);
    for (c, idx) in (first..first + k).enumerate() {
        tokens.set_column(c, &eig.vectors().column(idx));
        let lambda = eig.values()[idx];
        for r in 0..n {
            tokens[(r, k + c)] = lambda;
        }
    }
    Ok(TokenMatrix {
        tokens,
        params: TokenParams::Spectral {
            level: k,
            kind,
            which,
            drop_trivial,
        },
        padded_width: None,
    })
}

/// Random-walk tokens: column `i` (0-based) holds the return probability
/// `(P^{i+1})_{vv}` of the row-stochastic transition matrix.
///
/// Powers are accumulated by repeated dense multiplication in double
/// precision, keeping this family independent of the eigensolver.
pub fn rw_tokens(g: &Graph, t: usize) -> Result<TokenMatrix> {
    if t == 0 {
        return Err(Error::InvalidParameter(
            "walk length must be at least 1".into(),
        ));
    }
    let n = g.n();
    let p = g.transition_matrix();
    let mut tokens = DenseMatrix::zeros(n, t);
    let mut power = p.clone();
    for i in 0..t {
        for v in 0..n {
            tokens[(v, i)] = power[(v, v)];
        }
        if i + 1 < t {
            power = &power * &p;
        }
    }
    Ok(TokenMatrix {
        tokens,
        params: TokenParams::RandomWalk { walk_length: t },
        padded_width: None,
    })
}

/// Adjacency tokens: each node's 0/1 adjacency row. Lossless.
pub fn adjacency_tokens(g: &Graph) -> TokenMatrix {
    TokenMatrix {
        tokens: g.adjacency(),
        params: TokenParams::Adjacency,
        padded_width: None,
    }
}

/// Rebuilds the graph from adjacency tokens; inverse of [`adjacency_tokens`].
pub fn graph_from_adjacency_tokens(t: &TokenMatrix) -> Result<Graph> {
    let n = t.rows();
    if t.width() != n {
        return Err(Error::DimensionMismatch {
            left: t.width(),
            right: n,
        });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if t.tokens[(u, v)] != 0.0 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

type ProjectionKey = (usize, usize, u64);

fn projection_cache() -> &'static Mutex<HashMap<ProjectionKey, Arc<DenseMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<ProjectionKey, Arc<DenseMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The shared Gaussian projection matrix for `(n, d_tr, seed)`.
///
/// Sampled once per key (entries `N(0,1)` in row-major order from a
/// counter-based generator seeded by `seed`) and reused across all graphs of
/// the same size within the process, including under concurrent callers.
pub fn projection_matrix(n: usize, d_tr: usize, seed: u64) -> Arc<DenseMatrix> {
    let mut cache = projection_cache()
        .lock()
        .expect("projection cache poisoned");
    cache
        .entry((n, d_tr, seed))
        .or_insert_with(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut r = DenseMatrix::zeros(n, d_tr);
            for i in 0..n {
                for j in 0..d_tr {
                    r[(i, j)] = StandardNormal.sample(&mut rng);
                }
            }
            Arc::new(r)
        })
        .clone()
}

/// Adjacency rows compressed by the shared Gaussian projection: `A · R`.
///
/// Deterministic given `(n, d_tr, seed)`.
pub fn adjacency_projected_tokens(g: &Graph, d_tr: usize, seed: u64) -> Result<TokenMatrix> {
    if d_tr == 0 {
        return Err(Error::InvalidParameter(
            "projection dimension must be at least 1".into(),
        ));
    }
    let r = projection_matrix(g.n(), d_tr, seed);
    let tokens = g.adjacency() * r.as_ref();
    Ok(TokenMatrix {
        tokens,
        params: TokenParams::AdjacencyProjected { dim: d_tr, seed },
        padded_width: None,
    })
}

/// Projection with an explicit matrix instead of the seeded cache. Test hook
/// for exercising `A · R` with, e.g., an identity `R`.
pub fn project_adjacency_with(g: &Graph, r: &DenseMatrix) -> Result<DenseMatrix> {
    if r.nrows() != g.n() {
        return Err(Error::DimensionMismatch {
            left: r.nrows(),
            right: g.n(),
        });
    }
    Ok(g.adjacency() * r)
}

/// Horizontal concatenation of token matrices with equal row counts.
pub fn combined_tokens(parts: &[TokenMatrix]) -> Result<TokenMatrix> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidParameter(
            "combined tokenization needs at least one part".into(),
        ));
    };
    let rows = first.rows();
    let mut width = 0usize;
    for p in parts {
        if p.rows() != rows {
            return Err(Error::DimensionMismatch {
                left: rows,
                right: p.rows(),
            });
        }
        width += p.width();
    }
    let mut tokens = DenseMatrix::zeros(rows, width);
    let mut offset = 0;
    for p in parts {
        for c in 0..p.width() {
            tokens.set_column(offset + c, &p.tokens.column(c));
        }
        offset += p.width();
    }
    Ok(TokenMatrix {
        tokens,
        params: TokenParams::Combined {
            parts: parts.iter().map(|p| p.params.clone()).collect(),
        },
        padded_width: None,
    })
}

/// Appends zero columns up to `target_width`. Padding to the current width
/// is the identity.
pub fn pad_tokens(t: &TokenMatrix, target_width: usize) -> Result<TokenMatrix> {
    if target_width < t.width() {
        return Err(Error::InvalidParameter(format!(
            "pad target {target_width} is below current width {}",
            t.width()
        )));
    }
    if target_width == t.width() {
        return Ok(t.clone());
    }
    let mut tokens = DenseMatrix::zeros(t.rows(), target_width);
    for c in 0..t.width() {
        tokens.set_column(c, &t.tokens.column(c));
    }
    Ok(TokenMatrix {
        tokens,
        params: t.params.clone(),
        padded_width: Some(target_width),
    })
}
