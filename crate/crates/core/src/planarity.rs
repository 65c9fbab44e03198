//! Planarity decision via the left-right criterion.
//!
//! A single depth-first orientation pass computes lowpoints and nesting
//! depths; a second pass maintains a stack of conflict pairs of edge
//! intervals and rejects exactly when two return edges are forced onto the
//! same side. The Euler bound `|E| > 3n - 6` is used only as a fast
//! rejection path, and graphs on at most four nodes are planar outright.
//! No embedding is produced.

use serde::{Deserialize, Serialize};

use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanarityMethod {
    /// Full left-right criterion run.
    LeftRight,
    /// Rejected by the `|E| > 3n - 6` edge bound.
    EdgeBound,
    /// Accepted because every graph on at most 4 nodes is planar.
    SmallGraph,
}

/// Outcome of a planarity decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub method: PlanarityMethod,
    /// True exactly when the verdict came from the edge bound; implies
    /// `planar == false`.
    pub edge_bound_shortcut: bool,
}

/// Decides planarity of a simple undirected graph.
///
/// Components are handled independently by the multi-root DFS, so the
/// verdict is correct for disconnected inputs as well.
pub fn is_planar(g: &Graph) -> PlanarityVerdict {
    let n = g.n();
    if n <= 4 {
        return PlanarityVerdict {
            planar: true,
            method: PlanarityMethod::SmallGraph,
            edge_bound_shortcut: false,
        };
    }
    if g.edge_count() > 3 * n - 6 {
        return PlanarityVerdict {
            planar: false,
            method: PlanarityMethod::EdgeBound,
            edge_bound_shortcut: true,
        };
    }
    PlanarityVerdict {
        planar: LrState::new(g).run(),
        method: PlanarityMethod::LeftRight,
        edge_bound_shortcut: false,
    }
}

const NONE: u32 = u32::MAX;

/// Interval of return edges, bounded by edge slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Interval {
    low: u32,
    high: u32,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Debug, Clone, Copy)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn with_right(e: u32) -> Self {
        ConflictPair {
            l: Interval::EMPTY,
            r: Interval { low: e, high: e },
        }
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.l, &mut self.r);
    }
}

struct LrState {
    n: usize,
    /// Per node: `(neighbor, edge slot)`.
    adj: Vec<Vec<(usize, u32)>>,
    /// Oriented endpoints per slot; `NONE` until dfs1 orients the slot.
    src: Vec<u32>,
    dst: Vec<u32>,
    height: Vec<u32>,
    parent_edge: Vec<u32>,
    lowpt: Vec<u32>,
    lowpt2: Vec<u32>,
    nesting_depth: Vec<u32>,
    /// Outgoing slots per node, sorted by nesting depth before the test pass.
    ordered: Vec<Vec<u32>>,
    reference: Vec<u32>,
    lowpt_edge: Vec<u32>,
    /// Stack height recorded when a slot starts being processed.
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

impl LrState {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let m = g.edge_count();
        let mut adj = vec![Vec::new(); n];
        for (slot, &(u, v)) in g.edges().iter().enumerate() {
            adj[u].push((v, slot as u32));
            adj[v].push((u, slot as u32));
        }
        LrState {
            n,
            adj,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ordered: vec![Vec::new(); n],
            reference: vec![NONE; m],
            lowpt_edge: vec![NONE; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
        }
    }

    fn run(&mut self) -> bool {
        let mut roots = Vec::new();
        for v in 0..self.n {
            if self.height[v] == NONE {
                self.height[v] = 0;
                roots.push(v);
                self.orient(v);
            }
        }
        for slot in 0..self.src.len() {
            let s = self.src[slot] as usize;
            self.ordered[s].push(slot as u32);
        }
        let nesting = std::mem::take(&mut self.nesting_depth);
        for list in &mut self.ordered {
            list.sort_by_key(|&e| nesting[e as usize]);
        }
        self.nesting_depth = nesting;
        roots.into_iter().all(|v| self.test(v))
    }

    /// First pass: orient edges away from the DFS root and compute
    /// lowpoints and nesting depths.
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for idx in 0..self.adj[v].len() {
            let (w, slot) = self.adj[v][idx];
            if self.src[slot as usize] != NONE {
                continue;
            }
            let s = slot as usize;
            self.src[s] = v as u32;
            self.dst[s] = w as u32;
            self.lowpt[s] = self.height[v];
            self.lowpt2[s] = self.height[v];
            if self.height[w] == NONE {
                self.parent_edge[w] = slot;
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[s] = self.height[w];
            }

            self.nesting_depth[s] = 2 * self.lowpt[s];
            if self.lowpt2[s] < self.height[v] {
                // Chordal edges nest inside non-chordal ones.
                self.nesting_depth[s] += 1;
            }

            if e != NONE {
                let pe = e as usize;
                if self.lowpt[s] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[s]);
                    self.lowpt[pe] = self.lowpt[s];
                } else if self.lowpt[s] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[s]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[s]);
                }
            }
        }
    }

    /// Second pass: maintain the conflict-pair stack; `false` means a
    /// left-right constraint is unsatisfiable and the graph is non-planar.
    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let order = self.ordered[v].clone();
        for (idx, &slot) in order.iter().enumerate() {
            let s = slot as usize;
            let w = self.dst[s] as usize;
            self.stack_bottom[s] = self.stack.len();
            if slot == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[s] = slot;
                self.stack.push(ConflictPair::with_right(slot));
            }

            if self.lowpt[s] < self.height[v] {
                // The edge has a return edge below v.
                if idx == 0 {
                    self.lowpt_edge[e as usize] = self.lowpt_edge[s];
                } else if !self.add_constraints(slot, e) {
                    return false;
                }
            }
        }

        if e != NONE {
            let u = self.src[e as usize] as usize;
            self.trim_back_edges(u);
            if self.lowpt[e as usize] < self.height[u] {
                // The reference of e is a highest return edge.
                let top = *self
                    .stack
                    .last()
                    .expect("return edge without conflict pair");
                let hl = top.l.high;
                let hr = top.r.high;
                self.reference[e as usize] = if hl != NONE
                    && (hr == NONE || self.lowpt[hl as usize] > self.lowpt[hr as usize])
                {
                    hl
                } else {
                    hr
                };
            }
        }
        true
    }

    fn conflicting(&self, i: &Interval, b: u32) -> bool {
        !i.is_empty() && self.lowpt[i.high as usize] > self.lowpt[b as usize]
    }

    fn add_constraints(&mut self, ei: u32, e: u32) -> bool {
        let mut p = ConflictPair {
            l: Interval::EMPTY,
            r: Interval::EMPTY,
        };
        let bottom = self.stack_bottom[ei as usize];

        // Merge the return edges of ei into p.r.
        loop {
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if !q.l.is_empty() {
                q.swap();
            }
            if !q.l.is_empty() {
                return false;
            }
            if self.lowpt[q.r.low as usize] > self.lowpt[e as usize] {
                if p.r.is_empty() {
                    p.r.high = q.r.high;
                } else {
                    self.reference[p.r.low as usize] = q.r.high;
                }
                p.r.low = q.r.low;
            } else {
                // Align with the lowest return edge of e.
                self.reference[q.r.low as usize] = self.lowpt_edge[e as usize];
            }
            if self.stack.len() == bottom {
                break;
            }
        }

        // Merge conflicting return edges of the earlier siblings into p.l.
        loop {
            let conflicts = match self.stack.last() {
                Some(top) => self.conflicting(&top.l, ei) || self.conflicting(&top.r, ei),
                None => false,
            };
            if !conflicts {
                break;
            }
            let mut q = self.stack.pop().expect("conflict stack underflow");
            if self.conflicting(&q.r, ei) {
                q.swap();
            }
            if self.conflicting(&q.r, ei) {
                return false;
            }
            // The part of q.r below lowpt(ei) joins p.r.
            if p.r.low != NONE {
                self.reference[p.r.low as usize] = q.r.high;
            }
            if q.r.low != NONE {
                p.r.low = q.r.low;
            }
            if p.l.is_empty() {
                p.l.high = q.l.high;
            } else {
                self.reference[p.l.low as usize] = q.l.high;
            }
            p.l.low = q.l.low;
        }

        if !(p.l.is_empty() && p.r.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn lowest(&self, p: &ConflictPair) -> u32 {
        if p.l.is_empty() {
            return self.lowpt[p.r.low as usize];
        }
        if p.r.is_empty() {
            return self.lowpt[p.l.low as usize];
        }
        self.lowpt[p.l.low as usize].min(self.lowpt[p.r.low as usize])
    }

    /// Drops intervals of back edges that end at the parent `u` when the
    /// DFS returns over the edge into `u`.
    fn trim_back_edges(&mut self, u: usize) {
        let hu = self.height[u];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == hu {
                self.stack.pop();
            } else {
                break;
            }
        }

        if let Some(mut p) = self.stack.pop() {
            while p.l.high != NONE && self.dst[p.l.high as usize] as usize == u {
                p.l.high = self.reference[p.l.high as usize];
            }
            if p.l.high == NONE && p.l.low != NONE {
                self.reference[p.l.low as usize] = p.r.low;
                p.l.low = NONE;
            }
            while p.r.high != NONE && self.dst[p.r.high as usize] as usize == u {
                p.r.high = self.reference[p.r.high as usize];
            }
            if p.r.high == NONE && p.r.low != NONE {
                self.reference[p.r.low as usize] = p.l.low;
                p.r.low = NONE;
            }
            self.stack.push(p);
        }
    }
}
