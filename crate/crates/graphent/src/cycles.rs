//! Cycle enumeration, the exclusive-cycles condition, cycle-chain
//! statistics, and the dimensions / Gelfand–Kirillov dimensions they
//! determine.
//!
//! A *simple cycle* is a closed path whose source vertices are pairwise
//! distinct; it is stored in its canonical rotation (lexicographically least
//! sequence of edge names). The *exclusive cycles condition* (every pair of
//! distinct cycles is vertex-disjoint) is decided in linear time: it holds
//! iff no vertex has two out-edges that both stay inside the vertex's own
//! strongly connected component. This avoids enumerating cycles on graphs
//! where their number explodes, and guarantees that when the condition does
//! hold, the number of cycles is at most the number of vertices (each SCC
//! carries at most one), so enumeration behind the cap never fails there.
//!
//! Under the condition, distinct cycles are disjoint and their reachability
//! relation is a DAG; `d1` is the longest chain of cycles connected by paths
//! (of length ≥ 1), and `d2` the longest such chain whose last cycle has an
//! exit. These give the Gelfand–Kirillov dimensions: `d1` for the path
//! algebra and `max(2·d1 − 1, 2·d2)` for the Leavitt path algebra, infinite
//! in both cases when the condition fails.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

/// Default cap on the number of enumerated cycles.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum CycleError {
    #[error("cycle count exceeds the cap of {cap}")]
    TooManyCycles { cap: usize },
    #[error("cycles {first:?} and {second:?} share a vertex")]
    NotExclusive {
        first: Vec<String>,
        second: Vec<String>,
    },
    #[error("edge sequence does not form a simple cycle: {reason}")]
    NotACycle { reason: String },
}

/// A simple cycle, stored in canonical rotation (lexicographically least
/// edge-name rotation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<EdgeId>,
}

impl Cycle {
    /// Validate that `edges` forms a simple closed path in `g` and store it
    /// in canonical rotation.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Cycle, CycleError> {
        if edges.is_empty() {
            return Err(CycleError::NotACycle {
                reason: "empty edge sequence".into(),
            });
        }
        for window in 0..edges.len() {
            let e = &g.edges()[edges[window]];
            let next = &g.edges()[edges[(window + 1) % edges.len()]];
            if e.range != next.source {
                return Err(CycleError::NotACycle {
                    reason: format!("range of {} is not the source of {}", e.name, next.name),
                });
            }
        }
        let mut sources: Vec<VertexId> = edges.iter().map(|&e| g.edges()[e].source).collect();
        sources.sort_unstable();
        sources.dedup();
        if sources.len() != edges.len() {
            return Err(CycleError::NotACycle {
                reason: "repeated vertex".into(),
            });
        }
        Ok(Cycle::canonical(g, edges))
    }

    /// Rotate so the edge-name sequence is lexicographically least.
    fn canonical(g: &Graph, edges: Vec<EdgeId>) -> Cycle {
        let names: Vec<&str> = edges.iter().map(|&e| g.edges()[e].name.as_str()).collect();
        let m = edges.len();
        let mut best = 0;
        for start in 1..m {
            for off in 0..m {
                let a = names[(start + off) % m];
                let b = names[(best + off) % m];
                match a.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = start;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        let rotated = edges[best..].iter().chain(&edges[..best]).copied().collect();
        Cycle { edges: rotated }
    }

    /// Edge ids in canonical order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges (= number of vertices) on the cycle.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Always false for enumerated cycles (a cycle has length ≥ 1); present
    /// so `len` has its conventional companion.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Source vertices in canonical edge order.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        self.edges.iter().map(|&e| g.edges()[e].source).collect()
    }

    /// Edge names in canonical order.
    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| g.edges()[e].name.clone())
            .collect()
    }

    /// Human-readable walk, e.g. `u1 -[e1]-> u2 -[e2]-> u1`.
    pub fn describe(&self, g: &Graph) -> String {
        let mut out = String::new();
        for &e in &self.edges {
            let edge = &g.edges()[e];
            out.push_str(g.vertex_name(edge.source));
            out.push_str(&format!(" -[{}]-> ", edge.name));
        }
        out.push_str(g.vertex_name(g.edges()[self.edges[0]].source));
        out
    }

    /// `true` when some vertex of the cycle has an out-edge other than the
    /// cycle's own edge at that vertex.
    pub fn has_exit(&self, g: &Graph) -> bool {
        self.edges.iter().any(|&ce| {
            let v = g.edges()[ce].source;
            g.out_edges(v).any(|(id, _)| id != ce)
        })
    }
}

/// The outcome of the exclusive-cycles test.
#[derive(Debug, Clone)]
pub enum ExcStatus {
    /// Every pair of distinct cycles is vertex-disjoint.
    Satisfied,
    /// Two distinct cycles share a vertex.
    Violated { first: Cycle, second: Cycle },
}

impl ExcStatus {
    pub fn holds(&self) -> bool {
        matches!(self, ExcStatus::Satisfied)
    }
}

/// Cycle census of a graph satisfying the exclusive-cycles condition.
#[derive(Debug, Clone)]
pub struct CycleChainReport {
    /// All simple cycles in canonical order.
    pub cycles: Vec<Cycle>,
    /// Always true for reports produced by [`chain_stats`].
    pub exc: bool,
    /// Longest chain of distinct cycles connected by paths of length ≥ 1.
    pub d1: usize,
    /// Longest such chain whose last cycle has an exit.
    pub d2: usize,
    /// `exits[i]` ⇔ `cycles[i]` has an exit.
    pub exits: Vec<bool>,
}

/// Exact dimension of an algebra: a natural number or ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dim {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => write!(f, "infinity"),
        }
    }
}

/// Gelfand–Kirillov dimension: a natural number or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkDim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for GkDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkDim::Finite(n) => write!(f, "{n}"),
            GkDim::Infinite => write!(f, "infinity"),
        }
    }
}

/// Strongly connected component id per vertex (Kosaraju, iterative).
fn scc_ids(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let adj: Vec<Vec<VertexId>> = (0..n)
        .map(|v| g.out_edges(v).map(|(_, e)| e.range).collect())
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    // First pass: finish order on the forward graph. Each stack frame holds
    // a vertex and a cursor into its adjacency list.
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(frame) = stack.last_mut() {
            let (v, cursor) = (frame.0, frame.1);
            if cursor < adj[v].len() {
                frame.1 += 1;
                let w = adj[v][cursor];
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    // Second pass: reverse graph in decreasing finish order.
    let mut rev_adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for e in g.edges() {
        rev_adj[e.range].push(e.source);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next_comp = 0;
    for &root in order.iter().rev() {
        if comp[root] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        comp[root] = next_comp;
        while let Some(v) = queue.pop_front() {
            for &w in &rev_adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next_comp;
                    queue.push_back(w);
                }
            }
        }
        next_comp += 1;
    }
    comp
}

/// `true` when the graph contains at least one (simple) cycle.
pub fn has_cycle(g: &Graph) -> bool {
    let comp = scc_ids(g);
    g.edges().iter().any(|e| comp[e.source] == comp[e.range])
}

/// Shortest edge path from `from` to `to` using only edges inside one SCC.
/// Returns the empty path when `from == to`.
fn scc_path(g: &Graph, comp: &[usize], from: VertexId, to: VertexId) -> Vec<EdgeId> {
    if from == to {
        return Vec::new();
    }
    let mut pred: Vec<Option<EdgeId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for (id, e) in g.out_edges(v) {
            if comp[e.range] != comp[e.source] || seen[e.range] {
                continue;
            }
            seen[e.range] = true;
            pred[e.range] = Some(id);
            if e.range == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let id = pred[cur].expect("predecessor recorded");
                    path.push(id);
                    cur = g.edges()[id].source;
                }
                path.reverse();
                return path;
            }
            queue.push_back(e.range);
        }
    }
    unreachable!("vertices of one SCC are mutually reachable")
}

/// Decide the exclusive-cycles condition; on failure, produce two distinct
/// simple cycles sharing a vertex.
///
/// A vertex with two out-edges that both stay inside its SCC lies on two
/// distinct cycles (close each edge up through the SCC); conversely two
/// distinct cycles through a shared vertex must part ways at some shared
/// vertex, giving that vertex two in-SCC out-edges.
pub fn satisfies_exc(g: &Graph) -> ExcStatus {
    let comp = scc_ids(g);
    for v in 0..g.vertex_count() {
        let internal: Vec<(EdgeId, VertexId)> = g
            .out_edges(v)
            .filter(|(_, e)| comp[e.range] == comp[v])
            .map(|(id, e)| (id, e.range))
            .collect();
        if internal.len() < 2 {
            continue;
        }
        let close = |&(id, target): &(EdgeId, VertexId)| -> Cycle {
            let mut edges = vec![id];
            edges.extend(scc_path(g, &comp, target, v));
            Cycle::from_edges(g, edges).expect("constructed closed simple path")
        };
        return ExcStatus::Violated {
            first: close(&internal[0]),
            second: close(&internal[1]),
        };
    }
    ExcStatus::Satisfied
}

struct CycleSearch<'a> {
    g: &'a Graph,
    start: VertexId,
    blocked: Vec<bool>,
    block_map: Vec<Vec<VertexId>>,
    path: Vec<EdgeId>,
    found: Vec<Cycle>,
    cap: usize,
}

impl CycleSearch<'_> {
    fn unblock(&mut self, v: VertexId) {
        if !self.blocked[v] {
            return;
        }
        self.blocked[v] = false;
        let pending = std::mem::take(&mut self.block_map[v]);
        for u in pending {
            self.unblock(u);
        }
    }

    /// Johnson-style circuit search rooted at `self.start`, restricted to
    /// vertices ≥ `self.start` so every cycle is reported exactly once (at
    /// its minimal vertex).
    fn circuit(&mut self, v: VertexId) -> Result<bool, CycleError> {
        let mut found = false;
        self.blocked[v] = true;
        let targets: Vec<(EdgeId, VertexId)> = self
            .g
            .out_edges(v)
            .filter(|(_, e)| e.range >= self.start)
            .map(|(id, e)| (id, e.range))
            .collect();
        for (id, w) in &targets {
            if *w == self.start {
                let mut edges = self.path.clone();
                edges.push(*id);
                if self.found.len() >= self.cap {
                    return Err(CycleError::TooManyCycles { cap: self.cap });
                }
                self.found.push(Cycle::canonical(self.g, edges));
                found = true;
            } else if !self.blocked[*w] {
                self.path.push(*id);
                let sub = self.circuit(*w)?;
                self.path.pop();
                found |= sub;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for (_, w) in targets {
                if !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        Ok(found)
    }
}

/// All simple cycles, one representative per rotation class, sorted by
/// canonical edge-name sequence. Aborts with an error beyond `cap` cycles.
pub fn enumerate_cycles_capped(g: &Graph, cap: usize) -> Result<Vec<Cycle>, CycleError> {
    let n = g.vertex_count();
    let mut all = Vec::new();
    for start in 0..n {
        let mut search = CycleSearch {
            g,
            start,
            blocked: vec![false; n],
            block_map: vec![Vec::new(); n],
            path: Vec::new(),
            found: std::mem::take(&mut all),
            cap,
        };
        search.circuit(start)?;
        all = search.found;
    }
    all.sort_by_key(|a| a.edge_names(g));
    Ok(all)
}

/// [`enumerate_cycles_capped`] with the default cap of 10⁶.
pub fn enumerate_cycles(g: &Graph) -> Result<Vec<Cycle>, CycleError> {
    enumerate_cycles_capped(g, DEFAULT_CYCLE_CAP)
}

/// Vertex-to-vertex reachability by paths of length ≥ 1.
fn reachable_one_plus(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut reach = vec![vec![false; n]; n];
    for (u, row) in reach.iter_mut().enumerate() {
        let mut queue: VecDeque<VertexId> =
            g.out_edges(u).map(|(_, e)| e.range).collect();
        for &w in &queue {
            row[w] = true;
        }
        while let Some(v) = queue.pop_front() {
            for (_, e) in g.out_edges(v) {
                if !row[e.range] {
                    row[e.range] = true;
                    queue.push_back(e.range);
                }
            }
        }
    }
    reach
}

/// Cycle census with chain statistics (`d1`, `d2`) for a graph satisfying
/// the exclusive-cycles condition; rejects graphs that do not.
pub fn chain_stats(g: &Graph) -> Result<CycleChainReport, CycleError> {
    if let ExcStatus::Violated { first, second } = satisfies_exc(g) {
        return Err(CycleError::NotExclusive {
            first: first.edge_names(g),
            second: second.edge_names(g),
        });
    }
    // Under the condition each SCC holds at most one cycle, so the
    // enumeration is linear in the vertex count and cannot hit the cap.
    let cycles = enumerate_cycles(g)?;
    let exits: Vec<bool> = cycles.iter().map(|c| c.has_exit(g)).collect();
    let reach = reachable_one_plus(g);
    let m = cycles.len();
    let vertex_sets: Vec<Vec<VertexId>> = cycles.iter().map(|c| c.vertices(g)).collect();
    let connected = |i: usize, j: usize| -> bool {
        vertex_sets[i]
            .iter()
            .any(|&u| vertex_sets[j].iter().any(|&v| reach[u][v]))
    };
    // Longest chain ending at each cycle (node count), via memoized DFS on
    // the cycle-reachability DAG.
    let mut longest_end = vec![0usize; m];
    fn end_len(
        i: usize,
        connected: &dyn Fn(usize, usize) -> bool,
        memo: &mut Vec<usize>,
        m: usize,
    ) -> usize {
        if memo[i] != 0 {
            return memo[i];
        }
        let mut best = 1;
        for p in 0..m {
            if p != i && connected(p, i) {
                best = best.max(1 + end_len(p, connected, memo, m));
            }
        }
        memo[i] = best;
        best
    }
    for i in 0..m {
        end_len(i, &connected, &mut longest_end, m);
    }
    let d1 = longest_end.iter().copied().max().unwrap_or(0);
    let d2 = longest_end
        .iter()
        .zip(&exits)
        .filter(|(_, &has_exit)| has_exit)
        .map(|(&len, _)| len)
        .max()
        .unwrap_or(0);
    Ok(CycleChainReport {
        cycles,
        exc: true,
        d1,
        d2,
        exits,
    })
}

/// Gelfand–Kirillov dimension of the path algebra: ∞ without the
/// exclusive-cycles condition, 0 for acyclic graphs, else the longest cycle
/// chain `d1`.
pub fn gk_dim_path(g: &Graph) -> GkDim {
    if !satisfies_exc(g).holds() {
        return GkDim::Infinite;
    }
    let report = chain_stats(g).expect("exclusive-cycles condition verified");
    GkDim::Finite(report.d1 as u64)
}

/// Gelfand–Kirillov dimension of the Leavitt path algebra: ∞ without the
/// exclusive-cycles condition, 0 for acyclic graphs, else
/// `max(2·d1 − 1, 2·d2)`.
pub fn gk_dim_leavitt(g: &Graph) -> GkDim {
    if !satisfies_exc(g).holds() {
        return GkDim::Infinite;
    }
    let report = chain_stats(g).expect("exclusive-cycles condition verified");
    if report.cycles.is_empty() {
        return GkDim::Finite(0);
    }
    let d1 = report.d1 as u64;
    let d2 = report.d2 as u64;
    GkDim::Finite((2 * d1 - 1).max(2 * d2))
}

/// Number of paths of each length ending at each vertex, summed over
/// lengths `0..=n−1` (enough for any acyclic graph).
fn total_paths_ending(g: &Graph) -> Vec<BigUint> {
    let a = g.adjacency_matrix();
    let n = g.vertex_count();
    let mut totals = vec![BigUint::one(); n];
    let mut current = vec![BigUint::one(); n];
    for _ in 1..n {
        current = a.vec_mul(&current);
        for (t, c) in totals.iter_mut().zip(&current) {
            *t += c;
        }
    }
    totals
}

/// Dimension of the path algebra: the total number of paths (including
/// trivial ones) when the graph is acyclic, ∞ otherwise.
pub fn dim_path_algebra(g: &Graph) -> Dim {
    if has_cycle(g) {
        return Dim::Infinite;
    }
    Dim::Finite(total_paths_ending(g).into_iter().sum())
}

/// Dimension of the Leavitt path algebra: for acyclic graphs
/// `Σ over sinks v of (number of paths ending at v)²`, ∞ otherwise.
pub fn dim_leavitt_algebra(g: &Graph) -> Dim {
    if has_cycle(g) {
        return Dim::Infinite;
    }
    let totals = total_paths_ending(g);
    let mut has_out = vec![false; g.vertex_count()];
    for e in g.edges() {
        has_out[e.source] = true;
    }
    let dim = totals
        .iter()
        .zip(&has_out)
        .filter(|(_, &out)| !out)
        .map(|(t, _)| t * t)
        .fold(BigUint::zero(), |acc, sq| acc + sq);
    Dim::Finite(dim)
}
