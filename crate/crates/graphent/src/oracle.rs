//! Brute-force ground truth on small graphs: exhaustive labeled path
//! enumeration, `λμ*` basis counting with the designated-edge reduction, and
//! seeded random graphs for equivalence testing.
//!
//! Everything here is deliberately independent of the closed formulas it
//! validates: paths are walked edge by edge with a depth-first search, and
//! basis elements are counted from those walks. The only shared ingredient
//! is the rejection rule itself — a pair `(λ, μ)` of paths with a common
//! endpoint is *not* a basis element of the `k`-th filtration layer exactly
//! when λ and μ both end with the same designated edge `f_v` (one fixed
//! outgoing edge per non-sink `v`): the relation `v = Σ_{s(e)=v} e e*` makes
//! `λ′ f_v f_v* μ′*` expressible by shorter monomials. Which edge is
//! designated provably does not matter; the test suite re-checks that by
//! counting under both the least and the greatest edge-name choice.

use num_bigint::BigUint;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::leavitt::leavitt_quotient_dim;
use crate::matrix::mat_pow;
use num_traits::ToPrimitive;

/// Default cap on enumerated paths.
pub const DEFAULT_PATH_CAP: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("path enumeration exceeds the cap of {cap}")]
    TooManyPaths { cap: usize },
}

/// A labeled path: a start vertex and a (possibly empty) edge walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The vertex the path ends at.
    pub fn end(&self, g: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => g.edges()[e].range,
            None => self.start,
        }
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<String> {
        self.edges
            .iter()
            .map(|&e| g.edges()[e].name.clone())
            .collect()
    }
}

/// All paths of one exact length.
#[derive(Debug, Clone)]
pub struct PathList {
    pub length: usize,
    pub paths: Vec<Path>,
}

impl PathList {
    pub fn count(&self) -> usize {
        self.paths.len()
    }

    /// Number of listed paths from `u` to `v` (equals `(Aⁿ)[u][v]`).
    pub fn count_between(&self, g: &Graph, u: VertexId, v: VertexId) -> usize {
        self.paths
            .iter()
            .filter(|p| p.start == u && p.end(g) == v)
            .count()
    }
}

/// Exhaustively enumerate the labeled paths of exact length `n`
/// (`n = 0` lists the vertices as trivial paths), aborting beyond `cap`.
pub fn enum_paths_capped(g: &Graph, n: usize, cap: usize) -> Result<PathList, OracleError> {
    let mut paths = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn walk(
        g: &Graph,
        start: VertexId,
        at: VertexId,
        remaining: usize,
        current: &mut Vec<EdgeId>,
        out: &mut Vec<Path>,
        cap: usize,
    ) -> Result<(), OracleError> {
        if remaining == 0 {
            if out.len() >= cap {
                return Err(OracleError::TooManyPaths { cap });
            }
            out.push(Path {
                start,
                edges: current.clone(),
            });
            return Ok(());
        }
        for (id, e) in g.out_edges(at) {
            current.push(id);
            walk(g, start, e.range, remaining - 1, current, out, cap)?;
            current.pop();
        }
        Ok(())
    }
    for v in 0..g.vertex_count() {
        walk(g, v, v, n, &mut current, &mut paths, cap)?;
    }
    Ok(PathList { length: n, paths })
}

/// [`enum_paths_capped`] with the default cap of 10⁷.
pub fn enum_paths(g: &Graph, n: usize) -> Result<PathList, OracleError> {
    enum_paths_capped(g, n, DEFAULT_PATH_CAP)
}

/// Which outgoing edge is designated at each non-sink vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignatedPolicy {
    /// Lexicographically least edge name (the default).
    LeastEdgeName,
    /// Lexicographically greatest edge name (for the invariance check).
    GreatestEdgeName,
}

/// The brute-force count of basis monomials `λμ*` in one filtration layer.
#[derive(Debug, Clone)]
pub struct BasisCount {
    pub k: usize,
    /// Number of admitted pairs.
    pub count: BigUint,
    /// The designated edge at each vertex (`None` for sinks).
    pub designated: Vec<Option<EdgeId>>,
}

/// The designated-edge map under a policy.
pub fn designated_edges(g: &Graph, policy: DesignatedPolicy) -> Vec<Option<EdgeId>> {
    (0..g.vertex_count())
        .map(|v| {
            let best = g.out_edges(v).reduce(|a, b| {
                let keep_a = match policy {
                    DesignatedPolicy::LeastEdgeName => a.1.name <= b.1.name,
                    DesignatedPolicy::GreatestEdgeName => a.1.name >= b.1.name,
                };
                if keep_a {
                    a
                } else {
                    b
                }
            });
            best.map(|(id, _)| id)
        })
        .collect()
}

/// Per-length path tallies gathered by one exhaustive walk: for every length
/// `s ≤ k`, how many paths end at each vertex, and how many end *with* each
/// designated edge.
struct PathTallies {
    /// `total[s][v]`: paths of length `s` ending at `v`.
    total: Vec<Vec<u64>>,
    /// `last_designated[s][v]`: paths of length `s` whose final edge is the
    /// designated edge sourced at `v` (so `v` is the path's penultimate
    /// vertex). Keying by the penultimate vertex identifies the final edge,
    /// since each vertex designates exactly one.
    last_designated: Vec<Vec<u64>>,
}

/// Depth-first path walker shared by the tallying recursion: the graph,
/// designated-edge table, depth limit, and visit cap stay fixed while the
/// tallies and visit count accumulate.
struct PathWalker<'a> {
    g: &'a Graph,
    k: usize,
    designated: &'a [Option<EdgeId>],
    cap: usize,
    tallies: PathTallies,
    visited: usize,
}

impl PathWalker<'_> {
    fn walk(
        &mut self,
        at: VertexId,
        depth: usize,
        last_edge: Option<EdgeId>,
    ) -> Result<(), OracleError> {
        self.visited += 1;
        if self.visited > self.cap {
            return Err(OracleError::TooManyPaths { cap: self.cap });
        }
        self.tallies.total[depth][at] += 1;
        if let Some(e) = last_edge {
            let src = self.g.edges()[e].source;
            if self.designated[src] == Some(e) {
                self.tallies.last_designated[depth][src] += 1;
            }
        }
        if depth == self.k {
            return Ok(());
        }
        let g = self.g;
        for (id, edge) in g.out_edges(at) {
            self.walk(edge.range, depth + 1, Some(id))?;
        }
        Ok(())
    }
}

fn tally_paths(
    g: &Graph,
    k: usize,
    designated: &[Option<EdgeId>],
    cap: usize,
) -> Result<PathTallies, OracleError> {
    let n = g.vertex_count();
    let mut walker = PathWalker {
        g,
        k,
        designated,
        cap,
        tallies: PathTallies {
            total: vec![vec![0; n]; k + 1],
            last_designated: vec![vec![0; n]; k + 1],
        },
        visited: 0,
    };
    for v in 0..n {
        walker.walk(v, 0, None)?;
    }
    Ok(walker.tallies)
}

/// Count the admitted `λμ*` pairs with `l(λ) + l(μ) = k` and
/// `r(λ) = r(μ)`: all such pairs except those whose two components end with
/// the same designated edge.
pub fn count_basis_with_policy(
    g: &Graph,
    k: usize,
    policy: DesignatedPolicy,
) -> Result<BasisCount, OracleError> {
    let designated = designated_edges(g, policy);
    let tallies = tally_paths(g, k, &designated, DEFAULT_PATH_CAP)?;
    let n = g.vertex_count();
    let mut admitted: u128 = 0;
    for s in 0..=k {
        for v in 0..n {
            admitted += u128::from(tallies.total[s][v]) * u128::from(tallies.total[k - s][v]);
        }
    }
    // Both halves must carry at least one edge to share a final edge.
    let mut rejected: u128 = 0;
    for s in 1..k {
        for v in 0..n {
            rejected += u128::from(tallies.last_designated[s][v])
                * u128::from(tallies.last_designated[k - s][v]);
        }
    }
    let count = BigUint::from(admitted - rejected);
    Ok(BasisCount {
        k,
        count,
        designated,
    })
}

/// [`count_basis_with_policy`] with the least-edge-name designation.
pub fn count_basis(g: &Graph, k: usize) -> Result<BasisCount, OracleError> {
    count_basis_with_policy(g, k, DesignatedPolicy::LeastEdgeName)
}

/// Deterministic pseudo-random multigraph. The generator is fixed so counts
/// are reproducible anywhere:
///
/// * stream: ChaCha8 seeded with `seed` via `seed_from_u64`;
/// * `nv = 1 + next_u32() % max_v` vertices named `v1..v{nv}`;
/// * `ne = next_u32() % (max_e + 1)` edges named `e1..e{ne}`;
/// * each edge draws `source = next_u32() % nv`, then `range = next_u32() % nv`.
///
/// Requires `max_v ≥ 1`.
pub fn random_graph(seed: u64, max_v: usize, max_e: usize) -> Graph {
    assert!(max_v >= 1, "max_v must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = 1 + (rng.next_u32() as usize) % max_v;
    let ne = (rng.next_u32() as usize) % (max_e + 1);
    let mut g = Graph::new();
    for i in 1..=nv {
        g.add_vertex(&format!("v{i}")).expect("fresh names");
    }
    for i in 1..=ne {
        let source = (rng.next_u32() as usize) % nv;
        let range = (rng.next_u32() as usize) % nv;
        g.add_edge(&format!("e{i}"), source, range)
            .expect("fresh names, valid endpoints");
    }
    g
}

/// One failed equivalence check: the offending graph and what disagreed.
#[derive(Debug, Clone)]
pub struct OracleMismatch {
    pub seed: u64,
    pub graph_text: String,
    pub detail: String,
}

/// Configuration for [`run_oracle_check`].
#[derive(Debug, Clone, Copy)]
pub struct OracleCheckConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_k: usize,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig {
            seed: 0,
            trials: 25,
            max_vertices: 4,
            max_edges: 6,
            max_k: 8,
        }
    }
}

/// Check one graph: path counts against matrix powers, basis counts against
/// the filtration formula, and designation invariance.
pub fn check_graph(g: &Graph, seed: u64, max_k: usize) -> Result<u64, Box<OracleMismatch>> {
    let mismatch = |detail: String| {
        Box::new(OracleMismatch {
            seed,
            graph_text: g.to_text(),
            detail,
        })
    };
    let mut checks = 0u64;
    let a = g.adjacency_matrix();
    for n in 0..=max_k {
        let listed = enum_paths(g, n).map_err(|e| mismatch(e.to_string()))?;
        let expected = mat_pow(&a, n as u64).norm_11();
        let got = BigUint::from(listed.count());
        if got != expected {
            return Err(mismatch(format!(
                "paths of length {n}: enumeration found {got}, matrix power says {expected}"
            )));
        }
        checks += 1;
    }
    for k in 0..=max_k {
        let least = count_basis_with_policy(g, k, DesignatedPolicy::LeastEdgeName)
            .map_err(|e| mismatch(e.to_string()))?;
        let formula = leavitt_quotient_dim(g, k);
        if least.count != formula {
            return Err(mismatch(format!(
                "layer k={k}: brute-force count {} vs formula {formula}",
                least.count
            )));
        }
        let greatest = count_basis_with_policy(g, k, DesignatedPolicy::GreatestEdgeName)
            .map_err(|e| mismatch(e.to_string()))?;
        if greatest.count != least.count {
            return Err(mismatch(format!(
                "layer k={k}: designation-dependent count ({} vs {})",
                least.count, greatest.count
            )));
        }
        checks += 2;
    }
    if !crate::cycles::has_cycle(g) {
        // Finite-dimensional case: the layer counts must sum to the
        // dimension of the whole algebra.
        let mut total = BigUint::from(0u32);
        let mut k = 0;
        loop {
            let layer = count_basis(g, k).map_err(|e| mismatch(e.to_string()))?.count;
            if k > 0 && layer == BigUint::from(0u32) {
                break;
            }
            total += layer;
            k += 1;
        }
        match crate::cycles::dim_leavitt_algebra(g) {
            crate::cycles::Dim::Finite(dim) => {
                if dim != total {
                    return Err(mismatch(format!(
                        "acyclic dimension: sink-count formula {dim} vs layer sum {total}"
                    )));
                }
            }
            crate::cycles::Dim::Infinite => {
                return Err(mismatch("acyclic graph reported as infinite-dimensional".into()))
            }
        }
        checks += 1;
    }
    Ok(checks)
}

/// Randomized equivalence testing: `trials` seeded graphs, each checked with
/// [`check_graph`]. Returns the number of individual checks performed, or
/// the first mismatch.
pub fn run_oracle_check(cfg: &OracleCheckConfig) -> Result<u64, Box<OracleMismatch>> {
    let mut checks = 0u64;
    for t in 0..cfg.trials {
        let seed = cfg.seed.wrapping_add(t);
        let g = random_graph(seed, cfg.max_vertices, cfg.max_edges);
        checks += check_graph(&g, seed, cfg.max_k)?;
    }
    Ok(checks)
}

/// `(Aⁿ)` total path count as usize, for tests.
pub fn matrix_path_count(g: &Graph, n: usize) -> usize {
    mat_pow(&g.adjacency_matrix(), n as u64)
        .norm_11()
        .to_usize()
        .expect("count fits usize")
}
