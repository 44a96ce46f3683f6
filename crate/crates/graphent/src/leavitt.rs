//! The quotient-dimension sequence of the Leavitt path algebra's standard
//! filtration, and the entropy estimate derived from it.
//!
//! `V_k` is the span of the monomials `λμ*` with `l(λ) + l(μ) ≤ k`. Writing
//! `c_s[j]` for the number of paths of length `s` ending at vertex `j`
//! (the `j`-th column sum of `Aˢ`), the layer dimensions are
//!
//! ```text
//! q_k = dim(V_k / V_{k−1})
//!     = Σ_{s=0..k} Σ_j c_s[j]·c_{k−s}[j]
//!     − Σ_{s=0..k−2} Σ_{j not a sink} c_s[j]·c_{k−2−s}[j]      (k ≥ 2)
//! ```
//!
//! The first sum counts all pairs `(λ, μ)` of paths with total length `k`
//! and a common endpoint; the second removes the pairs whose λ and μ both
//! extend by one more edge into a common non-sink (those monomials are
//! linearly dependent on shorter ones through the relation
//! `v = Σ_{s(e)=v} e e*`). Column-sum vectors are computed incrementally as
//! `c_s = c_{s−1}·A`, so the whole sequence up to `k` needs no matrix powers.
//!
//! All layer dimensions are exact big integers; the per-layer entropy
//! `h_k = log(q_k)/k` is evaluated with 192 fractional bits before the one
//! final rounding to `f64` (see [`crate::biglog`]), because `q_1000` has
//! hundreds of digits and would overflow any float.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::io::Write;
use thiserror::Error;

use crate::biglog::{ln_f64, ln_ratio_f64};
use crate::filtration::{self, DimSequence};
use crate::graph::{Graph, VertexId};
use crate::matrix::IntMatrix;
use crate::spectral::is_nilpotent;

#[derive(Debug, Error)]
pub enum LeavittError {
    #[error("k_max must be at least {required}, got {got}")]
    KMaxTooSmall { required: usize, got: usize },
}

/// Exact layer dimensions `q_k = dim(V_k/V_{k−1})` for `k = 1..=k_max`,
/// together with the per-layer entropies `h_k = log(q_k)/k`.
#[derive(Debug, Clone)]
pub struct LeavittQuotientSeq {
    /// The graph the sequence belongs to.
    pub graph: Graph,
    /// Largest layer index computed.
    pub k_max: usize,
    /// `q[i]` is `q_{i+1}`, exact.
    pub q: Vec<BigUint>,
    /// `h[i] = log(q_{i+1})/(i+1)`; `0.0` where `q_{i+1} = 0` (the layer is
    /// empty, which only happens for acyclic graphs once paths run out).
    pub h: Vec<f64>,
}

impl LeavittQuotientSeq {
    /// The base dimension `dim V_0` (one basis vector per vertex).
    pub fn base(&self) -> BigUint {
        BigUint::from(self.graph.vertex_count())
    }

    /// View as a [`DimSequence`] with `dim V_0 = |E⁰|` as the base.
    pub fn to_dim_sequence(&self) -> DimSequence {
        DimSequence::with_base(self.base(), self.q.clone())
    }

    /// Write the sequence as CSV rows `k,q_k_digits,h_k,ratio_h_k`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let base = self.base();
        filtration::write_quotient_csv(&mut w, &self.to_dim_sequence(), Some(&base))
    }

    /// The entropy estimates read off the top two layers of this sequence;
    /// identical to [`entropy_leavitt_estimate`] at the same horizon.
    pub fn estimate(&self) -> EntropyEstimate {
        let k = self.k_max;
        let ratio_h = ln_ratio_f64(&self.q[k - 1], &self.q[k - 2]).unwrap_or(0.0);
        EntropyEstimate {
            last_h: self.h[k - 1],
            ratio_h,
            k_max: k,
        }
    }
}

/// The two entropy estimates read off the tail of the layer sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate {
    /// `log(q_{k_max})/k_max` — the paper-style printed value.
    pub last_h: f64,
    /// `log(q_{k_max}/q_{k_max−1})` — the Stolz-style ratio estimate, which
    /// converges faster.
    pub ratio_h: f64,
    /// The horizon both estimates were taken at.
    pub k_max: usize,
}

/// `γ_j`: 0 when vertex `j` is a sink (no outgoing edges), 1 otherwise.
///
/// Precondition: `j` is a vertex index of `g`.
pub fn gamma(g: &Graph, j: VertexId) -> u8 {
    assert!(j < g.vertex_count(), "vertex index out of range");
    u8::from(!is_sink(g)[j])
}

/// Per-vertex "has at least one outgoing edge" mask, complement of γ.
fn is_sink(g: &Graph) -> Vec<bool> {
    let mut sink = vec![true; g.vertex_count()];
    for e in g.edges() {
        sink[e.source] = false;
    }
    sink
}

/// Column-sum vectors `c_0..c_kmax`: `c_s[j]` is the number of paths of
/// length `s` ending at `j`.
fn colsums_up_to(a: &IntMatrix, kmax: usize) -> Vec<Vec<BigUint>> {
    let n = a.order();
    let mut c: Vec<Vec<BigUint>> = Vec::with_capacity(kmax + 1);
    c.push(vec![BigUint::one(); n]);
    for _ in 1..=kmax {
        let next = a.vec_mul(c.last().expect("nonempty"));
        c.push(next);
    }
    c
}

/// `Σ_{s=0..m} Σ_j c_s[j]·c_{m−s}[j]`, optionally restricted to vertices
/// where `mask` is true. Uses the `s ↔ m−s` symmetry.
fn convolved_dot(c: &[Vec<BigUint>], m: usize, mask: Option<&[bool]>) -> BigUint {
    let dot = |s: usize, t: usize| -> BigUint {
        c[s].iter()
            .zip(&c[t])
            .enumerate()
            .filter(|(j, _)| mask.is_none_or(|mk| mk[*j]))
            .map(|(_, (x, y))| x * y)
            .sum()
    };
    let mut total = BigUint::zero();
    for s in 0..=m / 2 {
        let term = dot(s, m - s);
        if s * 2 == m {
            total += term;
        } else {
            total += term * 2u32;
        }
    }
    total
}

fn quotient_from_colsums(c: &[Vec<BigUint>], regular: &[bool], n: usize, k: usize) -> BigUint {
    match k {
        0 => BigUint::from(n),
        1 => convolved_dot(c, 1, None),
        _ => {
            let all = convolved_dot(c, k, None);
            let rejected = convolved_dot(c, k - 2, Some(regular));
            // The rejected pairs are a subset of the counted ones, so this
            // can never underflow; a panic here would mean the combinatorial
            // identity itself is wrong.
            all - rejected
        }
    }
}

/// Exact `dim(V_k/V_{k−1})` of the Leavitt path algebra (`|E⁰|` for `k = 0`).
pub fn leavitt_quotient_dim(g: &Graph, k: usize) -> BigUint {
    let a = g.adjacency_matrix();
    let c = colsums_up_to(&a, k);
    let regular: Vec<bool> = is_sink(g).iter().map(|s| !s).collect();
    quotient_from_colsums(&c, &regular, g.vertex_count(), k)
}

fn h_of(q: &BigUint, k: usize) -> f64 {
    match ln_f64(q) {
        Some(l) => l / k as f64,
        None => 0.0,
    }
}

/// Exact layer dimensions `q_1..q_{k_max}` in one incremental pass.
///
/// Requires `k_max ≥ 2`.
pub fn leavitt_sequence(g: &Graph, k_max: usize) -> Result<LeavittQuotientSeq, LeavittError> {
    if k_max < 2 {
        return Err(LeavittError::KMaxTooSmall {
            required: 2,
            got: k_max,
        });
    }
    let a = g.adjacency_matrix();
    let c = colsums_up_to(&a, k_max);
    let regular: Vec<bool> = is_sink(g).iter().map(|s| !s).collect();
    let n = g.vertex_count();
    let q: Vec<BigUint> = (1..=k_max)
        .map(|k| quotient_from_colsums(&c, &regular, n, k))
        .collect();
    let h: Vec<f64> = q.iter().enumerate().map(|(i, qk)| h_of(qk, i + 1)).collect();
    Ok(LeavittQuotientSeq {
        graph: g.clone(),
        k_max,
        q,
        h,
    })
}

/// Entropy estimate of the Leavitt path algebra at horizon `k_max`: both
/// `log(q_{k_max})/k_max` and the ratio `log(q_{k_max}/q_{k_max−1})`.
///
/// Only the two top layers are computed (the column-sum recurrence still
/// runs to `k_max`, but no quadratic convolution pass over all `k` happens),
/// so `k_max = 1000` is cheap. Acyclic graphs short-circuit to an exact 0.
///
/// Requires `k_max ≥ 3`.
pub fn entropy_leavitt_estimate(g: &Graph, k_max: usize) -> Result<EntropyEstimate, LeavittError> {
    if k_max < 3 {
        return Err(LeavittError::KMaxTooSmall {
            required: 3,
            got: k_max,
        });
    }
    let a = g.adjacency_matrix();
    if is_nilpotent(&a) {
        // Finite-dimensional algebra: the filtration stabilizes, entropy 0.
        return Ok(EntropyEstimate {
            last_h: 0.0,
            ratio_h: 0.0,
            k_max,
        });
    }
    let c = colsums_up_to(&a, k_max);
    let regular: Vec<bool> = is_sink(g).iter().map(|s| !s).collect();
    let n = g.vertex_count();
    let q_last = quotient_from_colsums(&c, &regular, n, k_max);
    let q_prev = quotient_from_colsums(&c, &regular, n, k_max - 1);
    let last_h = h_of(&q_last, k_max);
    let ratio_h = ln_ratio_f64(&q_last, &q_prev).unwrap_or(0.0);
    Ok(EntropyEstimate {
        last_h,
        ratio_h,
        k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn graph(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    fn rose(n: usize) -> Graph {
        let stmts: Vec<String> = (0..n).map(|_| "v -> v".to_owned()).collect();
        graph(&format!("v;\n{}", stmts.join("\n")))
    }

    fn cycle(n: usize) -> Graph {
        let stmts: Vec<String> = (0..n)
            .map(|i| format!("v{} -> v{}", i + 1, (i + 1) % n + 1))
            .collect();
        graph(&stmts.join("\n"))
    }

    fn rose_closed_form(n: u64, k: u32) -> BigUint {
        // (k+1)nᵏ − (k−1)nᵏ⁻² for k ≥ 2
        let nk = BigUint::from(n).pow(k);
        let nk2 = BigUint::from(n).pow(k - 2);
        (k + 1) * nk - (k - 1) * nk2
    }

    #[test]
    fn rose_layers_match_the_closed_form() {
        for n in 1..=3u64 {
            let g = rose(n as usize);
            assert_eq!(leavitt_quotient_dim(&g, 0), BigUint::from(1u32));
            assert_eq!(leavitt_quotient_dim(&g, 1), BigUint::from(2 * n));
            for k in 2..=8u32 {
                assert_eq!(
                    leavitt_quotient_dim(&g, k as usize),
                    rose_closed_form(n, k),
                    "rose {n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn cycle_layers_are_constant_2n() {
        for n in 1..=4usize {
            let g = cycle(n);
            for k in 1..=10 {
                assert_eq!(
                    leavitt_quotient_dim(&g, k),
                    BigUint::from(2 * n),
                    "C_{n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn single_edge_algebra_is_finite_dimensional() {
        // a → b: V_1 adds {e, e*}; ee* collapses to the vertex a, so the
        // filtration stabilizes at k = 1.
        let g = graph("a -> b");
        assert_eq!(leavitt_quotient_dim(&g, 0), BigUint::from(2u32));
        assert_eq!(leavitt_quotient_dim(&g, 1), BigUint::from(2u32));
        for k in 2..=6 {
            assert_eq!(leavitt_quotient_dim(&g, k), BigUint::zero(), "k={k}");
        }
    }

    #[test]
    fn gamma_is_the_sink_indicator() {
        let g = graph("a -> b; c -> a");
        let a = g.vertex_id("a").unwrap();
        let b = g.vertex_id("b").unwrap();
        let c = g.vertex_id("c").unwrap();
        assert_eq!(gamma(&g, a), 1);
        assert_eq!(gamma(&g, b), 0);
        assert_eq!(gamma(&g, c), 1);
        assert_eq!(gamma(&rose(1), 0), 1);
    }

    #[test]
    fn disjoint_union_layers_add() {
        let a = rose(2);
        let b = cycle(3);
        let u = a.disjoint_union(&b);
        for k in 0..=6 {
            assert_eq!(
                leavitt_quotient_dim(&u, k),
                leavitt_quotient_dim(&a, k) + leavitt_quotient_dim(&b, k),
                "k={k}"
            );
        }
    }

    #[test]
    fn sequence_matches_pointwise_dims_and_low_precision_logs() {
        let g = graph("v1 -> v2; v2 -> v1; v2 -> v2");
        let seq = leavitt_sequence(&g, 12).unwrap();
        assert_eq!(seq.k_max, 12);
        assert_eq!(seq.q.len(), 12);
        for (i, q) in seq.q.iter().enumerate() {
            assert_eq!(*q, leavitt_quotient_dim(&g, i + 1));
            let expect = biguint_to_f64(q).ln() / (i + 1) as f64;
            assert!((seq.h[i] - expect).abs() < 1e-12, "k={}", i + 1);
        }
        assert_eq!(seq.base(), BigUint::from(2u32));
        let ds = seq.to_dim_sequence();
        ds.validate().unwrap();
        assert_eq!(ds.cumulative().unwrap()[0], BigUint::from(2u32));
    }

    fn biguint_to_f64(q: &BigUint) -> f64 {
        use num_traits::ToPrimitive;
        q.to_f64().unwrap()
    }

    #[test]
    fn rose_estimate_approaches_log_n() {
        let est = entropy_leavitt_estimate(&rose(3), 200).unwrap();
        let ln3 = 3f64.ln();
        // last_h carries the ln(k)/k transient; ratio_h is much tighter.
        assert!((est.last_h - ln3).abs() < 0.05, "last_h = {}", est.last_h);
        assert!((est.ratio_h - ln3).abs() < 0.01, "ratio_h = {}", est.ratio_h);
        assert!(est.last_h > ln3); // transient is positive for roses
        assert_eq!(est.k_max, 200);
    }

    #[test]
    fn fibonacci_estimate_approaches_log_golden_ratio() {
        let g = graph("v1 -> v2; v2 -> v1; v2 -> v2");
        let est = entropy_leavitt_estimate(&g, 300).unwrap();
        let target = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((est.ratio_h - target).abs() < 0.01, "ratio_h = {}", est.ratio_h);
        assert!((est.last_h - target).abs() < 0.05, "last_h = {}", est.last_h);
    }

    #[test]
    fn acyclic_estimate_is_exactly_zero() {
        let g = graph("a -> b; b -> c; a -> c");
        let est = entropy_leavitt_estimate(&g, 50).unwrap();
        assert_eq!(est.last_h, 0.0);
        assert_eq!(est.ratio_h, 0.0);
    }

    #[test]
    fn horizon_preconditions_are_enforced() {
        let g = rose(1);
        assert!(leavitt_sequence(&g, 1).is_err());
        assert!(leavitt_sequence(&g, 2).is_ok());
        assert!(entropy_leavitt_estimate(&g, 2).is_err());
        assert!(entropy_leavitt_estimate(&g, 3).is_ok());
    }

    #[test]
    fn csv_emission_round_trips_through_the_parser() {
        let seq = leavitt_sequence(&rose(2), 6).unwrap();
        let mut buf = Vec::new();
        seq.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,q_k_digits,h_k,ratio_h_k\n"));
        let parsed = crate::filtration::parse_dim_sequence(&text).unwrap();
        assert_eq!(parsed.quotients(), &seq.q[..]);
    }

    #[test]
    fn estimate_agrees_with_full_sequence_tail() {
        let g = cycle(2).disjoint_union(&rose(2));
        let k = 40;
        let est = entropy_leavitt_estimate(&g, k).unwrap();
        let seq = leavitt_sequence(&g, k).unwrap();
        assert_eq!(est.last_h, seq.h[k - 1]);
        let manual_ratio =
            ln_ratio_f64(&seq.q[k - 1], &seq.q[k - 2]).unwrap();
        assert_eq!(est.ratio_h, manual_ratio);
    }
}
