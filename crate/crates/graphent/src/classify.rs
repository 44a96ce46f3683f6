//! The growth triple — dimension, Gelfand–Kirillov dimension, entropy — of
//! the path algebra and the Leavitt path algebra, with the three-way growth
//! classification:
//!
//! * class 0: finite-dimensional (equivalently GK dimension and entropy 0);
//! * class 1: infinite-dimensional with finite GK dimension, entropy 0;
//! * class 2: infinite GK dimension, finite positive entropy.
//!
//! Path-algebra entropy is exact (Perron enclosure). Leavitt entropy is
//! exact in the cases settled by theory — entropy 0 whenever the
//! exclusive-cycles condition holds (classes 0 and 1), and `log n` for the
//! single-vertex graph with `n` loops — and otherwise reported as a
//! finite-horizon estimate tagged with its method and bracketed by the
//! provable sandwich `[h(path), h(extended)]`.

use thiserror::Error;

use crate::cycles::{dim_leavitt_algebra, dim_path_algebra, gk_dim_leavitt, gk_dim_path, Dim, GkDim};
use crate::graph::Graph;
use crate::leavitt::{entropy_leavitt_estimate, LeavittError};
use crate::spectral::{entropy_extended, entropy_path, SpectralError};

/// Method tag attached to finite-horizon Leavitt entropy estimates.
pub const ESTIMATE_METHOD: &str = "countpaths-estimate";

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Leavitt(#[from] LeavittError),
}

/// Which algebra a triple describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Path,
    Extended,
    Leavitt,
}

impl AlgebraKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgebraKind::Path => "path",
            AlgebraKind::Extended => "extended",
            AlgebraKind::Leavitt => "leavitt",
        }
    }
}

/// Growth class per the trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    /// Finite-dimensional.
    FiniteDimensional,
    /// Infinite-dimensional, polynomial growth (finite GK dimension).
    Polynomial,
    /// Infinite GK dimension, exponential growth measured by entropy.
    Exponential,
}

impl GrowthClass {
    pub fn as_u8(self) -> u8 {
        match self {
            GrowthClass::FiniteDimensional => 0,
            GrowthClass::Polynomial => 1,
            GrowthClass::Exponential => 2,
        }
    }
}

/// An entropy value that is either exact (enclosure-backed or settled by a
/// closed form) or a finite-horizon estimate with its provable bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum EntropyValue {
    Exact {
        value: f64,
    },
    Estimate {
        value: f64,
        method: &'static str,
        k_max: usize,
        /// Exact lower bound: the path-algebra entropy.
        lower: f64,
        /// Exact upper bound: the extended-graph entropy.
        upper: f64,
    },
}

impl EntropyValue {
    pub fn value(&self) -> f64 {
        match self {
            EntropyValue::Exact { value } | EntropyValue::Estimate { value, .. } => *value,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EntropyValue::Exact { .. })
    }
}

/// Dimension, GK dimension, entropy, and growth class of one algebra.
#[derive(Debug, Clone)]
pub struct GrowthTriple {
    pub algebra: AlgebraKind,
    pub dimension: Dim,
    pub gkdim: GkDim,
    pub entropy: EntropyValue,
    pub class: GrowthClass,
}

/// The classification of both algebras of one graph.
#[derive(Debug, Clone)]
pub struct ClassifyOutcome {
    pub path: GrowthTriple,
    pub leavitt: GrowthTriple,
}

fn class_of(dimension: &Dim, gkdim: GkDim) -> GrowthClass {
    match (dimension, gkdim) {
        (Dim::Finite(_), _) => GrowthClass::FiniteDimensional,
        (Dim::Infinite, GkDim::Finite(_)) => GrowthClass::Polynomial,
        (Dim::Infinite, GkDim::Infinite) => GrowthClass::Exponential,
    }
}

/// The Leavitt path algebra's entropy: exact where settled by theory (0
/// under the exclusive-cycles condition, `log n` for the `n`-loop rose),
/// otherwise a finite-horizon estimate with exact sandwich bounds.
pub fn leavitt_entropy_value(
    g: &Graph,
    tol: f64,
    k_max: usize,
) -> Result<EntropyValue, ClassifyError> {
    if gk_dim_leavitt(g) != GkDim::Infinite {
        // Exclusive cycles (or no cycles at all): polynomially bounded
        // growth, entropy exactly 0.
        return Ok(EntropyValue::Exact { value: 0.0 });
    }
    if g.vertex_count() == 1 {
        // Rose with n ≥ 2 loops: the Leavitt entropy is exactly log n
        // (matching the path algebra).
        return Ok(EntropyValue::Exact {
            value: (g.edge_count() as f64).ln(),
        });
    }
    let est = entropy_leavitt_estimate(g, k_max)?;
    Ok(EntropyValue::Estimate {
        value: est.ratio_h,
        method: ESTIMATE_METHOD,
        k_max,
        lower: entropy_path(g, tol)?,
        upper: entropy_extended(g, tol)?,
    })
}

/// Classify both algebras. `tol` controls the Perron enclosures; `k_max` is
/// the horizon for the Leavitt entropy estimate when no exact value applies.
pub fn classify(g: &Graph, tol: f64, k_max: usize) -> Result<ClassifyOutcome, ClassifyError> {
    let h_path = entropy_path(g, tol)?;
    let path_dim = dim_path_algebra(g);
    let path_gk = gk_dim_path(g);
    let path = GrowthTriple {
        algebra: AlgebraKind::Path,
        dimension: path_dim.clone(),
        gkdim: path_gk,
        entropy: EntropyValue::Exact { value: h_path },
        class: class_of(&path_dim, path_gk),
    };

    let leavitt_dim = dim_leavitt_algebra(g);
    let leavitt_gk = gk_dim_leavitt(g);
    let entropy = leavitt_entropy_value(g, tol, k_max)?;
    let leavitt = GrowthTriple {
        algebra: AlgebraKind::Leavitt,
        dimension: leavitt_dim.clone(),
        gkdim: leavitt_gk,
        entropy,
        class: class_of(&leavitt_dim, leavitt_gk),
    };
    Ok(ClassifyOutcome { path, leavitt })
}

/// Check the trichotomy invariants of one triple; used by tests and the
/// randomized property suite.
pub fn triple_invariants_hold(t: &GrowthTriple) -> bool {
    let finite_dim = matches!(t.dimension, Dim::Finite(_));
    let finite_gk = matches!(t.gkdim, GkDim::Finite(_));
    match t.class {
        GrowthClass::FiniteDimensional => {
            finite_dim && t.gkdim == GkDim::Finite(0) && t.entropy.value() == 0.0
        }
        GrowthClass::Polynomial => !finite_dim && finite_gk && t.entropy.value() == 0.0,
        GrowthClass::Exponential => {
            !finite_dim && !finite_gk && t.entropy.value().is_finite() && t.entropy.value() > 0.0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn graph(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    fn classify_default(g: &Graph) -> ClassifyOutcome {
        classify(g, 1e-12, 400).unwrap()
    }

    #[test]
    fn line_graph_is_class_zero() {
        // A_3: dim KE = 6, everything else 0
        let g = graph("v1 -> v2; v2 -> v3");
        let out = classify_default(&g);
        assert_eq!(out.path.class, GrowthClass::FiniteDimensional);
        assert_eq!(out.path.dimension, Dim::Finite(BigUint::from(6u32)));
        assert_eq!(out.path.gkdim, GkDim::Finite(0));
        assert_eq!(out.path.entropy.value(), 0.0);
        assert!(out.path.entropy.is_exact());
        assert_eq!(out.leavitt.class, GrowthClass::FiniteDimensional);
        assert_eq!(out.leavitt.dimension, Dim::Finite(BigUint::from(9u32)));
        assert!(triple_invariants_hold(&out.path));
        assert!(triple_invariants_hold(&out.leavitt));
    }

    #[test]
    fn cycle_graph_is_class_one() {
        let g = graph("v1 -> v2; v2 -> v3; v3 -> v1");
        let out = classify_default(&g);
        assert_eq!(out.path.class, GrowthClass::Polynomial);
        assert_eq!(out.path.dimension, Dim::Infinite);
        assert_eq!(out.path.gkdim, GkDim::Finite(1));
        assert_eq!(out.path.entropy.value(), 0.0);
        assert_eq!(out.leavitt.class, GrowthClass::Polynomial);
        assert_eq!(out.leavitt.gkdim, GkDim::Finite(1));
        assert_eq!(out.leavitt.entropy, EntropyValue::Exact { value: 0.0 });
        assert!(triple_invariants_hold(&out.path));
        assert!(triple_invariants_hold(&out.leavitt));
    }

    #[test]
    fn fibonacci_graph_is_class_two() {
        let g = graph("u1 -> u2; u2 -> u1; u2 -> u2");
        let out = classify_default(&g);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(out.path.class, GrowthClass::Exponential);
        assert_eq!(out.path.gkdim, GkDim::Infinite);
        assert!((out.path.entropy.value() - phi.ln()).abs() < 1e-11);
        assert!(out.path.entropy.is_exact());
        match &out.leavitt.entropy {
            EntropyValue::Estimate {
                value,
                method,
                k_max,
                lower,
                upper,
            } => {
                assert_eq!(*method, ESTIMATE_METHOD);
                assert_eq!(*k_max, 400);
                assert!((value - phi.ln()).abs() < 0.01);
                assert!((lower - phi.ln()).abs() < 1e-11);
                assert!(*upper >= *lower);
            }
            EntropyValue::Exact { .. } => panic!("no closed form for this graph"),
        }
        assert!(triple_invariants_hold(&out.path));
        assert!(triple_invariants_hold(&out.leavitt));
    }

    #[test]
    fn rose_leavitt_entropy_is_exact_log_n() {
        for n in 2..=5usize {
            let stmts: Vec<String> = (0..n).map(|_| "v -> v".to_owned()).collect();
            let g = graph(&format!("v;\n{}", stmts.join("\n")));
            let out = classify_default(&g);
            assert_eq!(out.leavitt.class, GrowthClass::Exponential);
            match out.leavitt.entropy {
                EntropyValue::Exact { value } => {
                    assert!((value - (n as f64).ln()).abs() < 1e-15, "rose {n}")
                }
                EntropyValue::Estimate { .. } => panic!("rose has a closed form"),
            }
        }
    }

    #[test]
    fn empty_graph_classifies_cleanly() {
        let out = classify_default(&Graph::new());
        assert_eq!(out.path.class, GrowthClass::FiniteDimensional);
        assert_eq!(out.path.dimension, Dim::Finite(BigUint::from(0u32)));
        assert!(triple_invariants_hold(&out.path));
        assert!(triple_invariants_hold(&out.leavitt));
    }

    #[test]
    fn single_vertex_classifies_as_class_zero() {
        let out = classify_default(&graph("v;"));
        assert_eq!(out.path.dimension, Dim::Finite(BigUint::from(1u32)));
        assert_eq!(out.leavitt.dimension, Dim::Finite(BigUint::from(1u32)));
        assert_eq!(out.path.class, GrowthClass::FiniteDimensional);
    }

    #[test]
    fn invariants_hold_across_seeded_corpus() {
        for seed in 0..60u64 {
            let g = crate::oracle::random_graph(seed, 4, 6);
            let out = classify(&g, 1e-9, 60).unwrap();
            assert!(triple_invariants_hold(&out.path), "path: {}", g.to_text());
            assert!(
                triple_invariants_hold(&out.leavitt),
                "leavitt: {}",
                g.to_text()
            );
            // classes agree between the two algebras (both driven by the
            // same cycle structure)
            assert_eq!(out.path.class, out.leavitt.class, "{}", g.to_text());
        }
    }
}
