//! Exact spectral analysis of adjacency matrices: the Perron root (spectral
//! radius) with a guaranteed enclosure, and the resulting entropies of the
//! path algebra and of the extended (ghost-edge) path algebra.
//!
//! For a nonnegative integer matrix the spectral radius is the largest real
//! root of the characteristic polynomial (Perron–Frobenius). It is computed
//! here without any floating-point linear algebra: the characteristic
//! polynomial is exact, its square-free part feeds a Sturm chain, and
//! bisection maintains the invariant "the largest real root lies in
//! `(lo, hi]`" using exact root counts at rational points. Three situations
//! are recognized exactly rather than numerically:
//!
//! * nilpotent matrices (characteristic polynomial `xⁿ`, acyclic graphs): ρ = 0;
//! * no roots above 1: ρ = 1 (any graph with a cycle has ρ ≥ 1);
//! * an integer landing inside the final enclosure that is a root with no
//!   roots above it: ρ is that integer (roses, disjoint cycle families, …).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::filtration::DimSequence;
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::poly::{char_poly, count_roots_above_integer, square_free_part, IntPoly, SturmChain};

/// Default enclosure width for Perron roots.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("tolerance must be a positive finite number, got {0}")]
    InvalidTolerance(f64),
}

/// The spectral radius of a nonnegative integer matrix, with its enclosure.
///
/// Invariants: `lo ≤ value ≤ hi`, the largest real root of the characteristic
/// polynomial lies in `[lo, hi]`, and `hi − lo ≤ tol` (`lo = hi` when the
/// root was recognized exactly).
#[derive(Debug, Clone)]
pub struct PerronRoot {
    /// Best point estimate (enclosure midpoint, or the exact value).
    pub value: f64,
    /// Lower bound of the enclosure.
    pub lo: f64,
    /// Upper bound of the enclosure.
    pub hi: f64,
    /// True when the root was determined exactly (0, 1, or an integer root
    /// with nothing above it), in which case `lo = value = hi`.
    pub exact: bool,
    /// The tolerance the enclosure was computed to.
    pub tol: f64,
}

impl PerronRoot {
    fn exact_integer(value: u64, tol: f64) -> Self {
        let v = value as f64;
        PerronRoot {
            value: v,
            lo: v,
            hi: v,
            exact: true,
            tol,
        }
    }
}

fn validate_tol(tol: f64) -> Result<(), SpectralError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    Ok(())
}

/// Exact count of the roots of `sf` strictly above a rational point that is
/// not itself a root of `sf` (guaranteed for non-integer dyadics, since `sf`
/// is monic with integer coefficients).
fn roots_above(chain: &SturmChain, point: &BigRational) -> usize {
    chain.count_roots_above(point.numer(), point.denom())
}

/// The spectral radius of a nonnegative integer matrix with a guaranteed
/// enclosure of width at most `tol`.
pub fn perron_root(a: &IntMatrix, tol: f64) -> Result<PerronRoot, SpectralError> {
    validate_tol(tol)?;
    if a.order() == 0 {
        return Ok(PerronRoot::exact_integer(0, tol));
    }
    let p = char_poly(a);
    if p.is_power_of_x() {
        // Nilpotent: every eigenvalue is 0 (the graph is acyclic).
        return Ok(PerronRoot::exact_integer(0, tol));
    }
    let sf = square_free_part(&p);
    // A non-nilpotent nonnegative integer matrix has a cycle, so ρ ≥ 1.
    if count_roots_above_integer(&sf, &BigInt::one()) == 0 {
        debug_assert!(sf.eval_int(&BigInt::one()).is_zero());
        return Ok(PerronRoot::exact_integer(1, tol));
    }
    let chain = SturmChain::new(&sf);
    let mut lo = BigRational::from_integer(BigInt::one());
    // ρ ≤ ‖A‖₁,₁; a non-integer dyadic just above it is never a root.
    let norm = BigInt::from(a.norm_11());
    let mut hi = BigRational::new(4 * &norm + 1, BigInt::from(4));
    debug_assert_eq!(roots_above(&chain, &hi), 0);
    let tol_r = BigRational::from_float(tol).expect("tol validated finite");
    while &hi - &lo > tol_r {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let above = if mid.is_integer() {
            let c = mid.to_integer();
            if sf.eval_int(&c).is_zero() {
                let above = count_roots_above_integer(&sf, &c);
                if above == 0 {
                    // mid is the largest root: exact hit.
                    let v = c.to_u64().expect("spectral radius fits u64");
                    return Ok(PerronRoot::exact_integer(v, tol));
                }
                above
            } else {
                roots_above(&chain, &mid)
            }
        } else {
            roots_above(&chain, &mid)
        };
        if above >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Exactness sweep: if a root-with-nothing-above sits at the single
    // integer the enclosure can contain, report it exactly.
    let candidate = hi.floor().to_integer();
    if BigRational::from_integer(candidate.clone()) > lo
        && sf.eval_int(&candidate).is_zero()
        && count_roots_above_integer(&sf, &candidate) == 0
    {
        let v = candidate.to_u64().expect("spectral radius fits u64");
        return Ok(PerronRoot::exact_integer(v, tol));
    }
    let lo_f = lo.to_f64().unwrap_or(f64::NAN);
    let hi_f = hi.to_f64().unwrap_or(f64::NAN);
    let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
    Ok(PerronRoot {
        value: mid.to_f64().unwrap_or(f64::NAN),
        lo: lo_f,
        hi: hi_f,
        exact: false,
        tol,
    })
}

fn entropy_from_root(root: &PerronRoot) -> f64 {
    // ρ ≤ 1 ⇒ entropy 0 (finite-dimensional or polynomially-growing algebra).
    // The bisection branch only runs when ρ > 1 strictly and keeps lo ≥ 1,
    // so no genuine clamping ever happens in the ln.
    if root.exact && root.value <= 1.0 {
        0.0
    } else {
        root.value.max(1.0).ln()
    }
}

/// Entropy of the path algebra: `log ρ(A_E)`, computed from the exact Perron
/// enclosure; exactly 0 when ρ ≤ 1 (acyclic graphs and graphs whose cycles
/// are disjoint). Absolute error is bounded by the enclosure width.
pub fn entropy_path(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    entropy_path_with_root(g, tol).map(|(h, _)| h)
}

/// [`entropy_path`] together with the underlying Perron root.
pub fn entropy_path_with_root(g: &Graph, tol: f64) -> Result<(f64, PerronRoot), SpectralError> {
    let root = perron_root(&g.adjacency_matrix(), tol)?;
    Ok((entropy_from_root(&root), root))
}

/// Entropy of the extended-graph path algebra: `log ρ(A_E + A_Eᵗ)`.
pub fn entropy_extended(g: &Graph, tol: f64) -> Result<f64, SpectralError> {
    entropy_extended_with_root(g, tol).map(|(h, _)| h)
}

/// [`entropy_extended`] together with the underlying Perron root.
pub fn entropy_extended_with_root(
    g: &Graph,
    tol: f64,
) -> Result<(f64, PerronRoot), SpectralError> {
    let a = g.adjacency_matrix();
    let sym = a.add(&a.transpose());
    let root = perron_root(&sym, tol)?;
    Ok((entropy_from_root(&root), root))
}

/// The exact quotient-dimension sequence of the path algebra's standard
/// filtration: `q_k = ‖Aᵏ‖₁,₁` (the number of paths of length `k`) for
/// `k = 1..=kmax`, with `dim V_0` = number of vertices as the base.
pub fn norm_sequence(a: &IntMatrix, kmax: usize) -> DimSequence {
    let mut quotients = Vec::with_capacity(kmax);
    let mut power = a.clone();
    for k in 1..=kmax {
        quotients.push(power.norm_11());
        if k < kmax {
            power = power.mul(a);
        }
    }
    DimSequence::with_base(a.order().into(), quotients)
}

/// Convenience: `true` when the characteristic polynomial of the adjacency
/// matrix is `xⁿ`, i.e. the graph is acyclic.
pub fn is_nilpotent(a: &IntMatrix) -> bool {
    a.order() == 0 || char_poly(a).is_power_of_x()
}

/// The exact characteristic polynomial of a graph's adjacency matrix
/// (re-exported at graph level for the trim/direct-sum factorization checks).
pub fn graph_char_poly(g: &Graph) -> IntPoly {
    char_poly(&g.adjacency_matrix())
}
