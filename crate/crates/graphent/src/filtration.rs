//! Entropy and GK-dimension estimators on abstract dimension sequences, and
//! the sequence-level transformation laws (subsampling, matrix-ring scaling,
//! direct sums) that the growth theory predicts.
//!
//! A [`DimSequence`] abstracts a filtration `V_0 ⊆ V_1 ⊆ …` of an algebra: it
//! stores the quotient dimensions `q_n = dim(V_n/V_{n−1})` for `n = 1..=N`
//! and, when known, the cumulative dimensions `dim V_n` for `n = 0..=N`.
//! Entropy and GK-dimension of a finite prefix are inherently estimates of a
//! limsup; the estimators here are labeled as such and are anchored at the
//! horizon (largest available `n`), where the limsup proxy is least polluted
//! by transient terms. A trailing window can be widened to emulate a limsup
//! over a tail segment for oscillating sequences.

use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::biglog::{ln_f64, ln_ratio_f64};

/// Slope above which [`gk_dim_of`] reports ∞ (exponential growth reaches
/// slope ≈ n·ln c / ln n ≫ 50 at any realistic horizon, polynomial growth of
/// degree d hovers near d).
pub const GK_INFINITY_SLOPE: f64 = 50.0;

/// Quotient (and optionally cumulative) dimensions of a filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimSequence {
    /// `dim V_n` for `n = 0..=N`, when known.
    cumulative: Option<Vec<BigUint>>,
    /// `dim(V_n/V_{n−1})` for `n = 1..=N`.
    quotient: Vec<BigUint>,
}

/// Errors from sequence transforms and parsing.
#[derive(Debug, Error)]
pub enum FiltrationError {
    #[error("subsample step must be at least 1")]
    ZeroStep,
    #[error("cumulative sequence must be nondecreasing")]
    DecreasingCumulative,
    #[error("cumulative/quotient length mismatch")]
    LengthMismatch,
    #[error("line {line}: cannot parse `{token}` as a nonnegative integer")]
    Parse { line: usize, token: String },
    #[error("empty sequence file")]
    Empty,
}

impl DimSequence {
    /// Builds a sequence from quotient dimensions only.
    pub fn from_quotients(quotient: Vec<BigUint>) -> Self {
        DimSequence {
            cumulative: None,
            quotient,
        }
    }

    /// Builds a sequence from quotients plus the base dimension `dim V_0`;
    /// cumulative dimensions are derived.
    pub fn with_base(base: BigUint, quotient: Vec<BigUint>) -> Self {
        let mut cumulative = Vec::with_capacity(quotient.len() + 1);
        cumulative.push(base);
        for q in &quotient {
            let next = cumulative.last().unwrap() + q;
            cumulative.push(next);
        }
        DimSequence {
            cumulative: Some(cumulative),
            quotient,
        }
    }

    /// Builds a sequence from cumulative dimensions `dim V_0..=dim V_N`,
    /// deriving quotients; fails if the input decreases.
    pub fn from_cumulative(cumulative: Vec<BigUint>) -> Result<Self, FiltrationError> {
        if cumulative.is_empty() {
            return Err(FiltrationError::Empty);
        }
        let mut quotient = Vec::with_capacity(cumulative.len() - 1);
        for w in cumulative.windows(2) {
            if w[1] < w[0] {
                return Err(FiltrationError::DecreasingCumulative);
            }
            quotient.push(&w[1] - &w[0]);
        }
        Ok(DimSequence {
            cumulative: Some(cumulative),
            quotient,
        })
    }

    /// Horizon `N` (number of quotient entries).
    pub fn len(&self) -> usize {
        self.quotient.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotient.is_empty()
    }

    /// The quotient dimensions `q_1..=q_N`.
    pub fn quotients(&self) -> &[BigUint] {
        &self.quotient
    }

    /// The cumulative dimensions, when known.
    pub fn cumulative(&self) -> Option<&[BigUint]> {
        self.cumulative.as_deref()
    }

    /// Cumulative dimensions, reconstructing by prefix sums (with `dim V_0 =
    /// 0`) when they were not provided. The unknown base offset does not
    /// affect any slope or difference estimate at the horizon.
    pub fn cumulative_or_reconstructed(&self) -> Vec<BigUint> {
        match &self.cumulative {
            Some(c) => c.clone(),
            None => {
                let mut c = Vec::with_capacity(self.quotient.len() + 1);
                c.push(BigUint::zero());
                for q in &self.quotient {
                    let next = c.last().unwrap() + q;
                    c.push(next);
                }
                c
            }
        }
    }

    /// Checks internal consistency (cumulative differences equal quotients).
    pub fn validate(&self) -> Result<(), FiltrationError> {
        if let Some(c) = &self.cumulative {
            if c.len() != self.quotient.len() + 1 {
                return Err(FiltrationError::LengthMismatch);
            }
            for (w, q) in c.windows(2).zip(&self.quotient) {
                if w[1] < w[0] || &w[1] - &w[0] != *q {
                    return Err(FiltrationError::DecreasingCumulative);
                }
            }
        }
        Ok(())
    }
}

/// Finite-horizon entropy estimate: `max log(q_n)/n` over the trailing
/// `window` entries (entries with `q_n = 0` are skipped). Returns 0 when the
/// sequence is empty or has stabilized (its last quotient is 0), which is the
/// finite-dimensional convention.
pub fn entropy_of_windowed(seq: &DimSequence, window: usize) -> f64 {
    let q = seq.quotients();
    let n = q.len();
    if n == 0 || q[n - 1].is_zero() {
        return 0.0;
    }
    let window = window.max(1).min(n);
    let mut best = 0.0f64;
    for (idx, qk) in q.iter().enumerate().skip(n - window) {
        if let Some(l) = ln_f64(qk) {
            let h = l / (idx + 1) as f64;
            if h > best {
                best = h;
            }
        }
    }
    best
}

/// Finite-horizon entropy estimate anchored at the horizon (window of 1):
/// `log(q_N)/N`, or 0 for empty/stabilized sequences. This is the same proxy
/// the growth theory evaluates at large `k`; it is an estimate of a limsup,
/// never the limit itself.
pub fn entropy_of(seq: &DimSequence) -> f64 {
    entropy_of_windowed(seq, 1)
}

/// GK-dimension estimate from a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GkEstimate {
    /// Slope estimate `log(dim V_N)/log N` at the horizon.
    Finite(f64),
    /// Slope exceeded [`GK_INFINITY_SLOPE`]; growth is super-polynomial at
    /// this horizon.
    Infinite,
}

impl GkEstimate {
    pub fn as_f64(&self) -> f64 {
        match self {
            GkEstimate::Finite(v) => *v,
            GkEstimate::Infinite => f64::INFINITY,
        }
    }
}

/// Finite-horizon GK-dimension estimate: `log(dim V_N)/log N`. Stabilized
/// sequences (last quotient 0: the algebra is finite-dimensional as far as
/// the horizon can tell) report 0 exactly. Slopes above [`GK_INFINITY_SLOPE`]
/// are reported as ∞. This is a slope estimate, not the limsup.
pub fn gk_dim_of(seq: &DimSequence) -> GkEstimate {
    let n = seq.len();
    if n == 0 || seq.quotients()[n - 1].is_zero() {
        return GkEstimate::Finite(0.0);
    }
    let cumulative = seq.cumulative_or_reconstructed();
    let v_n = &cumulative[n];
    let Some(log_dim) = ln_f64(v_n) else {
        return GkEstimate::Finite(0.0);
    };
    if n < 2 {
        // log N = 0 at N = 1; no slope is defined yet.
        return GkEstimate::Finite(0.0);
    }
    let slope = log_dim / (n as f64).ln();
    if slope > GK_INFINITY_SLOPE {
        GkEstimate::Infinite
    } else {
        GkEstimate::Finite(slope)
    }
}

/// Subsampled filtration `W_n := V_{nk}`: cumulative entries are taken every
/// `k` steps and quotients recomputed by differencing. Entropy scales by `k`.
pub fn subsample(seq: &DimSequence, k: usize) -> Result<DimSequence, FiltrationError> {
    if k == 0 {
        return Err(FiltrationError::ZeroStep);
    }
    let cumulative = seq.cumulative_or_reconstructed();
    let n = seq.len();
    let new_cumulative: Vec<BigUint> = (0..=n / k).map(|i| cumulative[i * k].clone()).collect();
    DimSequence::from_cumulative(new_cumulative)
}

/// Matrix-ring scaling `M_n(A)`: every dimension is multiplied by `n²`. The
/// entropy of the underlying algebra is unchanged; a finite-horizon estimate
/// moves by at most `log(n²)/horizon`.
pub fn matrix_scale(seq: &DimSequence, n: u64) -> DimSequence {
    let factor = BigUint::from(n) * BigUint::from(n);
    DimSequence {
        cumulative: seq
            .cumulative
            .as_ref()
            .map(|c| c.iter().map(|x| x * &factor).collect()),
        quotient: seq.quotient.iter().map(|x| x * &factor).collect(),
    }
}

/// Direct sum `A ⊕ B`: quotient dimensions add entrywise (the shorter
/// sequence is zero-padded, i.e. treated as stabilized). The entropy of the
/// sum is the max of the two entropies.
pub fn direct_sum(a: &DimSequence, b: &DimSequence) -> DimSequence {
    let n = a.len().max(b.len());
    let zero = BigUint::zero();
    let quotient: Vec<BigUint> = (0..n)
        .map(|i| {
            a.quotient.get(i).unwrap_or(&zero) + b.quotient.get(i).unwrap_or(&zero)
        })
        .collect();
    let cumulative = match (&a.cumulative, &b.cumulative) {
        (Some(ca), Some(cb)) => Some(
            (0..=n)
                .map(|i| {
                    let xa = ca.get(i).or(ca.last()).cloned().unwrap_or_else(BigUint::zero);
                    let xb = cb.get(i).or(cb.last()).cloned().unwrap_or_else(BigUint::zero);
                    xa + xb
                })
                .collect(),
        ),
        _ => None,
    };
    DimSequence {
        cumulative,
        quotient,
    }
}

/// Parses a sequence file: either the CSV schema written by
/// [`write_quotient_csv`] (detected by its `k,` header) with quotients taken
/// from the second column, or a plain list of whitespace-separated
/// nonnegative integers.
pub fn parse_dim_sequence(text: &str) -> Result<DimSequence, FiltrationError> {
    let trimmed = text.trim_start();
    let mut quotients = Vec::new();
    if trimmed.starts_with("k,") {
        for (idx, line) in text.lines().enumerate().skip(1) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let field = line.split(',').nth(1).unwrap_or("");
            let q: BigUint = field.trim().parse().map_err(|_| FiltrationError::Parse {
                line: idx + 1,
                token: field.to_owned(),
            })?;
            quotients.push(q);
        }
    } else {
        for (idx, line) in text.lines().enumerate() {
            for token in line.split_whitespace() {
                let q: BigUint = token.parse().map_err(|_| FiltrationError::Parse {
                    line: idx + 1,
                    token: token.to_owned(),
                })?;
                quotients.push(q);
            }
        }
    }
    if quotients.is_empty() {
        return Err(FiltrationError::Empty);
    }
    Ok(DimSequence::from_quotients(quotients))
}

/// Writes the CSV schema `k,q_k_digits,h_k,ratio_h_k`: the exact decimal
/// digits of `q_k`, the normalized log `h_k = log(q_k)/k`, and the Stolz
/// ratio `log(q_k) − log(q_{k−1})`. `base` supplies `q_0` for the `k = 1`
/// ratio when known; ratio fields are left empty whenever either term is 0.
pub fn write_quotient_csv<W: Write>(
    w: &mut W,
    seq: &DimSequence,
    base: Option<&BigUint>,
) -> io::Result<()> {
    writeln!(w, "k,q_k_digits,h_k,ratio_h_k")?;
    let q = seq.quotients();
    for (idx, qk) in q.iter().enumerate() {
        let k = idx + 1;
        let h = ln_f64(qk).map(|l| l / k as f64);
        let prev = if idx == 0 { base } else { Some(&q[idx - 1]) };
        let ratio = prev.and_then(|p| ln_ratio_f64(qk, p));
        let h_str = h.map(|v| v.to_string()).unwrap_or_default();
        let ratio_str = ratio.map(|v| v.to_string()).unwrap_or_default();
        writeln!(w, "{k},{qk},{h_str},{ratio_str}")?;
    }
    Ok(())
}
