//! Serializable report types shared by the command-line interface, plus the
//! significant-digit number formatting used in both table and JSON output.
//!
//! All reports round-trip: the `parse_*` functions re-read exactly what the
//! corresponding builders emit. Dimensions are serialized as decimal strings
//! (they can exceed any JSON number), `"infinity"` standing for ∞; GK
//! dimensions are plain numbers or `"infinity"`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, ClassifyError, ClassifyOutcome, EntropyValue, GrowthTriple};
use crate::cycles::{
    chain_stats, enumerate_cycles, satisfies_exc, Cycle, CycleChainReport, CycleError, Dim,
    ExcStatus, GkDim,
};
use crate::graph::Graph;
use crate::leavitt::EntropyEstimate;
use crate::oracle::OracleMismatch;
use crate::spectral::{entropy_extended, SpectralError};

/// Any failure while assembling a report.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Cycles(#[from] CycleError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Tolerance used for the numerical sandwich flag in reports: the estimate
/// may exceed its exact bounds by at most this margin at finite horizons.
pub const SANDWICH_MARGIN: f64 = 0.02;

/// Round `x` to `digits` significant decimal digits.
pub fn round_significant(x: f64, digits: u8) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let digits = digits.clamp(1, 17);
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits as i32 - 1 - magnitude);
    (x * factor).round() / factor
}

/// Format `x` with `digits` significant digits as a plain decimal (never
/// scientific notation).
pub fn format_number(x: f64, digits: u8) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_owned()
        } else if x > 0.0 {
            "infinity".to_owned()
        } else {
            "-infinity".to_owned()
        };
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let digits = digits.clamp(1, 17) as i32;
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    let formatted = format!("{:.*}", decimals, x);
    // Trim trailing fractional zeros ("1.10610" → "1.1061", "3.00" → "3").
    if formatted.contains('.') {
        formatted
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_owned()
    } else {
        formatted
    }
}

/// A GK dimension in JSON: a number, or the string `"infinity"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GkDimJson {
    Finite(u64),
    Infinite(String),
}

impl From<GkDim> for GkDimJson {
    fn from(g: GkDim) -> Self {
        match g {
            GkDim::Finite(n) => GkDimJson::Finite(n),
            GkDim::Infinite => GkDimJson::Infinite("infinity".to_owned()),
        }
    }
}

fn dim_string(d: &Dim) -> String {
    d.to_string()
}

/// An entropy value in JSON; estimate metadata present only on estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyJson {
    pub value: f64,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
}

impl EntropyJson {
    pub fn exact(value: f64, digits: u8) -> Self {
        EntropyJson {
            value: round_significant(value, digits),
            exact: true,
            method: None,
            k_max: None,
            lower: None,
            upper: None,
        }
    }

    pub fn from_value(e: &EntropyValue, digits: u8) -> Self {
        match e {
            EntropyValue::Exact { value } => EntropyJson::exact(*value, digits),
            EntropyValue::Estimate {
                value,
                method,
                k_max,
                lower,
                upper,
            } => EntropyJson {
                value: round_significant(*value, digits),
                exact: false,
                method: Some((*method).to_owned()),
                k_max: Some(*k_max),
                lower: Some(round_significant(*lower, digits)),
                upper: Some(round_significant(*upper, digits)),
            },
        }
    }
}

/// One growth triple in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleJson {
    pub algebra: String,
    pub dimension: String,
    pub gkdim: GkDimJson,
    pub entropy: EntropyJson,
    pub class: u8,
}

impl TripleJson {
    pub fn from_triple(t: &GrowthTriple, digits: u8) -> Self {
        TripleJson {
            algebra: t.algebra.as_str().to_owned(),
            dimension: dim_string(&t.dimension),
            gkdim: t.gkdim.into(),
            entropy: EntropyJson::from_value(&t.entropy, digits),
            class: t.class.as_u8(),
        }
    }
}

/// One cycle in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleJson {
    pub edges: Vec<String>,
    pub vertices: Vec<String>,
    pub length: usize,
    pub exit: bool,
}

impl CycleJson {
    pub fn from_cycle(c: &Cycle, g: &Graph) -> Self {
        CycleJson {
            edges: c.edge_names(g),
            vertices: c
                .vertices(g)
                .into_iter()
                .map(|v| g.vertex_name(v).to_owned())
                .collect(),
            length: c.len(),
            exit: c.has_exit(g),
        }
    }
}

/// Cycle census in JSON; `d1`/`d2` are present only when the
/// exclusive-cycles condition holds, the witness only when it fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclesJson {
    pub count: usize,
    pub exc: bool,
    pub list: Vec<CycleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
}

impl CyclesJson {
    pub fn build(g: &Graph, cycles: &[Cycle], exc: &ExcStatus, report: Option<&CycleChainReport>) -> Self {
        CyclesJson {
            count: cycles.len(),
            exc: exc.holds(),
            list: cycles.iter().map(|c| CycleJson::from_cycle(c, g)).collect(),
            d1: report.map(|r| r.d1),
            d2: report.map(|r| r.d2),
            witness: match exc {
                ExcStatus::Satisfied => None,
                ExcStatus::Violated { first, second } => {
                    Some(vec![first.edge_names(g), second.edge_names(g)])
                }
            },
        }
    }

    /// Run the cycle census on `g` and package it.
    pub fn compute(g: &Graph) -> Result<Self, CycleError> {
        let cycles = enumerate_cycles(g)?;
        let exc = satisfies_exc(g);
        let report = if exc.holds() {
            Some(chain_stats(g)?)
        } else {
            None
        };
        Ok(CyclesJson::build(g, &cycles, &exc, report.as_ref()))
    }
}

/// The full `analyze` report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeJson {
    pub graph: serde_json::Value,
    pub vertices: usize,
    pub edges: usize,
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    pub regular: Vec<String>,
    pub cycles: CyclesJson,
    pub path: TripleJson,
    pub leavitt: TripleJson,
    pub entropy_extended: EntropyJson,
    pub sandwich_ok: bool,
}

impl AnalyzeJson {
    /// Compute the full report for `g`: vertex census, cycle census, growth
    /// triples of both algebras, extended-graph entropy, and the sandwich
    /// check on the Leavitt estimate.
    pub fn build(g: &Graph, tol: f64, k_max: usize, digits: u8) -> Result<Self, ReportError> {
        let classes = g.vertex_classes();
        let names = |ids: &[usize]| -> Vec<String> {
            ids.iter().map(|&v| g.vertex_name(v).to_owned()).collect()
        };
        let cycles = CyclesJson::compute(g)?;
        let outcome = classify(g, tol, k_max)?;
        let h_ext = entropy_extended(g, tol)?;
        let sandwich = match &outcome.leavitt.entropy {
            EntropyValue::Exact { .. } => true,
            EntropyValue::Estimate { value, lower, upper, .. } => {
                sandwich_ok(*value, *lower, *upper)
            }
        };
        Ok(AnalyzeJson {
            graph: g.to_json_value(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            sinks: names(&classes.sinks),
            sources: names(&classes.sources),
            regular: names(&classes.regular),
            cycles,
            path: TripleJson::from_triple(&outcome.path, digits),
            leavitt: TripleJson::from_triple(&outcome.leavitt, digits),
            entropy_extended: EntropyJson::exact(h_ext, digits),
            sandwich_ok: sandwich,
        })
    }

    /// Pretty-printed JSON, exactly what [`parse_analyze_report`] reads back.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// The `leavitt-seq` summary report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeavittSeqJson {
    pub graph: serde_json::Value,
    pub k_max: usize,
    pub h_last: f64,
    pub h_ratio: f64,
    pub entropy_path: f64,
    pub entropy_extended: f64,
    pub sandwich_ok: bool,
}

impl LeavittSeqJson {
    pub fn build(
        g: &Graph,
        est: &EntropyEstimate,
        h_path: f64,
        h_ext: f64,
        digits: u8,
    ) -> Self {
        LeavittSeqJson {
            graph: g.to_json_value(),
            k_max: est.k_max,
            h_last: round_significant(est.last_h, digits),
            h_ratio: round_significant(est.ratio_h, digits),
            entropy_path: round_significant(h_path, digits),
            entropy_extended: round_significant(h_ext, digits),
            sandwich_ok: sandwich_ok(est.ratio_h, h_path, h_ext),
        }
    }
}

/// Whether an estimate sits inside its exact sandwich bounds up to
/// [`SANDWICH_MARGIN`].
pub fn sandwich_ok(estimate: f64, lower: f64, upper: f64) -> bool {
    estimate >= lower - SANDWICH_MARGIN && estimate <= upper + SANDWICH_MARGIN
}

/// The `classify` report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub path: TripleJson,
    pub leavitt: TripleJson,
}

impl ClassifyJson {
    pub fn from_outcome(out: &ClassifyOutcome, digits: u8) -> Self {
        ClassifyJson {
            path: TripleJson::from_triple(&out.path, digits),
            leavitt: TripleJson::from_triple(&out.leavitt, digits),
        }
    }
}

/// One oracle mismatch in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub seed: u64,
    pub graph: String,
    pub detail: String,
}

impl From<&OracleMismatch> for MismatchJson {
    fn from(m: &OracleMismatch) -> Self {
        MismatchJson {
            seed: m.seed,
            graph: m.graph_text.clone(),
            detail: m.detail.clone(),
        }
    }
}

/// The `oracle-check` report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleJson {
    pub ok: bool,
    pub seed: u64,
    pub trials: u64,
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<MismatchJson>,
}

pub fn parse_analyze_report(s: &str) -> Result<AnalyzeJson, serde_json::Error> {
    serde_json::from_str(s)
}

pub fn parse_leavitt_report(s: &str) -> Result<LeavittSeqJson, serde_json::Error> {
    serde_json::from_str(s)
}

pub fn parse_classify_report(s: &str) -> Result<ClassifyJson, serde_json::Error> {
    serde_json::from_str(s)
}

pub fn parse_oracle_report(s: &str) -> Result<OracleJson, serde_json::Error> {
    serde_json::from_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    #[test]
    fn rounding_to_significant_digits() {
        assert_eq!(round_significant(0.48121182505, 6), 0.481212);
        assert_eq!(round_significant(1.1060966573, 5), 1.1061);
        assert_eq!(round_significant(0.0145107, 6), 0.0145107);
        assert_eq!(round_significant(123456.789, 4), 123500.0);
        assert_eq!(round_significant(0.0, 6), 0.0);
        assert_eq!(round_significant(-0.481257, 3), -0.481);
    }

    #[test]
    fn plain_decimal_formatting() {
        assert_eq!(format_number(0.4812118251, 6), "0.481212");
        assert_eq!(format_number(0.0145107, 6), "0.0145107");
        assert_eq!(format_number(3.0, 6), "3");
        assert_eq!(format_number(0.0, 6), "0");
        assert_eq!(format_number(1.1060966573, 5), "1.1061");
        assert_eq!(format_number(1098.6122886, 6), "1098.61");
        assert_eq!(format_number(f64::INFINITY, 6), "infinity");
        assert_eq!(format_number(2.0f64.ln(), 15), "0.693147180559945");
    }

    #[test]
    fn classify_report_round_trips() {
        let g = Graph::parse("u1 -> u2; u2 -> u1; u2 -> u2").unwrap();
        let out = classify(&g, 1e-12, 200).unwrap();
        let report = ClassifyJson::from_outcome(&out, 6);
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back = parse_classify_report(&text).unwrap();
        assert_eq!(report, back);
        assert_eq!(back.path.algebra, "path");
        assert_eq!(back.path.class, 2);
        assert_eq!(back.path.dimension, "infinity");
        assert_eq!(back.path.gkdim, GkDimJson::Infinite("infinity".into()));
        assert!(!back.leavitt.entropy.exact);
        assert_eq!(
            back.leavitt.entropy.method.as_deref(),
            Some("countpaths-estimate")
        );
    }

    #[test]
    fn leavitt_report_round_trips() {
        let g = Graph::parse("u1 -> u2; u2 -> u1; u2 -> u2").unwrap();
        let est = crate::leavitt::entropy_leavitt_estimate(&g, 100).unwrap();
        let report = LeavittSeqJson::build(&g, &est, 0.481, 0.962, 6);
        let text = serde_json::to_string(&report).unwrap();
        let back = parse_leavitt_report(&text).unwrap();
        assert_eq!(report, back);
        assert!(back.sandwich_ok);
        assert_eq!(back.k_max, 100);
    }

    #[test]
    fn sandwich_margin_behaves() {
        assert!(sandwich_ok(0.5, 0.48, 0.96));
        assert!(sandwich_ok(0.47, 0.48, 0.96)); // within margin below
        assert!(!sandwich_ok(0.44, 0.48, 0.96));
        assert!(!sandwich_ok(1.0, 0.48, 0.96));
    }

    #[test]
    fn gkdim_json_shapes() {
        let f: GkDimJson = GkDim::Finite(3).into();
        let i: GkDimJson = GkDim::Infinite.into();
        assert_eq!(serde_json::to_string(&f).unwrap(), "3");
        assert_eq!(serde_json::to_string(&i).unwrap(), "\"infinity\"");
        let back: GkDimJson = serde_json::from_str("3").unwrap();
        assert_eq!(back, GkDimJson::Finite(3));
        let back: GkDimJson = serde_json::from_str("\"infinity\"").unwrap();
        assert_eq!(back, GkDimJson::Infinite("infinity".into()));
    }
}
