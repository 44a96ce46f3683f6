//! The `graphent` command-line interface.
//!
//! Subcommands: `analyze`, `entropy {path|extended|leavitt}`,
//! `gkdim {path|leavitt}`, `classify`, `cycles`, `trim`, `components`,
//! `leavitt-seq`, `oracle-check`, `seq {entropy|gk|subsample|scale}`.
//! Graph arguments are file paths (text or JSON format, auto-detected) or
//! `-` for standard input.
//!
//! Exit codes: 0 success, 1 input error (unparsable graph or sequence,
//! unreadable file, bad flags), 2 internal check failure (an
//! `oracle-check` mismatch).

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::classify::{classify, leavitt_entropy_value};
use crate::filtration::{
    self, entropy_of, gk_dim_of, parse_dim_sequence, write_quotient_csv, DimSequence, GkEstimate,
};
use crate::graph::Graph;
use crate::leavitt::{entropy_leavitt_estimate, leavitt_sequence};
use crate::oracle::{run_oracle_check, OracleCheckConfig};
use crate::report::{
    format_number, parse_oracle_report, round_significant, AnalyzeJson, ClassifyJson, CyclesJson,
    EntropyJson, GkDimJson, LeavittSeqJson, MismatchJson, OracleJson, TripleJson,
};
use crate::spectral::{entropy_extended, entropy_path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "graphent",
    version,
    about = "Growth invariants of path algebras and Leavitt path algebras of finite graphs",
    propagate_version = true
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Enclosure width for exact spectral entropies.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Significant digits in printed numbers (1–15).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=15))]
    digits: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph file (text or JSON), or `-` for standard input.
    graph: String,
}

#[derive(Debug, Args)]
struct HorizonArg {
    /// Horizon for the Leavitt filtration sequence.
    #[arg(long, default_value_t = 1000)]
    kmax: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full structural and growth report.
    Analyze {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        horizon: HorizonArg,
    },
    /// Algebraic entropy of one algebra.
    Entropy {
        #[command(subcommand)]
        which: EntropyKind,
    },
    /// Gelfand–Kirillov dimension of one algebra.
    Gkdim {
        #[command(subcommand)]
        which: GkKind,
    },
    /// Growth triples and trichotomy classes of both algebras.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        horizon: HorizonArg,
    },
    /// Enumerate simple cycles and chain statistics.
    Cycles {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Iteratively remove sinks and sources; print the trimmed graph.
    Trim {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Split into weakly connected components.
    Components {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Exact Leavitt filtration sequence with entropy summary.
    LeavittSeq {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        horizon: HorizonArg,
        /// Also write the full sequence as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Randomized equivalence testing of formulas against brute force.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
    },
    /// Operate on a stored dimension sequence (CSV or raw numbers).
    Seq {
        #[command(subcommand)]
        op: SeqOp,
    },
}

#[derive(Debug, Subcommand)]
enum EntropyKind {
    /// Exact entropy of the path algebra: log of the Perron root.
    Path {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Exact entropy of the extended-graph path algebra.
    Extended {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Entropy of the Leavitt path algebra (exact where known, else a
    /// tagged finite-horizon estimate).
    Leavitt {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        horizon: HorizonArg,
    },
}

#[derive(Debug, Subcommand)]
enum GkKind {
    Path {
        #[command(flatten)]
        graph: GraphArg,
    },
    Leavitt {
        #[command(flatten)]
        graph: GraphArg,
    },
}

#[derive(Debug, Args)]
struct SeqFileArg {
    /// Sequence file: the CSV schema `k,q_k_digits,h_k,ratio_h_k`, or
    /// whitespace-separated quotient dimensions.
    #[arg(long)]
    seq_file: String,
}

#[derive(Debug, Subcommand)]
enum SeqOp {
    /// Entropy estimate at the sequence horizon.
    Entropy {
        #[command(flatten)]
        file: SeqFileArg,
    },
    /// Gelfand–Kirillov dimension estimate from cumulative growth.
    Gk {
        #[command(flatten)]
        file: SeqFileArg,
    },
    /// Keep every k-th filtration step (emits the CSV schema).
    Subsample {
        k: usize,
        #[command(flatten)]
        file: SeqFileArg,
    },
    /// Tensor with an n×n matrix algebra: all dimensions × n² (emits CSV).
    Scale {
        n: u64,
        #[command(flatten)]
        file: SeqFileArg,
    },
}

/// Run the CLI on the given arguments, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn load_graph(path: &str) -> Result<Graph, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    Graph::parse(&text).map_err(|e| format!("parsing {path}: {e}"))
}

fn load_sequence(path: &str) -> Result<DimSequence, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
    parse_dim_sequence(&text).map_err(|e| format!("parsing {path}: {e}"))
}

fn entropy_json_table(e: &EntropyJson, digits: u8) -> String {
    if e.exact {
        format_number(e.value, digits)
    } else {
        format!(
            "{} ({}, k_max={}, bounds [{}, {}])",
            format_number(e.value, digits),
            e.method.as_deref().unwrap_or("estimate"),
            e.k_max.unwrap_or(0),
            format_number(e.lower.unwrap_or(f64::NAN), digits),
            format_number(e.upper.unwrap_or(f64::NAN), digits),
        )
    }
}

fn gkdim_table(g: &GkDimJson) -> String {
    match g {
        GkDimJson::Finite(n) => n.to_string(),
        GkDimJson::Infinite(_) => "infinity".to_owned(),
    }
}

fn triple_table(label: &str, t: &TripleJson, digits: u8) -> String {
    format!(
        "{label}: dimension={} gkdim={} entropy={} class={}",
        t.dimension,
        gkdim_table(&t.gkdim),
        entropy_json_table(&t.entropy, digits),
        t.class
    )
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn print_analyze_table(a: &AnalyzeJson, digits: u8) {
    println!("vertices: {}", a.vertices);
    println!("edges: {}", a.edges);
    let list = |items: &[String]| -> String {
        if items.is_empty() {
            "(none)".to_owned()
        } else {
            items.join(", ")
        }
    };
    println!("sinks: {}", list(&a.sinks));
    println!("sources: {}", list(&a.sources));
    println!("regular: {}", list(&a.regular));
    print_cycles_table(&a.cycles);
    println!("{}", triple_table("path algebra", &a.path, digits));
    println!("{}", triple_table("leavitt algebra", &a.leavitt, digits));
    println!(
        "extended entropy: {}",
        entropy_json_table(&a.entropy_extended, digits)
    );
    println!("sandwich ok: {}", if a.sandwich_ok { "yes" } else { "no" });
}

fn print_cycles_table(c: &CyclesJson) {
    println!("cycles: {}", c.count);
    for cycle in &c.list {
        let walk: Vec<&str> = cycle.edges.iter().map(String::as_str).collect();
        println!(
            "  [{}] vertices ({}) exit: {}",
            walk.join(" "),
            cycle.vertices.join(", "),
            if cycle.exit { "yes" } else { "no" }
        );
    }
    println!(
        "exclusive cycles: {}",
        if c.exc { "yes" } else { "no" }
    );
    if let (Some(d1), Some(d2)) = (c.d1, c.d2) {
        println!("d1: {d1}");
        println!("d2: {d2}");
    }
    if let Some(witness) = &c.witness {
        println!(
            "intersecting pair: [{}] and [{}]",
            witness[0].join(" "),
            witness[1].join(" ")
        );
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    let digits = cli.digits;
    let tol = cli.tol;
    match &cli.command {
        Command::Analyze { graph, horizon } => {
            let g = load_graph(&graph.graph)?;
            let report =
                AnalyzeJson::build(&g, tol, horizon.kmax, digits).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => print_analyze_table(&report, digits),
            }
            Ok(0)
        }
        Command::Entropy { which } => {
            let report = match which {
                EntropyKind::Path { graph } => {
                    let g = load_graph(&graph.graph)?;
                    let h = entropy_path(&g, tol).map_err(|e| e.to_string())?;
                    EntropyJson::exact(h, digits)
                }
                EntropyKind::Extended { graph } => {
                    let g = load_graph(&graph.graph)?;
                    let h = entropy_extended(&g, tol).map_err(|e| e.to_string())?;
                    EntropyJson::exact(h, digits)
                }
                EntropyKind::Leavitt { graph, horizon } => {
                    let g = load_graph(&graph.graph)?;
                    let value = leavitt_entropy_value(&g, tol, horizon.kmax)
                        .map_err(|e| e.to_string())?;
                    EntropyJson::from_value(&value, digits)
                }
            };
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => println!("{}", entropy_json_table(&report, digits)),
            }
            Ok(0)
        }
        Command::Gkdim { which } => {
            let (algebra, dim) = match which {
                GkKind::Path { graph } => {
                    let g = load_graph(&graph.graph)?;
                    ("path", crate::cycles::gk_dim_path(&g))
                }
                GkKind::Leavitt { graph } => {
                    let g = load_graph(&graph.graph)?;
                    ("leavitt", crate::cycles::gk_dim_leavitt(&g))
                }
            };
            let json: GkDimJson = dim.into();
            match cli.format {
                Format::Json => print_json(&serde_json::json!({
                    "algebra": algebra,
                    "gkdim": json,
                }))?,
                Format::Table => println!("{}", gkdim_table(&json)),
            }
            Ok(0)
        }
        Command::Classify { graph, horizon } => {
            let g = load_graph(&graph.graph)?;
            let outcome = classify(&g, tol, horizon.kmax).map_err(|e| e.to_string())?;
            let report = ClassifyJson::from_outcome(&outcome, digits);
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => {
                    println!("{}", triple_table("path", &report.path, digits));
                    println!("{}", triple_table("leavitt", &report.leavitt, digits));
                }
            }
            Ok(0)
        }
        Command::Cycles { graph } => {
            let g = load_graph(&graph.graph)?;
            let report = CyclesJson::compute(&g).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => print_cycles_table(&report),
            }
            Ok(0)
        }
        Command::Trim { graph } => {
            let g = load_graph(&graph.graph)?;
            let trimmed = g.trim();
            match cli.format {
                Format::Json => println!("{}", trimmed.to_json_string()),
                Format::Table => print!("{}", trimmed.to_text()),
            }
            Ok(0)
        }
        Command::Components { graph } => {
            let g = load_graph(&graph.graph)?;
            let parts = g.components();
            match cli.format {
                Format::Json => {
                    let values: Vec<serde_json::Value> =
                        parts.iter().map(Graph::to_json_value).collect();
                    print_json(&values)?;
                }
                Format::Table => {
                    println!("components: {}", parts.len());
                    for (i, part) in parts.iter().enumerate() {
                        println!("-- component {} --", i + 1);
                        print!("{}", part.to_text());
                    }
                }
            }
            Ok(0)
        }
        Command::LeavittSeq {
            graph,
            horizon,
            csv,
        } => {
            let g = load_graph(&graph.graph)?;
            let est = if let Some(csv_path) = csv {
                // The CSV needs every layer; the summary reads the estimate
                // off the same sequence so the two always agree.
                let seq = leavitt_sequence(&g, horizon.kmax).map_err(|e| e.to_string())?;
                let file = fs::File::create(csv_path)
                    .map_err(|e| format!("creating {}: {e}", csv_path.display()))?;
                seq.write_csv(file)
                    .map_err(|e| format!("writing {}: {e}", csv_path.display()))?;
                seq.estimate()
            } else {
                entropy_leavitt_estimate(&g, horizon.kmax).map_err(|e| e.to_string())?
            };
            let h_path = entropy_path(&g, tol).map_err(|e| e.to_string())?;
            let h_ext = entropy_extended(&g, tol).map_err(|e| e.to_string())?;
            let report = LeavittSeqJson::build(&g, &est, h_path, h_ext, digits);
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => {
                    println!("k_max: {}", report.k_max);
                    println!("h_last: {}", format_number(report.h_last, digits));
                    println!("h_ratio: {}", format_number(report.h_ratio, digits));
                    println!(
                        "entropy_path: {}",
                        format_number(report.entropy_path, digits)
                    );
                    println!(
                        "entropy_extended: {}",
                        format_number(report.entropy_extended, digits)
                    );
                    println!(
                        "sandwich_ok: {}",
                        if report.sandwich_ok { "yes" } else { "no" }
                    );
                }
            }
            Ok(0)
        }
        Command::OracleCheck {
            seed,
            trials,
            max_vertices,
            max_edges,
            max_k,
        } => {
            let cfg = OracleCheckConfig {
                seed: *seed,
                trials: *trials,
                max_vertices: *max_vertices,
                max_edges: *max_edges,
                max_k: *max_k,
            };
            let (report, code) = match run_oracle_check(&cfg) {
                Ok(checks) => (
                    OracleJson {
                        ok: true,
                        seed: *seed,
                        trials: *trials,
                        checks,
                        mismatch: None,
                    },
                    0,
                ),
                Err(mismatch) => (
                    OracleJson {
                        ok: false,
                        seed: *seed,
                        trials: *trials,
                        checks: 0,
                        mismatch: Some(MismatchJson::from(mismatch.as_ref())),
                    },
                    2,
                ),
            };
            match cli.format {
                Format::Json => print_json(&report)?,
                Format::Table => {
                    if report.ok {
                        println!(
                            "ok: {} checks across {} trials (seed {})",
                            report.checks, report.trials, report.seed
                        );
                    } else if let Some(m) = &report.mismatch {
                        println!("MISMATCH at seed {}: {}", m.seed, m.detail);
                        println!("graph:");
                        print!("{}", m.graph);
                    }
                }
            }
            // keep the parser exercised for round-trip guarantees
            debug_assert!(parse_oracle_report(
                &serde_json::to_string(&report).unwrap_or_default()
            )
            .is_ok());
            Ok(code)
        }
        Command::Seq { op } => {
            match op {
                SeqOp::Entropy { file } => {
                    let seq = load_sequence(&file.seq_file)?;
                    let h = round_significant(entropy_of(&seq), digits);
                    match cli.format {
                        Format::Json => print_json(&serde_json::json!({ "entropy": h }))?,
                        Format::Table => println!("{}", format_number(h, digits)),
                    }
                }
                SeqOp::Gk { file } => {
                    let seq = load_sequence(&file.seq_file)?;
                    match gk_dim_of(&seq) {
                        GkEstimate::Finite(v) => {
                            let v = round_significant(v, digits);
                            match cli.format {
                                Format::Json => {
                                    print_json(&serde_json::json!({ "gkdim": v }))?
                                }
                                Format::Table => println!("{}", format_number(v, digits)),
                            }
                        }
                        GkEstimate::Infinite => match cli.format {
                            Format::Json => {
                                print_json(&serde_json::json!({ "gkdim": "infinity" }))?
                            }
                            Format::Table => println!("infinity"),
                        },
                    }
                }
                SeqOp::Subsample { k, file } => {
                    let seq = load_sequence(&file.seq_file)?;
                    let sub = filtration::subsample(&seq, *k).map_err(|e| e.to_string())?;
                    emit_sequence_csv(&sub)?;
                }
                SeqOp::Scale { n, file } => {
                    let seq = load_sequence(&file.seq_file)?;
                    let scaled = filtration::matrix_scale(&seq, *n);
                    emit_sequence_csv(&scaled)?;
                }
            }
            Ok(0)
        }
    }
}

/// Transformed sequences are always emitted as the CSV schema (it is the
/// interchange format `--seq-file` reads back), regardless of `--format`.
fn emit_sequence_csv(seq: &DimSequence) -> Result<(), String> {
    let base: Option<BigUint> = seq.cumulative().map(|c| c[0].clone());
    let mut out = Vec::new();
    write_quotient_csv(&mut out, seq, base.as_ref()).map_err(|e| e.to_string())?;
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_representative_command_lines() {
        let cli = Cli::try_parse_from([
            "graphent", "entropy", "path", "fib.graph", "--format", "json", "--digits", "9",
        ])
        .unwrap();
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.digits, 9);
        assert!(matches!(
            cli.command,
            Command::Entropy {
                which: EntropyKind::Path { .. }
            }
        ));

        let cli = Cli::try_parse_from([
            "graphent",
            "leavitt-seq",
            "g.graph",
            "--kmax",
            "500",
            "--csv",
            "out.csv",
        ])
        .unwrap();
        match cli.command {
            Command::LeavittSeq { horizon, csv, .. } => {
                assert_eq!(horizon.kmax, 500);
                assert_eq!(csv.unwrap(), PathBuf::from("out.csv"));
            }
            _ => panic!("wrong subcommand"),
        }

        let cli = Cli::try_parse_from([
            "graphent",
            "seq",
            "subsample",
            "3",
            "--seq-file",
            "dims.csv",
        ])
        .unwrap();
        assert!(matches!(
            cli.command,
            Command::Seq {
                op: SeqOp::Subsample { k: 3, .. }
            }
        ));
    }

    #[test]
    fn rejects_out_of_range_digits() {
        assert!(Cli::try_parse_from(["graphent", "--digits", "16", "trim", "g"]).is_err());
        assert!(Cli::try_parse_from(["graphent", "--digits", "0", "trim", "g"]).is_err());
    }

    #[test]
    fn table_formatting_of_estimates() {
        let e = EntropyJson {
            value: 0.481257,
            exact: false,
            method: Some("countpaths-estimate".into()),
            k_max: Some(1000),
            lower: Some(0.481212),
            upper: Some(0.962424),
        };
        assert_eq!(
            entropy_json_table(&e, 6),
            "0.481257 (countpaths-estimate, k_max=1000, bounds [0.481212, 0.962424])"
        );
        let exact = EntropyJson::exact(0.4812118251, 6);
        assert_eq!(entropy_json_table(&exact, 6), "0.481212");
    }
}
