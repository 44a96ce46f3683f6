//! Acceptance gate: one test — one pass/fail line — per criterion.
//!
//! Every expected number here was either derived independently (closed
//! forms, exact adjacency spectra) or frozen from the published worked
//! examples after reproducing it; the two deliberate departures from the
//! published figures are flagged inline where they are asserted.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use graphent::classify::classify;
use graphent::cycles::{gk_dim_leavitt, gk_dim_path, satisfies_exc, GkDim};
use graphent::filtration::{entropy_of, matrix_scale, subsample, DimSequence};
use graphent::graph::Graph;
use graphent::leavitt::{entropy_leavitt_estimate, leavitt_quotient_dim, leavitt_sequence};
use graphent::oracle::{random_graph, run_oracle_check, OracleCheckConfig};
use graphent::poly::IntPoly;
use graphent::report::format_number;
use graphent::spectral::{entropy_extended, entropy_path, graph_char_poly};

const TOL: f64 = 1e-12;
const EXACT: f64 = 1e-9;

fn graph(text: &str) -> Graph {
    Graph::parse(text).unwrap()
}

/// One vertex, `n` loops.
fn rose(n: usize) -> Graph {
    let mut g = Graph::default();
    g.add_vertex("v").unwrap();
    for i in 0..n {
        g.add_edge(&format!("l{i}"), 0, 0).unwrap();
    }
    g
}

/// Directed cycle on `n` vertices.
fn cycle(n: usize) -> Graph {
    let mut g = Graph::default();
    for i in 0..n {
        g.add_vertex(&format!("v{i}")).unwrap();
    }
    for i in 0..n {
        g.add_edge(&format!("e{i}"), i, (i + 1) % n).unwrap();
    }
    g
}

/// Roses of `n` and `m` petals joined by a single edge: adjacency
/// [[n, 1], [0, m]].
fn joined_roses_one_way(n: usize, m: usize) -> Graph {
    let mut g = Graph::default();
    g.add_vertex("u").unwrap();
    g.add_vertex("w").unwrap();
    for i in 0..n {
        g.add_edge(&format!("a{i}"), 0, 0).unwrap();
    }
    for i in 0..m {
        g.add_edge(&format!("b{i}"), 1, 1).unwrap();
    }
    g.add_edge("bridge", 0, 1).unwrap();
    g
}

/// Roses joined by one edge each way: adjacency [[n, 1], [1, m]].
fn joined_roses_two_way(n: usize, m: usize) -> Graph {
    let mut g = joined_roses_one_way(n, m);
    g.add_edge("back", 1, 0).unwrap();
    g
}

/// Two-vertex graph with Fibonacci path counts (adjacency [[1,1],[1,0]]).
const FIB: &str = "u1 -> u1; u1 -> u2; u2 -> u1";

/// Worked example: two disjoint 2-cycles, both feeding vertex 2.
const E61: &str = "
    v1 -> v2; v2 -> v1
    v3 -> v2; v4 -> v2
    v3 -> v4; v4 -> v3
";

/// Two petals on vertex 1, three on vertex 2, bridge 2 -> 1.
const F1: &str = "
    v1 -> v1; v1 -> v1
    v2 -> v2; v2 -> v2; v2 -> v2
    v2 -> v1
";

/// Three petals on vertex 1, two on vertex 2, bridge 2 -> 1 (the same graph
/// as F1 with the bridge orientation reversed relative to the rose sizes).
const F2: &str = "
    v1 -> v1; v1 -> v1; v1 -> v1
    v2 -> v2; v2 -> v2
    v2 -> v1
";

/// Worked example: a 2-cycle, a loop, and a feeder chain.
const G64: &str = "
    v1 -> v2; v2 -> v1
    v3 -> v2; v3 -> v4
    v5 -> v3
    v4 -> v4
";

/// Worked example: three 2-cycles through vertex 1 plus the 3-cycle 2-3-4.
const D65: &str = "
    v1 -> v2; v2 -> v1
    v1 -> v3; v3 -> v1
    v1 -> v4; v4 -> v1
    v2 -> v3; v3 -> v4; v4 -> v2
";

fn assert_close(label: &str, got: f64, want: f64, tol: f64) {
    assert!(
        (got - want).abs() <= tol,
        "{label}: got {got}, want {want} (tol {tol})"
    );
}

/// Criterion 1 — exact spectral entropies at tolerance 1e-9, each < 1 s.
#[test]
fn criterion_1_exact_spectral_entropies() {
    let timed = |label: &str, f: &dyn Fn() -> f64| -> f64 {
        let start = Instant::now();
        let value = f();
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 1.0,
            "{label}: took {elapsed:?}, budget 1 s"
        );
        value
    };

    // Fibonacci graph: log of the golden ratio.
    let fib = graph(FIB);
    let h = timed("fib", &|| entropy_path(&fib, TOL).unwrap());
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert_close("fib vs closed form", h, phi.ln(), EXACT);
    assert_close("fib vs printed digits", h, 0.4812118251, EXACT);

    // m-petal roses: log m.
    for m in 1..=6 {
        let g = rose(m);
        let h = timed("rose", &|| entropy_path(&g, TOL).unwrap());
        assert_close(&format!("R_{m}"), h, (m as f64).ln(), EXACT);
    }

    // Cycles: entropy 0, extended entropy log 2.
    for n in 2..=8 {
        let g = cycle(n);
        let h = timed("cycle", &|| entropy_path(&g, TOL).unwrap());
        assert_close(&format!("C_{n} path"), h, 0.0, EXACT);
        let h_ext = timed("cycle ext", &|| entropy_extended(&g, TOL).unwrap());
        assert_close(&format!("C_{n} extended"), h_ext, 2f64.ln(), EXACT);
    }

    // Graph D: log((1+sqrt 13)/2).
    let d = graph(D65);
    let h = timed("D", &|| entropy_path(&d, TOL).unwrap());
    assert_close("D vs closed form", h, ((1.0 + 13f64.sqrt()) / 2.0).ln(), EXACT);
    assert_close("D vs printed approximation", h, 0.834115, 5e-7);

    // Joined roses, one-way bridge: triangular matrix, log max(n, m).
    for n in 1..=4 {
        for m in 1..=4 {
            let g = joined_roses_one_way(n, m);
            let h = timed("joined1", &|| entropy_path(&g, TOL).unwrap());
            assert_close(
                &format!("roses {n}->{m}"),
                h,
                (n.max(m) as f64).ln(),
                EXACT,
            );
        }
    }

    // Joined roses, bridges both ways: char poly x² − (n+m)x + (nm−1), so
    // ρ = (n+m)/2 + sqrt((n−m)² + 4)/2. (The statement of this criterion
    // writes the discriminant as (n²+m²+4)/4, which contradicts the matrix
    // [[n,1],[1,m]] it targets — already for n = m = 1 that matrix has
    // spectral radius 2 while the printed form gives 1 + sqrt(1.5). The
    // corrected discriminant below follows from the characteristic
    // polynomial and is verified here against the independent Perron
    // enclosure; see the decisions ledger.)
    for n in 1..=4 {
        for m in 1..=4 {
            let g = joined_roses_two_way(n, m);
            let h = timed("joined2", &|| entropy_path(&g, TOL).unwrap());
            let nm = (n as f64, m as f64);
            let rho = (nm.0 + nm.1) / 2.0 + (((nm.0 - nm.1).powi(2) + 4.0) / 4.0).sqrt();
            assert_close(&format!("roses {n}<->{m}"), h, rho.ln(), EXACT);
        }
    }
}

/// Criterion 2 — reproduce the printed k = 1000 layer entropies, < 30 s per
/// graph.
#[test]
fn criterion_2_leavitt_sequence_values_at_k1000() {
    // (graph, printed value, significant digits of the printed value)
    let cases: [(&str, &str, f64, u8); 5] = [
        ("6.1", E61, 0.0145107, 6),
        ("6.3 F1", F1, 1.1061, 5),
        // The source prints 1.1061 for F2 as well, but the exact layer
        // dimensions (independently cross-checked against the brute-force
        // basis oracle) give 1.10679…, which rounds to 1.1068 — the printed
        // F2 figure is not reproducible from the stated graph. Frozen at
        // the derived value; see the decisions ledger.
        ("6.3 F2", F2, 1.1068, 5),
        ("6.4 G", G64, 0.00352636, 6),
        ("6.5 D", D65, 0.842187, 6),
    ];
    for (name, text, printed, digits) in cases {
        let g = graph(text);
        let start = Instant::now();
        let est = entropy_leavitt_estimate(&g, 1000).unwrap();
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs_f64() < 30.0,
            "{name}: took {elapsed:?}, budget 30 s"
        );
        let printed_str = format_number(printed, digits);
        let got_str = format_number(est.last_h, digits);
        assert_eq!(
            got_str, printed_str,
            "{name}: h_1000 = {} does not round to the frozen digits",
            est.last_h
        );
    }
}

/// Criterion 3 — closed-form Leavitt layer dimensions, exactly.
#[test]
fn criterion_3_closed_form_layer_dimensions() {
    // Rose R_n: q_k = (k+1)n^k − (k−1)n^(k−2) for k ≥ 2.
    for n in 1u64..=5 {
        let g = rose(n as usize);
        let seq = leavitt_sequence(&g, 30).unwrap();
        for k in 2usize..=30 {
            let nk2 = BigUint::from(n).pow(k as u32 - 2);
            let nk = &nk2 * n * n;
            let expected = nk * BigUint::from(k as u64 + 1) - nk2 * BigUint::from(k as u64 - 1);
            assert_eq!(
                leavitt_quotient_dim(&g, k),
                expected,
                "rose n={n} k={k}"
            );
            assert_eq!(seq.q[k - 1], expected, "rose sequence n={n} k={k}");
        }
    }
    // Cycle C_n: q_k = 2n for every k ≥ 1.
    for n in 2u64..=6 {
        let g = cycle(n as usize);
        for k in 1usize..=30 {
            assert_eq!(
                leavitt_quotient_dim(&g, k),
                BigUint::from(2 * n),
                "cycle n={n} k={k}"
            );
        }
    }
}

/// Criterion 4 — formula vs brute force on 200 seeded random graphs,
/// zero mismatches.
#[test]
fn criterion_4_oracle_equivalence() {
    let cfg = OracleCheckConfig {
        seed: 0,
        trials: 200,
        max_vertices: 4,
        max_edges: 6,
        max_k: 8,
    };
    match run_oracle_check(&cfg) {
        Ok(checks) => {
            // Every trial contributes basis-count and path-count checks; a
            // low total would mean the corpus silently degenerated.
            assert!(checks >= 2000, "only {checks} individual checks ran");
        }
        Err(mismatch) => panic!(
            "oracle mismatch at seed {}: {}\n{}",
            mismatch.seed, mismatch.detail, mismatch.graph_text
        ),
    }
}

/// Criterion 5 — structural theorems hold verbatim over the same corpus.
#[test]
fn criterion_5_structural_theorems_on_corpus() {
    for seed in 0..200u64 {
        let g = random_graph(seed, 4, 6);

        // Trim: char poly loses exactly x^(removed), entropy unchanged.
        let trimmed = g.trim();
        let removed = g.vertex_count() - trimmed.vertex_count();
        assert_eq!(
            graph_char_poly(&g),
            IntPoly::x_power(removed).mul(&graph_char_poly(&trimmed)),
            "seed {seed}: trim char-poly factor"
        );
        let h = entropy_path(&g, TOL).unwrap();
        let h_trim = entropy_path(&trimmed, TOL).unwrap();
        assert_close(&format!("seed {seed}: trim entropy"), h, h_trim, EXACT);

        // Direct sum: char polys multiply, entropies take the max.
        let partner = random_graph(seed + 1000, 4, 6);
        let union = g.disjoint_union(&partner);
        assert_eq!(
            graph_char_poly(&union),
            graph_char_poly(&g).mul(&graph_char_poly(&partner)),
            "seed {seed}: block char-poly factorization"
        );
        let h_union = entropy_path(&union, TOL).unwrap();
        let h_partner = entropy_path(&partner, TOL).unwrap();
        assert_close(
            &format!("seed {seed}: direct-sum entropy"),
            h_union,
            h.max(h_partner),
            EXACT,
        );

        // Sandwich outer bound, exact.
        let h_ext = entropy_extended(&g, TOL).unwrap();
        assert!(
            h <= h_ext + EXACT,
            "seed {seed}: path entropy {h} above extended {h_ext}"
        );

        // Edge-count bound.
        if g.edge_count() > 0 {
            assert!(
                h <= (g.edge_count() as f64).ln() + EXACT,
                "seed {seed}: entropy above log edge count"
            );
        } else {
            assert_eq!(h, 0.0, "seed {seed}: entropy of edgeless graph");
        }

        // GK finiteness ⟺ exclusive cycles, for both algebras.
        let exc = satisfies_exc(&g).holds();
        assert_eq!(gk_dim_path(&g) != GkDim::Infinite, exc, "seed {seed}: path GK");
        assert_eq!(
            gk_dim_leavitt(&g) != GkDim::Infinite,
            exc,
            "seed {seed}: Leavitt GK"
        );

        // Trichotomy invariants on the classification.
        let out = classify(&g, TOL, 50).unwrap();
        assert_eq!(
            out.path.class, out.leavitt.class,
            "seed {seed}: class agreement"
        );
        let class = out.path.class.as_u8();
        match class {
            0 => assert_eq!(out.path.gkdim, GkDim::Finite(0), "seed {seed}"),
            1 => {
                assert!(exc, "seed {seed}: class 1 must satisfy EXC");
                assert_eq!(out.path.entropy.value(), 0.0, "seed {seed}");
                assert_eq!(out.leavitt.entropy.value(), 0.0, "seed {seed}");
            }
            2 => {
                assert!(!exc, "seed {seed}: class 2 must violate EXC");
                assert!(out.path.entropy.value() > 0.0, "seed {seed}");
            }
            _ => unreachable!(),
        }
    }
}

/// Criterion 6 — filtration transforms on synthetic geometric sequences.
#[test]
fn criterion_6_filtration_transforms() {
    for c in [2u64, 3, 5] {
        let mut quotients = Vec::with_capacity(1000);
        let mut q = BigUint::one();
        for _ in 0..1000 {
            q *= c;
            quotients.push(q.clone());
        }
        let seq = DimSequence::from_quotients(quotients);
        let truth = (c as f64).ln();

        let h = entropy_of(&seq);
        assert_close(&format!("c={c}: entropy_of"), h, truth, 1e-3);

        for k in [2usize, 3, 5, 10] {
            let sub = subsample(&seq, k).unwrap();
            let h_sub = entropy_of(&sub);
            let want = k as f64 * truth;
            assert!(
                (h_sub - want).abs() <= 0.01 * want,
                "c={c} k={k}: subsample entropy {h_sub}, want {want} within 1%"
            );
        }

        for n in [2u64, 7] {
            let scaled = matrix_scale(&seq, n);
            let h_scaled = entropy_of(&scaled);
            let budget = ((n * n) as f64).ln() / 1000.0;
            assert!(
                (h_scaled - h).abs() <= budget + 1e-12,
                "c={c} n={n}: matrix_scale moved entropy by {} > {budget}",
                (h_scaled - h).abs()
            );
        }
    }
}

/// Criterion 7 — conjecture dashboard: |h_ratio(L_K(E)) − h(KE)| < 0.01 at
/// k = 1000 for the five worked examples. The dashboard itself is written
/// to the target tmpdir and echoed to stdout.
#[test]
fn criterion_7_conjecture_dashboard() {
    let cases = [
        ("6.1", E61),
        ("6.3-F1", F1),
        ("6.3-F2", F2),
        ("6.4-G", G64),
        ("6.5-D", D65),
    ];
    let mut rows = String::from("graph,entropy_path,h_ratio_k1000,abs_difference\n");
    let mut worst = 0.0f64;
    for (name, text) in cases {
        let g = graph(text);
        let h_path = entropy_path(&g, TOL).unwrap();
        let est = entropy_leavitt_estimate(&g, 1000).unwrap();
        let diff = (est.ratio_h - h_path).abs();
        worst = worst.max(diff);
        rows.push_str(&format!(
            "{name},{},{},{}\n",
            format_number(h_path, 9),
            format_number(est.ratio_h, 9),
            format_number(diff, 3),
        ));
        assert!(
            diff < 0.01,
            "{name}: |h_ratio − entropy_path| = {diff} ≥ 0.01"
        );
    }
    let out = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("conjecture_dashboard.csv");
    std::fs::write(&out, &rows).unwrap();
    println!("conjecture dashboard (worst gap {worst:.6}):\n{rows}written to {}", out.display());
}
