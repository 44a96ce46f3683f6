//! Growth invariants of path algebras and Leavitt path algebras of finite
//! directed multigraphs: dimension, Gelfand–Kirillov dimension, and algebraic
//! entropy, computed exactly where a closed form exists and via arbitrary-
//! precision filtration sequences otherwise.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`] — the graph type, its two text formats, and structural
//!   operations (extended graph, opposite, trim, components, disjoint union);
//! * [`matrix`] — dense nonnegative big-integer matrices and powers;
//! * [`poly`] — exact characteristic polynomials, Sturm chains, root counts;
//! * [`spectral`] — Perron roots with guaranteed enclosures and the spectral
//!   entropies of the path algebra and extended path algebra;
//! * [`biglog`] — 192-bit fixed-point natural logarithms of big integers, so
//!   entropy estimates from astronomically large dimensions stay accurate;
//! * [`filtration`] — dimension sequences and estimator transforms
//!   (subsampling, matrix scaling, direct sums, CSV I/O);
//! * [`leavitt`] — the quotient-dimension sequence of the Leavitt path
//!   algebra's standard filtration and its entropy estimator;
//! * [`cycles`] — cycle enumeration, the disjoint-cycle condition, and
//!   cycle-chain statistics giving Gelfand–Kirillov dimensions;
//! * [`growth`] — dimensions and GK dimensions of the algebras;
//! * [`oracle`] — brute-force path enumeration and basis counting used to
//!   cross-check every closed formula, plus seeded random graphs;
//! * [`classify`] — the growth triple (dimension, GK dimension, entropy) and
//!   the three-way growth classification;
//! * [`report`] — serializable report types and number formatting shared by
//!   the command-line interface;
//! * [`cli`] — the `graphent` command-line interface.

pub mod biglog;
pub mod classify;
pub mod cli;
pub mod cycles;
pub mod filtration;
pub mod graph;
pub mod leavitt;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod spectral;
