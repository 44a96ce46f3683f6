//! C ABI for the graphent library.
//!
//! Every fallible function returns a [`GraphentStatus`]; on any non-OK
//! status, [`graphent_last_error`] returns a thread-local message describing
//! the failure. Graphs are opaque handles created by
//! [`graphent_graph_parse`] and released with [`graphent_graph_free`].
//! Strings handed out through `out` parameters are NUL-terminated, allocated
//! by this library, and must be released with [`graphent_string_free`].
//! Panics never cross the boundary: they are caught and reported as
//! `GRAPHENT_STATUS_INTERNAL`.
//!
//! The matching C header is generated into `include/graphent.h` at build
//! time.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use graphent::classify::{leavitt_entropy_value, EntropyValue};
use graphent::cycles::{gk_dim_leavitt, gk_dim_path, GkDim};
use graphent::graph::Graph;
use graphent::report::AnalyzeJson;
use graphent::spectral::{entropy_extended, entropy_path};

/// Status code returned by every fallible `graphent_*` function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphentStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The graph text could not be parsed.
    ParseError = 3,
    /// An argument value was rejected (bad tolerance, horizon too small, …).
    InvalidArgument = 4,
    /// An internal invariant failed; please report this.
    Internal = 5,
}

/// Opaque handle to a parsed graph.
pub struct GraphentGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    // NUL bytes cannot occur in our error messages, but never panic here.
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    let message = CString::new(sanitized).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn fail(status: GraphentStatus, msg: impl std::fmt::Display) -> GraphentStatus {
    set_last_error(&msg.to_string());
    status
}

/// Run `f` with panics converted to `GRAPHENT_STATUS_INTERNAL`.
fn guarded<T>(f: impl FnOnce() -> Result<T, GraphentStatus>) -> Result<T, GraphentStatus> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(result) => result,
        Err(_) => Err(fail(GraphentStatus::Internal, "internal panic")),
    }
}

unsafe fn graph_ref<'a>(graph: *const GraphentGraph) -> Result<&'a Graph, GraphentStatus> {
    match graph.as_ref() {
        Some(handle) => Ok(&handle.inner),
        None => Err(fail(GraphentStatus::NullArgument, "null graph handle")),
    }
}

/// The library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn graphent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message for the most recent failure on this thread, as a
/// NUL-terminated string. Valid until the next `graphent_*` call on the same
/// thread; never NULL. Do not free.
#[no_mangle]
pub extern "C" fn graphent_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a graph from `text` (the text format or JSON, auto-detected) and
/// store a new handle in `*out_graph`. The handle must be released with
/// [`graphent_graph_free`].
///
/// # Safety
///
/// `text` must be a valid NUL-terminated string and `out_graph` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_graph_parse(
    text: *const c_char,
    out_graph: *mut *mut GraphentGraph,
) -> GraphentStatus {
    if text.is_null() || out_graph.is_null() {
        return fail(GraphentStatus::NullArgument, "null pointer argument");
    }
    let source = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(e) => return fail(GraphentStatus::InvalidUtf8, e),
    };
    match guarded(|| Graph::parse(source).map_err(|e| fail(GraphentStatus::ParseError, e))) {
        Ok(inner) => {
            *out_graph = Box::into_raw(Box::new(GraphentGraph { inner }));
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Release a graph handle. NULL is a no-op.
///
/// # Safety
///
/// `graph` must be NULL or a handle returned by [`graphent_graph_parse`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn graphent_graph_free(graph: *mut GraphentGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices.
///
/// # Safety
///
/// `graph` must be a live handle and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_graph_vertex_count(
    graph: *const GraphentGraph,
    out_count: *mut usize,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_count.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_count");
    }
    *out_count = g.vertex_count();
    GraphentStatus::Ok
}

/// Number of edges.
///
/// # Safety
///
/// `graph` must be a live handle and `out_count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_graph_edge_count(
    graph: *const GraphentGraph,
    out_count: *mut usize,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_count.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_count");
    }
    *out_count = g.edge_count();
    GraphentStatus::Ok
}

/// Canonical JSON serialization of the graph into `*out_json` (free with
/// [`graphent_string_free`]).
///
/// # Safety
///
/// `graph` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_graph_to_json(
    graph: *const GraphentGraph,
    out_json: *mut *mut c_char,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_json.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_json");
    }
    match guarded(|| Ok(g.to_json_string())) {
        Ok(text) => {
            *out_json = into_c_string(text);
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Exact algebraic entropy of the path algebra: `log` of the spectral
/// radius of the adjacency matrix, located to within `tol`.
///
/// # Safety
///
/// `graph` must be a live handle and `out_entropy` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_entropy_path(
    graph: *const GraphentGraph,
    tol: f64,
    out_entropy: *mut f64,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_entropy.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_entropy");
    }
    match guarded(|| entropy_path(g, tol).map_err(|e| fail(GraphentStatus::InvalidArgument, e))) {
        Ok(h) => {
            *out_entropy = h;
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Exact algebraic entropy of the extended-graph path algebra: `log` of the
/// spectral radius of `A + Aᵀ`.
///
/// # Safety
///
/// `graph` must be a live handle and `out_entropy` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_entropy_extended(
    graph: *const GraphentGraph,
    tol: f64,
    out_entropy: *mut f64,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_entropy.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_entropy");
    }
    match guarded(|| {
        entropy_extended(g, tol).map_err(|e| fail(GraphentStatus::InvalidArgument, e))
    }) {
        Ok(h) => {
            *out_entropy = h;
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Algebraic entropy of the Leavitt path algebra. Exact in the closed-form
/// cases (`*out_exact = 1`); otherwise a finite-horizon estimate from the
/// filtration sequence at `k_max` (`*out_exact = 0`). `out_exact` may be
/// NULL when the flag is not wanted.
///
/// # Safety
///
/// `graph` must be a live handle, `out_entropy` a valid pointer, and
/// `out_exact` NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_entropy_leavitt(
    graph: *const GraphentGraph,
    tol: f64,
    k_max: usize,
    out_entropy: *mut f64,
    out_exact: *mut c_int,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_entropy.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_entropy");
    }
    match guarded(|| {
        leavitt_entropy_value(g, tol, k_max).map_err(|e| fail(GraphentStatus::InvalidArgument, e))
    }) {
        Ok(entropy) => {
            let (value, exact) = match entropy {
                EntropyValue::Exact { value } => (value, 1),
                EntropyValue::Estimate { value, .. } => (value, 0),
            };
            *out_entropy = value;
            if !out_exact.is_null() {
                *out_exact = exact;
            }
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

fn gkdim_to_i64(d: GkDim) -> i64 {
    match d {
        GkDim::Finite(n) => n as i64,
        GkDim::Infinite => -1,
    }
}

/// Gelfand–Kirillov dimension of the path algebra; `-1` encodes infinity.
///
/// # Safety
///
/// `graph` must be a live handle and `out_gkdim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_gkdim_path(
    graph: *const GraphentGraph,
    out_gkdim: *mut i64,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_gkdim.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_gkdim");
    }
    match guarded(|| Ok(gkdim_to_i64(gk_dim_path(g)))) {
        Ok(d) => {
            *out_gkdim = d;
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Gelfand–Kirillov dimension of the Leavitt path algebra; `-1` encodes
/// infinity.
///
/// # Safety
///
/// `graph` must be a live handle and `out_gkdim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_gkdim_leavitt(
    graph: *const GraphentGraph,
    out_gkdim: *mut i64,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_gkdim.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_gkdim");
    }
    match guarded(|| Ok(gkdim_to_i64(gk_dim_leavitt(g)))) {
        Ok(d) => {
            *out_gkdim = d;
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Full analysis report (vertex census, cycles, growth triples of both
/// algebras, entropy bounds) as pretty-printed JSON in `*out_json` (free
/// with [`graphent_string_free`]). `digits` is the significant-digit count
/// for numbers in the report (clamped to 1–15 like the CLI).
///
/// # Safety
///
/// `graph` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn graphent_analyze_json(
    graph: *const GraphentGraph,
    tol: f64,
    k_max: usize,
    digits: u8,
    out_json: *mut *mut c_char,
) -> GraphentStatus {
    let g = match graph_ref(graph) {
        Ok(g) => g,
        Err(status) => return status,
    };
    if out_json.is_null() {
        return fail(GraphentStatus::NullArgument, "null out_json");
    }
    let digits = digits.clamp(1, 15);
    match guarded(|| {
        AnalyzeJson::build(g, tol, k_max, digits)
            .map(|report| report.to_json_string())
            .map_err(|e| fail(GraphentStatus::InvalidArgument, e))
    }) {
        Ok(text) => {
            *out_json = into_c_string(text);
            GraphentStatus::Ok
        }
        Err(status) => status,
    }
}

/// Release a string returned by this library. NULL is a no-op.
///
/// # Safety
///
/// `s` must be NULL or a string obtained from a `graphent_*` out parameter
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn graphent_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn into_c_string(text: String) -> *mut c_char {
    // JSON and graph text never contain NUL bytes; strip defensively rather
    // than panic at the boundary.
    match CString::new(text) {
        Ok(c) => c.into_raw(),
        Err(e) => {
            let bytes = e.into_vec();
            let cleaned: Vec<u8> = bytes.into_iter().filter(|&b| b != 0).collect();
            CString::new(cleaned)
                .expect("NUL bytes removed")
                .into_raw()
        }
    }
}
