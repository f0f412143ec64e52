//! C ABI over `laplat`.
//!
//! Graphs are opaque handles from `laplat_graph_from_json` or
//! `laplat_graph_from_edges`, released with `laplat_graph_free`. Every
//! fallible call returns a [`LaplatStatus`]; on failure the message is
//! available from `laplat_last_error_message` on the same thread. Strings
//! handed out by the library are released with `laplat_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use laplat::chipfire::{effective_equivalent, Configuration};
use laplat::graph::{min_cut_l1, min_cut_linf, spanning_tree_count};
use laplat::invariants::invariant_report;
use laplat::{io, Error, Limits, Multigraph};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Disconnected = 3,
    GuardExceeded = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque multigraph handle.
pub struct LaplatGraph {
    graph: Multigraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LaplatStatus {
    match e {
        Error::Disconnected => LaplatStatus::Disconnected,
        Error::GuardExceeded { .. } => LaplatStatus::GuardExceeded,
        Error::Internal(_) | Error::Numeric(_) | Error::Overflow(_) => LaplatStatus::Internal,
        _ => LaplatStatus::InvalidInput,
    }
}

/// Runs `f`, recording the error message and mapping panics.
fn guarded<F>(f: F) -> LaplatStatus
where
    F: FnOnce() -> Result<(), (LaplatStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LaplatStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside laplat".into());
            LaplatStatus::Panic
        }
    }
}

fn domain(e: Error) -> (LaplatStatus, String) {
    (status_of(&e), format!("{}: {e}", e.kind()))
}

fn null(what: &str) -> (LaplatStatus, String) {
    (LaplatStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const LaplatGraph) -> Result<&'a Multigraph, (LaplatStatus, String)> {
    // SAFETY: the caller passes a handle from this library or null.
    unsafe { g.as_ref() }
        .map(|h| &h.graph)
        .ok_or_else(|| null("graph"))
}

fn to_c_string(s: String) -> Result<*mut c_char, (LaplatStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (LaplatStatus::Internal, "output contains NUL".into()))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn laplat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `{"vertices": n, "edges": [[i, j, mult], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_graph_from_json(
    json: *const c_char,
    out: *mut *mut LaplatGraph,
) -> LaplatStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null; the caller guarantees termination.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|_| (LaplatStatus::InvalidInput, "json is not UTF-8".to_string()))?;
        let graph = io::parse_graph(text).map_err(domain)?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(LaplatGraph { graph })) };
        Ok(())
    })
}

/// Builds a graph from parallel arrays of edge endpoints and
/// multiplicities.
///
/// # Safety
/// Each array must hold `edge_count` elements (they may be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_graph_from_edges(
    vertex_count: usize,
    sources: *const usize,
    targets: *const usize,
    multiplicities: *const u32,
    edge_count: usize,
    out: *mut *mut LaplatGraph,
) -> LaplatStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mut edges = Vec::with_capacity(edge_count);
        if edge_count > 0 {
            if sources.is_null() || targets.is_null() || multiplicities.is_null() {
                return Err(null("edge array"));
            }
            // SAFETY: non-null, and the caller guarantees the lengths.
            let (s, t, m) = unsafe {
                (
                    std::slice::from_raw_parts(sources, edge_count),
                    std::slice::from_raw_parts(targets, edge_count),
                    std::slice::from_raw_parts(multiplicities, edge_count),
                )
            };
            for k in 0..edge_count {
                edges.push((s[k], t[k], m[k]));
            }
        }
        let graph = Multigraph::from_edges(vertex_count, &edges).map_err(domain)?;
        // SAFETY: checked non-null.
        unsafe { *out = Box::into_raw(Box::new(LaplatGraph { graph })) };
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn laplat_graph_free(g: *mut LaplatGraph) {
    if !g.is_null() {
        // SAFETY: allocated by Box::into_raw in this crate.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_graph_vertex_count(
    g: *const LaplatGraph,
    out: *mut usize,
) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null.
        unsafe { *out = graph.vertex_count() };
        Ok(())
    })
}

/// Number of spanning trees as a decimal string (free with
/// `laplat_string_free`).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_spanning_trees(
    g: *const LaplatGraph,
    out: *mut *mut c_char,
) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = to_c_string(spanning_tree_count(&graph.laplacian()).to_string())?;
        // SAFETY: checked non-null.
        unsafe { *out = s };
        Ok(())
    })
}

/// Minimum total edge count across a cut.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_min_cut_l1(g: *const LaplatGraph, out: *mut u64) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (_, w) = min_cut_l1(graph).map_err(domain)?;
        // SAFETY: checked non-null.
        unsafe { *out = w };
        Ok(())
    })
}

/// Minimum over cuts of the largest edge count into one outside vertex,
/// under the default enumeration guard.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_min_cut_linf(g: *const LaplatGraph, out: *mut u64) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (_, w) = min_cut_linf(graph, &Limits::default()).map_err(domain)?;
        // SAFETY: checked non-null.
        unsafe { *out = w };
        Ok(())
    })
}

/// Full invariant report as compact JSON (free with `laplat_string_free`).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_invariants_json(
    g: *const LaplatGraph,
    out: *mut *mut c_char,
) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = invariant_report(graph, &Limits::default()).map_err(domain)?;
        let s = to_c_string(io::invariant_report(&report).to_string())?;
        // SAFETY: checked non-null.
        unsafe { *out = s };
        Ok(())
    })
}

/// Whether `config` (one entry per vertex) is equivalent to an effective
/// configuration. When it is and `representative` is not null, an
/// effective representative is written there.
///
/// # Safety
/// `config` and `representative` (if non-null) must hold `len` elements;
/// `effective` must be writable.
#[no_mangle]
pub unsafe extern "C" fn laplat_effective(
    g: *const LaplatGraph,
    config: *const i64,
    len: usize,
    effective: *mut bool,
    representative: *mut i64,
) -> LaplatStatus {
    guarded(|| {
        let graph = unsafe { graph_ref(g) }?;
        if config.is_null() {
            return Err(null("config"));
        }
        if effective.is_null() {
            return Err(null("effective"));
        }
        // SAFETY: non-null with `len` elements per the contract.
        let c = Configuration(unsafe { std::slice::from_raw_parts(config, len) }.to_vec());
        let r = effective_equivalent(graph, &c).map_err(domain)?;
        // SAFETY: checked non-null.
        unsafe { *effective = r.effective };
        if let (Some(rep), false) = (&r.representative, representative.is_null()) {
            // SAFETY: `rep` has `len` entries, matching the caller's buffer.
            unsafe { ptr::copy_nonoverlapping(rep.0.as_ptr(), representative, len) };
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn laplat_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}
