//! C interface to `genturan`.
//!
//! Graphs live behind an opaque `GtGraph` handle. Every fallible function
//! returns a `GtStatus`; on failure the message is kept per thread and can
//! be read with `gt_last_error`. Strings handed out by the library must be
//! released with `gt_string_free`, graphs with `gt_graph_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use genturan::classifier::{classify_linearity, Verdict};
use genturan::constructions::{furedi_graph, turan_graph};
use genturan::counting::{count_cliques, count_cycles, count_paths};
use genturan::embed::{count_copies, is_free};
use genturan::format::{from_graph6, to_graph6};
use genturan::{Error, Graph};

/// Opaque graph handle.
pub struct GtGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidGraph6 = 3,
    Precondition = 4,
    LimitExceeded = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtVerdict {
    Linear = 0,
    Quadratic = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("no NUL")));
}

fn fail(status: GtStatus, msg: impl Into<String>) -> GtStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> GtStatus {
    let status = match e {
        Error::Graph6(_) | Error::Hypergraph(_) => GtStatus::InvalidGraph6,
        Error::Precondition(_) => GtStatus::Precondition,
        Error::LimitExceeded { .. } => GtStatus::LimitExceeded,
        Error::Io(_) => GtStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `body`, turning panics into `Internal`.
fn guard(body: impl FnOnce() -> Result<(), GtStatus>) -> GtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(GtStatus::Internal, "internal panic"),
    }
}

unsafe fn graph_ref<'a>(g: *const GtGraph) -> Result<&'a Graph, GtStatus> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or_else(|| fail(GtStatus::NullPointer, "null graph handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, GtStatus> {
    p.as_mut()
        .ok_or_else(|| fail(GtStatus::NullPointer, "null output pointer"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), GtStatus> {
    let slot = out_ref(out)?;
    *slot = CString::new(s).expect("no NUL").into_raw();
    Ok(())
}

unsafe fn put_graph(out: *mut *mut GtGraph, g: Graph) -> Result<(), GtStatus> {
    let slot = out_ref(out)?;
    *slot = Box::into_raw(Box::new(GtGraph { inner: g }));
    Ok(())
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a NUL-terminated graph6 string.
///
/// # Safety
/// `s` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gt_graph_from_graph6(s: *const c_char, out: *mut *mut GtGraph) -> GtStatus {
    guard(|| {
        if s.is_null() {
            return Err(fail(GtStatus::NullPointer, "null string"));
        }
        let text = CStr::from_ptr(s)
            .to_str()
            .map_err(|_| fail(GtStatus::InvalidUtf8, "graph6 string is not UTF-8"))?;
        let g = from_graph6(text.trim()).map_err(from_error)?;
        put_graph(out, g)
    })
}

/// # Safety
/// `g` must be a handle from this library or NULL, and must not be used after.
#[no_mangle]
pub unsafe extern "C" fn gt_graph_free(g: *mut GtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must be a string from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle; `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gt_graph_to_graph6(g: *const GtGraph, out: *mut *mut c_char) -> GtStatus {
    guard(|| put_string(out, to_graph6(graph_ref(g)?)))
}

/// # Safety
/// `g` must be a live handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn gt_graph_size(g: *const GtGraph, order: *mut usize, edges: *mut usize) -> GtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        *out_ref(order)? = g.order();
        *out_ref(edges)? = g.edge_count();
        Ok(())
    })
}

/// graph6 of the canonically relabelled graph; equal strings mean isomorphic graphs.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_canonical_graph6(g: *const GtGraph, out: *mut *mut c_char) -> GtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let canon = genturan::canon::canonize(g).canonical_graph(g);
        put_string(out, to_graph6(&canon))
    })
}

/// Number of subgraphs of `host` isomorphic to `pattern`, as a decimal string.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_count_copies(
    pattern: *const GtGraph,
    host: *const GtGraph,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let c = count_copies(graph_ref(pattern)?, graph_ref(host)?);
        put_string(out, c.value.to_string())
    })
}

/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_is_free(host: *const GtGraph, forbidden: *const GtGraph, out: *mut bool) -> GtStatus {
    guard(|| {
        let free = is_free(graph_ref(host)?, graph_ref(forbidden)?);
        *out_ref(out)? = free;
        Ok(())
    })
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtShape {
    /// Paths with `k` vertices.
    Path = 0,
    /// Cycles of length `k`.
    Cycle = 1,
    /// Cliques on `k` vertices.
    Clique = 2,
}

/// Counts paths, cycles or cliques; decimal string result.
///
/// # Safety
/// `g` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_count_shape(
    g: *const GtGraph,
    shape: GtShape,
    k: usize,
    out: *mut *mut c_char,
) -> GtStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let c = match shape {
            GtShape::Path => count_paths(g, k),
            GtShape::Cycle => count_cycles(g, k),
            GtShape::Clique => count_cliques(g, k),
        }
        .map_err(from_error)?;
        put_string(out, c.value.to_string())
    })
}

/// The polarity-type C4-free family member for a prime power `q` with `t-1 | q-1`.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_furedi(q: usize, t: usize, out: *mut *mut GtGraph) -> GtStatus {
    guard(|| put_graph(out, furedi_graph(q, t).map_err(from_error)?))
}

/// Balanced complete `(k-1)`-partite graph on `n` vertices.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_turan(n: usize, k: usize, out: *mut *mut GtGraph) -> GtStatus {
    guard(|| put_graph(out, turan_graph(n, k).map_err(from_error)?))
}

/// Whether `ex(n, C_k, F)` grows linearly or quadratically; `k >= 4`.
///
/// # Safety
/// `f` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gt_classify(k: usize, f: *const GtGraph, out: *mut GtVerdict) -> GtStatus {
    guard(|| {
        let v = classify_linearity(k, graph_ref(f)?).map_err(from_error)?;
        *out_ref(out)? = match v.verdict {
            Verdict::Linear => GtVerdict::Linear,
            Verdict::Quadratic => GtVerdict::Quadratic,
        };
        Ok(())
    })
}
