//! C bindings for the graph-family library: opaque handles, integer status
//! codes, and a thread-local last-error message.
//!
//! Ownership rules: every `*_build` / `*_solve` call that returns
//! [`SscgStatus::Ok`] transfers ownership of the written handle to the
//! caller, who must release it with the matching `*_free` function. Strings
//! returned by `sscg_result_count` are released with `sscg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::ptr;

use sscg::error::Error;
use sscg::generate::{build_with_cap, Method, Model};
use sscg::graph::Graph;
use sscg::oracle::{solve, BoundaryConstraint, OracleBudget, Problem, SolveResult};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SscgStatus {
    Ok = 0,
    NullArgument = 1,
    Usage = 2,
    Capability = 3,
    Range = 4,
    NoClosedForm = 5,
    Parse = 6,
    Io = 7,
}

/// Graph family selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SscgModel {
    Fractal = 0,
    NonFractal = 1,
}

/// Optimization problem selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SscgProblem {
    Matching = 0,
    IndependentSet = 1,
    DominatingSet = 2,
}

/// Boundary-participation constraint selector.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SscgConstraint {
    Free = 0,
    KeepZero = 1,
    KeepOne = 2,
    KeepTwo = 3,
    KeepFirstOnly = 4,
    KeepSecondOnly = 5,
}

/// Opaque graph handle.
pub struct SscgGraph {
    _private: [u8; 0],
}

/// Opaque solve-result handle.
pub struct SscgResult {
    _private: [u8; 0],
}

struct GraphHandle {
    graph: Graph,
}

struct ResultHandle {
    result: SolveResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn fail(err: &Error) -> SscgStatus {
    let message = CString::new(err.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    match err {
        Error::Usage(_) => SscgStatus::Usage,
        Error::Capability(_) => SscgStatus::Capability,
        Error::Range { .. } => SscgStatus::Range,
        Error::NoClosedForm(_) => SscgStatus::NoClosedForm,
        Error::Parse { .. } => SscgStatus::Parse,
        Error::Io(_) => SscgStatus::Io,
    }
}

fn fail_null(what: &str) -> SscgStatus {
    let message = CString::new(format!("{what} must not be null")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    SscgStatus::NullArgument
}

/// Message for the most recent failure on this thread, or null when the last
/// call succeeded. The pointer stays valid until the next failing call on
/// the same thread.
#[no_mangle]
pub extern "C" fn sscg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

impl SscgModel {
    fn into_model(self) -> Model {
        match self {
            SscgModel::Fractal => Model::Fractal,
            SscgModel::NonFractal => Model::NonFractal,
        }
    }
}

impl SscgProblem {
    fn into_problem(self) -> Problem {
        match self {
            SscgProblem::Matching => Problem::Matching,
            SscgProblem::IndependentSet => Problem::IndependentSet,
            SscgProblem::DominatingSet => Problem::DominatingSet,
        }
    }
}

impl SscgConstraint {
    fn into_constraint(self) -> BoundaryConstraint {
        match self {
            SscgConstraint::Free => BoundaryConstraint::Free,
            SscgConstraint::KeepZero => BoundaryConstraint::Exactly(0),
            SscgConstraint::KeepOne => BoundaryConstraint::Exactly(1),
            SscgConstraint::KeepTwo => BoundaryConstraint::Exactly(2),
            SscgConstraint::KeepFirstOnly => BoundaryConstraint::ExactlyOneAt(0),
            SscgConstraint::KeepSecondOnly => BoundaryConstraint::ExactlyOneAt(1),
        }
    }
}

/// Builds one family graph at the given level and writes an owned handle to
/// `out`. `max_level` bounds the construction (pass 0 for the library
/// default).
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sscg_graph_build(
    model: SscgModel,
    level: u32,
    max_level: u32,
    out: *mut *mut SscgGraph,
) -> SscgStatus {
    if out.is_null() {
        return fail_null("out");
    }
    let cap = if max_level == 0 {
        sscg::generate::DEFAULT_MAX_LEVEL
    } else {
        max_level
    };
    match build_with_cap(model.into_model(), Method::EdgeReplacement, level, cap) {
        Ok(graph) => {
            clear_error();
            let handle = Box::new(GraphHandle { graph });
            unsafe { *out = Box::into_raw(handle) as *mut SscgGraph };
            SscgStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `graph` must be null or a handle produced by [`sscg_graph_build`] that
/// has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sscg_graph_free(graph: *mut SscgGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph as *mut GraphHandle) });
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle from [`sscg_graph_build`].
#[no_mangle]
pub unsafe extern "C" fn sscg_graph_vertices(graph: *const SscgGraph) -> u64 {
    match unsafe { (graph as *const GraphHandle).as_ref() } {
        Some(h) => h.graph.vertex_count() as u64,
        None => 0,
    }
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle from [`sscg_graph_build`].
#[no_mangle]
pub unsafe extern "C" fn sscg_graph_edges(graph: *const SscgGraph) -> u64 {
    match unsafe { (graph as *const GraphHandle).as_ref() } {
        Some(h) => h.graph.edge_count() as u64,
        None => 0,
    }
}

/// Solves one problem exactly. `budget_seconds <= 0` means no time limit.
/// On success writes an owned result handle to `out`.
///
/// # Safety
/// `graph` must be a live handle from [`sscg_graph_build`]; `out` must be a
/// valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sscg_solve(
    graph: *const SscgGraph,
    problem: SscgProblem,
    constraint: SscgConstraint,
    budget_seconds: f64,
    out: *mut *mut SscgResult,
) -> SscgStatus {
    if out.is_null() {
        return fail_null("out");
    }
    let handle = match unsafe { (graph as *const GraphHandle).as_ref() } {
        Some(h) => h,
        None => return fail_null("graph"),
    };
    let budget = OracleBudget {
        max_seconds: (budget_seconds > 0.0).then_some(budget_seconds),
        ..OracleBudget::default()
    };
    match solve(
        &handle.graph,
        problem.into_problem(),
        constraint.into_constraint(),
        &budget,
    ) {
        Ok(result) => {
            clear_error();
            let boxed = Box::new(ResultHandle { result });
            unsafe { *out = Box::into_raw(boxed) as *mut SscgResult };
            SscgStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `result` must be null or a handle produced by [`sscg_solve`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sscg_result_free(result: *mut SscgResult) {
    if !result.is_null() {
        drop(unsafe { Box::from_raw(result as *mut ResultHandle) });
    }
}

/// Optimum value, or -1 when the constraint is infeasible or the handle is
/// null.
///
/// # Safety
/// `result` must be null or a live handle from [`sscg_solve`].
#[no_mangle]
pub unsafe extern "C" fn sscg_result_optimum(result: *const SscgResult) -> i64 {
    match unsafe { (result as *const ResultHandle).as_ref() } {
        Some(h) => h.result.optimum.map(i64::from).unwrap_or(-1),
        None => -1,
    }
}

/// Number of optimal structures as a decimal string, or null for a null
/// handle. Release with [`sscg_string_free`].
///
/// # Safety
/// `result` must be null or a live handle from [`sscg_solve`].
#[no_mangle]
pub unsafe extern "C" fn sscg_result_count(result: *const SscgResult) -> *mut c_char {
    match unsafe { (result as *const ResultHandle).as_ref() } {
        Some(h) => CString::new(h.result.count.to_string())
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut()),
        None => ptr::null_mut(),
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by [`sscg_result_count`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sscg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Headline optimum at `level` straight from the recurrences, without
/// building the graph. Writes the value to `out`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one `u64`.
#[no_mangle]
pub unsafe extern "C" fn sscg_predict_optimum(
    model: SscgModel,
    problem: SscgProblem,
    level: u32,
    out: *mut u64,
) -> SscgStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match sscg::decimate::size_recursion(model.into_model(), problem.into_problem(), level) {
        Ok(steps) => {
            let headline = steps
                .last()
                .expect("recursion reaches requested level")
                .headline;
            match u64::try_from(headline) {
                Ok(v) => {
                    clear_error();
                    unsafe { *out = v };
                    SscgStatus::Ok
                }
                Err(_) => fail(&Error::capability(format!(
                    "the level-{level} optimum does not fit in 64 bits"
                ))),
            }
        }
        Err(e) => fail(&e),
    }
}
