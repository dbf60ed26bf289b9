//! C interface to `ccquery`.
//!
//! Graphs, oracles and reconstruction results live behind opaque handles
//! that the caller releases with the matching `*_free` function. Every
//! fallible call returns a [`CcqStatus`] and writes its result through an
//! out-pointer, which is left untouched on failure. Vertex sets are passed
//! as a pointer and a length; order and repeats do not matter.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use ccquery::graph::{generate, Family, InstanceSpec};
use ccquery::lab::{self, Algo};
use ccquery::two_round::{Profile, TwoRoundConfig};
use ccquery::{adaptive::AdaptiveConfig, CcOracle, CcQuery, Edge, Error, Graph, GraphError, OracleError, VertexSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    VertexOutOfRange = 3,
    BudgetExceeded = 4,
    ContractViolation = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcqFamily {
    Gnm = 0,
    Forest = 1,
    Star = 2,
    TwoPath = 3,
    CliqueMinusEdge = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcqAlgo {
    Adaptive = 0,
    TwoRound = 1,
    BinarySearch = 2,
    Pairwise = 3,
}

/// An undirected graph on vertices `0..n`.
pub struct CcqGraph(Graph);

/// A query-counting oracle over a private copy of a graph.
pub struct CcqOracle(CcOracle);

/// Outcome of one reconstruction run.
pub struct CcqResult {
    edges: Option<Vec<Edge>>,
    success: bool,
    queries: u64,
    rounds: u64,
    restarts: u32,
}

impl From<Family> for CcqFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Gnm => CcqFamily::Gnm,
            Family::Forest => CcqFamily::Forest,
            Family::Star => CcqFamily::Star,
            Family::TwoPath => CcqFamily::TwoPath,
            Family::CliqueMinusEdge => CcqFamily::CliqueMinusEdge,
        }
    }
}

impl From<CcqFamily> for Family {
    fn from(f: CcqFamily) -> Self {
        match f {
            CcqFamily::Gnm => Family::Gnm,
            CcqFamily::Forest => Family::Forest,
            CcqFamily::Star => Family::Star,
            CcqFamily::TwoPath => Family::TwoPath,
            CcqFamily::CliqueMinusEdge => Family::CliqueMinusEdge,
        }
    }
}

impl From<CcqAlgo> for Algo {
    fn from(a: CcqAlgo) -> Self {
        match a {
            CcqAlgo::Adaptive => Algo::Adaptive,
            CcqAlgo::TwoRound => Algo::TwoRound,
            CcqAlgo::BinarySearch => Algo::BinarySearch,
            CcqAlgo::Pairwise => Algo::Pairwise,
        }
    }
}

fn graph_status(e: &GraphError) -> CcqStatus {
    match e {
        GraphError::VertexOutOfRange { .. } => CcqStatus::VertexOutOfRange,
        _ => CcqStatus::InvalidInput,
    }
}

fn oracle_status(e: &OracleError) -> CcqStatus {
    match e {
        OracleError::BudgetExceeded { .. } => CcqStatus::BudgetExceeded,
        OracleError::ContractViolation(_) => CcqStatus::ContractViolation,
        OracleError::InvalidQuery(g) => graph_status(g),
    }
}

fn error_status(e: &Error) -> CcqStatus {
    match e {
        Error::Graph(g) => graph_status(g),
        Error::Oracle(o) => oracle_status(o),
        Error::InvalidInput(_) | Error::Precondition(_) => CcqStatus::InvalidInput,
        Error::Io(_) | Error::Csv(_) => CcqStatus::Internal,
    }
}

// Runs `f`, turning a panic into `Internal` so it never crosses the
// boundary.
fn guard(f: impl FnOnce() -> CcqStatus) -> CcqStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CcqStatus::Internal)
}

/// # Safety
/// `ptr` must be null only when `len` is 0, or point to `len` readable
/// values.
unsafe fn read_slice<'a, T>(ptr: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(slice::from_raw_parts(ptr, len))
    }
}

/// # Safety
/// As for [`read_slice`].
unsafe fn read_set(members: *const usize, len: usize) -> Option<VertexSet> {
    read_slice(members, len).map(|s| VertexSet::from_unsorted(s.to_vec()))
}

/// A static, NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn ccq_status_message(status: CcqStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        CcqStatus::Ok => b"ok\0",
        CcqStatus::NullPointer => b"null pointer argument\0",
        CcqStatus::InvalidInput => b"invalid input\0",
        CcqStatus::VertexOutOfRange => b"vertex out of range\0",
        CcqStatus::BudgetExceeded => b"query budget exceeded\0",
        CcqStatus::ContractViolation => b"adaptivity contract violated\0",
        CcqStatus::BufferTooSmall => b"output buffer too small\0",
        CcqStatus::Internal => b"internal error\0",
    };
    msg.as_ptr().cast()
}

/// Builds a graph from `m` edges `(us[i], vs[i])`.
///
/// # Safety
/// `us` and `vs` must each point to `m` values (or may be null when `m`
/// is 0); `out` must be a valid place to store a handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_new(
    n: usize,
    us: *const usize,
    vs: *const usize,
    m: usize,
    out: *mut *mut CcqGraph,
) -> CcqStatus {
    guard(|| {
        let (Some(us), Some(vs)) = (read_slice(us, m), read_slice(vs, m)) else {
            return CcqStatus::NullPointer;
        };
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        match Graph::from_edges(n, us.iter().copied().zip(vs.iter().copied())) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(CcqGraph(g)));
                CcqStatus::Ok
            }
            Err(e) => graph_status(&e),
        }
    })
}

/// Generates an instance of `family`; for the two-path family the graph
/// with `m` edges of the pair is returned.
///
/// # Safety
/// `out` must be a valid place to store a handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_generate(
    family: CcqFamily,
    n: usize,
    m: usize,
    seed: u64,
    out: *mut *mut CcqGraph,
) -> CcqStatus {
    guard(|| {
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        match generate(&InstanceSpec::new(family.into(), n, m, seed)) {
            Ok(inst) => {
                *out = Box::into_raw(Box::new(CcqGraph(inst.into_hidden())));
                CcqStatus::Ok
            }
            Err(e) => graph_status(&e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_free(g: *mut CcqGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_vertex_count(g: *const CcqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_edge_count(g: *const CcqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Copies the sorted edge list into `us`/`vs` (each of capacity `cap`).
///
/// # Safety
/// `g` must be a live graph handle; `us` and `vs` must each have room for
/// `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_edges(
    g: *const CcqGraph,
    us: *mut usize,
    vs: *mut usize,
    cap: usize,
) -> CcqStatus {
    guard(|| match g.as_ref() {
        None => CcqStatus::NullPointer,
        Some(g) => write_edges(g.0.edges(), us, vs, cap),
    })
}

unsafe fn write_edges(edges: &[Edge], us: *mut usize, vs: *mut usize, cap: usize) -> CcqStatus {
    if edges.len() > cap {
        return CcqStatus::BufferTooSmall;
    }
    if edges.is_empty() {
        return CcqStatus::Ok;
    }
    if us.is_null() || vs.is_null() {
        return CcqStatus::NullPointer;
    }
    for (i, e) in edges.iter().enumerate() {
        let (u, v) = e.endpoints();
        *us.add(i) = u;
        *vs.add(i) = v;
    }
    CcqStatus::Ok
}

/// Components of the subgraph induced on `members`, without any query
/// accounting.
///
/// # Safety
/// `g` must be a live graph handle, `members` must point to `len` values,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ccq_graph_cc_count(
    g: *const CcqGraph,
    members: *const usize,
    len: usize,
    out: *mut usize,
) -> CcqStatus {
    guard(|| {
        let (Some(g), Some(s)) = (g.as_ref(), read_set(members, len)) else {
            return CcqStatus::NullPointer;
        };
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        match g.0.cc_count(&s) {
            Ok(c) => {
                *out = c;
                CcqStatus::Ok
            }
            Err(e) => graph_status(&e),
        }
    })
}

/// An adaptive oracle over a copy of `g`; `budget` of 0 means unlimited.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ccq_oracle_new(g: *const CcqGraph, budget: u64, out: *mut *mut CcqOracle) -> CcqStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return CcqStatus::NullPointer;
        };
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        let limit = (budget > 0).then_some(budget);
        let o = CcOracle::with_options(g.0.clone(), ccquery::OracleMode::Adaptive, limit, false);
        *out = Box::into_raw(Box::new(CcqOracle(o)));
        CcqStatus::Ok
    })
}

/// # Safety
/// `o` must be null or an oracle handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccq_oracle_free(o: *mut CcqOracle) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// One counted query.
///
/// # Safety
/// `o` must be a live oracle handle, `members` must point to `len` values,
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ccq_oracle_query(
    o: *mut CcqOracle,
    members: *const usize,
    len: usize,
    out: *mut usize,
) -> CcqStatus {
    guard(|| {
        let (Some(o), Some(s)) = (o.as_mut(), read_set(members, len)) else {
            return CcqStatus::NullPointer;
        };
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        match o.0.query(&s) {
            Ok(c) => {
                *out = c;
                CcqStatus::Ok
            }
            Err(e) => oracle_status(&e),
        }
    })
}

/// # Safety
/// `o` must be null or a live oracle handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_oracle_total_queries(o: *const CcqOracle) -> u64 {
    o.as_ref().map_or(0, |o| o.0.total_queries())
}

/// Reconstructs `g` with `algo` through a fresh oracle, given the edge
/// bound `m`. Two-round runs use failure probability 0.05 per step.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ccq_reconstruct(
    algo: CcqAlgo,
    g: *const CcqGraph,
    m: usize,
    seed: u64,
    out: *mut *mut CcqResult,
) -> CcqStatus {
    guard(|| {
        let Some(g) = g.as_ref() else {
            return CcqStatus::NullPointer;
        };
        if out.is_null() {
            return CcqStatus::NullPointer;
        }
        let algo = Algo::from(algo);
        if algo == Algo::TwoRound && g.0.n() < 2 {
            return CcqStatus::InvalidInput;
        }
        let mut o = CcOracle::new(g.0.clone(), lab::oracle_mode(algo));
        let two_round = TwoRoundConfig::for_profile(Profile::Practical, g.0.n());
        match lab::run_algorithm(algo, &mut o, m, &AdaptiveConfig::default(), &two_round, seed) {
            Ok((edges, restarts)) => {
                let ledger = o.ledger();
                let success = edges.as_deref() == Some(g.0.edges());
                *out = Box::into_raw(Box::new(CcqResult {
                    edges,
                    success,
                    queries: ledger.total_queries(),
                    rounds: ledger.rounds(),
                    restarts,
                }));
                CcqStatus::Ok
            }
            Err(e) => error_status(&e),
        }
    })
}

/// # Safety
/// `r` must be null or a result handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_free(r: *mut CcqResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Whether the output equals the hidden edge set.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_success(r: *const CcqResult) -> bool {
    r.as_ref().is_some_and(|r| r.success)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_queries(r: *const CcqResult) -> u64 {
    r.as_ref().map_or(0, |r| r.queries)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_rounds(r: *const CcqResult) -> u64 {
    r.as_ref().map_or(0, |r| r.rounds)
}

/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_restarts(r: *const CcqResult) -> u32 {
    r.as_ref().map_or(0, |r| r.restarts)
}

/// Edges returned, 0 when the algorithm gave up.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_edge_count(r: *const CcqResult) -> usize {
    r.as_ref().and_then(|r| r.edges.as_ref()).map_or(0, Vec::len)
}

/// Copies the returned edges into `us`/`vs` (each of capacity `cap`).
///
/// # Safety
/// `r` must be a live result handle; `us` and `vs` must each have room for
/// `cap` values.
#[no_mangle]
pub unsafe extern "C" fn ccq_result_edges(
    r: *const CcqResult,
    us: *mut usize,
    vs: *mut usize,
    cap: usize,
) -> CcqStatus {
    guard(|| match r.as_ref() {
        None => CcqStatus::NullPointer,
        Some(r) => write_edges(r.edges.as_deref().unwrap_or(&[]), us, vs, cap),
    })
}
