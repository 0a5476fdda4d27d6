//! C ABI over `comfort-core`.
//!
//! Graphs and teams are opaque heap handles released with their `_free`
//! functions. Every fallible call returns a [`ComfortStatus`]; on failure the
//! message is kept per thread and can be read with [`comfort_last_error`].
//! Panics never cross the boundary; they surface as `COMFORT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use comfort_core::criteria::{check_hc, TeamCandidate, TeamReport, Verdict};
use comfort_core::hicom::{hicom, HicomOptions, HicomResult};
use comfort_core::io::parse_edge_list;
use comfort_core::metrics::eccentricity_profile;
use comfort_core::{Error, Graph, ReductionFactor};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComfortStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    Disconnected = 5,
    /// No team exists or the algorithm could not find one.
    Infeasible = 6,
    BufferTooSmall = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComfortVerdict {
    None = 0,
    Comfortable = 1,
    BetterComfortable = 2,
    HighlyComfortable = 3,
}

impl From<Verdict> for ComfortVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::None => ComfortVerdict::None,
            Verdict::Comfortable => ComfortVerdict::Comfortable,
            Verdict::BetterComfortable => ComfortVerdict::BetterComfortable,
            Verdict::HighlyComfortable => ComfortVerdict::HighlyComfortable,
        }
    }
}

/// Flat copy of a team evaluation. `induced_diameter` is `UINT32_MAX` when
/// the team is disconnected.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComfortReport {
    pub d1: u32,
    pub domination_radius: u32,
    pub induced_diameter: u32,
    pub is_connected: bool,
    pub is_dominating_1: bool,
    pub less_dispersive: bool,
    pub bc_condition: bool,
    pub hc_condition: bool,
    pub verdict: ComfortVerdict,
}

impl From<&TeamReport> for ComfortReport {
    fn from(r: &TeamReport) -> Self {
        ComfortReport {
            d1: r.d1,
            domination_radius: r.domination_radius,
            induced_diameter: r.induced_diameter.unwrap_or(u32::MAX),
            is_connected: r.is_connected,
            is_dominating_1: r.is_dominating_1,
            less_dispersive: r.less_dispersive,
            bc_condition: r.bc_condition,
            hc_condition: r.hc_condition,
            verdict: r.verdict.into(),
        }
    }
}

/// Opaque graph handle.
pub struct ComfortGraph(Graph);

/// Opaque handle to a finished HICOM run.
pub struct ComfortTeam(HicomResult);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ComfortStatus {
    match e {
        Error::Parse { .. } => ComfortStatus::Parse,
        Error::Disconnected { .. } => ComfortStatus::Disconnected,
        Error::NoExtension { .. } | Error::RepairFailed { .. } | Error::Infeasible(_) => {
            ComfortStatus::Infeasible
        }
        Error::Internal(_) | Error::Io(_) => ComfortStatus::Internal,
        _ => ComfortStatus::InvalidParameter,
    }
}

fn guard(f: impl FnOnce() -> Result<(), ComfortStatus>) -> ComfortStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ComfortStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside comfort-ffi");
            ComfortStatus::Panic
        }
    }
}

fn fail(e: Error) -> ComfortStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> ComfortStatus {
    set_error(&format!("{what} is null"));
    ComfortStatus::NullPointer
}

unsafe fn graph_ref<'a>(g: *const ComfortGraph) -> Result<&'a Graph, ComfortStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

fn factor(numer: u64, denom: u64) -> Result<ReductionFactor, ComfortStatus> {
    ReductionFactor::new(numer, denom).map_err(fail)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn comfort_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses edge-list text (`n m [base]` header, then one `u v` per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_parse(
    text: *const c_char,
    out: *mut *mut ComfortGraph,
) -> ComfortStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|_| {
            set_error("text is not valid UTF-8");
            ComfortStatus::InvalidUtf8
        })?;
        let g = parse_edge_list(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(ComfortGraph(g)));
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (may be null when
/// `edge_count` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut ComfortGraph,
) -> ComfortStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            slice::from_raw_parts(edges, 2 * edge_count)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))).map_err(fail)?;
        *out = Box::into_raw(Box::new(ComfortGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from a constructor above and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_free(g: *mut ComfortGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_vertex_count(g: *const ComfortGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count; 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_edge_count(g: *const ComfortGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Writes the eccentricity of every vertex to `out` (`len ≥ n`), plus the
/// radius and diameter when those pointers are non-null.
///
/// # Safety
/// `out` must hold `len` writable values; `radius` and `diameter` must be
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_graph_eccentricities(
    g: *const ComfortGraph,
    out: *mut u32,
    len: usize,
    radius: *mut u32,
    diameter: *mut u32,
) -> ComfortStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let p = eccentricity_profile(g).map_err(fail)?;
        if len < p.ecc.len() {
            set_error(&format!("buffer holds {len} values, need {}", p.ecc.len()));
            return Err(ComfortStatus::BufferTooSmall);
        }
        if !p.ecc.is_empty() {
            if out.is_null() {
                return Err(null("out"));
            }
            ptr::copy_nonoverlapping(p.ecc.as_ptr(), out, p.ecc.len());
        }
        if let Some(r) = radius.as_mut() {
            *r = p.radius;
        }
        if let Some(d) = diameter.as_mut() {
            *d = p.diameter;
        }
        Ok(())
    })
}

/// Runs HICOM with `l = l_numer / l_denom`. Values of `l` above 2 are
/// accepted.
///
/// # Safety
/// `g` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_hicom(
    g: *const ComfortGraph,
    l_numer: u64,
    l_denom: u64,
    out: *mut *mut ComfortTeam,
) -> ComfortStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let l = factor(l_numer, l_denom)?;
        let opts = HicomOptions {
            allow_large_l: true,
            ..Default::default()
        };
        let run = hicom(g, l, opts).map_err(fail)?;
        *out = Box::into_raw(Box::new(ComfortTeam(run)));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`comfort_hicom`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn comfort_team_free(t: *mut ComfortTeam) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Team size; 0 for a null handle.
///
/// # Safety
/// `t` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn comfort_team_len(t: *const ComfortTeam) -> usize {
    t.as_ref().map_or(0, |t| t.0.team.len())
}

/// Copies the 0-based member indices (ascending) into `out`.
///
/// # Safety
/// `t` must be live and `out` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn comfort_team_members(
    t: *const ComfortTeam,
    out: *mut usize,
    len: usize,
) -> ComfortStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("team"))?;
        let m = t.0.team.members();
        if len < m.len() {
            set_error(&format!("buffer holds {len} values, need {}", m.len()));
            return Err(ComfortStatus::BufferTooSmall);
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(m.as_ptr(), out, m.len());
        Ok(())
    })
}

/// Evaluation of the HICOM team.
///
/// # Safety
/// `t` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_team_report(
    t: *const ComfortTeam,
    out: *mut ComfortReport,
) -> ComfortStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("team"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = ComfortReport::from(&t.0.report);
        Ok(())
    })
}

/// Full HICOM result as JSON: team, parameters, report and trace. Release
/// the string with [`comfort_string_free`].
///
/// # Safety
/// `t` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_team_json(
    t: *const ComfortTeam,
    out: *mut *mut c_char,
) -> ComfortStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("team"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = serde_json::to_string(&t.0).map_err(|e| fail(Error::Internal(e.to_string())))?;
        *out = CString::new(s)
            .map_err(|e| fail(Error::Internal(e.to_string())))?
            .into_raw();
        Ok(())
    })
}

/// Evaluates an arbitrary team given as `len` 0-based vertex indices.
///
/// # Safety
/// `g` must be live, `members` must hold `len` readable values and `out`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn comfort_check_hc(
    g: *const ComfortGraph,
    members: *const usize,
    len: usize,
    l_numer: u64,
    l_denom: u64,
    out: *mut ComfortReport,
) -> ComfortStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if members.is_null() && len > 0 {
            return Err(null("members"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let l = factor(l_numer, l_denom)?;
        let vs: &[usize] = if len == 0 {
            &[]
        } else {
            slice::from_raw_parts(members, len)
        };
        let team = TeamCandidate::new(g, vs.iter().copied()).map_err(fail)?;
        let report = check_hc(g, &team, l).map_err(fail)?;
        *out = ComfortReport::from(&report);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn comfort_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_stable_statuses() {
        assert_eq!(
            status_of(&Error::Infeasible("x".into())),
            ComfortStatus::Infeasible
        );
        assert_eq!(
            status_of(&Error::Disconnected { components: 2 }),
            ComfortStatus::Disconnected
        );
        assert_eq!(
            status_of(&Error::DegenerateParams { d1: 3, diameter: 3 }),
            ComfortStatus::InvalidParameter
        );
    }

    #[test]
    fn last_error_is_cleared_on_success() {
        let mut g = ptr::null_mut();
        let s = unsafe { comfort_graph_from_edges(2, ptr::null(), 1, &mut g) };
        assert_eq!(s, ComfortStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(comfort_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "edges is null");
        let s = unsafe { comfort_graph_from_edges(1, ptr::null(), 0, &mut g) };
        assert_eq!(s, ComfortStatus::Ok);
        assert!(unsafe { CStr::from_ptr(comfort_last_error()) }.is_empty());
        unsafe { comfort_graph_free(g) };
    }
}
