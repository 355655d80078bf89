//! C ABI over `oddflag`.
//!
//! Every call returns an [`OddflagStatus`]. On failure a message is kept per
//! thread and can be read with [`oddflag_last_error_message`]. Strings handed
//! out by this library are owned by the caller and released with
//! [`oddflag_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oddflag::lattice::build_cn_lattice_with;
use oddflag::nbhd::{gamma, Neighborhood, NeighborhoodSource};
use oddflag::qbg::{build_qbg, property_o_verdict, QbgRule};
use oddflag::weyl::bruhat_leq;
use oddflag::{Degree, Error, FlagLabel, FlagSpace};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddflagStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad rank, index or label outside the space.
    InvalidArgument = 2,
    ParseError = 3,
    VerificationFailed = 4,
    InvalidUtf8 = 5,
    Internal = 6,
    Panic = 7,
}

/// Precomputed data for one rank. Create with [`oddflag_space_new`].
pub struct OddflagSpace {
    inner: FlagSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(OddflagStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain(_) => OddflagStatus::InvalidArgument,
            Error::Parse { .. } => OddflagStatus::ParseError,
            Error::Verification(_) => OddflagStatus::VerificationFailed,
            Error::Internal(_) => OddflagStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(OddflagStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OddflagStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            OddflagStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            OddflagStatus::Panic
        }
    }
}

unsafe fn space_ref<'a>(space: *const OddflagSpace) -> Result<&'a FlagSpace, Failure> {
    space.as_ref().map(|s| &s.inner).ok_or_else(|| null("space"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(OddflagStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn parse_label(space: &FlagSpace, s: *const c_char, what: &str) -> Result<FlagLabel, Failure> {
    Ok(FlagLabel::parse(text(s, what)?, space.n())?)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(OddflagStatus::Internal, "string contains nul".into()))?;
    write(out, c.into_raw())
}

fn source(search: bool) -> NeighborhoodSource {
    if search {
        NeighborhoodSource::Search
    } else {
        NeighborhoodSource::ClosedForm
    }
}

fn rule(strict: bool) -> QbgRule {
    if strict {
        QbgRule::Strict
    } else {
        QbgRule::SubComponent
    }
}

/// Build the space for rank `n >= 2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_space_new(n: u32, out: *mut *mut OddflagSpace) -> OddflagStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let inner = FlagSpace::new(n)?;
        write(out, Box::into_raw(Box::new(OddflagSpace { inner })))
    })
}

/// # Safety
/// `space` must come from [`oddflag_space_new`] and not be used afterwards.
/// Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn oddflag_space_free(space: *mut OddflagSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// # Safety
/// `space` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_space_rank(space: *const OddflagSpace, out: *mut u32) -> OddflagStatus {
    guard(|| write(out, space_ref(space)?.n()))
}

/// Number of Schubert labels, `4n^2`.
///
/// # Safety
/// `space` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_label_count(space: *const OddflagSpace, out: *mut usize) -> OddflagStatus {
    guard(|| write(out, space_ref(space)?.labels().len()))
}

/// Label at `index` in enumeration order, as `a|b` text.
///
/// # Safety
/// `space` must be a live handle; `out` valid for writes. Free the result
/// with [`oddflag_string_free`].
#[no_mangle]
pub unsafe extern "C" fn oddflag_label_text(
    space: *const OddflagSpace,
    index: usize,
    out: *mut *mut c_char,
) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        let label = s.labels().get(index).ok_or_else(|| {
            Failure(OddflagStatus::InvalidArgument, format!("index {index} out of range for {} labels", s.labels().len()))
        })?;
        write_string(out, label.to_string())
    })
}

/// # Safety
/// `space` must be a live handle, `label` a nul-terminated string, `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_label_length(
    space: *const OddflagSpace,
    label: *const c_char,
    out: *mut u32,
) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        write(out, parse_label(s, label, "label")?.length())
    })
}

/// Whether `X(u) <= X(v)` in Bruhat order.
///
/// # Safety
/// `space` must be a live handle, `u`/`v` nul-terminated strings, `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_bruhat_leq(
    space: *const OddflagSpace,
    u: *const c_char,
    v: *const c_char,
    out: *mut bool,
) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        let (u, v) = (parse_label(s, u, "u")?, parse_label(s, v, "v")?);
        write(out, bruhat_leq(&u, &v)?)
    })
}

/// Curve neighborhood `Gamma_(d1,d2)(X(w))` as JSON
/// `{"w":…,"d":[d1,d2],"components":[…]}`. `search` selects graph search
/// over the closed form.
///
/// # Safety
/// `space` must be a live handle, `w` a nul-terminated string, `out` valid
/// for writes. Free the result with [`oddflag_string_free`].
#[no_mangle]
pub unsafe extern "C" fn oddflag_nbhd_json(
    space: *const OddflagSpace,
    w: *const c_char,
    d1: u32,
    d2: u32,
    search: bool,
    out: *mut *mut c_char,
) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        let w = parse_label(s, w, "w")?;
        let d = Degree::new(d1, d2);
        let components = gamma(s, &w, d, source(search))?;
        let json = serde_json::to_string(&Neighborhood { w, d, components }).map_err(|e| Failure(OddflagStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// Curve-neighborhood lattice of `X(w)` as JSON.
///
/// # Safety
/// As for [`oddflag_nbhd_json`].
#[no_mangle]
pub unsafe extern "C" fn oddflag_lattice_json(
    space: *const OddflagSpace,
    w: *const c_char,
    search: bool,
    out: *mut *mut c_char,
) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        let w = parse_label(s, w, "w")?;
        let l = build_cn_lattice_with(s, &w, source(search))?;
        write_string(out, l.to_json()?.to_string())
    })
}

/// Quantum Bruhat graph with its Property O verdict as JSON.
///
/// # Safety
/// `space` must be a live handle; `out` valid for writes. Free the result
/// with [`oddflag_string_free`].
#[no_mangle]
pub unsafe extern "C" fn oddflag_qbg_json(space: *const OddflagSpace, strict: bool, out: *mut *mut c_char) -> OddflagStatus {
    guard(|| {
        let s = space_ref(space)?;
        let g = build_qbg(s, rule(strict), NeighborhoodSource::ClosedForm)?;
        let verdict = property_o_verdict(&g)?;
        write_string(out, g.to_json(Some(&verdict)).to_string())
    })
}

/// Property O: strong connectivity and cycle-length gcd of the quantum
/// Bruhat graph. `gcd_out` receives 0 when the graph is not strongly
/// connected. A missing witness-cycle edge returns
/// `OddflagStatus::VerificationFailed`.
///
/// # Safety
/// `space` must be a live handle; `holds_out` and `gcd_out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn oddflag_property_o(
    space: *const OddflagSpace,
    strict: bool,
    holds_out: *mut bool,
    gcd_out: *mut u64,
) -> OddflagStatus {
    guard(|| {
        if holds_out.is_null() || gcd_out.is_null() {
            return Err(null("output pointer"));
        }
        let s = space_ref(space)?;
        let v = property_o_verdict(&build_qbg(s, rule(strict), NeighborhoodSource::ClosedForm)?)?;
        write(holds_out, v.holds)?;
        write(gcd_out, v.gcd.unwrap_or(0))
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn oddflag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn oddflag_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
