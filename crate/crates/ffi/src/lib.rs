//! C ABI over `fieldmaps`.
//!
//! Every fallible function returns an [`FmStatus`]. On failure a message is
//! stored per thread and can be read with [`fm_last_error_message`]. Handles
//! are opaque and must be released with the matching `*_free` function.
//! Strings returned through out-parameters are released with [`fm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use fieldmaps::families::{FamilyParams, FamilySpec};
use fieldmaps::map::io::parse_lut;
use fieldmaps::report::{analyze, Provenance};
use fieldmaps::spectra::{DifferentialProfile, PreimageProfile};
use fieldmaps::theorems::RunOptions;
use fieldmaps::{walsh, Error, FieldSpec, MapTable};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Hypothesis = 4,
    UnknownFamily = 5,
    CapExceeded = 6,
    NotApplicable = 7,
    ConclusionFailed = 8,
    Io = 9,
    Panic = 10,
}

/// A finite field.
pub struct FmField {
    inner: Arc<FieldSpec>,
}

/// A map on a finite field, stored as its value table.
pub struct FmMap {
    table: MapTable,
    provenance: Provenance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> FmStatus {
    match e {
        Error::Parse(_) => FmStatus::Parse,
        Error::Hypothesis { .. } => FmStatus::Hypothesis,
        Error::UnknownFamily(_) => FmStatus::UnknownFamily,
        Error::CapExceeded { .. } | Error::WalshCapExceeded { .. } => FmStatus::CapExceeded,
        Error::NotApplicable(_) | Error::Unsupported(_) => FmStatus::NotApplicable,
        Error::ConclusionFailed(_) => FmStatus::ConclusionFailed,
        Error::Io(_) => FmStatus::Io,
        _ => FmStatus::InvalidArgument,
    }
}

struct Fail(FmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(FmStatus::NullPointer, format!("{} is null", what))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FmStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FmStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn string<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(FmStatus::InvalidArgument, format!("{} is not UTF-8", what)))
}

unsafe fn emit_map(out: *mut *mut FmMap, table: MapTable, provenance: Provenance) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(FmMap { table, provenance }));
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(FmStatus::InvalidArgument, "interior NUL".into()))
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// F_{p^n} with the default modulus.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_field_new(p: u32, n: u32, out: *mut *mut FmField) -> FmStatus {
    guard(|| {
        let inner = FieldSpec::build(p, n, None)?;
        write(out, Box::into_raw(Box::new(FmField { inner })), "out")
    })
}

/// F_{p^n} with an explicit monic modulus, coefficients from the constant term up.
///
/// # Safety
/// `coeffs` must point to `len` readable values and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_field_new_with_modulus(
    p: u32,
    n: u32,
    coeffs: *const u32,
    len: usize,
    out: *mut *mut FmField,
) -> FmStatus {
    guard(|| {
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        let modulus = std::slice::from_raw_parts(coeffs, len);
        let inner = FieldSpec::build(p, n, Some(modulus))?;
        write(out, Box::into_raw(Box::new(FmField { inner })), "out")
    })
}

/// # Safety
/// `field` must come from `fm_field_new*` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fm_field_free(field: *mut FmField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order q, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fm_field_order(field: *const FmField) -> usize {
    field.as_ref().map_or(0, |f| f.inner.order())
}

unsafe fn binary_op(
    field: *const FmField,
    a: u32,
    b: u32,
    out: *mut u32,
    op: impl FnOnce(&FieldSpec, u32, u32) -> Result<u32, Error>,
) -> FmStatus {
    guard(|| {
        let f = &deref(field, "field")?.inner;
        let (a, b) = (f.check_elem(a as u64)?, f.check_elem(b as u64)?);
        write(out, op(f, a, b)?, "out")
    })
}

/// # Safety
/// `field` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_field_add(field: *const FmField, a: u32, b: u32, out: *mut u32) -> FmStatus {
    binary_op(field, a, b, out, |f, a, b| Ok(f.add(a, b)))
}

/// # Safety
/// `field` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_field_mul(field: *const FmField, a: u32, b: u32, out: *mut u32) -> FmStatus {
    binary_op(field, a, b, out, |f, a, b| Ok(f.mul(a, b)))
}

/// # Safety
/// `field` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_field_inv(field: *const FmField, a: u32, out: *mut u32) -> FmStatus {
    binary_op(field, a, 0, out, |f, a, _| f.inv(a))
}

/// A map from its value table; `len` must equal the field order.
///
/// # Safety
/// `values` must point to `len` readable values and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_from_table(
    field: *const FmField,
    values: *const u32,
    len: usize,
    out: *mut *mut FmMap,
) -> FmStatus {
    guard(|| {
        let f = deref(field, "field")?;
        if values.is_null() {
            return Err(null("values"));
        }
        let table = MapTable::new(f.inner.clone(), std::slice::from_raw_parts(values, len).to_vec())?;
        emit_map(out, table, Provenance::Table)
    })
}

/// A map from an expression such as `x^3 + 2*x`.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_from_expression(
    field: *const FmField,
    expr: *const c_char,
    out: *mut *mut FmMap,
) -> FmStatus {
    guard(|| {
        let f = deref(field, "field")?;
        let expr = string(expr, "expr")?;
        let table = MapTable::from_expression(f.inner.clone(), expr)?;
        emit_map(out, table, Provenance::Expression { expr: expr.to_string() })
    })
}

/// A catalog map by id. `params_json` is null or a JSON object with any of
/// the keys n, m, i, k, a, alpha, beta, gamma.
///
/// # Safety
/// `id` must be a NUL-terminated string, `params_json` null or one, and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_from_family(
    id: *const c_char,
    params_json: *const c_char,
    out: *mut *mut FmMap,
) -> FmStatus {
    guard(|| {
        let id = string(id, "id")?;
        let params: FamilyParams = if params_json.is_null() {
            FamilyParams::default()
        } else {
            serde_json::from_str(string(params_json, "params_json")?)
                .map_err(|e| Fail(FmStatus::Parse, format!("params: {}", e)))?
        };
        let spec = FamilySpec::from_id(id, &params)?;
        let (built, warnings) = spec.build()?;
        let table = built.into_univariate()?;
        let basis = (spec.field_degree() % 2 == 0).then(|| fieldmaps::map::default_basis(table.field()));
        emit_map(out, table, Provenance::Family { spec, basis, warnings })
    })
}

/// A map from the text of a LUT file.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_from_lut(text: *const c_char, out: *mut *mut FmMap) -> FmStatus {
    guard(|| {
        let table = parse_lut(string(text, "text")?)?;
        let digest = table.digest();
        emit_map(out, table, Provenance::Lut { path: String::new(), digest })
    })
}

/// # Safety
/// `map` must come from `fm_map_from_*` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fm_map_free(map: *mut FmMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Order of the field the map lives on, or 0 for a null handle.
///
/// # Safety
/// `map` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fm_map_order(map: *const FmMap) -> usize {
    map.as_ref().map_or(0, |m| m.table.field().order())
}

/// # Safety
/// `map` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_eval(map: *const FmMap, x: u32, out: *mut u32) -> FmStatus {
    guard(|| {
        let m = deref(map, "map")?;
        let x = m.table.field().check_elem(x as u64)?;
        write(out, m.table.eval(x), "out")
    })
}

/// |f(F_q)|.
///
/// # Safety
/// `map` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_image_size(map: *const FmMap, out: *mut u64) -> FmStatus {
    guard(|| write(out, PreimageProfile::new(&deref(map, "map")?.table).image_size(), "out"))
}

/// Number of elements with exactly r preimages.
///
/// # Safety
/// `map` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_m_count(map: *const FmMap, r: u32, out: *mut u64) -> FmStatus {
    guard(|| write(out, PreimageProfile::new(&deref(map, "map")?.table).m(r), "out"))
}

/// Differential uniformity.
///
/// # Safety
/// `map` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_uniformity(map: *const FmMap, out: *mut u32) -> FmStatus {
    guard(|| write(out, DifferentialProfile::new(&deref(map, "map")?.table).uniformity(), "out"))
}

/// W(b, a) for every a, written to `out[0..q]`. Characteristic 2 only.
///
/// # Safety
/// `map` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_walsh_component(map: *const FmMap, b: u32, out: *mut i64, len: usize) -> FmStatus {
    guard(|| {
        let m = deref(map, "map")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let q = m.table.field().order();
        if len != q {
            return Err(Fail(FmStatus::InvalidArgument, format!("buffer length {} differs from q = {}", len, q)));
        }
        if b == 0 {
            return Err(Fail(FmStatus::InvalidArgument, "component b must be nonzero".into()));
        }
        let b = m.table.field().check_elem(b as u64)?;
        let spectrum = walsh::component_spectrum(&m.table, b)?;
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&spectrum);
        Ok(())
    })
}

/// Full analysis report as JSON. `suite` is null for all theorems, or a
/// selector such as `ub.*`. Free the result with `fm_string_free`.
///
/// # Safety
/// `map` must be a live handle, `suite` null or a NUL-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_analyze_json(map: *const FmMap, suite: *const c_char, out: *mut *mut c_char) -> FmStatus {
    guard(|| {
        let m = deref(map, "map")?;
        let suite = if suite.is_null() { "all" } else { string(suite, "suite")? };
        let report = analyze(&m.table, m.provenance.clone(), &RunOptions::default(), suite)?;
        let json = serde_json::to_string(&report).map_err(|e| Fail(FmStatus::InvalidArgument, e.to_string()))?;
        write(out, c_string(json)?, "out")
    })
}

/// Runs the theorem suite and writes the number of conclusion failures.
/// Returns `ConclusionFailed` when that number is nonzero.
///
/// # Safety
/// `map` must be a live handle, `suite` null or a NUL-terminated string, `failures` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fm_map_verify(map: *const FmMap, suite: *const c_char, failures: *mut u32) -> FmStatus {
    guard(|| {
        let m = deref(map, "map")?;
        let suite = if suite.is_null() { "all" } else { string(suite, "suite")? };
        let report = analyze(&m.table, m.provenance.clone(), &RunOptions::default(), suite)?;
        let failed: Vec<&str> = report.conclusion_failures().iter().map(|t| t.id).collect();
        if !failures.is_null() {
            failures.write(failed.len() as u32);
        }
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Fail(FmStatus::ConclusionFailed, format!("conclusion failed: {}", failed.join(", "))))
        }
    })
}
