//! C interface to `arbor`.
//!
//! Plumbings are opaque `ArborPlumbing` handles created by
//! [`arbor_plumbing_parse`] or [`arbor_plumbing_chain`] and released with
//! [`arbor_plumbing_free`]. Every fallible call returns an [`ArborStatus`];
//! on failure [`arbor_last_error`] describes what went wrong on the calling
//! thread. Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with [`arbor_string_free`].
//!
//! Matrices are written row-major into caller buffers of `i64`, rows and
//! columns in canonical order (see [`arbor_basis_label`]). Entries that do
//! not fit in `i64` give `ARBOR_STATUS_OVERFLOW`.
//!
//! All pointer arguments must be either null (reported as
//! `ARBOR_STATUS_NULL_POINTER`) or valid for the access described.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arbor::classify::{count_classes, surfaces_equivalent, ClassifyError};
use arbor::form::{
    alexander_polynomial, knot_determinant, knot_signature, seifert_matrix, AdmissibilityLevel, FormError,
    FramedPlumbing, Sign,
};
use arbor::format::{export_dot, parse, serialize, FormatError, TreeFile};
use arbor::pairing::{pairing_by_conjugation, pairing_closed_form};
use arbor::tree::{enumerate_matched_trees, MatchedTree};
use arbor::IntMatrix;
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArborStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Invalid = 3,
    Inadmissible = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Utf8 = 7,
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArborPairingMethod {
    Conjugation = 0,
    ClosedForm = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArborLevel {
    Basic = 0,
    Theorem = 1,
    Alternating = 2,
}

/// Opaque handle to a named framed plumbing.
pub struct ArborPlumbing {
    file: TreeFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: ArborStatus,
    message: String,
}

impl Failure {
    fn new(status: ArborStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let status = match e {
            FormatError::Parse(_) => ArborStatus::Parse,
            _ => ArborStatus::Invalid,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<FormError> for Failure {
    fn from(e: FormError) -> Self {
        Failure::new(ArborStatus::Invalid, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let status = match e {
            ClassifyError::InadmissibleFraming(_) => ArborStatus::Inadmissible,
            ClassifyError::TooManyEdges(_) => ArborStatus::OutOfRange,
            _ => ArborStatus::Invalid,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ArborStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ArborStatus::Ok
        }
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(&format!("internal error: {msg}"));
            ArborStatus::Panic
        }
    }
}

unsafe fn handle<'a>(p: *const ArborPlumbing) -> Result<&'a ArborPlumbing, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(ArborStatus::NullPointer, "null plumbing handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(ArborStatus::NullPointer, format!("null {what}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(ArborStatus::Utf8, "string contains a NUL byte"))
}

unsafe fn write_matrix(m: &IntMatrix, buf: *mut i64, len: usize) -> Result<(), Failure> {
    let n = m.dim();
    if len < n * n {
        return Err(Failure::new(
            ArborStatus::BufferTooSmall,
            format!("buffer holds {len} entries, need {}", n * n),
        ));
    }
    if buf.is_null() {
        return Err(Failure::new(ArborStatus::NullPointer, "null matrix buffer"));
    }
    let out = std::slice::from_raw_parts_mut(buf, n * n);
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = m
                .get(i, j)
                .to_i64()
                .ok_or_else(|| Failure::new(ArborStatus::Overflow, format!("entry ({i}, {j}) exceeds i64")))?;
        }
    }
    Ok(())
}

/// Parses a NUL-terminated tree file.
#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_parse(text: *const c_char, out: *mut *mut ArborPlumbing) -> ArborStatus {
    guard(|| {
        let out = out_ref(out, "output handle")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(Failure::new(ArborStatus::NullPointer, "null text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure::new(ArborStatus::Utf8, e.to_string()))?;
        let file = parse(text)?;
        *out = Box::into_raw(Box::new(ArborPlumbing { file }));
        Ok(())
    })
}

/// The chain tree with `n_pairs` matched pairs, framing `f(w_i) = 2i + 1`,
/// `f(b_i) = -2i`, and every edge `+1`.
#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_chain(n_pairs: usize, out: *mut *mut ArborPlumbing) -> ArborStatus {
    guard(|| {
        let out = out_ref(out, "output handle")?;
        *out = ptr::null_mut();
        let tree = MatchedTree::chain(n_pairs).map_err(FormError::from)?;
        let framing = arbor::cli::corollary_framing(&tree);
        let eps = vec![Sign::Plus; tree.edge_count()];
        let plumbing = FramedPlumbing::new(tree, framing, eps)?;
        let file = TreeFile {
            name: "chain".to_string(),
            plumbing,
        };
        *out = Box::into_raw(Box::new(ArborPlumbing { file }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_free(p: *mut ArborPlumbing) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn arbor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_vertex_count(p: *const ArborPlumbing, out: *mut usize) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        *out_ref(out, "output")? = p.file.plumbing.tree().vertex_count();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_edge_count(p: *const ArborPlumbing, out: *mut usize) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        *out_ref(out, "output")? = p.file.plumbing.tree().edge_count();
        Ok(())
    })
}

/// Replaces the edge signs: bit `e` of `index` set means edge `e` is `-1`.
#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_set_labeling(p: *mut ArborPlumbing, index: u64) -> ArborStatus {
    guard(|| {
        let p = p
            .as_mut()
            .ok_or_else(|| Failure::new(ArborStatus::NullPointer, "null plumbing handle"))?;
        let m = p.file.plumbing.tree().edge_count();
        if m < 64 && index >> m != 0 {
            return Err(Failure::new(
                ArborStatus::OutOfRange,
                format!("labeling {index} out of range for {m} edges"),
            ));
        }
        let signs = FramedPlumbing::plumbing_from_index(m, index);
        p.file.plumbing = p.file.plumbing.with_plumbing(signs)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_serialize(p: *const ArborPlumbing, out: *mut *mut c_char) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out_ref(out, "output string")?;
        *out = to_c_string(serialize(&p.file))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_plumbing_dot(p: *const ArborPlumbing, out: *mut *mut c_char) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out_ref(out, "output string")?;
        *out = to_c_string(export_dot(&p.file))?;
        Ok(())
    })
}

/// Label of the `index`-th basis vector in canonical order.
#[no_mangle]
pub unsafe extern "C" fn arbor_basis_label(
    p: *const ArborPlumbing,
    index: usize,
    out: *mut *mut c_char,
) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out_ref(out, "output string")?;
        let tree = p.file.plumbing.tree();
        let v = *tree
            .canonical_order()
            .get(index)
            .ok_or_else(|| Failure::new(ArborStatus::OutOfRange, format!("basis index {index} out of range")))?;
        *out = to_c_string(tree.label(v).to_string())?;
        Ok(())
    })
}

/// Seifert matrix into `buf`, which must hold `n * n` entries.
#[no_mangle]
pub unsafe extern "C" fn arbor_seifert_matrix(p: *const ArborPlumbing, buf: *mut i64, len: usize) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        write_matrix(&seifert_matrix(&p.file.plumbing), buf, len)
    })
}

/// Pairing on the homology of the complement into `buf` (`n * n` entries).
#[no_mangle]
pub unsafe extern "C" fn arbor_pairing_matrix(
    p: *const ArborPlumbing,
    method: ArborPairingMethod,
    buf: *mut i64,
    len: usize,
) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let m = match method {
            ArborPairingMethod::Conjugation => pairing_by_conjugation(&p.file.plumbing),
            ArborPairingMethod::ClosedForm => pairing_closed_form(&p.file.plumbing),
        };
        write_matrix(m.matrix(), buf, len)
    })
}

/// Alexander polynomial coefficients, degree 0 first. `*needed` is always
/// set to the number of coefficients; `buf` may be null when `len` is 0.
#[no_mangle]
pub unsafe extern "C" fn arbor_alexander_coefficients(
    p: *const ArborPlumbing,
    buf: *mut i64,
    len: usize,
    needed: *mut usize,
) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let needed = out_ref(needed, "needed")?;
        let poly = alexander_polynomial(&p.file.plumbing)?;
        let coeffs = poly.coeffs();
        *needed = coeffs.len();
        if len < coeffs.len() {
            return Err(Failure::new(
                ArborStatus::BufferTooSmall,
                format!("buffer holds {len} coefficients, need {}", coeffs.len()),
            ));
        }
        if buf.is_null() {
            return Err(Failure::new(ArborStatus::NullPointer, "null coefficient buffer"));
        }
        let out = std::slice::from_raw_parts_mut(buf, coeffs.len());
        for (slot, c) in out.iter_mut().zip(coeffs) {
            *slot = c
                .to_i64()
                .ok_or_else(|| Failure::new(ArborStatus::Overflow, "coefficient exceeds i64"))?;
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_knot_determinant(p: *const ArborPlumbing, out: *mut i64) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let out = out_ref(out, "output")?;
        *out = knot_determinant(&p.file.plumbing)
            .to_i64()
            .ok_or_else(|| Failure::new(ArborStatus::Overflow, "determinant exceeds i64"))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn arbor_knot_signature(p: *const ArborPlumbing, out: *mut i64) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        *out_ref(out, "output")? = knot_signature(&p.file.plumbing);
        Ok(())
    })
}

/// Sets `*passed` and `*violations` (may be null) for the given level.
#[no_mangle]
pub unsafe extern "C" fn arbor_check_admissible(
    p: *const ArborPlumbing,
    level: ArborLevel,
    passed: *mut bool,
    violations: *mut usize,
) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let passed = out_ref(passed, "output")?;
        let level = match level {
            ArborLevel::Basic => AdmissibilityLevel::Basic,
            ArborLevel::Theorem => AdmissibilityLevel::Theorem,
            ArborLevel::Alternating => AdmissibilityLevel::Alternating,
        };
        let report = p.file.plumbing.check_admissible(level);
        *passed = report.passed();
        if let Some(v) = violations.as_mut() {
            *v = report.violations.len();
        }
        Ok(())
    })
}

/// Decides whether two labelings of the same framed tree can give
/// equivalent surfaces. After a negative verdict the obstruction is
/// described by [`arbor_last_obstruction`].
#[no_mangle]
pub unsafe extern "C" fn arbor_surfaces_equivalent(
    a: *const ArborPlumbing,
    b: *const ArborPlumbing,
    equivalent: *mut bool,
) -> ArborStatus {
    guard(|| {
        let a = handle(a)?;
        let b = handle(b)?;
        let equivalent = out_ref(equivalent, "output")?;
        let report = surfaces_equivalent(&a.file.plumbing, &b.file.plumbing)?;
        *equivalent = report.is_equivalent();
        let text = match &report {
            arbor::EquivalenceReport::Equivalent(_) => None,
            arbor::EquivalenceReport::Inequivalent(o) => Some(o.describe(a.file.plumbing.tree())),
        };
        LAST_OBSTRUCTION.with(|slot| *slot.borrow_mut() = text.and_then(|t| CString::new(t).ok()));
        Ok(())
    })
}

thread_local! {
    static LAST_OBSTRUCTION: RefCell<Option<CString>> = const { RefCell::new(None) };
}

/// Obstruction from the most recent negative [`arbor_surfaces_equivalent`]
/// on this thread, or null. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn arbor_last_obstruction() -> *const c_char {
    LAST_OBSTRUCTION.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Number of equivalence classes among all labelings of `p`'s framed tree.
#[no_mangle]
pub unsafe extern "C" fn arbor_count_classes(p: *const ArborPlumbing, classes: *mut u64) -> ArborStatus {
    guard(|| {
        let p = handle(p)?;
        let classes = out_ref(classes, "output")?;
        let fp = &p.file.plumbing;
        *classes = count_classes(fp.tree(), fp.framing())?.classes as u64;
        Ok(())
    })
}

/// Number of matched trees with `n_pairs` pairs, up to isomorphism.
#[no_mangle]
pub unsafe extern "C" fn arbor_enumerate_count(n_pairs: usize, out: *mut usize) -> ArborStatus {
    guard(|| {
        let out = out_ref(out, "output")?;
        if n_pairs > 8 {
            return Err(Failure::new(ArborStatus::OutOfRange, "at most 8 pairs"));
        }
        *out = enumerate_matched_trees(n_pairs).map_err(FormError::from)?.len();
        Ok(())
    })
}

/// Message for the last failed call on this thread, or null after a
/// successful one. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn arbor_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
