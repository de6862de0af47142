//! C interface to the checker.
//!
//! Documents are opaque handles. Every function returns a [`CatqmStatus`];
//! on failure the message is available from [`catqm_last_error_message`]
//! on the same thread. Strings handed out must be released with
//! [`catqm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use catqm::cli::{
    compare_documents, document_dot, evaluate_document, normalize_document, print_term, run_suite, TermDocument,
};
use catqm::matrix::ModelKind;
use catqm::Error;

/// Result codes. Values 1 through 5 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatqmStatus {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Type = 3,
    Model = 4,
    Unequal = 5,
    NullArgument = 6,
    InvalidUtf8 = 7,
    Panic = 8,
}

/// A parsed term document.
pub struct CatqmDocument {
    doc: TermDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> CatqmStatus {
    match e.exit_code() {
        2 => CatqmStatus::Parse,
        3 => CatqmStatus::Type,
        4 => CatqmStatus::Model,
        5 => CatqmStatus::Unequal,
        _ => CatqmStatus::Usage,
    }
}

struct Failure(CatqmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CatqmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            CatqmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CatqmStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(CatqmStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(CatqmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn document<'a>(p: *const CatqmDocument, what: &str) -> Result<&'a TermDocument, Failure> {
    p.as_ref().map(|d| &d.doc).ok_or_else(|| Failure(CatqmStatus::NullArgument, format!("{what} is null")))
}

unsafe fn model(p: *const c_char) -> Result<ModelKind, Failure> {
    if p.is_null() {
        return Ok(ModelKind::FdHilbExact);
    }
    text(p, "model")?.parse().map_err(|e: catqm::matrix::MatrixError| Failure(CatqmStatus::Model, e.to_string()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(CatqmStatus::NullArgument, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|_| Failure(CatqmStatus::Usage, "output contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parse a document from NUL-terminated UTF-8 source.
///
/// # Safety
/// `source` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_parse(source: *const c_char, out: *mut *mut CatqmDocument) -> CatqmStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(CatqmStatus::NullArgument, "output pointer is null".into()));
        }
        let doc = TermDocument::parse(text(source, "source")?).map_err(Error::from)?;
        *out = Box::into_raw(Box::new(CatqmDocument { doc }));
        Ok(())
    })
}

/// Release a document. Null is ignored.
///
/// # Safety
/// `doc` must come from [`catqm_document_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_free(doc: *mut CatqmDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Typecheck the entry term; `out` receives the judgment `A → B`.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_check(doc: *const CatqmDocument, out: *mut *mut c_char) -> CatqmStatus {
    guard(|| {
        let j = document(doc, "document")?.check()?;
        put_string(out, j.to_string())
    })
}

/// Evaluate the entry term; `out` receives the matrix as JSON. A null
/// `model_name` means `fdhilb-exact`.
///
/// # Safety
/// `doc` must be a live handle, `model_name` null or a C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_eval_json(
    doc: *const CatqmDocument,
    model_name: *const c_char,
    out: *mut *mut c_char,
) -> CatqmStatus {
    guard(|| {
        let json = evaluate_document(document(doc, "document")?, model(model_name)?)?;
        put_string(out, json)
    })
}

/// Normal form of the entry term, printed as an s-expression.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_normalize(doc: *const CatqmDocument, out: *mut *mut c_char) -> CatqmStatus {
    guard(|| {
        let (nf, _) = normalize_document(document(doc, "document")?)?;
        put_string(out, print_term(&nf))
    })
}

/// Graphviz rendering of the entry term.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catqm_document_export_dot(doc: *const CatqmDocument, out: *mut *mut c_char) -> CatqmStatus {
    guard(|| put_string(out, document_dot(document(doc, "document")?)?))
}

/// Compare the entry terms of two documents. `equal` receives the verdict
/// and `report`, if not null, the JSON report. Unequal terms still return
/// `Ok`.
///
/// # Safety
/// Both handles must be live; `model_name` null or a C string; `equal` valid;
/// `report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn catqm_terms_equal(
    a: *const CatqmDocument,
    b: *const CatqmDocument,
    model_name: *const c_char,
    equal: *mut bool,
    report: *mut *mut c_char,
) -> CatqmStatus {
    guard(|| {
        if equal.is_null() {
            return Err(Failure(CatqmStatus::NullArgument, "equal is null".into()));
        }
        let (eq, json) =
            compare_documents(document(a, "first document")?, document(b, "second document")?, model(model_name)?)?;
        *equal = eq;
        if !report.is_null() {
            put_string(report, json)?;
        }
        Ok(())
    })
}

/// Run a verification suite without timing; `out` receives one JSON
/// report per line. Returns `Unequal` if any case fails, with the reports
/// still written.
///
/// # Safety
/// `suite` must be a C string, `model_name` null or a C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn catqm_verify(
    suite: *const c_char,
    model_name: *const c_char,
    out: *mut *mut c_char,
) -> CatqmStatus {
    guard(|| {
        let reports = run_suite(text(suite, "suite")?, model(model_name)?, None, false)?;
        let lines: String = reports.iter().map(|r| format!("{}\n", r.to_json())).collect();
        put_string(out, lines)?;
        match reports.iter().filter(|r| !r.equal).count() {
            0 => Ok(()),
            n => Err(Error::Unequal(n).into()),
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn catqm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn catqm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
