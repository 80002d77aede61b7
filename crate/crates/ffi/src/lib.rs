//! C ABI for fmtlab.
//!
//! Structures and formulas are opaque heap handles released with their
//! `_free` function. Every fallible call returns an [`FmtStatus`]; on failure
//! [`fmt_last_error`] describes the problem. Strings handed out by the
//! library are released with [`fmt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fmtlab::families::{generate, Family, FamilyError};
use fmtlab::hom::{chromatic_number_with_budget, count_homs, find_hom, SolverError, DEFAULT_BUDGET};
use fmtlab::lab::{run_suite, LabError, SuiteOptions};
use fmtlab::logic::{builtin, evaluate, parse, Formula, LogicError, Valuation};
use fmtlab::minor::{has_minor_with_budget, MinorError, Pattern, DEFAULT_MINOR_BUDGET};
use fmtlab::structure::{parse_structure, write_structure, StructureError};
use fmtlab::{Constraints, Structure};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FmtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    BudgetExceeded = 5,
    UnknownName = 6,
    VocabularyMismatch = 7,
    Panic = 8,
}

/// Require an injective map.
pub const FMT_HOM_INJECTIVE: u32 = 1;
/// Require a strong map.
pub const FMT_HOM_STRONG: u32 = 2;
/// Require a full map.
pub const FMT_HOM_FULL: u32 = 4;

/// Opaque finite structure.
pub struct FmtStructure(Structure);

/// Opaque first-order formula.
pub struct FmtFormula(Formula);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FmtStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(FmtStatus::NullPointer, format!("{what} is null"))
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        let status = match e {
            StructureError::Syntax { .. } => FmtStatus::ParseError,
            StructureError::VocabularyMismatch => FmtStatus::VocabularyMismatch,
            _ => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        let status = match e {
            LogicError::Syntax { .. } => FmtStatus::ParseError,
            _ => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let status = match e {
            SolverError::BudgetExceeded(_) => FmtStatus::BudgetExceeded,
            SolverError::VocabularyMismatch => FmtStatus::VocabularyMismatch,
            _ => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<MinorError> for Failure {
    fn from(e: MinorError) -> Self {
        let status = match e {
            MinorError::BudgetExceeded(_) => FmtStatus::BudgetExceeded,
            MinorError::UnknownPattern(_) => FmtStatus::UnknownName,
            _ => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        let status = match e {
            FamilyError::Parse(_) => FmtStatus::ParseError,
            FamilyError::OutOfRange(_) => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        let status = match e {
            LabError::UnknownSuite(_) => FmtStatus::UnknownName,
            _ => FmtStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, recording any failure or panic as the last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FmtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FmtStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FmtStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(FmtStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

/// Output slot, checked before any work is done.
unsafe fn slot<'a, T>(out: *mut T) -> Result<&'a mut T, Failure> {
    out.as_mut().ok_or_else(|| Failure::null("output pointer"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn budget_or_default(budget: u64, default: u64) -> u64 {
    if budget == 0 {
        default
    } else {
        budget
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fmt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fmt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fmt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a structure from its text format.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_structure_parse(src: *const c_char, out: *mut *mut FmtStructure) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        let s = parse_structure(text(src, "src")?)?;
        *out = Box::into_raw(Box::new(FmtStructure(s)));
        Ok(())
    })
}

/// Generates a family member from `family:params`, e.g. `wheel:9`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_structure_generate(family: *const c_char, out: *mut *mut FmtStructure) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        let fam: Family = text(family, "family")?.parse()?;
        *out = Box::into_raw(Box::new(FmtStructure(generate(&fam)?)));
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_structure_size(s: *const FmtStructure, out: *mut usize) -> FmtStatus {
    guard(|| {
        *slot(out)? = handle(s, "structure")?.0.size();
        Ok(())
    })
}

/// Text format of the structure; free with [`fmt_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_structure_to_string(s: *const FmtStructure, out: *mut *mut c_char) -> FmtStatus {
    guard(|| {
        *slot(out)? = into_c_string(write_structure(&handle(s, "structure")?.0));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fmt_structure_free(s: *mut FmtStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Parses a formula; built-in names such as `phi_bouquet` resolve first.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_formula_parse(src: *const c_char, out: *mut *mut FmtFormula) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        let t = text(src, "src")?;
        let f = match builtin(t.trim()) {
            Some(f) => f,
            None => parse(t)?,
        };
        *out = Box::into_raw(Box::new(FmtFormula(f)));
        Ok(())
    })
}

/// S-expression form; free with [`fmt_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_formula_to_string(f: *const FmtFormula, out: *mut *mut c_char) -> FmtStatus {
    guard(|| {
        *slot(out)? = into_c_string(handle(f, "formula")?.0.to_string());
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fmt_formula_free(f: *mut FmtFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluates a sentence on a structure.
///
/// # Safety
/// `f` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_evaluate(f: *const FmtFormula, s: *const FmtStructure, out: *mut bool) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        *out = evaluate(&handle(f, "formula")?.0, &handle(s, "structure")?.0, &Valuation::new())?;
        Ok(())
    })
}

fn constraints(flags: u32, budget: u64) -> Constraints {
    Constraints {
        injective: flags & FMT_HOM_INJECTIVE != 0,
        strong: flags & FMT_HOM_STRONG != 0,
        full: flags & FMT_HOM_FULL != 0,
        ..Constraints::none()
    }
    .with_budget(budget_or_default(budget, DEFAULT_BUDGET))
}

/// Whether a homomorphism `a → b` exists. `flags` combines the
/// `FMT_HOM_*` bits; a zero `budget` means the default.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_hom_exists(
    a: *const FmtStructure,
    b: *const FmtStructure,
    flags: u32,
    budget: u64,
    out: *mut bool,
) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        let h = find_hom(&handle(a, "source")?.0, &handle(b, "target")?.0, &constraints(flags, budget))?;
        *out = h.is_some();
        Ok(())
    })
}

/// Number of homomorphisms `a → b` satisfying `flags`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_hom_count(
    a: *const FmtStructure,
    b: *const FmtStructure,
    flags: u32,
    budget: u64,
    out: *mut u64,
) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        *out = count_homs(&handle(a, "source")?.0, &handle(b, "target")?.0, &constraints(flags, budget))?;
        Ok(())
    })
}

/// Chromatic number of a graph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_chromatic_number(g: *const FmtStructure, budget: u64, out: *mut usize) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        *out = chromatic_number_with_budget(&handle(g, "graph")?.0, budget_or_default(budget, DEFAULT_BUDGET))?;
        Ok(())
    })
}

/// Minor containment for a named pattern: `k4`, `k5`, `k33` or `k23`.
///
/// # Safety
/// `g` must be a live handle, `pattern` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_has_minor(
    g: *const FmtStructure,
    pattern: *const c_char,
    budget: u64,
    out: *mut bool,
) -> FmtStatus {
    guard(|| {
        let out = slot(out)?;
        let p: Pattern = text(pattern, "pattern")?.parse()?;
        let budget = budget_or_default(budget, DEFAULT_MINOR_BUDGET);
        *out = has_minor_with_budget(&handle(g, "graph")?.0, &p.graph(), budget)?;
        Ok(())
    })
}

/// Runs a verification suite. `jobs == 0` uses the default thread pool.
/// `report` receives the plain-text report; free it with
/// [`fmt_string_free`].
///
/// # Safety
/// `name` must be a NUL-terminated string; `passed` and `report` writable.
#[no_mangle]
pub unsafe extern "C" fn fmt_run_suite(
    name: *const c_char,
    jobs: usize,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> FmtStatus {
    guard(|| {
        let (passed, report) = (slot(passed)?, slot(report)?);
        let opts = SuiteOptions { size: None, jobs: (jobs > 0).then_some(jobs) };
        let r = run_suite(text(name, "name")?, &opts)?;
        *passed = r.passed();
        *report = into_c_string(r.to_string());
        Ok(())
    })
}
