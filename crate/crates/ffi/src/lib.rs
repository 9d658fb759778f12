//! C ABI over the `lyndon_pbw` engine.
//!
//! Every entry point returns an [`LpStatus`]. On failure a message is stored
//! per thread and can be read with [`lp_last_error`]. Strings handed out by
//! this library must be released with [`lp_string_free`], presentations with
//! [`lp_presentation_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::Parser;
use lyndon_pbw::cli::{self, Cli};
use lyndon_pbw::groebner::GroebnerBasis;
use lyndon_pbw::presentation::{parse_polynomial, parse_presentation, ParseError, Presentation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    AlgebraError = 5,
    Panic = 6,
}

/// A parsed and validated presentation.
pub struct LpPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: LpStatus, msg: impl Into<String>) -> LpStatus {
    set_error(msg);
    status
}

fn parse_status(e: &ParseError) -> LpStatus {
    match e {
        ParseError::Syntax { .. } => LpStatus::ParseError,
        ParseError::Validation { .. } => LpStatus::ValidationError,
    }
}

/// Runs `f`, converting panics into [`LpStatus::Panic`] and clearing the last error on success.
fn guard(f: impl FnOnce() -> Result<(), LpStatus>) -> LpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LpStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(LpStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LpStatus> {
    if p.is_null() {
        return Err(fail(LpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(LpStatus::InvalidUtf8, e.to_string()))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn lp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a presentation document.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_parse(text: *const c_char, out: *mut *mut LpPresentation) -> LpStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(LpStatus::NullPointer, "null output pointer"));
        }
        *out = ptr::null_mut();
        let text = read_str(text)?;
        let inner = parse_presentation(text).map_err(|e| fail(parse_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(LpPresentation { inner }));
        Ok(())
    })
}

/// Loads one of the bundled example presentations by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_from_corpus(name: *const c_char, out: *mut *mut LpPresentation) -> LpStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(LpStatus::NullPointer, "null output pointer"));
        }
        *out = ptr::null_mut();
        let name = read_str(name)?;
        let text = cli::corpus_entry(name)
            .ok_or_else(|| fail(LpStatus::ValidationError, format!("no corpus entry named `{name}`")))?;
        let inner = parse_presentation(text).map_err(|e| fail(parse_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(LpPresentation { inner }));
        Ok(())
    })
}

/// Releases a presentation. NULL is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_free(p: *mut LpPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of letters in the presentation's alphabet.
///
/// # Safety
/// `p` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_letter_count(p: *const LpPresentation, out: *mut usize) -> LpStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return Err(fail(LpStatus::NullPointer, "null argument"));
        }
        *out = (*p).inner.alphabet.size();
        Ok(())
    })
}

/// Canonical document text of the presentation.
///
/// # Safety
/// `p` and `out` must be valid pointers. Free the result with [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_to_string(p: *const LpPresentation, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return Err(fail(LpStatus::NullPointer, "null argument"));
        }
        *out = to_c_string((*p).inner.to_document());
        Ok(())
    })
}

/// Normal form of a polynomial expression modulo the presentation's relations,
/// using the Gröbner basis truncated at the presentation's max degree.
///
/// # Safety
/// `p`, `expr` and `out` must be valid pointers. Free the result with [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_normal_form(
    p: *const LpPresentation,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> LpStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return Err(fail(LpStatus::NullPointer, "null argument"));
        }
        *out = ptr::null_mut();
        let pres = &(*p).inner;
        let expr = read_str(expr)?;
        let f = parse_polynomial(expr, &pres.field, &pres.alphabet)
            .map_err(|e| fail(LpStatus::ParseError, e.to_string()))?;
        let gb = GroebnerBasis::complete(&pres.field, &pres.alphabet, &pres.relations, pres.max_degree)
            .map_err(|e| fail(LpStatus::AlgebraError, e.to_string()))?;
        let nf = gb.normal_form(&f).map_err(|e| fail(LpStatus::AlgebraError, e.to_string()))?;
        *out = to_c_string(nf.to_expr());
        Ok(())
    })
}

/// Runs a command-line invocation, e.g. `{"pbw", "quantum_plane", "--max-degree", "8"}`.
/// `exit_status` receives 0, 1 or 2 with the same meaning as the binary's exit status.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; `exit_status` and `output` must be valid.
/// Free `*output` with [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_run_command(
    argv: *const *const c_char,
    argc: usize,
    exit_status: *mut c_int,
    output: *mut *mut c_char,
) -> LpStatus {
    guard(|| {
        if exit_status.is_null() || output.is_null() || (argv.is_null() && argc > 0) {
            return Err(fail(LpStatus::NullPointer, "null argument"));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let outcome = cli::run_args(args);
        *exit_status = outcome.status;
        *output = to_c_string(outcome.output);
        Ok(())
    })
}

/// Runs a command on an already parsed presentation. `command` is the command name,
/// `flags` holds whitespace-separated options (may be NULL).
///
/// # Safety
/// `p`, `command`, `exit_status` and `output` must be valid pointers. Free `*output` with [`lp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lp_presentation_run(
    p: *const LpPresentation,
    command: *const c_char,
    flags: *const c_char,
    exit_status: *mut c_int,
    output: *mut *mut c_char,
) -> LpStatus {
    guard(|| {
        if p.is_null() || exit_status.is_null() || output.is_null() {
            return Err(fail(LpStatus::NullPointer, "null argument"));
        }
        let command = read_str(command)?;
        let flags = if flags.is_null() { "" } else { read_str(flags)? };
        let argv = ["lyndon-pbw", command, "-"].into_iter().chain(flags.split_whitespace());
        let outcome = match Cli::try_parse_from(argv) {
            Ok(parsed) => cli::run_on(&parsed, &(*p).inner),
            Err(e) => cli::Outcome {
                status: 2,
                output: e.render().to_string(),
            },
        };
        *exit_status = outcome.status;
        *output = to_c_string(outcome.output);
        Ok(())
    })
}
