//! C ABI for the qlich engine: opaque tensor handles, status codes, rendered
//! strings, and an argv-style runner that mirrors the CLI and returns its
//! report.
//!
//! Ownership rules: every `char*` returned by this library is heap-allocated
//! and must be released with `qlich_string_free`; tensor handles are released
//! with `qlich_tensor_free`. All functions are panic-safe: a panic inside the
//! engine is caught and reported as `QLICH_STATUS_INTERNAL`.

// raw-pointer arguments are null-checked before any dereference; the C
// surface stays non-unsafe per the usual shim convention
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use qlich::cli::run_from_args;
use qlich::nambu::NambuTensor;
use qlich::ope::OpeConvention;
use qlich::parse::{parse_entry, parse_state};
use qlich::poisson::jacobi_check;
use qlich::quantum::build_generator;
use qlich::render_state;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QlichStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text failed to parse; see the message output when available.
    ParseError = 3,
    /// Arguments were structurally invalid (dimension, order, indices).
    InvalidArgument = 4,
    /// The engine panicked; this indicates a bug.
    Internal = 5,
}

/// Opaque handle to an antisymmetric polynomial tensor (order 2 = Poisson).
pub struct QlichTensor {
    tensor: NambuTensor,
}

fn cstr_arg<'a>(ptr: *const c_char) -> Result<&'a str, QlichStatus> {
    if ptr.is_null() {
        return Err(QlichStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| QlichStatus::InvalidUtf8)
}

fn string_out(s: String, out: *mut *mut c_char) -> QlichStatus {
    if out.is_null() {
        return QlichStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            QlichStatus::Ok
        }
        Err(_) => QlichStatus::Internal,
    }
}

fn convention_arg(ptr: *const c_char) -> Result<OpeConvention, QlichStatus> {
    let text = cstr_arg(ptr)?;
    text.parse().map_err(|_| QlichStatus::InvalidArgument)
}

/// Allocate a tensor handle of the given dimension and order (arity).
/// Returns null when the parameters are out of range.
#[no_mangle]
pub extern "C" fn qlich_tensor_new(dimension: u8, order: u8) -> *mut QlichTensor {
    match NambuTensor::new(dimension, order) {
        Ok(tensor) => Box::into_raw(Box::new(QlichTensor { tensor })),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Set one component from an entry string `P[i,j,...] = <polynomial>`.
#[no_mangle]
pub extern "C" fn qlich_tensor_set_entry(
    tensor: *mut QlichTensor,
    entry: *const c_char,
) -> QlichStatus {
    let Some(handle) = (unsafe { tensor.as_mut() }) else {
        return QlichStatus::NullPointer;
    };
    let text = match cstr_arg(entry) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let parsed = match parse_entry(text, handle.tensor.dimension()) {
        Ok(p) => p,
        Err(_) => return QlichStatus::ParseError,
    };
    if parsed.indices.len() != handle.tensor.order() as usize {
        return QlichStatus::InvalidArgument;
    }
    match handle.tensor.set(&parsed.indices, parsed.value) {
        Ok(()) => QlichStatus::Ok,
        Err(_) => QlichStatus::InvalidArgument,
    }
}

/// Release a tensor handle. Null is ignored.
#[no_mangle]
pub extern "C" fn qlich_tensor_free(tensor: *mut QlichTensor) {
    if !tensor.is_null() {
        drop(unsafe { Box::from_raw(tensor) });
    }
}

#[no_mangle]
pub extern "C" fn qlich_tensor_dimension(tensor: *const QlichTensor) -> u8 {
    unsafe { tensor.as_ref() }.map_or(0, |t| t.tensor.dimension())
}

#[no_mangle]
pub extern "C" fn qlich_tensor_order(tensor: *const QlichTensor) -> u8 {
    unsafe { tensor.as_ref() }.map_or(0, |t| t.tensor.order())
}

/// Evaluate the Jacobi identity of an order-2 tensor; `out_pass` receives the
/// verdict.
#[no_mangle]
pub extern "C" fn qlich_check_jacobi(
    tensor: *const QlichTensor,
    out_pass: *mut bool,
) -> QlichStatus {
    let Some(handle) = (unsafe { tensor.as_ref() }) else {
        return QlichStatus::NullPointer;
    };
    if out_pass.is_null() {
        return QlichStatus::NullPointer;
    }
    let Ok(p) = handle.tensor.to_poisson() else {
        return QlichStatus::InvalidArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| jacobi_check(&p).0)) {
        Ok(pass) => {
            unsafe { *out_pass = pass };
            QlichStatus::Ok
        }
        Err(_) => QlichStatus::Internal,
    }
}

/// Render the integrated quantum Lichnerowicz density of an order-2 tensor
/// under the named convention ("section2" or "section4").
#[no_mangle]
pub extern "C" fn qlich_operator_density(
    tensor: *const QlichTensor,
    convention: *const c_char,
    out_density: *mut *mut c_char,
) -> QlichStatus {
    let Some(handle) = (unsafe { tensor.as_ref() }) else {
        return QlichStatus::NullPointer;
    };
    let conv = match convention_arg(convention) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let Ok(p) = handle.tensor.to_poisson() else {
        return QlichStatus::InvalidArgument;
    };
    match catch_unwind(AssertUnwindSafe(|| {
        render_state(build_generator(&p, conv).density())
    })) {
        Ok(text) => string_out(text, out_density),
        Err(_) => QlichStatus::Internal,
    }
}

/// Apply the ħ¹ page of the operator of an order-2 tensor to a state written
/// in the canonical term syntax; the rendered image is returned.
#[no_mangle]
pub extern "C" fn qlich_apply_hbar1(
    tensor: *const QlichTensor,
    convention: *const c_char,
    state: *const c_char,
    out_image: *mut *mut c_char,
) -> QlichStatus {
    let Some(handle) = (unsafe { tensor.as_ref() }) else {
        return QlichStatus::NullPointer;
    };
    let conv = match convention_arg(convention) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let text = match cstr_arg(state) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let Ok(p) = handle.tensor.to_poisson() else {
        return QlichStatus::InvalidArgument;
    };
    let parsed = match parse_state(text) {
        Ok(s) => s,
        Err(_) => return QlichStatus::ParseError,
    };
    if parsed.dimension() > handle.tensor.dimension() {
        return QlichStatus::InvalidArgument;
    }
    match catch_unwind(AssertUnwindSafe(|| {
        render_state(&build_generator(&p, conv).apply_hbar1(&parsed))
    })) {
        Ok(text) => string_out(text, out_image),
        Err(_) => QlichStatus::Internal,
    }
}

/// Run a full CLI-style invocation. `argv` holds `argc` UTF-8 arguments
/// (without the program name). The rendered report (text or JSON per the
/// `--format` flag) is returned through `out_report` and the process-style
/// exit code (0 pass, 1 check failure, 2 usage) through `out_exit`. Usage
/// failures return `QLICH_STATUS_PARSE_ERROR` with the message in
/// `out_report`.
#[no_mangle]
pub extern "C" fn qlich_run(
    argc: c_int,
    argv: *const *const c_char,
    out_report: *mut *mut c_char,
    out_exit: *mut c_int,
) -> QlichStatus {
    if out_report.is_null() || out_exit.is_null() || (argc > 0 && argv.is_null()) {
        return QlichStatus::NullPointer;
    }
    let mut args: Vec<String> = vec!["qlich".to_string()];
    for i in 0..argc {
        let ptr = unsafe { *argv.offset(i as isize) };
        match cstr_arg(ptr) {
            Ok(t) => args.push(t.to_string()),
            Err(s) => return s,
        }
    }
    match catch_unwind(AssertUnwindSafe(|| run_from_args(args))) {
        Ok(Ok(run)) => {
            unsafe { *out_exit = run.exit_code as c_int };
            string_out(run.rendered, out_report)
        }
        Ok(Err(failure)) => {
            unsafe { *out_exit = failure.exit_code as c_int };
            let status = string_out(failure.message, out_report);
            if status != QlichStatus::Ok {
                return status;
            }
            QlichStatus::ParseError
        }
        Err(_) => QlichStatus::Internal,
    }
}

/// Release a string allocated by this library. Null is ignored.
#[no_mangle]
pub extern "C" fn qlich_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Static library version string; do not free.
#[no_mangle]
pub extern "C" fn qlich_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
