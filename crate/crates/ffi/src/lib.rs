//! C interface to `algen`.
//!
//! Every fallible call returns an [`AlgenStatus`]; on failure the message is
//! available from [`algen_last_error`] on the same thread. Strings handed out
//! by the library are freed with [`algen_string_free`], handles with their
//! matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use algen::config::Limits;
use algen::density::{den_matrix, den_zn, zeta_value, DensityValue};
use algen::ffalg::{make_field, FieldCtx, FqMat};
use algen::genff::{count_gen_power_formula, gen_count, generates, AlgebraShape, Block, GenTuple};
use algen::genz::{generates_z, ZMat};
use algen::polys::{f_poly, h_poly, min_generators, phi_poly, psi_poly};
use algen::{json, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    NonPrime = 10,
    BadDegree = 11,
    DivisionByZero = 12,
    DimensionMismatch = 13,
    BadParams = 14,
    TooLarge = 15,
    ShapeMismatch = 16,
    UnsupportedSize = 17,
    FactorizationIncomplete = 18,
    CertificationFailed = 19,
    DivisionInexact = 20,
    NotDivisible = 21,
    DivergentTail = 22,
    InvalidJson = 23,
    UnknownCommand = 24,
}

impl From<&Error> for AlgenStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonPrime(_) => AlgenStatus::NonPrime,
            Error::BadDegree(_) => AlgenStatus::BadDegree,
            Error::DivisionByZero => AlgenStatus::DivisionByZero,
            Error::DimensionMismatch { .. } => AlgenStatus::DimensionMismatch,
            Error::BadParams(_) => AlgenStatus::BadParams,
            Error::TooLarge { .. } => AlgenStatus::TooLarge,
            Error::ShapeMismatch(_) => AlgenStatus::ShapeMismatch,
            Error::UnsupportedSize(_) => AlgenStatus::UnsupportedSize,
            Error::FactorizationIncomplete(_) => AlgenStatus::FactorizationIncomplete,
            Error::CertificationFailed(_) => AlgenStatus::CertificationFailed,
            Error::DivisionInexact(_) => AlgenStatus::DivisionInexact,
            Error::NotDivisible { .. } => AlgenStatus::NotDivisible,
            Error::DivergentTail(_) => AlgenStatus::DivergentTail,
            Error::InvalidJson(_) => AlgenStatus::InvalidJson,
            Error::UnknownCommand(_) => AlgenStatus::UnknownCommand,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgenPolyFamily {
    F = 0,
    H = 1,
    Phi = 2,
    Psi = 3,
}

/// A certified real value: the truth lies within `error_bound` of `value`.
/// `prime_bound` is the truncation point of an Euler product, 0 if none.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct AlgenDensity {
    pub value: f64,
    pub error_bound: f64,
    pub prime_bound: u64,
}

impl From<DensityValue> for AlgenDensity {
    fn from(d: DensityValue) -> Self {
        AlgenDensity { value: d.value, error_bound: d.error_bound, prime_bound: d.prime_bound.unwrap_or(0) }
    }
}

/// A finite field `F_q`.
pub struct AlgenField(FieldCtx);

/// A tuple of integer matrices.
pub struct AlgenZTuple(GenTuple<ZMat>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Status(AlgenStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

type FfiResult = Result<(), Fail>;

fn guard(f: impl FnOnce() -> FfiResult) -> AlgenStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return AlgenStatus::Ok,
        Ok(Err(Fail::Core(e))) => (AlgenStatus::from(&e), e.to_string()),
        Ok(Err(Fail::Status(s, m))) => (s, m),
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (AlgenStatus::Panic, m)
        }
    };
    set_last_error(&msg);
    status
}

fn null(what: &str) -> Fail {
    Fail::Status(AlgenStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(AlgenStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message of the last failure on this thread. Valid until the next failing
/// call on the same thread; never null.
#[no_mangle]
pub extern "C" fn algen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn algen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out_field` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_field_new(p: u64, s: u32, out_field: *mut *mut AlgenField) -> AlgenStatus {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        *slot = Box::into_raw(Box::new(AlgenField(make_field(p, s)?)));
        Ok(())
    })
}

/// # Safety
/// `field` must come from `algen_field_new`, or be null.
#[no_mangle]
pub unsafe extern "C" fn algen_field_free(field: *mut AlgenField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order `q`, or 0 for a null handle.
///
/// # Safety
/// `field` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn algen_field_order(field: *const AlgenField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.q())
}

/// Whether a tuple of square matrices over `field` generates `M_n(F_q)`.
/// `tuple_json` is `{"k", "elements"}` or a bare array of matrices.
///
/// # Safety
/// Pointers must be valid; `tuple_json` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn algen_field_generates(
    field: *const AlgenField,
    tuple_json: *const c_char,
    out_generates: *mut bool,
) -> AlgenStatus {
    guard(|| {
        let f = &field.as_ref().ok_or_else(|| null("field"))?.0;
        let v = json::parse(str_arg(tuple_json, "tuple_json")?)?;
        let t: GenTuple<FqMat> = json::tuple_from_json(&v, |m| json::fqmat_from_json(f, m))?;
        let n = t.elements.first().and_then(|e| e.first()).map(FqMat::n).ok_or_else(|| {
            Fail::Status(AlgenStatus::BadParams, "the tuple needs at least one matrix".into())
        })?;
        let shape = AlgebraShape::matrix_algebra(f, n)?;
        *out(out_generates, "out_generates")? = generates(&shape, &t)?;
        Ok(())
    })
}

/// # Safety
/// `tuple_json` must be nul-terminated and `out_tuple` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_ztuple_from_json(tuple_json: *const c_char, out_tuple: *mut *mut AlgenZTuple) -> AlgenStatus {
    guard(|| {
        let v = json::parse(str_arg(tuple_json, "tuple_json")?)?;
        let t = json::tuple_from_json(&v, json::zmat_from_json)?;
        *out(out_tuple, "out_tuple")? = Box::into_raw(Box::new(AlgenZTuple(t)));
        Ok(())
    })
}

/// # Safety
/// `tuple` must come from `algen_ztuple_from_json`, or be null.
#[no_mangle]
pub unsafe extern "C" fn algen_ztuple_free(tuple: *mut AlgenZTuple) {
    if !tuple.is_null() {
        drop(Box::from_raw(tuple));
    }
}

/// Generation of `M_n(Z)` by a single-factor tuple of `n x n` integer
/// matrices. `out_index` receives the index as a decimal string (0 when the
/// generated ring has lower rank); pass null to skip it.
///
/// # Safety
/// `tuple` must be live; out pointers valid or, for `out_index`, null.
#[no_mangle]
pub unsafe extern "C" fn algen_ztuple_generates(
    tuple: *const AlgenZTuple,
    out_generates: *mut bool,
    out_index: *mut *mut c_char,
) -> AlgenStatus {
    guard(|| {
        let t = &tuple.as_ref().ok_or_else(|| null("tuple"))?.0;
        let n = t.elements.first().and_then(|e| e.first()).map(ZMat::n).ok_or_else(|| {
            Fail::Status(AlgenStatus::BadParams, "the tuple needs at least one matrix".into())
        })?;
        let shape = AlgebraShape::over_z(vec![Block::matrices(n, 1)])?;
        let r = generates_z(&shape, t)?;
        *out(out_generates, "out_generates")? = r.generates;
        if let Some(slot) = out_index.as_mut() {
            *slot = owned(r.index.to_string());
        }
        Ok(())
    })
}

/// Number of conjugacy classes of generating `k`-tuples of `M_n(F_q)`, as a
/// decimal string.
///
/// # Safety
/// `out_count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_gen_count(k: u32, n: u32, q: u64, out_count: *mut *mut c_char) -> AlgenStatus {
    guard(|| {
        let g = gen_count(k, n, q)?;
        *out(out_count, "out_count")? = owned(g.to_string());
        Ok(())
    })
}

/// Number of `k`-tuples generating `M_n(F_{q^s})^m`, as a decimal string.
///
/// # Safety
/// `out_count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_count_power(
    k: u32,
    n: u32,
    q: u64,
    s: u32,
    m: u32,
    out_count: *mut *mut c_char,
) -> AlgenStatus {
    guard(|| {
        let g = count_gen_power_formula(k, n, q, s, m, &Limits::default())?;
        *out(out_count, "out_count")? = owned(g.to_string());
        Ok(())
    })
}

/// # Safety
/// `out_density` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_zeta(s: u32, eps: f64, out_density: *mut AlgenDensity) -> AlgenStatus {
    guard(|| {
        *out(out_density, "out_density")? = zeta_value(s, eps)?.into();
        Ok(())
    })
}

/// Density of `k`-tuples in `Z^n` spanning it.
///
/// # Safety
/// `out_density` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_density_zn(k: u32, n: u32, out_density: *mut AlgenDensity) -> AlgenStatus {
    guard(|| {
        *out(out_density, "out_density")? = den_zn(k, n)?.into();
        Ok(())
    })
}

/// Density of `k`-tuples generating `M_n(Z)`, with Euler products cut at
/// `prime_bound`.
///
/// # Safety
/// `out_density` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_density_matrix(
    n: u32,
    k: u32,
    prime_bound: u64,
    out_density: *mut AlgenDensity,
) -> AlgenStatus {
    guard(|| {
        *out(out_density, "out_density")? = den_matrix(n, k, prime_bound)?.into();
        Ok(())
    })
}

/// Coefficients of a polynomial family member as a JSON array, low degree
/// first.
///
/// # Safety
/// `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_poly_json(family: AlgenPolyFamily, k: u32, out_json: *mut *mut c_char) -> AlgenStatus {
    guard(|| {
        let f = match family {
            AlgenPolyFamily::F => f_poly(k)?,
            AlgenPolyFamily::H => h_poly(k)?,
            AlgenPolyFamily::Phi => phi_poly(k)?,
            AlgenPolyFamily::Psi => psi_poly(k)?,
        };
        *out(out_json, "out_json")? = owned(json::intpoly_to_json(&f).to_string());
        Ok(())
    })
}

/// Least number of generators of `M_n(Z)^m`, `n` in {2, 3}.
///
/// # Safety
/// `out_r` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_min_generators(n: u32, m: u64, out_r: *mut u32) -> AlgenStatus {
    guard(|| {
        *out(out_r, "out_r")? = min_generators(n, m)?.r;
        Ok(())
    })
}

/// Runs the command-line front end on `argv` (without the program name) and
/// returns its exit code; the JSON document goes to `out_json`. Returns -1
/// with `out_json` untouched if the arguments cannot be read.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `out_json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn algen_run(argc: c_int, argv: *const *const c_char, out_json: *mut *mut c_char) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        let slot = out(out_json, "out_json")?;
        let mut args = vec!["algen".to_string()];
        if argc > 0 {
            if argv.is_null() {
                return Err(null("argv"));
            }
            for i in 0..argc as usize {
                args.push(str_arg(*argv.add(i), "argv entry")?.to_string());
            }
        }
        let (c, doc) = algen::cli::dispatch(args);
        *slot = owned(doc);
        code = c;
        Ok(())
    });
    if status == AlgenStatus::Ok {
        code
    } else {
        -1
    }
}
