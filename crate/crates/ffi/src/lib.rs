//! C ABI over `fpfun`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns an `FpfStatus`; on failure the message is
//! available from `fpf_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use fpfun::algebra::{Algebra, AlgebraFile};
use fpfun::cli::{Expr, Workspace};
use fpfun::error::Error;
use fpfun::fpfun::{defect, evaluate, w2, FpFunctor};
use fpfun::modcat::{ext1, hom_space, FdModule, ModuleFile};
use fpfun::verify::{run_suite, SuiteConfig};

/// Status codes returned by every fallible call.
#[repr(i32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpfStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Malformed text: not UTF-8, bad JSON, or a bad expression.
    Parse = 2,
    /// Well-formed input that fails validation.
    Invalid = 3,
    /// A name did not resolve.
    Unresolved = 4,
    /// The operation is not defined for these arguments.
    Undefined = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// An algebra together with the names resolvable over it.
pub struct FpfAlgebra {
    ws: Workspace,
    alg: Arc<Algebra>,
}

pub struct FpfModule(FdModule);

pub struct FpfFunctor(FpFunctor);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FpfStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => FpfStatus::Parse,
        Error::UnresolvedName(_) | Error::UnknownSuite(_) => FpfStatus::Unresolved,
        Error::TrStarUndefined(_) | Error::DefectNonzero(_) => FpfStatus::Undefined,
        _ => FpfStatus::Invalid,
    }
}

/// Runs `body`, turning errors and panics into a status and a last error.
fn guard(body: impl FnOnce() -> Result<(), (FpfStatus, String)>) -> FpfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => FpfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FpfStatus::Internal
        }
    }
}

fn lib<T>(r: fpfun::error::Result<T>) -> Result<T, (FpfStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (FpfStatus, String) {
    (FpfStatus::NullArgument, format!("{what} is null"))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (FpfStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (FpfStatus::Parse, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live handle of type `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (FpfStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or valid for a write.
unsafe fn put<T>(out: *mut T, value: T) -> Result<(), (FpfStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// The message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn fpf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// A builtin algebra: `k<p>x<n>` or `A<n>` over `F_p`.
///
/// # Safety
/// `name` is a NUL-terminated string and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_algebra_builtin(
    name: *const c_char,
    p: u64,
    out: *mut *mut FpfAlgebra,
) -> FpfStatus {
    guard(|| {
        let name = text(name, "name")?;
        let mut ws = Workspace::new(p);
        let alg = lib(ws.algebra(name))?;
        put(out, boxed(FpfAlgebra { ws, alg }))
    })
}

/// An algebra from the JSON algebra file format.
///
/// # Safety
/// `json` is a NUL-terminated string and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_algebra_from_json(
    json: *const c_char,
    out: *mut *mut FpfAlgebra,
) -> FpfStatus {
    guard(|| {
        let json = text(json, "json")?;
        let file: AlgebraFile = lib(serde_json::from_str(json).map_err(Error::from))?;
        let alg = lib(Algebra::from_file(&file))?;
        let ws = Workspace::new(alg.field().p());
        put(out, boxed(FpfAlgebra { ws, alg }))
    })
}

/// # Safety
/// `alg` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpf_algebra_free(alg: *mut FpfAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_algebra_dim(alg: *const FpfAlgebra, out: *mut usize) -> FpfStatus {
    guard(|| put(out, handle(alg, "alg")?.alg.dim()))
}

/// A module expression such as `S`, `Tr(S)` or `op(L)`.
///
/// # Safety
/// `alg` is a live handle, `expr` a NUL-terminated string, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_module_parse(
    alg: *const FpfAlgebra,
    expr: *const c_char,
    out: *mut *mut FpfModule,
) -> FpfStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let e = lib(Expr::parse(text(expr, "expr")?))?;
        let m = lib(a.ws.module(&a.alg, &e))?;
        put(out, boxed(FpfModule(m)))
    })
}

/// A module from the JSON module file format; its `algebra` field is ignored.
///
/// # Safety
/// `alg` is a live handle, `json` a NUL-terminated string, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_module_from_json(
    alg: *const FpfAlgebra,
    json: *const c_char,
    out: *mut *mut FpfModule,
) -> FpfStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let file: ModuleFile = lib(serde_json::from_str(text(json, "json")?).map_err(Error::from))?;
        let m = lib(file.to_module(&a.alg))?;
        put(out, boxed(FpfModule(m)))
    })
}

/// # Safety
/// `m` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpf_module_free(m: *mut FpfModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_module_dim(m: *const FpfModule, out: *mut usize) -> FpfStatus {
    guard(|| put(out, handle(m, "module")?.0.dim()))
}

/// # Safety
/// `x` and `y` are live handles and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_hom_dim(
    x: *const FpfModule,
    y: *const FpfModule,
    out: *mut usize,
) -> FpfStatus {
    guard(|| {
        let (x, y) = (handle(x, "x")?, handle(y, "y")?);
        put(out, lib(hom_space(&x.0, &y.0))?.dim())
    })
}

/// # Safety
/// `x` and `y` are live handles and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_ext1_dim(
    x: *const FpfModule,
    y: *const FpfModule,
    out: *mut usize,
) -> FpfStatus {
    guard(|| {
        let (x, y) = (handle(x, "x")?, handle(y, "y")?);
        put(out, lib(ext1(&x.0, &y.0))?.dim())
    })
}

/// A functor expression such as `rep(S)`, `ext(S)` or `w2(ext(S))`.
///
/// # Safety
/// `alg` is a live handle, `expr` a NUL-terminated string, `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_functor_parse(
    alg: *const FpfAlgebra,
    expr: *const c_char,
    out: *mut *mut FpfFunctor,
) -> FpfStatus {
    guard(|| {
        let a = handle(alg, "alg")?;
        let e = lib(Expr::parse(text(expr, "expr")?))?;
        let f = lib(a.ws.functor(&a.alg, &e))?;
        put(out, boxed(FpfFunctor(f)))
    })
}

/// # Safety
/// `f` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpf_functor_free(f: *mut FpfFunctor) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// 0 for covariant functors, 1 for contravariant ones.
///
/// # Safety
/// `f` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_functor_variance(f: *const FpfFunctor, out: *mut i32) -> FpfStatus {
    guard(|| {
        let v = match handle(f, "functor")?.0.variance() {
            fpfun::fpfun::Variance::Covariant => 0,
            fpfun::fpfun::Variance::Contravariant => 1,
        };
        put(out, v)
    })
}

/// `dim F(X)`.
///
/// # Safety
/// `f` and `x` are live handles and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_evaluate_dim(
    f: *const FpfFunctor,
    x: *const FpfModule,
    out: *mut usize,
) -> FpfStatus {
    guard(|| {
        let (f, x) = (handle(f, "functor")?, handle(x, "module")?);
        put(out, lib(evaluate(&f.0, &x.0))?.dimension)
    })
}

/// The defect `w(F)` as a new module.
///
/// # Safety
/// `f` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_defect(f: *const FpfFunctor, out: *mut *mut FpfModule) -> FpfStatus {
    guard(|| put(out, boxed(FpfModule(defect(&handle(f, "functor")?.0)))))
}

/// `W2(F)` as a new functor.
///
/// # Safety
/// `f` is a live handle and `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fpf_w2(f: *const FpfFunctor, out: *mut *mut FpfFunctor) -> FpfStatus {
    guard(|| put(out, boxed(FpfFunctor(w2(&handle(f, "functor")?.0)))))
}

/// Runs one suite over `alg` with default settings.
///
/// Writes the JSON report to `*report` (release with `fpf_string_free`)
/// and the number of failed checks to `*failed`.
///
/// # Safety
/// `suite` is a NUL-terminated string, `alg` a live handle, and `report`
/// and `failed` are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fpf_verify(
    suite: *const c_char,
    alg: *const FpfAlgebra,
    report: *mut *mut c_char,
    failed: *mut usize,
) -> FpfStatus {
    guard(|| {
        let name = text(suite, "suite")?;
        let a = handle(alg, "alg")?;
        if report.is_null() || failed.is_null() {
            return Err(null("out"));
        }
        let r = lib(run_suite(name, &SuiteConfig::new(vec![a.alg.clone()])))?;
        let json = lib(serde_json::to_string(&r).map_err(Error::from))?;
        let c = CString::new(json).map_err(|e| (FpfStatus::Internal, e.to_string()))?;
        put(failed, r.count(fpfun::verify::Status::Fail))?;
        put(report, c.into_raw())
    })
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fpf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
