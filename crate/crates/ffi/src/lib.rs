//! C ABI for `lexineq`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`LxStatus`]; results come back
//!   through out-pointers that are written only on success.
//! * Regions and solutions are opaque heap handles. Free them with
//!   [`lx_region_free`] and [`lx_solution_free`]. Strings returned by the
//!   library are freed with [`lx_string_free`].
//! * After a non-`OK` status, [`lx_last_error_message`] describes the error
//!   on the calling thread.
//! * Panics never cross the boundary; they surface as `LX_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lexineq::cli::{prepare, CliError};
use lexineq::lexorder::check_law;
use lexineq::oracle::{sample_raster, GridSpec};
use lexineq::solver::{solve_fractional, solve_linear, solve_linear_system, solve_quadratic};
use lexineq::{Complex, MembershipResult, Region, SolutionSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LxStatus {
    Ok = 0,
    NullPointer = -1,
    InvalidUtf8 = -2,
    Parse = -3,
    UnsupportedForm = -4,
    InvalidArgument = -5,
    Solve = -6,
    BufferTooSmall = -7,
    Panic = -99,
}

/// Pointwise membership. The values match the PGM levels of the CLI.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LxMembership {
    Out = 0,
    Pole = 1,
    In = 2,
}

impl From<MembershipResult> for LxMembership {
    fn from(m: MembershipResult) -> Self {
        match m {
            MembershipResult::Out => LxMembership::Out,
            MembershipResult::Pole => LxMembership::Pole,
            MembershipResult::In => LxMembership::In,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LxComplex {
    pub re: f64,
    pub im: f64,
}

impl From<LxComplex> for Complex {
    fn from(z: LxComplex) -> Self {
        Complex::new(z.re, z.im)
    }
}

/// Opaque region handle.
pub struct LxRegion(Region);

/// Opaque solution-set handle.
pub struct LxSolution(SolutionSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(LxStatus, String);

impl Failure {
    fn new(status: LxStatus, msg: impl Into<String>) -> Self {
        Failure(status, msg.into())
    }
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Parse(_) => LxStatus::Parse,
            CliError::Classify(_) => LxStatus::UnsupportedForm,
            CliError::Solve(_) => LxStatus::Solve,
            _ => LxStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure for [`lx_last_error_message`] and converts
/// panics into `LX_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LxStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LxStatus::Panic
        }
    }
}

fn finite(z: LxComplex, what: &str) -> Result<Complex, Failure> {
    let z = Complex::from(z);
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Failure::new(LxStatus::InvalidArgument, format!("{what} must be finite")))
    }
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::new(LxStatus::NullPointer, "null output pointer"))
}

unsafe fn in_ref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(LxStatus::NullPointer, "null handle"))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(LxStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::new(LxStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn string_out(s: String, out: &mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(LxStatus::InvalidArgument, "interior NUL"))?;
    *out = c.into_raw();
    Ok(())
}

fn solution_out(s: SolutionSet, out: &mut *mut LxSolution) {
    *out = Box::into_raw(Box::new(LxSolution(s)));
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lx_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Dictionary order: -1 if `a < b`, 0 if equal, 1 if `a > b`.
#[no_mangle]
pub extern "C" fn lx_lex_cmp(a: LxComplex, b: LxComplex) -> i32 {
    lexineq::lex_cmp(a.into(), b.into()) as i32
}

/// Modulus and principal argument in `(-pi, pi]`; zero maps to `(0, 0)`.
///
/// # Safety
/// `r` and `theta` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_polar(z: LxComplex, r: *mut f64, theta: *mut f64) -> LxStatus {
    guard(|| {
        let p = lexineq::polar_decompose(finite(z, "z")?);
        let (r, theta) = (out_ref(r)?, out_ref(theta)?);
        *r = p.r;
        *theta = p.theta;
        Ok(())
    })
}

/// Parses, classifies and solves an inequality such as `"1/Z >= 1"`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solution_from_expr(expr: *const c_char, out: *mut *mut LxSolution) -> LxStatus {
    guard(|| {
        let text = str_arg(expr)?;
        let out = out_ref(out)?;
        let (_, _, solution) = prepare(text)?;
        solution_out(solution, out);
        Ok(())
    })
}

/// Solves `A*Z - B >= 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solve_linear(a: LxComplex, b: LxComplex, out: *mut *mut LxSolution) -> LxStatus {
    guard(|| {
        let s = solve_linear(finite(a, "A")?, finite(b, "B")?);
        solution_out(s, out_ref(out)?);
        Ok(())
    })
}

/// Solves `A*Z - B >= 0 && C*Z - D >= 0`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solve_linear_system(
    a: LxComplex,
    b: LxComplex,
    c: LxComplex,
    d: LxComplex,
    out: *mut *mut LxSolution,
) -> LxStatus {
    guard(|| {
        let s = solve_linear_system(finite(a, "A")?, finite(b, "B")?, finite(c, "C")?, finite(d, "D")?);
        solution_out(s, out_ref(out)?);
        Ok(())
    })
}

/// Solves `(A*Z + B)/(Z + C) >= D`. A degenerate fraction (`B = A*C`)
/// yields everything or nothing, minus the pole.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solve_fractional(
    a: LxComplex,
    b: LxComplex,
    c: LxComplex,
    d: LxComplex,
    out: *mut *mut LxSolution,
) -> LxStatus {
    guard(|| {
        let s = solve_fractional(finite(a, "A")?, finite(b, "B")?, finite(c, "C")?, finite(d, "D")?);
        solution_out(s, out_ref(out)?);
        Ok(())
    })
}

/// Solves `A*Z^2 + B*Z + C >= 0`; `A` must be nonzero.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solve_quadratic(
    a: LxComplex,
    b: LxComplex,
    c: LxComplex,
    out: *mut *mut LxSolution,
) -> LxStatus {
    guard(|| {
        let s = solve_quadratic(finite(a, "A")?, finite(b, "B")?, finite(c, "C")?)
            .map_err(|e| Failure::new(LxStatus::Solve, e.to_string()))?;
        solution_out(s, out_ref(out)?);
        Ok(())
    })
}

/// # Safety
/// `solution` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solution_contains(
    solution: *const LxSolution,
    z: LxComplex,
    out: *mut LxMembership,
) -> LxStatus {
    guard(|| {
        let s = in_ref(solution)?;
        let z = finite(z, "z")?;
        *out_ref(out)? = s.0.contains(z).into();
        Ok(())
    })
}

/// Serializes the solution set as JSON. Free the string with
/// [`lx_string_free`].
///
/// # Safety
/// `solution` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_solution_to_json(solution: *const LxSolution, out: *mut *mut c_char) -> LxStatus {
    guard(|| {
        let s = in_ref(solution)?;
        let out = out_ref(out)?;
        let json = serde_json::to_string(&s.0).map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        string_out(json, out)
    })
}

/// # Safety
/// `solution` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lx_solution_free(solution: *mut LxSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates the half-plane `{Z : Z >= anchor}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_region_new(anchor: LxComplex, out: *mut *mut LxRegion) -> LxStatus {
    guard(|| {
        let r = Region::half_plane(finite(anchor, "anchor")?);
        *out_ref(out)? = Box::into_raw(Box::new(LxRegion(r)));
        Ok(())
    })
}

unsafe fn edit_region(
    region: *mut LxRegion,
    f: impl FnOnce(Region) -> Result<Region, lexineq::region::RegionError>,
) -> LxStatus {
    guard(|| {
        let r = out_ref(region)?;
        let next = f(r.0.clone()).map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        r.0 = next;
        Ok(())
    })
}

/// Appends a rotation by `theta` radians.
///
/// # Safety
/// `region` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lx_region_rotate(region: *mut LxRegion, theta: f64) -> LxStatus {
    edit_region(region, |r| r.rotate(theta))
}

/// Appends a dilation by `r > 0`.
///
/// # Safety
/// `region` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lx_region_scale(region: *mut LxRegion, r: f64) -> LxStatus {
    edit_region(region, |reg| reg.scale(r))
}

/// # Safety
/// `region` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lx_region_translate(region: *mut LxRegion, offset: LxComplex) -> LxStatus {
    edit_region(region, |r| r.translate(offset.into()))
}

/// # Safety
/// `region` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lx_region_invert(region: *mut LxRegion) -> LxStatus {
    edit_region(region, |r| Ok(r.invert()))
}

/// # Safety
/// `region` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lx_region_sqrt(region: *mut LxRegion) -> LxStatus {
    edit_region(region, |r| Ok(r.sqrt()))
}

/// # Safety
/// `region` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_region_contains(region: *const LxRegion, z: LxComplex, out: *mut LxMembership) -> LxStatus {
    guard(|| {
        let r = in_ref(region)?;
        let z = finite(z, "z")?;
        *out_ref(out)? = r.0.contains(z).into();
        Ok(())
    })
}

/// Shape description as JSON, e.g. `{"shape":"disc",...}`.
///
/// # Safety
/// `region` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_region_classify_json(region: *const LxRegion, out: *mut *mut c_char) -> LxStatus {
    guard(|| {
        let r = in_ref(region)?;
        let out = out_ref(out)?;
        let json = serde_json::to_string(&r.0.classify())
            .map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        string_out(json, out)
    })
}

/// # Safety
/// `region` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lx_region_free(region: *mut LxRegion) {
    if !region.is_null() {
        drop(Box::from_raw(region));
    }
}

/// Runs one order law (e.g. `"transitivity"`) and returns its report as
/// JSON. A counterexample is not an error; inspect the `outcome` field.
///
/// # Safety
/// `law_id` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lx_check_law(
    law_id: *const c_char,
    samples: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> LxStatus {
    guard(|| {
        let id = str_arg(law_id)?;
        let out = out_ref(out)?;
        let report = check_law(id, samples, seed).map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        let json = serde_json::to_string(&report).map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        string_out(json, out)
    })
}

/// Samples the solution of `expr` on an `nx` by `ny` grid and writes one
/// [`LxMembership`] value per cell into `cells`, row-major with the first
/// row at `im_max`.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `cells` must be valid for
/// `cells_len` writes.
#[no_mangle]
pub unsafe extern "C" fn lx_raster(
    expr: *const c_char,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    nx: usize,
    ny: usize,
    cells: *mut u8,
    cells_len: usize,
) -> LxStatus {
    guard(|| {
        let text = str_arg(expr)?;
        if cells.is_null() {
            return Err(Failure::new(LxStatus::NullPointer, "null cell buffer"));
        }
        let grid = GridSpec::new(re_min, re_max, im_min, im_max, nx, ny)
            .map_err(|e| Failure::new(LxStatus::InvalidArgument, e.to_string()))?;
        if cells_len < grid.len() {
            return Err(Failure::new(
                LxStatus::BufferTooSmall,
                format!("need {} cells, buffer holds {cells_len}", grid.len()),
            ));
        }
        let (_, _, solution) = prepare(text)?;
        let bitmap = sample_raster(&solution, &grid);
        let dst = std::slice::from_raw_parts_mut(cells, grid.len());
        for (d, m) in dst.iter_mut().zip(&bitmap.cells) {
            *d = LxMembership::from(*m) as u8;
        }
        Ok(())
    })
}
