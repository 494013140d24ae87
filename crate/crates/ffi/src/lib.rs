//! C ABI over `tomo-core`.
//!
//! Every fallible call returns a [`TomoStatus`]; on failure the message is
//! available from [`tomo_last_error_message`] on the same thread. Handles are
//! opaque and must be released with their `_free` function. Panics never
//! cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tomo_core::biphoton::{closed_form_profile, BiphotonParams, CombState, TimeWindow};
use tomo_core::talbot::{
    cglmp_id, coeff_matrix, subsystem_density, svne, tei_discrete_basis, tei_position, CoeffMatrix, TalbotParams,
    TeiPath,
};
use tomo_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TomoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    NumericalFailure = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TomoCombState {
    Alpha = 0,
    Beta = 1,
}

impl From<TomoCombState> for CombState {
    fn from(s: TomoCombState) -> Self {
        match s {
            TomoCombState::Alpha => CombState::Alpha,
            TomoCombState::Beta => CombState::Beta,
        }
    }
}

/// Entangled Talbot state for one `(D, R)`.
pub struct TomoTalbot {
    params: TalbotParams,
    coeff: CoeffMatrix,
}

/// Biphoton comb parameters and time window.
pub struct TomoBiphoton {
    params: BiphotonParams,
    window: TimeWindow,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> TomoStatus {
    if err.is_numerical() {
        TomoStatus::NumericalFailure
    } else {
        TomoStatus::InvalidParameter
    }
}

fn guard(f: impl FnOnce() -> Result<(), (TomoStatus, String)>) -> TomoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TomoStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TomoStatus::Panic
        }
    }
}

fn lift<T>(r: tomo_core::Result<T>) -> Result<T, (TomoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(name: &str) -> (TomoStatus, String) {
    (TomoStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn write_out<T>(out: *mut T, value: T, name: &str) -> Result<(), (TomoStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    // SAFETY: non-null, caller guarantees it points to writable storage.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, (TomoStatus, String)> {
    // SAFETY: caller passes a handle obtained from the matching `_new`.
    unsafe { h.as_ref() }.ok_or_else(|| null("handle"))
}

unsafe fn fill(buf: *mut f64, len: usize, values: &[f64]) -> Result<(), (TomoStatus, String)> {
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < values.len() {
        return Err((
            TomoStatus::BufferTooSmall,
            format!("buffer holds {len} values, need {}", values.len()),
        ));
    }
    // SAFETY: buf is non-null and the caller guarantees `len` writable values.
    unsafe { std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tomo_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tomo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a Talbot state with standard geometry.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_new(slits: usize, correlation: f64, out: *mut *mut TomoTalbot) -> TomoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = lift(TalbotParams::new(slits, correlation))?;
        let coeff = lift(coeff_matrix(&params))?;
        let h = Box::into_raw(Box::new(TomoTalbot { params, coeff }));
        unsafe { write_out(out, h, "out") }
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`tomo_talbot_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_free(h: *mut TomoTalbot) {
    if !h.is_null() {
        // SAFETY: allocated by Box::into_raw in tomo_talbot_new.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Slit count `D`, or 0 for a NULL handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_dim(h: *const TomoTalbot) -> usize {
    unsafe { h.as_ref() }.map_or(0, |t| t.params.slits)
}

/// Subsystem von Neumann entropy in bits.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_svne(h: *const TomoTalbot, out: *mut f64) -> TomoStatus {
    guard(|| {
        let t = unsafe { handle(h) }?;
        unsafe { write_out(out, svne(&t.coeff), "out") }
    })
}

/// Position-basis ε_TEI in bits.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_tei_position(h: *const TomoTalbot, out: *mut f64) -> TomoStatus {
    guard(|| {
        let t = unsafe { handle(h) }?;
        let v = lift(tei_position(&t.params, TeiPath::Patch))?;
        unsafe { write_out(out, v, "out") }
    })
}

/// ε_TEI in the discrete Fourier bases, in bits.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_tei_discrete(h: *const TomoTalbot, out: *mut f64) -> TomoStatus {
    guard(|| {
        let t = unsafe { handle(h) }?;
        let v = lift(tei_discrete_basis(&t.coeff))?;
        unsafe { write_out(out, v, "out") }
    })
}

/// CGLMP value `I_D`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_cglmp(h: *const TomoTalbot, out: *mut f64) -> TomoStatus {
    guard(|| {
        let t = unsafe { handle(h) }?;
        let v = lift(cglmp_id(&t.coeff))?;
        unsafe { write_out(out, v, "out") }
    })
}

/// Reduced density matrix `ρ_A`, row-major, `D*D` values.
///
/// # Safety
/// `h` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn tomo_talbot_density(h: *const TomoTalbot, buf: *mut f64, len: usize) -> TomoStatus {
    guard(|| {
        let t = unsafe { handle(h) }?;
        let rho = subsystem_density(&t.coeff);
        let d = t.params.slits;
        let values: Vec<f64> = (0..d * d).map(|k| rho[(k / d, k % d)]).collect();
        unsafe { fill(buf, len, &values) }
    })
}

/// Creates a biphoton comb with the calibrated frequencies, `n_teeth` teeth
/// per side, window half-width `half_width_s` seconds and `n_grid` samples per
/// axis. `n_teeth = 0`, `half_width_s <= 0` or `n_grid = 0` select the
/// calibrated values.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_new(
    n_teeth: usize,
    half_width_s: f64,
    n_grid: usize,
    out: *mut *mut TomoBiphoton,
) -> TomoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mut params = BiphotonParams::calibrated();
        if n_teeth > 0 {
            params.n_teeth = n_teeth;
        }
        let mut window = TimeWindow::default_for(&params);
        if half_width_s > 0.0 {
            window.half_width = half_width_s;
        }
        if n_grid > 0 {
            window.n_grid = n_grid;
        }
        lift(params.validate())?;
        lift(window.validate(&params))?;
        let h = Box::into_raw(Box::new(TomoBiphoton { params, window }));
        unsafe { write_out(out, h, "out") }
    })
}

/// # Safety
/// `h` must be NULL or a handle from [`tomo_biphoton_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_free(h: *mut TomoBiphoton) {
    if !h.is_null() {
        // SAFETY: allocated by Box::into_raw in tomo_biphoton_new.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Samples per window axis, or 0 for a NULL handle.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_grid_len(h: *const TomoBiphoton) -> usize {
    unsafe { h.as_ref() }.map_or(0, |b| b.window.n_grid)
}

/// ε_TEI of the time-time slice in bits.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_tei(h: *const TomoBiphoton, state: TomoCombState, out: *mut f64) -> TomoStatus {
    guard(|| {
        let b = unsafe { handle(h) }?;
        let v = lift(closed_form_profile(state.into(), &b.window, &b.params).and_then(|p| p.mutual_information()))?;
        unsafe { write_out(out, v, "out") }
    })
}

/// Normalized slice as a function of `τ = t_I - t_S`: `2n-1` values for
/// offsets `-(n-1)..=n-1` grid steps.
///
/// # Safety
/// `h` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_profile(
    h: *const TomoBiphoton,
    state: TomoCombState,
    buf: *mut f64,
    len: usize,
) -> TomoStatus {
    guard(|| {
        let b = unsafe { handle(h) }?;
        let p = lift(closed_form_profile(state.into(), &b.window, &b.params))?;
        unsafe { fill(buf, len, p.values()) }
    })
}

/// Normalized slice on the full grid, row-major with rows indexed by `t_S`:
/// `n*n` values.
///
/// # Safety
/// `h` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn tomo_biphoton_slice(
    h: *const TomoBiphoton,
    state: TomoCombState,
    buf: *mut f64,
    len: usize,
) -> TomoStatus {
    guard(|| {
        let b = unsafe { handle(h) }?;
        let n = b.window.n_grid;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < n * n {
            return Err((TomoStatus::BufferTooSmall, format!("buffer holds {len} values, need {}", n * n)));
        }
        let p = lift(closed_form_profile(state.into(), &b.window, &b.params))?;
        let grid = p.to_grid();
        unsafe { fill(buf, len, grid.values()) }
    })
}
