//! C ABI for the meanking library.
//!
//! Objects cross the boundary as opaque handles created and destroyed here;
//! every fallible call returns an [`MkStatus`] and leaves a message for
//! [`mk_last_error`] on failure. JSON artifacts come back as NUL-terminated
//! strings that must be released with [`mk_string_free`]. The header is
//! generated into `include/meanking.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use meanking::designs::{affine_plane, hadamard_design, sylvester_hadamard, IncidenceDesign, Resolution};
use meanking::functions::functions_from_plane;
use meanking::json;
use meanking::mub::MubFamily;
use meanking::protocol::{run_game, verify_exhaustive, KingModelKind};
use meanking::realization::Realization;
use meanking::reconstruction::{psi_function_basis, psi_point_basis, ReconstructionBasis};
use meanking::{Error, TOL};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MkStatus {
    Ok = 0,
    /// A parameter is out of range or malformed.
    InvalidArgument = 1,
    /// The construction is documented as unsupported for this input.
    Unsupported = 2,
    /// The object was built but failed its mathematical checks.
    VerificationFailed = 3,
    /// A required pointer was null.
    NullPointer = 4,
}

/// The five design parameters plus the class count of its resolution.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MkDesignParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub lambda: u64,
    pub classes: u64,
}

/// Aggregate result of an exhaustive protocol sweep.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MkVerifyReport {
    pub branches: u64,
    pub failures: u64,
}

/// A verified design together with its resolution.
pub struct MkDesign {
    design: IncidenceDesign,
    resolution: Resolution,
    plane_order: Option<u64>,
}

/// A realization: one unit vector per block.
pub struct MkRealization {
    real: Realization,
    plane_order: Option<u64>,
}

/// A reconstruction basis, kept with the realization it belongs to.
pub struct MkBasis {
    basis: ReconstructionBasis,
    real: Realization,
    plane_order: Option<u64>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let cstring = CString::new(message).unwrap_or_else(|_| CString::new("invalid message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn fail(err: Error) -> MkStatus {
    let status = match err {
        Error::UnsupportedMubDimension(_) => MkStatus::Unsupported,
        Error::NotPrime(_)
        | Error::FieldTooLarge(_, _)
        | Error::NotPrimePower(_)
        | Error::ElementOutOfRange(_, _)
        | Error::BinomialRange { .. }
        | Error::BadHadamardOrder(_)
        | Error::ClassOutOfRange(_, _)
        | Error::ModelMismatch(_)
        | Error::BadArtifact(_) => MkStatus::InvalidArgument,
        _ => MkStatus::VerificationFailed,
    };
    set_error(err.to_string());
    status
}

/// Last error message on this thread, or null if none was recorded.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mk_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|msg| msg.as_ptr())
            .unwrap_or(ptr::null())
    })
}

/// Releases a string returned by any `*_to_json` or simulate call.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and not yet
/// freed; null is accepted and ignored.
#[no_mangle]
pub unsafe extern "C" fn mk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn emit_string(out: *mut *mut c_char, content: String) -> MkStatus {
    match CString::new(content) {
        Ok(cstring) => {
            unsafe { *out = cstring.into_raw() };
            MkStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            MkStatus::InvalidArgument
        }
    }
}

/// Builds the affine plane AG(2,q) with its resolution.
///
/// # Safety
/// `out` must be a valid pointer to an `MkDesign*`.
#[no_mangle]
pub unsafe extern "C" fn mk_affine_plane(order: u64, out: *mut *mut MkDesign) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    match affine_plane(order) {
        Ok((design, resolution)) => {
            *out = Box::into_raw(Box::new(MkDesign { design, resolution, plane_order: Some(order) }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the affine design of the Sylvester Hadamard matrix of size 2^k.
///
/// # Safety
/// `out` must be a valid pointer to an `MkDesign*`.
#[no_mangle]
pub unsafe extern "C" fn mk_hadamard_design(k: u32, out: *mut *mut MkDesign) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    let built = sylvester_hadamard(k).and_then(|h| hadamard_design(&h));
    match built {
        Ok((design, resolution)) => {
            *out = Box::into_raw(Box::new(MkDesign { design, resolution, plane_order: None }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Copies the verified parameters of a design.
///
/// # Safety
/// `design` must be a live handle from this library; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_design_params(
    design: *const MkDesign,
    out: *mut MkDesignParams,
) -> MkStatus {
    if design.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*design;
    let p = handle.design.params();
    *out = MkDesignParams {
        v: p.v as u64,
        b: p.b as u64,
        r: p.r as u64,
        k: p.k as u64,
        lambda: p.lambda as u64,
        classes: handle.resolution.class_count() as u64,
    };
    MkStatus::Ok
}

/// Serializes a design (with resolution) as pretty JSON.
///
/// # Safety
/// `design` must be a live handle; `out` must be valid. The returned string
/// must be freed with `mk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mk_design_to_json(
    design: *const MkDesign,
    out: *mut *mut c_char,
) -> MkStatus {
    if design.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*design;
    let value = json::design_json(&handle.design, Some(&handle.resolution), handle.plane_order);
    emit_string(out, serde_json::to_string_pretty(&value).expect("serializable"))
}

/// Destroys a design handle; null is ignored.
///
/// # Safety
/// `design` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mk_design_free(design: *mut MkDesign) {
    if !design.is_null() {
        drop(Box::from_raw(design));
    }
}

/// Realizes a design by normalized incidence vectors. The design handle
/// stays owned by the caller.
///
/// # Safety
/// `design` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_incidence(
    design: *const MkDesign,
    out: *mut *mut MkRealization,
) -> MkStatus {
    if design.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*design;
    match Realization::incidence(handle.design.clone(), handle.resolution.clone()) {
        Ok(real) => {
            *out = Box::into_raw(Box::new(MkRealization { real, plane_order: handle.plane_order }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the MUB tensor realization of the affine plane of the given order.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_mub_plane(
    order: u64,
    out: *mut *mut MkRealization,
) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    let built = affine_plane(order).and_then(|(plane, res)| {
        let mubs = MubFamily::build(order)?;
        Realization::from_mub(plane, res, mubs)
    });
    match built {
        Ok(real) => {
            *out = Box::into_raw(Box::new(MkRealization { real, plane_order: Some(order) }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the explicit three-qubit realization of the order-8 Hadamard
/// design.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_hadamard8(out: *mut *mut MkRealization) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    *out = Box::into_raw(Box::new(MkRealization {
        real: Realization::hadamard8(),
        plane_order: None,
    }));
    MkStatus::Ok
}

/// Re-checks the angle constraints of a realization and reports the worst
/// deviation. Returns `VerificationFailed` if it exceeds the tolerance.
///
/// # Safety
/// `realization` must be a live handle; `max_deviation` may be null.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_verify(
    realization: *const MkRealization,
    max_deviation: *mut f64,
) -> MkStatus {
    if realization.is_null() {
        return MkStatus::NullPointer;
    }
    let report = (*realization).real.verify();
    if !max_deviation.is_null() {
        *max_deviation = report.max_deviation;
    }
    if report.passes(TOL) {
        MkStatus::Ok
    } else {
        set_error(format!(
            "angle deviation {:.3e} at block pair {:?}",
            report.max_deviation, report.worst_pair
        ));
        MkStatus::VerificationFailed
    }
}

/// Serializes a realization as pretty JSON.
///
/// # Safety
/// `realization` must be a live handle; `out` must be valid. Free the
/// string with `mk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_to_json(
    realization: *const MkRealization,
    out: *mut *mut c_char,
) -> MkStatus {
    if realization.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*realization;
    let value = json::realization_json(&handle.real, handle.plane_order);
    emit_string(out, serde_json::to_string_pretty(&value).expect("serializable"))
}

/// Destroys a realization handle; null is ignored.
///
/// # Safety
/// `realization` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mk_realization_free(realization: *mut MkRealization) {
    if !realization.is_null() {
        drop(Box::from_raw(realization));
    }
}

/// Builds the point-indexed reconstruction basis of a realization.
///
/// # Safety
/// `realization` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_point_basis(
    realization: *const MkRealization,
    class_index: u64,
    out: *mut *mut MkBasis,
) -> MkStatus {
    if realization.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*realization;
    match psi_point_basis(&handle.real, class_index as usize) {
        Ok(basis) => {
            *out = Box::into_raw(Box::new(MkBasis {
                basis,
                real: handle.real.clone(),
                plane_order: handle.plane_order,
            }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds the function-indexed basis of the affine plane of the given
/// order over its canonical MUB family.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mk_function_basis(order: u64, out: *mut *mut MkBasis) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    let built = affine_plane(order).and_then(|(plane, res)| {
        let fs = functions_from_plane(&plane, &res)?;
        let mubs = MubFamily::build(order)?;
        let basis = psi_function_basis(&mubs, &fs)?;
        let real = Realization::from_mub(plane, res, mubs)?;
        Ok((basis, real))
    });
    match built {
        Ok((basis, real)) => {
            *out = Box::into_raw(Box::new(MkBasis { basis, real, plane_order: Some(order) }));
            MkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Number of outcomes of a basis (equals the ambient dimension).
///
/// # Safety
/// `basis` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn mk_basis_len(basis: *const MkBasis) -> u64 {
    if basis.is_null() {
        return 0;
    }
    (*basis).basis.len() as u64
}

/// Serializes a basis as pretty JSON.
///
/// # Safety
/// `basis` must be a live handle; `out` must be valid. Free the string with
/// `mk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mk_basis_to_json(
    basis: *const MkBasis,
    out: *mut *mut c_char,
) -> MkStatus {
    if basis.is_null() || out.is_null() {
        return MkStatus::NullPointer;
    }
    let handle = &*basis;
    let value = json::basis_json(&handle.basis, &handle.real, handle.plane_order);
    emit_string(out, serde_json::to_string_pretty(&value).expect("serializable"))
}

/// Destroys a basis handle; null is ignored.
///
/// # Safety
/// `basis` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mk_basis_free(basis: *mut MkBasis) {
    if !basis.is_null() {
        drop(Box::from_raw(basis));
    }
}

fn scenario_setup(
    scenario: &str,
    order: u64,
) -> Result<(Realization, ReconstructionBasis, KingModelKind), Error> {
    match scenario {
        "affine" => {
            let (design, res) = affine_plane(order)?;
            let real = Realization::incidence(design, res)?;
            let basis = psi_point_basis(&real, 0)?;
            Ok((real, basis, KingModelKind::Abstract))
        }
        "hadamard8" => {
            let real = Realization::hadamard8();
            let basis = psi_point_basis(&real, 0)?;
            Ok((real, basis, KingModelKind::QubitLocal))
        }
        "function" => {
            let (plane, res) = affine_plane(order)?;
            let fs = functions_from_plane(&plane, &res)?;
            let mubs = MubFamily::build(order)?;
            let basis = psi_function_basis(&mubs, &fs)?;
            let real = Realization::from_mub(plane, res, mubs)?;
            Ok((real, basis, KingModelKind::MubFactor))
        }
        other => Err(Error::BadArtifact(format!(
            "unknown scenario {other:?} (expected affine, hadamard8, or function)"
        ))),
    }
}

unsafe fn scenario_str(scenario: *const c_char) -> Result<&'static str, MkStatus> {
    if scenario.is_null() {
        return Err(MkStatus::NullPointer);
    }
    match CStr::from_ptr(scenario).to_str() {
        Ok("affine") => Ok("affine"),
        Ok("hadamard8") => Ok("hadamard8"),
        Ok("function") => Ok("function"),
        Ok(other) => {
            set_error(format!("unknown scenario {other:?}"));
            Err(MkStatus::InvalidArgument)
        }
        Err(_) => {
            set_error("scenario is not valid UTF-8".into());
            Err(MkStatus::InvalidArgument)
        }
    }
}

/// Exhaustively verifies a scenario ("affine", "hadamard8", or "function");
/// `order` is the plane order where applicable. Returns
/// `VerificationFailed` if any branch predicts the wrong block.
///
/// # Safety
/// `scenario` must be a NUL-terminated string; `report` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mk_verify_scenario(
    scenario: *const c_char,
    order: u64,
    report: *mut MkVerifyReport,
) -> MkStatus {
    if report.is_null() {
        return MkStatus::NullPointer;
    }
    let name = match scenario_str(scenario) {
        Ok(name) => name,
        Err(status) => return status,
    };
    let outcome = scenario_setup(name, order)
        .and_then(|(real, basis, kind)| verify_exhaustive(&real, &basis, kind));
    match outcome {
        Ok(result) => {
            *report = MkVerifyReport {
                branches: result.branches as u64,
                failures: result.failures.len() as u64,
            };
            if result.all_correct() {
                MkStatus::Ok
            } else {
                set_error(format!("{} failing branches", result.failures.len()));
                MkStatus::VerificationFailed
            }
        }
        Err(e) => fail(e),
    }
}

/// Plays `trials` seeded games (trial t uses seed + t) and returns the
/// transcripts as JSON lines. Deterministic in the seed.
///
/// # Safety
/// `scenario` must be a NUL-terminated string; `out` must be valid. Free
/// the string with `mk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mk_simulate(
    scenario: *const c_char,
    order: u64,
    seed: u64,
    trials: u64,
    out: *mut *mut c_char,
) -> MkStatus {
    if out.is_null() {
        return MkStatus::NullPointer;
    }
    let name = match scenario_str(scenario) {
        Ok(name) => name,
        Err(status) => return status,
    };
    let outcome = scenario_setup(name, order).and_then(|(real, basis, kind)| {
        let mut lines = String::new();
        for t in 0..trials {
            let transcript = run_game(&real, &basis, kind, seed.wrapping_add(t))?;
            lines.push_str(&serde_json::to_string(&transcript).expect("serializable"));
            lines.push('\n');
        }
        Ok(lines)
    });
    match outcome {
        Ok(lines) => emit_string(out, lines),
        Err(e) => fail(e),
    }
}
