//! C ABI for the wreath presentation toolkit.
//!
//! Presentations travel as opaque `WreathPresentation` handles created by the
//! constructor functions and released with `wreath_presentation_free`. Every
//! fallible function returns a [`WreathStatus`]; on failure a human-readable
//! message is available from `wreath_last_error_message` until the next
//! failing call on the same thread. Strings returned through out-parameters
//! are owned by the caller and must be released with `wreath_string_free`.
//!
//! The C header is generated into `include/wreath.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use wreath::analysis::{conormality_gcd, minimality_drop_test};
use wreath::builders::{cyclic_wreath_presentation, sylow_presentation, WreathMeta};
use wreath::enumeration::{group_order, GroupOrder};
use wreath::fileio;
use wreath::oracle::hom_certificate;
use wreath::presentation::{to_canonical_json, Presentation};

/// Result codes shared by all fallible functions.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input could not be parsed or a precondition failed.
    InvalidInput = 2,
    /// A coset enumeration hit its cap where closure was required.
    CapExceeded = 3,
    /// The requested verification ran and did not pass.
    CheckFailed = 4,
}

/// An opaque presentation handle (presentation plus optional construction
/// metadata).
pub struct WreathPresentation {
    presentation: Presentation,
    meta: Option<WreathMeta>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: WreathStatus, message: impl Into<Vec<u8>>) -> WreathStatus {
    let message = CString::new(message).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
    status
}

/// Message for the most recent failure on this thread. Borrowed: valid until
/// the next failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn wreath_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn put_handle(
    out: *mut *mut WreathPresentation,
    presentation: Presentation,
    meta: Option<WreathMeta>,
) -> WreathStatus {
    if out.is_null() {
        return fail(WreathStatus::NullArgument, "out pointer is null");
    }
    *out = Box::into_raw(Box::new(WreathPresentation { presentation, meta }));
    WreathStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> WreathStatus {
    if out.is_null() {
        return fail(WreathStatus::NullArgument, "out pointer is null");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            WreathStatus::Ok
        }
        Err(_) => fail(WreathStatus::InvalidInput, "string contains a NUL byte"),
    }
}

/// Parses a presentation file (JSON, optional `wreath_meta` key) into a
/// handle.
///
/// # Safety
/// `json` must point to a NUL-terminated UTF-8 string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_from_json(
    json: *const c_char,
    out: *mut *mut WreathPresentation,
) -> WreathStatus {
    if json.is_null() {
        return fail(WreathStatus::NullArgument, "json is null");
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return fail(WreathStatus::InvalidInput, "json is not valid UTF-8"),
    };
    match fileio::decode(text) {
        Ok((p, meta)) => put_handle(out, p, meta),
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

/// Builds the cyclic wreath product presentation `C_n wr C_m`.
///
/// # Safety
/// `out` must be a valid pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_cyclic(
    n: usize,
    m: usize,
    out: *mut *mut WreathPresentation,
) -> WreathStatus {
    match cyclic_wreath_presentation(n, m) {
        Ok((p, meta)) => put_handle(out, p, Some(meta)),
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

/// Builds the Sylow p-subgroup presentation for the symmetric group on `p^n`
/// points.
///
/// # Safety
/// `out` must be a valid pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_sylow(
    p: u64,
    n: u32,
    out: *mut *mut WreathPresentation,
) -> WreathStatus {
    match sylow_presentation(p, n) {
        Ok((pres, meta)) => put_handle(out, pres, Some(meta)),
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

/// Releases a presentation handle. A null handle is ignored.
///
/// # Safety
/// `p` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_free(p: *mut WreathPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned through an out-parameter. Null is ignored.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wreath_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn wreath_presentation_generator_count(p: *const WreathPresentation) -> usize {
    unsafe { p.as_ref() }.map_or(0, |h| h.presentation.gen_count())
}

#[no_mangle]
pub extern "C" fn wreath_presentation_relator_count(p: *const WreathPresentation) -> usize {
    unsafe { p.as_ref() }.map_or(0, |h| h.presentation.relators().len())
}

/// Serializes the handle back to the canonical JSON file form.
///
/// # Safety
/// `p` must be a live handle; `out` receives a caller-owned string.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_to_json(
    p: *const WreathPresentation,
    out: *mut *mut c_char,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    put_string(out, fileio::encode(&h.presentation, h.meta.as_ref()))
}

/// Renders the presentation as GAP input.
///
/// # Safety
/// `p` must be a live handle; `out` receives a caller-owned string.
#[no_mangle]
pub unsafe extern "C" fn wreath_presentation_to_gap(
    p: *const WreathPresentation,
    out: *mut *mut c_char,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    put_string(out, fileio::to_gap(&h.presentation))
}

/// Enumerates the presented group's order with the given coset cap.
/// `WREATH_STATUS_CAP_EXCEEDED` reports an enumeration that did not close.
///
/// # Safety
/// `p` must be a live handle; `out_order` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wreath_group_order(
    p: *const WreathPresentation,
    cap: usize,
    out_order: *mut u64,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    if out_order.is_null() {
        return fail(WreathStatus::NullArgument, "out_order is null");
    }
    match group_order(&h.presentation, cap) {
        Ok(GroupOrder::Finite(n)) => {
            *out_order = n as u64;
            WreathStatus::Ok
        }
        Ok(GroupOrder::Unknown(stats)) => fail(
            WreathStatus::CapExceeded,
            format!(
                "enumeration did not close within cap {cap} ({} cosets defined)",
                stats.defined
            ),
        ),
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

/// Runs the homomorphism certificate against the concrete wreath product.
/// Requires construction metadata in the handle. `out_pass` reports the
/// verdict; the status is `WREATH_STATUS_CHECK_FAILED` when the certificate
/// ran and did not pass.
///
/// # Safety
/// `p` must be a live handle; `out_pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wreath_hom_certificate(
    p: *const WreathPresentation,
    cap: usize,
    oracle_limit: usize,
    out_pass: *mut bool,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    if out_pass.is_null() {
        return fail(WreathStatus::NullArgument, "out_pass is null");
    }
    let Some(meta) = h.meta.as_ref() else {
        return fail(
            WreathStatus::InvalidInput,
            "the handle carries no construction metadata",
        );
    };
    match hom_certificate(&h.presentation, meta, cap, oracle_limit) {
        Ok(report) => {
            *out_pass = report.pass();
            if report.pass() {
                WreathStatus::Ok
            } else {
                fail(WreathStatus::CheckFailed, "homomorphism certificate failed")
            }
        }
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

/// Conormality report (JSON) for every generator.
///
/// # Safety
/// `p` must be a live handle; `out` receives a caller-owned string.
#[no_mangle]
pub unsafe extern "C" fn wreath_conormality_json(
    p: *const WreathPresentation,
    out: *mut *mut c_char,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    put_string(out, to_canonical_json(&conormality_gcd(&h.presentation)))
}

/// Relator drop report (JSON): re-enumerates the presentation with each
/// relator removed, against the expected order.
///
/// # Safety
/// `p` must be a live handle; `out` receives a caller-owned string.
#[no_mangle]
pub unsafe extern "C" fn wreath_minimality_json(
    p: *const WreathPresentation,
    expected_order: u64,
    cap: usize,
    out: *mut *mut c_char,
) -> WreathStatus {
    let Some(h) = p.as_ref() else {
        return fail(WreathStatus::NullArgument, "presentation is null");
    };
    match minimality_drop_test(&h.presentation, expected_order as usize, cap) {
        Ok(reports) => put_string(out, to_canonical_json(&reports)),
        Err(e) => fail(WreathStatus::InvalidInput, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    unsafe fn take_string(raw: *mut c_char) -> String {
        let s = CStr::from_ptr(raw).to_str().unwrap().to_string();
        wreath_string_free(raw);
        s
    }

    #[test]
    fn cyclic_build_order_and_certificate() {
        unsafe {
            let mut handle: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(wreath_presentation_cyclic(2, 3, &mut handle), WreathStatus::Ok);
            assert_eq!(wreath_presentation_generator_count(handle), 2);
            assert_eq!(wreath_presentation_relator_count(handle), 3);

            let mut order = 0u64;
            assert_eq!(
                wreath_group_order(handle, 100_000, &mut order),
                WreathStatus::Ok
            );
            assert_eq!(order, 24);

            let mut pass = false;
            assert_eq!(
                wreath_hom_certificate(handle, 100_000, 1 << 20, &mut pass),
                WreathStatus::Ok
            );
            assert!(pass);
            wreath_presentation_free(handle);
        }
    }

    #[test]
    fn json_round_trip_through_the_abi() {
        unsafe {
            let mut handle: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(wreath_presentation_sylow(2, 2, &mut handle), WreathStatus::Ok);
            let mut raw: *mut c_char = ptr::null_mut();
            assert_eq!(wreath_presentation_to_json(handle, &mut raw), WreathStatus::Ok);
            let json = take_string(raw);
            wreath_presentation_free(handle);

            let cjson = CString::new(json.clone()).unwrap();
            let mut back: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(
                wreath_presentation_from_json(cjson.as_ptr(), &mut back),
                WreathStatus::Ok
            );
            let mut raw2: *mut c_char = ptr::null_mut();
            assert_eq!(wreath_presentation_to_json(back, &mut raw2), WreathStatus::Ok);
            assert_eq!(take_string(raw2), json);
            wreath_presentation_free(back);
        }
    }

    #[test]
    fn gap_export_and_reports() {
        unsafe {
            let mut handle: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(wreath_presentation_cyclic(2, 2, &mut handle), WreathStatus::Ok);
            let mut raw: *mut c_char = ptr::null_mut();
            assert_eq!(wreath_presentation_to_gap(handle, &mut raw), WreathStatus::Ok);
            assert!(take_string(raw).starts_with("F := FreeGroup(\"x\", \"y\");;"));

            let mut raw: *mut c_char = ptr::null_mut();
            assert_eq!(wreath_conormality_json(handle, &mut raw), WreathStatus::Ok);
            assert!(take_string(raw).contains("\"conormal\": true"));

            let mut raw: *mut c_char = ptr::null_mut();
            assert_eq!(
                wreath_minimality_json(handle, 8, 10_000, &mut raw),
                WreathStatus::Ok
            );
            assert!(take_string(raw).contains("needed (cap)"));
            wreath_presentation_free(handle);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        unsafe {
            let mut handle: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(
                wreath_presentation_cyclic(1, 2, &mut handle),
                WreathStatus::InvalidInput
            );
            let msg = CStr::from_ptr(wreath_last_error_message()).to_str().unwrap();
            assert!(msg.contains("below 2"), "{msg}");

            assert_eq!(
                wreath_presentation_from_json(ptr::null(), &mut handle),
                WreathStatus::NullArgument
            );

            let bad = CString::new("{\"generators\": [\"x\"], \"relators\": [\"q\"]}").unwrap();
            assert_eq!(
                wreath_presentation_from_json(bad.as_ptr(), &mut handle),
                WreathStatus::InvalidInput
            );

            // infinite dihedral caps out
            let dinf =
                CString::new("{\"generators\": [\"x\", \"y\"], \"relators\": [\"x^2\", \"y^2\"]}")
                    .unwrap();
            let mut h: *mut WreathPresentation = ptr::null_mut();
            assert_eq!(
                wreath_presentation_from_json(dinf.as_ptr(), &mut h),
                WreathStatus::Ok
            );
            let mut order = 0u64;
            assert_eq!(
                wreath_group_order(h, 100, &mut order),
                WreathStatus::CapExceeded
            );
            // hom certificate needs metadata
            let mut pass = false;
            assert_eq!(
                wreath_hom_certificate(h, 100, 1 << 20, &mut pass),
                WreathStatus::InvalidInput
            );
            wreath_presentation_free(h);
        }
    }

    #[test]
    fn header_is_generated() {
        let header = std::fs::read_to_string(
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/wreath.h"),
        )
        .expect("header exists after build");
        assert!(header.contains("wreath_presentation_from_json"));
        assert!(header.contains("WREATH_STATUS_CAP_EXCEEDED"));
        assert!(header.contains("typedef struct WreathPresentation WreathPresentation;"));
    }
}
