use std::ffi::{CStr, CString};
use std::ptr;

use possing_ffi::*;

fn parse(s: &str, ch: u64, vars: Option<&str>) -> Result<*mut PossingPoly, PossingStatus> {
    let s = CString::new(s).unwrap();
    let v = vars.map(|v| CString::new(v).unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { possing_poly_parse(s.as_ptr(), ch, v.as_ref().map_or(ptr::null(), |v| v.as_ptr()), &mut out) };
    if st == PossingStatus::Ok { Ok(out) } else { Err(st) }
}

fn last_error() -> String {
    let p = possing_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn invariants_through_handles() {
    let f = parse("x^4+x^2*y^2+y^5", 2, None).unwrap();
    let (mut mu, mut tau) = (0i64, 0i64);
    unsafe {
        assert_eq!(possing_tjurina(f, &mut tau), PossingStatus::Ok);
        assert_eq!(possing_milnor(f, &mut mu), PossingStatus::Ok);
        possing_poly_free(f);
    }
    assert_eq!(tau, 16);
    assert!(possing_last_error_message().is_null());
    let g = parse("x^2", 0, Some("x,y")).unwrap();
    unsafe {
        assert_eq!(possing_milnor(g, &mut mu), PossingStatus::Ok);
        possing_poly_free(g);
    }
    assert_eq!(mu, -1);
}

#[test]
fn error_codes_and_messages() {
    assert_eq!(parse("x^2+y^3", 4, None), Err(PossingStatus::InvalidCharacteristic));
    assert!(last_error().contains("prime"));
    assert_eq!(parse("x^2+", 3, None), Err(PossingStatus::Parse));
    let st = unsafe { possing_poly_parse(ptr::null(), 0, ptr::null(), ptr::null_mut()) };
    assert_eq!(st, PossingStatus::NullPointer);

    let f = parse("x^4+x^2*y^2+y^5", 2, None).unwrap();
    let mut p = ptr::null_mut();
    let mut nf = ptr::null_mut();
    unsafe {
        assert_eq!(possing_polytope_newton(f, &mut p), PossingStatus::Ok);
        assert_eq!(possing_normal_form(p, f, PossingMode::Contact, &mut nf), PossingStatus::ConditionFails);
        assert!(last_error().contains("AAC"));
        possing_polytope_free(p);
        possing_poly_free(f);
    }
}

#[test]
fn normal_form_and_conditions() {
    let f = parse("x^2*z+y^3+z^4+x*y*z^2+x^2*y^2+y*z^3+x*y*z^3+y^2*z^3", 2, Some("x,y,z")).unwrap();
    let w = CString::new("9,8,6").unwrap();
    let mut p = ptr::null_mut();
    let (mut holds, mut k, mut v) = (false, 0u64, 0i64);
    let mut nf = ptr::null_mut();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(possing_polytope_weights(w.as_ptr(), 3, &mut p), PossingStatus::Ok);
        assert_eq!(possing_check_condition(p, f, PossingCondition::Aac, &mut holds), PossingStatus::Ok);
        assert_eq!(possing_determinacy(p, f, PossingMode::Contact, &mut k), PossingStatus::Ok);
        assert_eq!(possing_valuation(p, f, &mut v), PossingStatus::Ok);
        assert_eq!(possing_normal_form(p, f, PossingMode::Contact, &mut nf), PossingStatus::Ok);
        assert_eq!(possing_poly_to_string(nf, &mut s), PossingStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        possing_string_free(s);
        assert!(text.contains("x^2*z") && !text.contains("x^2*y^2"), "{text}");
        possing_poly_free(nf);
        possing_polytope_free(p);
        possing_poly_free(f);
    }
    assert!(holds);
    assert_eq!(k, 5);
    assert_eq!(v, 24);
}

#[test]
fn dimension_mismatch_is_rejected() {
    let f = parse("x^2+y^3", 0, None).unwrap();
    let w = CString::new("9,8,6").unwrap();
    let mut p = ptr::null_mut();
    let mut v = 0i64;
    unsafe {
        assert_eq!(possing_polytope_weights(w.as_ptr(), 3, &mut p), PossingStatus::Ok);
        assert_eq!(possing_valuation(p, f, &mut v), PossingStatus::RingMismatch);
        possing_polytope_free(p);
        possing_poly_free(f);
    }
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/possing.h")).unwrap();
    for name in ["possing_poly_parse", "possing_normal_form", "possing_last_error_message", "POSSING_STATUS_CONDITION_FAILS", "typedef struct PossingPoly PossingPoly"] {
        assert!(h.contains(name), "{name}");
    }
}
