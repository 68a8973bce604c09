use std::ffi::{CStr, CString};
use std::ptr;

use relcyl::setalg::{abstract_unit, SetClass, Unit};
use relcyl::Dimension;
use relcyl_ffi::*;

fn square_json() -> CString {
    let v = Unit::full(Dimension::new(2).unwrap(), 2).unwrap();
    CString::new(abstract_unit(&v, SetClass::Pers).unwrap().to_json()).unwrap()
}

unsafe fn load(json: &CStr) -> *mut RelcylAlgebra {
    let mut a = ptr::null_mut();
    assert_eq!(relcyl_algebra_from_json(json.as_ptr(), &mut a), RelcylStatus::Ok);
    a
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    relcyl_string_free(s);
    out
}

#[test]
fn load_and_inspect() {
    unsafe {
        let a = load(&square_json());
        assert_eq!(relcyl_algebra_num_atoms(a), 4);
        assert_eq!(relcyl_algebra_dimension(a), 2);
        relcyl_algebra_free(a);
        assert_eq!(relcyl_algebra_num_atoms(ptr::null()), 0);
    }
}

#[test]
fn check_class_reports_json() {
    unsafe {
        let a = load(&square_json());
        let mut report = ptr::null_mut();
        let tea = CString::new("TEA").unwrap();
        assert_eq!(relcyl_check_class(a, tea.as_ptr(), &mut report), RelcylStatus::Ok);
        assert_eq!(take(report), "[]");
        let bogus = CString::new("XYZ").unwrap();
        assert_eq!(relcyl_check_class(a, bogus.as_ptr(), &mut report), RelcylStatus::Format);
        let msg = CStr::from_ptr(relcyl_last_error()).to_str().unwrap();
        assert!(msg.contains("XYZ"), "{msg}");
        relcyl_algebra_free(a);
    }
}

#[test]
fn represent_round_trip() {
    unsafe {
        let a = load(&square_json());
        let mut out = ptr::null_mut();
        let mode = CString::new("TEA").unwrap();
        assert_eq!(relcyl_represent(a, mode.as_ptr(), 0, 0, &mut out), RelcylStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["complete"], true);
        assert_eq!(v["representation"]["saturated"], true);
        assert_eq!(relcyl_represent(a, mode.as_ptr(), 1, 0, &mut out), RelcylStatus::Failed);
        relcyl_string_free(out);
        relcyl_algebra_free(a);
    }
}

#[test]
fn bad_input_codes() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(relcyl_algebra_from_json(ptr::null(), &mut a), RelcylStatus::NullPointer);
        let junk = CString::new("{\"dimension\": 2}").unwrap();
        assert_eq!(relcyl_algebra_from_json(junk.as_ptr(), &mut a), RelcylStatus::Format);
        assert!(a.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(
            relcyl_algebra_from_json(bad.as_ptr().cast(), &mut a),
            RelcylStatus::InvalidUtf8
        );
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/relcyl.h")).unwrap();
    for name in [
        "relcyl_last_error",
        "relcyl_algebra_from_json",
        "relcyl_algebra_free",
        "relcyl_algebra_num_atoms",
        "relcyl_algebra_dimension",
        "relcyl_check_class",
        "relcyl_represent",
        "relcyl_string_free",
        "typedef struct RelcylAlgebra RelcylAlgebra",
        "RELCYL_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
