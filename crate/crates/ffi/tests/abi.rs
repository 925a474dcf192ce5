use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use qhf_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qhf_string_free(s) };
    out
}

fn last_error() -> String {
    let p = qhf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn scene(path: &str) -> CString {
    let full = format!("{}/../../scenes/{path}", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(full).unwrap()).unwrap()
}

#[test]
fn function_algebra_round_trip() {
    let name = CString::new("symmetric 3").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qhf_function_algebra(name.as_ptr(), &mut h) }, QhfStatus::Ok);
    assert!(qhf_last_error().is_null());

    let mut dim = 0usize;
    assert_eq!(unsafe { qhf_structure_dim(h, &mut dim) }, QhfStatus::Ok);
    assert_eq!(dim, 6);

    let mut pass: c_int = 0;
    let mut ledger = ptr::null_mut();
    assert_eq!(unsafe { qhf_structure_verify(h, &mut pass, &mut ledger) }, QhfStatus::Ok);
    assert_eq!(pass, 1);
    let ledger: serde_json::Value = serde_json::from_str(&take(ledger)).unwrap();
    assert!(ledger.as_array().is_some_and(|c| !c.is_empty()));

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qhf_structure_to_json(h, &mut json) }, QhfStatus::Ok);
    let json = CString::new(take(json)).unwrap();
    let mut h2 = ptr::null_mut();
    assert_eq!(unsafe { qhf_structure_from_json(json.as_ptr(), &mut h2) }, QhfStatus::Ok);
    let mut pass2: c_int = 0;
    assert_eq!(unsafe { qhf_structure_verify(h2, &mut pass2, ptr::null_mut()) }, QhfStatus::Ok);
    assert_eq!(pass2, 1);

    unsafe {
        qhf_structure_free(h);
        qhf_structure_free(h2);
        qhf_structure_free(ptr::null_mut());
        qhf_string_free(ptr::null_mut());
    }
}

#[test]
fn group_algebra_dim() {
    let name = CString::new("dihedral 4").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qhf_group_algebra(name.as_ptr(), &mut h) }, QhfStatus::Ok);
    let mut dim = 0usize;
    assert_eq!(unsafe { qhf_structure_dim(h, &mut dim) }, QhfStatus::Ok);
    assert_eq!(dim, 8);
    unsafe { qhf_structure_free(h) };
}

#[test]
fn corrupted_tensors_fail_verification() {
    let name = CString::new("cyclic 3").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qhf_function_algebra(name.as_ptr(), &mut h) }, QhfStatus::Ok);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qhf_structure_to_json(h, &mut json) }, QhfStatus::Ok);
    unsafe { qhf_structure_free(h) };

    let mut v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    let d0 = &mut v["coproduct"]["entries"][0][3];
    assert!(d0.is_string(), "unexpected tensor encoding: {d0}");
    *d0 = serde_json::Value::String("2".into());
    let bad = CString::new(v.to_string()).unwrap();

    let mut h = ptr::null_mut();
    let st = unsafe { qhf_structure_from_json(bad.as_ptr(), &mut h) };
    if st == QhfStatus::Ok {
        let mut pass: c_int = 1;
        assert_eq!(unsafe { qhf_structure_verify(h, &mut pass, ptr::null_mut()) }, QhfStatus::Ok);
        assert_eq!(pass, 0);
        unsafe { qhf_structure_free(h) };
    } else {
        assert!(!last_error().is_empty());
    }
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qhf_function_algebra(ptr::null(), &mut h) }, QhfStatus::NullPointer);
    assert!(last_error().contains("null"));

    let name = CString::new("monster 1").unwrap();
    let st = unsafe { qhf_function_algebra(name.as_ptr(), &mut h) };
    assert_ne!(st, QhfStatus::Ok);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let junk = CString::new("{not json").unwrap();
    assert_eq!(unsafe { qhf_structure_from_json(junk.as_ptr(), &mut h) }, QhfStatus::ParseError);

    let bytes = [0xffu8, 0xfe, 0];
    let st = unsafe { qhf_function_algebra(bytes.as_ptr().cast(), &mut h) };
    assert_eq!(st, QhfStatus::InvalidUtf8);

    let mut dim = 0usize;
    assert_eq!(unsafe { qhf_structure_dim(ptr::null(), &mut dim) }, QhfStatus::NullPointer);

    let name = unsafe { CStr::from_ptr(qhf_status_name(QhfStatus::ExceptionalIdempotent)) };
    assert_eq!(name.to_str().unwrap(), "exceptional idempotent");
}

#[test]
fn run_scene_construct() {
    let s = scene("s3_double_cosets.json");
    let mut out = ptr::null_mut();
    let mut code: c_int = -1;
    let st = unsafe { qhf_run_scene(s.as_ptr(), QhfCommand::Construct, 0, &mut out, &mut code) };
    assert_eq!(st, QhfStatus::Ok, "{}", last_error());
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["command"], "construct");
    assert!(report["pipelines"].as_array().is_some_and(|p| !p.is_empty()));
}

#[test]
fn run_scene_verify_and_bad_scene() {
    let s = scene("s3_verify.json");
    let mut out = ptr::null_mut();
    let st = unsafe { qhf_run_scene(s.as_ptr(), QhfCommand::Verify, 1, &mut out, ptr::null_mut()) };
    assert_eq!(st, QhfStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["summary"]["failed"], 0);

    let bad = CString::new(r#"{"schema_version": 1, "objects": {"X": {"function_algebra": "nope"}}}"#).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { qhf_run_scene(bad.as_ptr(), QhfCommand::Verify, 0, &mut out, ptr::null_mut()) };
    assert_eq!(st, QhfStatus::InvalidInput);
    assert!(out.is_null());
    assert!(last_error().contains("nope"));
}

#[test]
fn small_sweep() {
    let mut out = ptr::null_mut();
    let mut code: c_int = -1;
    assert_eq!(unsafe { qhf_sweep(4, 0, &mut out, &mut code) }, QhfStatus::Ok);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["command"], "sweep");
}
