use std::ffi::{CStr, CString};
use std::ptr;

use dfsgf_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { dfsgf_string_free(s) };
    out
}

#[test]
fn engine_checks() {
    let e = dfsgf_engine_new(false);
    for n in 1..=8 {
        let mut knuth = false;
        let mut extended = false;
        let mut dual = false;
        unsafe {
            assert_eq!(dfsgf_engine_verify_knuth(e, n, &mut knuth), DfsgfStatus::Ok);
            assert_eq!(dfsgf_engine_verify_extended(e, n, &mut extended), DfsgfStatus::Ok);
            assert_eq!(dfsgf_engine_check_gy_recursions(e, n, &mut dual), DfsgfStatus::Ok);
        }
        assert!(knuth && extended && dual, "n={n}");
    }
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dfsgf_engine_entry_json(e, DfsgfFamily::Gx, 1, &mut json) }, DfsgfStatus::Ok);
    assert_eq!(take(json), r#"{"numerator":[[[0,0,0,0],"1"]],"factors":[[1,0,0,0,1]]}"#);
    unsafe { dfsgf_engine_free(e) };
}

#[test]
fn distribution_handle() {
    let p = CString::new("1/2").unwrap();
    let mut d = ptr::null_mut();
    let status = unsafe { dfsgf_distribution_new(1, p.as_ptr(), DfsgfRole::Loop, 2, &mut d) };
    assert_eq!(status, DfsgfStatus::Ok);
    assert_eq!(unsafe { dfsgf_distribution_len(d) }, 3);
    let probs: Vec<String> = (0..3)
        .map(|k| {
            let mut s = ptr::null_mut();
            assert_eq!(unsafe { dfsgf_distribution_prob(d, k, &mut s) }, DfsgfStatus::Ok);
            take(s)
        })
        .collect();
    assert_eq!(probs, ["1/2", "1/4", "1/8"]);
    let mut tail = ptr::null_mut();
    assert_eq!(unsafe { dfsgf_distribution_tail(d, &mut tail) }, DfsgfStatus::Ok);
    assert_eq!(take(tail), "1/8");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dfsgf_distribution_prob(d, 3, &mut s) }, DfsgfStatus::InvalidArgument);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { dfsgf_distribution_json(d, &mut json) }, DfsgfStatus::Ok);
    assert!(take(json).starts_with(r#"{"n":1,"p":"1/2","role":"L""#));
    unsafe { dfsgf_distribution_free(d) };
}

#[test]
fn means_and_forward_back_law() {
    let p = CString::new("1/4").unwrap();
    let mean = |role| {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { dfsgf_mean_arc_count(5, p.as_ptr(), role, &mut s) }, DfsgfStatus::Ok);
        take(s)
    };
    assert_eq!(mean(DfsgfRole::Forward), mean(DfsgfRole::Back));
    assert_eq!(mean(DfsgfRole::Tree), mean(DfsgfRole::Cross));
    let mut ok = false;
    assert_eq!(unsafe { dfsgf_verify_forward_back_law(6, p.as_ptr(), &mut ok) }, DfsgfStatus::Ok);
    assert!(ok);
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("3/2").unwrap();
    let mut ok = false;
    assert_eq!(unsafe { dfsgf_verify_forward_back_law(2, bad.as_ptr(), &mut ok) }, DfsgfStatus::InvalidArgument);
    let msg = unsafe { CStr::from_ptr(dfsgf_last_error()) }.to_str().unwrap();
    assert!(msg.contains("3/2"), "{msg}");

    let junk = CString::new("half").unwrap();
    assert_eq!(unsafe { dfsgf_verify_forward_back_law(2, junk.as_ptr(), &mut ok) }, DfsgfStatus::InvalidArgument);
    assert_eq!(unsafe { dfsgf_verify_forward_back_law(2, ptr::null(), &mut ok) }, DfsgfStatus::NullPointer);
    let half = CString::new("1/2").unwrap();
    assert_eq!(unsafe { dfsgf_verify_forward_back_law(2, half.as_ptr(), ptr::null_mut()) }, DfsgfStatus::NullPointer);

    let e = dfsgf_engine_new(false);
    assert_eq!(unsafe { dfsgf_engine_verify_knuth(e, 0, &mut ok) }, DfsgfStatus::InvalidArgument);
    assert_eq!(unsafe { dfsgf_engine_verify_knuth(ptr::null_mut(), 3, &mut ok) }, DfsgfStatus::NullPointer);
    unsafe { dfsgf_engine_free(e) };
    unsafe { dfsgf_engine_free(ptr::null_mut()) };
    unsafe { dfsgf_string_free(ptr::null_mut()) };
    assert_eq!(unsafe { dfsgf_distribution_len(ptr::null()) }, 0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(dfsgf_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_entry_point() {
    let header = include_str!("../include/dfsgf.h");
    for name in [
        "dfsgf_version",
        "dfsgf_last_error",
        "dfsgf_string_free",
        "dfsgf_engine_new",
        "dfsgf_engine_free",
        "dfsgf_engine_verify_knuth",
        "dfsgf_engine_verify_extended",
        "dfsgf_engine_check_gy_recursions",
        "dfsgf_engine_entry_json",
        "dfsgf_distribution_new",
        "dfsgf_distribution_free",
        "dfsgf_distribution_len",
        "dfsgf_distribution_prob",
        "dfsgf_distribution_tail",
        "dfsgf_distribution_json",
        "dfsgf_mean_arc_count",
        "dfsgf_verify_forward_back_law",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}
