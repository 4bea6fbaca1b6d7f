use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use qchar_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_json(p: *mut std::ffi::c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    qchar_string_free(p);
    v
}

unsafe fn parse_gw(expr: &str) -> *mut QcharGw {
    let mut out = ptr::null_mut();
    assert_eq!(
        qchar_gw_parse(c(expr).as_ptr(), ptr::null(), &mut out),
        QcharStatus::Ok
    );
    out
}

#[test]
fn gw_handles() {
    unsafe {
        let a = parse_gw("<-2,-6>");
        let b = parse_gw("-3 + <3>");
        let mut eq = true;
        assert_eq!(qchar_gw_equal(a, b, &mut eq), QcharStatus::Ok);
        assert!(!eq);
        assert_eq!(qchar_gw_witt_equal(a, b, &mut eq), QcharStatus::Ok);
        assert!(eq);
        let mut s = ptr::null_mut();
        assert_eq!(qchar_gw_add(a, b, &mut s), QcharStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(qchar_gw_mul(a, b, &mut m), QcharStatus::Ok);
        let mut j = ptr::null_mut();
        assert_eq!(qchar_gw_to_json(s, &mut j), QcharStatus::Ok);
        let v = take_json(j);
        assert_eq!(v["backend"], "q");
        let rank: i64 = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["n"].as_i64().unwrap())
            .sum();
        assert_eq!(rank, 0);
        for x in [a, b, s, m] {
            qchar_gw_free(x);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            qchar_bundle_parse(c("U1*").as_ptr(), &mut out),
            QcharStatus::Syntax
        );
        assert!(out.is_null());
        let msg = CStr::from_ptr(qchar_last_error_message()).to_str().unwrap();
        assert!(msg.contains("offset 3"), "{msg}");
        assert_eq!(
            qchar_bundle_parse(ptr::null(), &mut out),
            QcharStatus::NullPointer
        );
        let mut g = ptr::null_mut();
        assert_eq!(
            qchar_gw_parse(c("1").as_ptr(), c("fp:3").as_ptr(), &mut g),
            QcharStatus::InvalidArgument
        );
        let mut j = ptr::null_mut();
        assert_eq!(
            qchar_psi_json(2, ptr::null(), &mut j),
            QcharStatus::InvalidArgument
        );
        let a = parse_gw("1");
        let mut b = ptr::null_mut();
        assert_eq!(
            qchar_gw_parse(c("1").as_ptr(), c("fp:5").as_ptr(), &mut b),
            QcharStatus::Ok
        );
        let mut eq = false;
        assert_eq!(qchar_gw_equal(a, b, &mut eq), QcharStatus::InvalidArgument);
        qchar_gw_free(a);
        qchar_gw_free(b);
    }
}

#[test]
fn bundle_computations() {
    unsafe {
        let mut v = ptr::null_mut();
        assert_eq!(
            qchar_bundle_parse(c("U1*U2*U3").as_ptr(), &mut v),
            QcharStatus::Ok
        );
        let mut r = 0;
        assert_eq!(qchar_bundle_rank(v, &mut r), QcharStatus::Ok);
        assert_eq!(r, 8);
        let mut j = ptr::null_mut();
        let st = qchar_borel_json(
            v,
            c("HP(5)^3").as_ptr(),
            c("chow").as_ptr(),
            ptr::null(),
            3,
            &mut j,
        );
        assert_eq!(st, QcharStatus::Ok);
        let b = take_json(j);
        let b3 = b["classes"]["3"].as_array().unwrap();
        assert!(b3
            .iter()
            .any(|t| t["e"] == serde_json::json!([1, 1, 1]) && t["c"] == 40));
        assert_eq!(
            qchar_bo_json(v, ptr::null(), ptr::null(), 8, &mut j),
            QcharStatus::Ok
        );
        assert_eq!(take_json(j)["square_ok"], true);
        assert_eq!(
            qchar_bo_json(v, ptr::null(), c("fp:5").as_ptr(), 8, &mut j),
            QcharStatus::Unsupported
        );
        qchar_bundle_free(v);
        assert_eq!(
            qchar_omega_json(1, c("chow").as_ptr(), ptr::null(), &mut j),
            QcharStatus::Ok
        );
        assert_eq!(take_json(j)["value"], 360);
        assert_eq!(qchar_psi_json(1, ptr::null(), &mut j), QcharStatus::Ok);
        let p = take_json(j);
        let rank: i64 = p["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["n"].as_i64().unwrap())
            .sum();
        assert_eq!(rank, 360);
    }
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qchar.h");
    let src = format!("#include \"{header}\"\nint main(void) {{ return QCHAR_STATUS_OK; }}\n");
    let dir = std::env::temp_dir().join(format!("qchar-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("main.c");
    std::fs::write(&file, src).unwrap();
    match Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&file)
        .status()
    {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(e) => eprintln!("skipping header check, no C compiler: {e}"),
    }
}
