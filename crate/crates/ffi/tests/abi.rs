use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use fieldmaps_ffi::*;

fn last_error() -> String {
    let p = fm_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn field(p: u32, n: u32) -> *mut FmField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fm_field_new(p, n, &mut f) }, FmStatus::Ok);
    f
}

fn expr_map(f: *const FmField, e: &str) -> *mut FmMap {
    let mut m = ptr::null_mut();
    let e = CString::new(e).unwrap();
    assert_eq!(unsafe { fm_map_from_expression(f, e.as_ptr(), &mut m) }, FmStatus::Ok);
    m
}

#[test]
fn field_arithmetic() {
    let f = field(2, 4);
    assert_eq!(unsafe { fm_field_order(f) }, 16);
    let mut out = 0;
    unsafe {
        assert_eq!(fm_field_add(f, 5, 3, &mut out), FmStatus::Ok);
        assert_eq!(out, 6);
        assert_eq!(fm_field_mul(f, 2, 8, &mut out), FmStatus::Ok);
        assert_eq!(out, 3);
        assert_eq!(fm_field_inv(f, 7, &mut out), FmStatus::Ok);
        let inv = out;
        assert_eq!(fm_field_mul(f, 7, inv, &mut out), FmStatus::Ok);
        assert_eq!(out, 1);
        assert_eq!(fm_field_inv(f, 0, &mut out), FmStatus::InvalidArgument);
        assert_eq!(fm_field_add(f, 16, 0, &mut out), FmStatus::InvalidArgument);
        fm_field_free(f);
    }
}

#[test]
fn field_errors() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { fm_field_new(4, 2, &mut f) }, FmStatus::InvalidArgument);
    assert!(last_error().contains("not a prime"));
    assert!(f.is_null());
    let reducible = [1u32, 0, 1];
    assert_eq!(unsafe { fm_field_new_with_modulus(2, 2, reducible.as_ptr(), 3, &mut f) }, FmStatus::InvalidArgument);
    let good = [1u32, 1, 0, 0, 1];
    assert_eq!(unsafe { fm_field_new_with_modulus(2, 4, good.as_ptr(), 5, &mut f) }, FmStatus::Ok);
    unsafe { fm_field_free(f) };
    assert_eq!(unsafe { fm_field_new(2, 4, ptr::null_mut()) }, FmStatus::NullPointer);
    assert_eq!(unsafe { fm_field_new(2, 40, &mut f) }, FmStatus::CapExceeded);
}

#[test]
fn map_queries() {
    let f = field(2, 4);
    let m = expr_map(f, "x^3");
    let (mut image, mut d, mut m3) = (0u64, 0u32, 0u64);
    unsafe {
        assert_eq!(fm_map_order(m), 16);
        assert_eq!(fm_map_image_size(m, &mut image), FmStatus::Ok);
        assert_eq!(fm_map_uniformity(m, &mut d), FmStatus::Ok);
        assert_eq!(fm_map_m_count(m, 3, &mut m3), FmStatus::Ok);
        let mut y = 0;
        assert_eq!(fm_map_eval(m, 2, &mut y), FmStatus::Ok);
        assert_eq!(y, 8);
    }
    assert_eq!((image, d, m3), (6, 2, 5));
    let mut w = vec![0i64; 16];
    unsafe {
        assert_eq!(fm_map_walsh_component(m, 1, w.as_mut_ptr(), 16), FmStatus::Ok);
        assert!(w.iter().all(|v| [-8, 0, 4, 8, -4].contains(v)));
        assert_eq!(w.iter().map(|v| v * v).sum::<i64>(), 256);
        assert_eq!(fm_map_walsh_component(m, 1, w.as_mut_ptr(), 15), FmStatus::InvalidArgument);
        assert_eq!(fm_map_walsh_component(m, 0, w.as_mut_ptr(), 16), FmStatus::InvalidArgument);
        fm_map_free(m);
    }
    let g = field(3, 2);
    let m = expr_map(g, "x^2");
    let mut w = vec![0i64; 9];
    assert_eq!(unsafe { fm_map_walsh_component(m, 1, w.as_mut_ptr(), 9) }, FmStatus::NotApplicable);
    unsafe {
        fm_map_free(m);
        fm_field_free(g);
        fm_field_free(f);
    }
}

#[test]
fn table_and_lut_inputs() {
    let f = field(2, 3);
    let values: Vec<u32> = (0..8).collect();
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(fm_map_from_table(f, values.as_ptr(), 8, &mut m), FmStatus::Ok);
        let mut image = 0;
        assert_eq!(fm_map_image_size(m, &mut image), FmStatus::Ok);
        assert_eq!(image, 8);
        fm_map_free(m);
        assert_eq!(fm_map_from_table(f, values.as_ptr(), 7, &mut m), FmStatus::InvalidArgument);
        let bad = [9u32; 8];
        assert_eq!(fm_map_from_table(f, bad.as_ptr(), 8, &mut m), FmStatus::InvalidArgument);
        fm_field_free(f);
    }
    let lut = CString::new("2 2 1 1 1\n0 1 1 0\n").unwrap();
    unsafe {
        assert_eq!(fm_map_from_lut(lut.as_ptr(), &mut m), FmStatus::Ok);
        let mut image = 0;
        assert_eq!(fm_map_image_size(m, &mut image), FmStatus::Ok);
        assert_eq!(image, 2);
        fm_map_free(m);
    }
    let broken = CString::new("2 2 1 1 1\n0 1\n").unwrap();
    assert_ne!(unsafe { fm_map_from_lut(broken.as_ptr(), &mut m) }, FmStatus::Ok);
}

#[test]
fn family_maps() {
    let mut m = ptr::null_mut();
    let id = CString::new("budaghyan_f1").unwrap();
    let params = CString::new(r#"{"m": 3, "a": 1}"#).unwrap();
    let mut image = 0;
    unsafe {
        assert_eq!(fm_map_from_family(id.as_ptr(), params.as_ptr(), &mut m), FmStatus::Ok);
        assert_eq!(fm_map_image_size(m, &mut image), FmStatus::Ok);
        fm_map_free(m);
    }
    assert_eq!(image, 320);
    let id = CString::new("cube-trace-2to1").unwrap();
    let params = CString::new(r#"{"n": 4, "a": 1}"#).unwrap();
    assert_eq!(unsafe { fm_map_from_family(id.as_ptr(), params.as_ptr(), &mut m) }, FmStatus::Hypothesis);
    assert!(last_error().contains("n odd"));
    let id = CString::new("kasami").unwrap();
    assert_eq!(unsafe { fm_map_from_family(id.as_ptr(), ptr::null(), &mut m) }, FmStatus::UnknownFamily);
    let id = CString::new("min7").unwrap();
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { fm_map_from_family(id.as_ptr(), junk.as_ptr(), &mut m) }, FmStatus::Parse);
}

#[test]
fn analyze_and_verify() {
    let f = field(2, 4);
    let m = expr_map(f, "x^3");
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(fm_map_analyze_json(m, ptr::null(), &mut json), FmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        fm_string_free(json);
        assert_eq!(v["preimage"]["image_size"], 6);
        assert_eq!(v["provenance"]["expr"], "x^3");
        let suite = CString::new("ub.*").unwrap();
        assert_eq!(fm_map_analyze_json(m, suite.as_ptr(), &mut json), FmStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        fm_string_free(json);
        assert!(v["theorems"].as_array().unwrap().iter().all(|t| t["id"].as_str().unwrap().starts_with("ub.")));
        let mut failures = 99;
        assert_eq!(fm_map_verify(m, ptr::null(), &mut failures), FmStatus::Ok);
        assert_eq!(failures, 0);
        fm_map_free(m);
        fm_field_free(f);
    }
    let big = field(2, 16);
    let m = expr_map(big, "x^3");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { fm_map_analyze_json(m, ptr::null(), &mut json) }, FmStatus::CapExceeded);
    unsafe {
        fm_map_free(m);
        fm_field_free(big);
    }
}

#[test]
fn null_handles() {
    let mut out = 0u64;
    unsafe {
        assert_eq!(fm_map_image_size(ptr::null(), &mut out), FmStatus::NullPointer);
        assert_eq!(fm_field_order(ptr::null()), 0);
        assert_eq!(fm_map_order(ptr::null()), 0);
        fm_map_free(ptr::null_mut());
        fm_field_free(ptr::null_mut());
        fm_string_free(ptr::null_mut());
    }
    assert!(last_error().contains("null"));
    assert!(unsafe { CStr::from_ptr(fm_version()) }.to_str().unwrap().starts_with("0."));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

fn cc_available() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles() {
    if !cc_available() {
        eprintln!("cc not found, skipping");
        return;
    }
    let out = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-std=c99", "-x", "c"])
        .arg(header().join("fieldmaps.h"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c++"])
        .arg(header().join("fieldmaps.h"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "fieldmaps.h"

int main(void) {
    FmField *f = NULL;
    FmMap *m = NULL;
    uint64_t image = 0;
    uint32_t d = 0;
    if (fm_field_new(2, 4, &f) != FM_STATUS_OK) return 1;
    if (fm_map_from_expression(f, "x^3", &m) != FM_STATUS_OK) return 2;
    if (fm_map_image_size(m, &image) != FM_STATUS_OK || image != 6) return 3;
    if (fm_map_uniformity(m, &d) != FM_STATUS_OK || d != 2) return 4;
    if (fm_map_from_expression(f, "x^", &m) == FM_STATUS_OK) return 5;
    printf("%s\n", fm_last_error_message());
    fm_map_free(m);
    fm_field_free(f);
    return 0;
}
"#;

#[test]
fn c_program_links_against_staticlib() {
    if !cc_available() {
        eprintln!("cc not found, skipping");
        return;
    }
    // target/<profile>/deps/<test> -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libfieldmaps_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("parse error"));
}
