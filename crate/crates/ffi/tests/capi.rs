use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use tricover_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    tc_string_free(p);
    s
}

fn last_error() -> String {
    let p = tc_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn generated(construction: &str, n: u32, eps: &str, force: bool) -> *mut TcCovering {
    let mut h = ptr::null_mut();
    let status = tc_generate(cstr(construction).as_ptr(), n, cstr(eps).as_ptr(), force, &mut h);
    assert_eq!(status, TcStatus::Ok, "{}", last_error());
    h
}

#[test]
fn generate_verify_round_trip() {
    unsafe {
        let h = generated("cs1", 4, "1/5", false);
        assert_eq!(tc_covering_piece_count(h), 18);
        let mut covered = false;
        let mut witness = ptr::null_mut();
        assert_eq!(tc_verify(h, &mut covered, &mut witness), TcStatus::Ok);
        assert!(covered);
        assert!(witness.is_null());

        let mut json = ptr::null_mut();
        assert_eq!(tc_covering_to_json(h, &mut json), TcStatus::Ok);
        let json = take_string(json);
        let mut back = ptr::null_mut();
        assert_eq!(tc_covering_from_json(cstr(&json).as_ptr(), &mut back), TcStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(tc_covering_to_json(back, &mut again), TcStatus::Ok);
        assert_eq!(take_string(again), json);

        let mut svg = ptr::null_mut();
        assert_eq!(tc_render_svg(back, &mut svg), TcStatus::Ok);
        assert_eq!(take_string(svg).matches("<polygon").count(), 19);

        let mut proj = ptr::null_mut();
        assert_eq!(tc_project_json(back, &mut proj), TcStatus::Ok);
        let proj: serde_json::Value = serde_json::from_str(&take_string(proj)).unwrap();
        assert_eq!(proj["verdict"]["verdict"], "necessary_condition_holds");

        tc_covering_free(back);
        tc_covering_free(h);
    }
}

#[test]
fn uncovered_instance_reports_witness() {
    unsafe {
        let h = generated("cs1", 3, "1/3", true);
        let mut covered = true;
        let mut witness = ptr::null_mut();
        assert_eq!(tc_verify(h, &mut covered, &mut witness), TcStatus::Ok);
        assert!(!covered);
        let w: serde_json::Value = serde_json::from_str(&take_string(witness)).unwrap();
        assert!(w["y"].is_string() && w["x_lo"].is_string() && w["x_hi"].is_string());
        tc_covering_free(h);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut h = ptr::null_mut();
        let s = tc_generate(cstr("cs1").as_ptr(), 4, cstr("1/4").as_ptr(), false, &mut h);
        assert_eq!(s, TcStatus::Inadmissible);
        assert!(h.is_null());
        assert!(last_error().contains("1/5"));

        assert_eq!(tc_generate(cstr("cs1").as_ptr(), 4, cstr("x").as_ptr(), false, &mut h), TcStatus::Parse);
        assert_eq!(tc_generate(cstr("cs9").as_ptr(), 4, cstr("0").as_ptr(), false, &mut h), TcStatus::InvalidInput);
        assert_eq!(tc_generate(ptr::null(), 4, cstr("0").as_ptr(), false, &mut h), TcStatus::NullArgument);
        assert_eq!(
            tc_generate(cstr("grid").as_ptr(), 4, cstr("0").as_ptr(), false, ptr::null_mut()),
            TcStatus::NullArgument
        );

        let bad_utf8 = [0xffu8, 0];
        assert_eq!(
            tc_covering_from_json(bad_utf8.as_ptr().cast(), &mut h),
            TcStatus::InvalidUtf8
        );
        assert_eq!(tc_covering_from_json(cstr("{").as_ptr(), &mut h), TcStatus::Parse);
        let v2 = r#"{"schema_version": 2, "target": [], "pieces": []}"#;
        assert_eq!(tc_covering_from_json(cstr(v2).as_ptr(), &mut h), TcStatus::Parse);

        let mut covered = false;
        assert_eq!(tc_verify(ptr::null(), &mut covered, ptr::null_mut()), TcStatus::NullArgument);
        assert_eq!(tc_covering_piece_count(ptr::null()), 0);
        tc_covering_free(ptr::null_mut());
        tc_string_free(ptr::null_mut());

        let ok = generated("grid", 2, "0", false);
        assert!(tc_last_error().is_null());
        tc_covering_free(ok);
    }
}

#[test]
fn bound_verdicts() {
    unsafe {
        let mut v = TcBoundVerdict::WithinBound;
        let mut trace = ptr::null_mut();
        assert_eq!(tc_bound(3, 2, cstr("1/3").as_ptr(), &mut v, &mut trace), TcStatus::Ok);
        assert_eq!(v, TcBoundVerdict::Impossible);
        let report: serde_json::Value = serde_json::from_str(&take_string(trace)).unwrap();
        assert_eq!(report["threshold"], "1/4");

        assert_eq!(tc_bound(3, 2, cstr("1/4").as_ptr(), &mut v, ptr::null_mut()), TcStatus::Ok);
        assert_eq!(v, TcBoundVerdict::WithinBound);
        assert_eq!(tc_bound(3, 5, cstr("1/4").as_ptr(), &mut v, ptr::null_mut()), TcStatus::InvalidInput);
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn header() -> PathBuf {
    manifest_dir().join("include/tricover.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "tc_last_error",
        "tc_generate",
        "tc_covering_from_json",
        "tc_covering_to_json",
        "tc_covering_piece_count",
        "tc_verify",
        "tc_project_json",
        "tc_render_svg",
        "tc_bound",
        "tc_covering_free",
        "tc_string_free",
        "typedef struct TcCovering TcCovering",
        "TC_STATUS_INADMISSIBLE = 5",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

fn c_compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

/// Directory holding the library artifacts for this profile
/// (`target/<profile>`), two levels above the test executable.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tricover.h"

int main(void) {
    TcCovering *h = NULL;
    if (tc_generate("cs2", 3, "1/6", false, &h) != TC_STATUS_OK) return 10;
    bool covered = false;
    if (tc_verify(h, &covered, NULL) != TC_STATUS_OK || !covered) return 11;
    tc_covering_free(h);
    if (tc_generate("cs2", 3, "1/5", false, &h) != TC_STATUS_INADMISSIBLE) return 12;
    if (tc_last_error() == NULL || strstr(tc_last_error(), "1/6") == NULL) return 13;
    puts("ok");
    return 0;
}
"#;

#[test]
fn header_compiles_and_links_from_c() {
    let Some(cc) = c_compiler() else {
        eprintln!("no C compiler on PATH; header compile check not run");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = header().parent().unwrap().to_path_buf();

    let syntax = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(syntax.status.success(), "{}", String::from_utf8_lossy(&syntax.stderr));

    let staticlib = artifact_dir().join("libtricover_ffi.a");
    if !staticlib.exists() {
        eprintln!("{} not built; link check not run", staticlib.display());
        return;
    }
    let exe = dir.path().join("smoke");
    let link = Command::new(&cc)
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(link.status.success(), "{}", String::from_utf8_lossy(&link.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
