use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use genturan_ffi::*;

fn graph(s: &str) -> *mut GtGraph {
    let c = CString::new(s).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gt_graph_from_graph6(c.as_ptr(), &mut g) }, GtStatus::Ok);
    g
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gt_string_free(s);
    out
}

#[test]
fn round_trip_and_counts() {
    unsafe {
        let k4 = graph("C~");
        let tri = graph("Bw");
        let mut s = ptr::null_mut();
        assert_eq!(gt_graph_to_graph6(k4, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "C~");
        assert_eq!(gt_count_copies(tri, k4, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "4");
        assert_eq!(gt_count_shape(k4, GtShape::Cycle, 4, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "3");
        assert_eq!(gt_count_shape(k4, GtShape::Path, 3, &mut s), GtStatus::Ok);
        assert_eq!(take(s), "12");
        let (mut n, mut e) = (0usize, 0usize);
        assert_eq!(gt_graph_size(k4, &mut n, &mut e), GtStatus::Ok);
        assert_eq!((n, e), (4, 6));
        let mut free = true;
        assert_eq!(gt_is_free(k4, tri, &mut free), GtStatus::Ok);
        assert!(!free);
        gt_graph_free(k4);
        gt_graph_free(tri);
    }
}

#[test]
fn constructors_and_errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gt_furedi(6, 2, &mut g), GtStatus::Precondition);
        assert!(g.is_null());
        let msg = CStr::from_ptr(gt_last_error()).to_str().unwrap();
        assert!(msg.contains("not a prime power"));

        assert_eq!(gt_furedi(5, 2, &mut g), GtStatus::Ok);
        let c4 = graph("Cl");
        let mut free = false;
        assert_eq!(gt_is_free(g, c4, &mut free), GtStatus::Ok);
        assert!(free);
        gt_graph_free(g);
        gt_graph_free(c4);

        let bad = CString::new("\x7f\x7f").unwrap();
        assert_eq!(gt_graph_from_graph6(bad.as_ptr(), &mut g), GtStatus::InvalidGraph6);
        assert_eq!(gt_graph_from_graph6(ptr::null(), &mut g), GtStatus::NullPointer);
        let mut s = ptr::null_mut();
        assert_eq!(gt_graph_to_graph6(ptr::null(), &mut s), GtStatus::NullPointer);
        assert_eq!(
            gt_count_shape(ptr::null(), GtShape::Path, 2, &mut s),
            GtStatus::NullPointer
        );

        assert_eq!(gt_turan(6, 4, &mut g), GtStatus::Ok);
        let (mut n, mut e) = (0, 0);
        gt_graph_size(g, &mut n, &mut e);
        assert_eq!((n, e), (6, 12));
        gt_graph_free(g);
        gt_graph_free(ptr::null_mut());
        gt_string_free(ptr::null_mut());
    }
}

#[test]
fn canonical_form_identifies_isomorphs() {
    unsafe {
        // Two labellings of P4.
        let a = graph("Ch");
        let b = graph("CU");
        let (mut sa, mut sb) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(gt_canonical_graph6(a, &mut sa), GtStatus::Ok);
        assert_eq!(gt_canonical_graph6(b, &mut sb), GtStatus::Ok);
        assert_eq!(take(sa), take(sb));
        gt_graph_free(a);
        gt_graph_free(b);
    }
}

#[test]
fn classify_verdicts() {
    unsafe {
        let c4 = graph("Cl");
        let mut v = GtVerdict::Quadratic;
        assert_eq!(gt_classify(4, c4, &mut v), GtStatus::Ok);
        assert_eq!(v, GtVerdict::Linear);
        assert_eq!(gt_classify(3, c4, &mut v), GtStatus::Precondition);
        gt_graph_free(c4);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gt_furedi(6, 2, &mut g), GtStatus::Precondition);
    }
    let other = std::thread::spawn(|| gt_last_error().is_null()).join().unwrap();
    assert!(other);
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "genturan.h"

int main(void) {
    GtGraph *g = NULL, *c4 = NULL;
    char *s = NULL;
    bool free_ = false;
    if (gt_furedi(7, 2, &g) != GT_STATUS_OK) return 1;
    if (gt_graph_from_graph6("Cl", &c4) != GT_STATUS_OK) return 2;
    if (gt_is_free(g, c4, &free_) != GT_STATUS_OK || !free_) return 3;
    if (gt_count_shape(g, GT_SHAPE_CYCLE, 5, &s) != GT_STATUS_OK) return 4;
    printf("%s\n", s);
    gt_string_free(s);
    if (gt_furedi(6, 2, &g) != GT_STATUS_PRECONDITION) return 5;
    if (strstr(gt_last_error(), "prime power") == NULL) return 6;
    gt_graph_free(g);
    gt_graph_free(c4);
    return 0;
}
"#;

/// Builds a C program against the generated header and the static library.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("genturan.h").exists());
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libgenturan_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping link check");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = dir.join("ffi_smoke.c");
    let exe = dir.join("ffi_smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();
    if !lib.exists() {
        // The static archive is only produced by a library build; check the header at least.
        let st = Command::new("cc")
            .arg("-fsyntax-only")
            .arg("-I")
            .arg(&header_dir)
            .arg(&src)
            .status()
            .unwrap();
        assert!(st.success());
        return;
    }
    let st = Command::new("cc")
        .arg("-I")
        .arg(&header_dir)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    // F_{7,2} has 792 five-cycles.
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "792");
}
