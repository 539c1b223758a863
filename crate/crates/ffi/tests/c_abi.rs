//! Drives the exported functions through their C signatures, and builds a
//! small C program against the generated header and the static library.

use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use darboux_ffi::*;

fn last_error() -> String {
    let p = darboux_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_transform(levels: &[u32]) -> Result<*mut DarbouxTransform, DarbouxStatus> {
    let mut handle = ptr::null_mut();
    let status = unsafe { darboux_transform_new(ptr::null(), levels.as_ptr(), levels.len(), &mut handle) };
    if status == DarbouxStatus::Ok {
        Ok(handle)
    } else {
        Err(status)
    }
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { darboux_string_free(p) };
    s
}

#[test]
fn krein_check_reports_failing_index() {
    let (mut ok, mut k) = (true, 0u32);
    let status = unsafe { darboux_krein_check([1u32].as_ptr(), 1, &mut ok, &mut k) };
    assert_eq!(status, DarbouxStatus::Ok);
    assert!(!ok);
    assert_eq!(k, 0);

    let status = unsafe { darboux_krein_check([1u32, 2].as_ptr(), 2, &mut ok, &mut k) };
    assert_eq!(status, DarbouxStatus::Ok);
    assert!(ok);
    assert_eq!(k, u32::MAX);
}

#[test]
fn inadmissible_and_invalid_inputs() {
    assert_eq!(new_transform(&[1]).unwrap_err(), DarbouxStatus::Inadmissible);
    assert!(last_error().contains("k = 0"));
    assert_eq!(new_transform(&[]).unwrap_err(), DarbouxStatus::InvalidArgument);
    assert_eq!(new_transform(&[2, 2]).unwrap_err(), DarbouxStatus::InvalidArgument);

    let name = CString::new("coulomb").unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { darboux_transform_new(name.as_ptr(), [0u32].as_ptr(), 1, &mut handle) };
    assert_eq!(status, DarbouxStatus::InvalidArgument);
    assert!(handle.is_null());

    let status = unsafe { darboux_transform_new(ptr::null(), [0u32].as_ptr(), 1, ptr::null_mut()) };
    assert_eq!(status, DarbouxStatus::NullPointer);
    let mut order = 0usize;
    assert_eq!(
        unsafe { darboux_transform_order(ptr::null(), &mut order) },
        DarbouxStatus::NullPointer
    );
}

#[test]
fn potential_and_eigenfunctions() {
    let t = new_transform(&[0, 1]).unwrap();
    let (mut v0, mut vn) = (0.0, 0.0);
    for x in [-3.0, 0.0, 0.7, 5.0] {
        assert_eq!(
            unsafe { darboux_transform_potential(t, x, &mut v0, &mut vn) },
            DarbouxStatus::Ok
        );
        assert!((vn - v0 - 2.0).abs() < 1e-12);
    }

    // psi_2 of the ground-pair transform is the oscillator ground state.
    let mut psi = 0.0;
    assert_eq!(
        unsafe { darboux_transform_eigenfunction(t, 2, 0.0, &mut psi) },
        DarbouxStatus::Ok
    );
    let ground = (2.0 * std::f64::consts::PI).powf(-0.25);
    assert!((psi.abs() - ground).abs() < 1e-12, "{psi}");

    assert_eq!(
        unsafe { darboux_transform_eigenfunction(t, 1, 0.0, &mut psi) },
        DarbouxStatus::InvalidArgument
    );
    unsafe { darboux_transform_free(t) };
}

#[test]
fn json_verify_classify_and_spectrum() {
    let t = new_transform(&[1, 2]).unwrap();
    let mut order = 0usize;
    assert_eq!(unsafe { darboux_transform_order(t, &mut order) }, DarbouxStatus::Ok);
    assert_eq!(order, 2);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { darboux_transform_to_json(t, &mut out) }, DarbouxStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(doc["wronskian_poly"][2]["num"], "1");

    let mut passed = false;
    assert_eq!(
        unsafe { darboux_transform_verify(t, 5, true, &mut passed, &mut out) },
        DarbouxStatus::Ok
    );
    assert!(passed);
    let report: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(report["passed"], true);

    assert_eq!(
        unsafe { darboux_transform_classify_json(t, 4, &mut out) },
        DarbouxStatus::Ok
    );
    let cls: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(cls["below_vacuum"], serde_json::json!([0]));

    let mut values = [0.0; 4];
    let status = unsafe { darboux_transform_spectrum(t, -12.0, 12.0, 2401, 4, values.as_mut_ptr()) };
    assert_eq!(status, DarbouxStatus::Ok);
    for (v, e) in values.iter().zip([0.0, 3.0, 4.0, 5.0]) {
        assert!((v - e).abs() < 5e-3, "{v} vs {e}");
    }
    let status = unsafe { darboux_transform_spectrum(t, 1.0, 0.0, 100, 4, values.as_mut_ptr()) };
    assert_eq!(status, DarbouxStatus::InvalidArgument);
    unsafe { darboux_transform_free(t) };
}

#[test]
fn free_accepts_null() {
    unsafe {
        darboux_transform_free(ptr::null_mut());
        darboux_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // tests run from <target>/<profile>/deps/
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libdarboux_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out_dir = tempfile::tempdir().unwrap();
    let exe = out_dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler runs");
    assert!(status.success(), "C build failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
