use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use spinhol_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    spinhol_string_free(p);
    s
}

#[test]
fn round_trip_and_product() {
    unsafe {
        let rec = CString::new(r#"{"n":8,"terms":[{"blade":[1,2,3,4],"num":1,"den":1},{"blade":[5,6,7,8],"num":1,"den":1}]}"#).unwrap();
        let mut t = ptr::null_mut();
        assert_eq!(spinhol_multivector_from_json(rec.as_ptr(), &mut t), SpinholStatus::Ok);
        let mut n = 0usize;
        assert_eq!(spinhol_multivector_dim(t, &mut n), SpinholStatus::Ok);
        assert_eq!(n, 8);

        let mut sq = ptr::null_mut();
        assert_eq!(spinhol_multivector_product(t, t, &mut sq), SpinholStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(spinhol_multivector_to_json(sq, &mut json), SpinholStatus::Ok);
        // (e1234 + e5678)^2 = 2 + 2 e12345678
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["terms"].as_array().unwrap().len(), 2);

        let mut desc = ptr::null_mut();
        assert_eq!(spinhol_classify(t, &mut desc), SpinholStatus::Ok);
        let d: serde_json::Value = serde_json::from_str(&take_string(desc)).unwrap();
        assert_eq!(d["label"], "so(8,1)");
        assert_eq!(d["dim"], 36);

        let mut z = usize::MAX;
        assert_eq!(spinhol_fixed_spinor_dim(t, &mut z), SpinholStatus::Ok);
        assert_eq!(z, 0);
        spinhol_multivector_free(sq);
        spinhol_multivector_free(t);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(spinhol_multivector_from_json(ptr::null(), &mut t), SpinholStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(spinhol_multivector_from_json(bad.as_ptr(), &mut t), SpinholStatus::Clifford);
        assert!(take_string(spinhol_last_error()).contains("malformed"));

        let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(spinhol_volume(7, &mut a), SpinholStatus::Ok);
        assert_eq!(spinhol_volume(8, &mut b), SpinholStatus::Ok);
        assert_eq!(spinhol_multivector_product(a, b, &mut c), SpinholStatus::Clifford);
        assert!(c.is_null());

        let mut v9 = ptr::null_mut();
        assert_eq!(spinhol_volume(9, &mut v9), SpinholStatus::Ok);
        let mut z = 0usize;
        assert_eq!(spinhol_fixed_spinor_dim(v9, &mut z), SpinholStatus::Spin);
        assert!(take_string(spinhol_last_error()).contains("unsupported n"));
        assert_eq!(spinhol_volume(0, &mut c), SpinholStatus::Clifford);
        for h in [a, b, v9] {
            spinhol_multivector_free(h);
        }
        spinhol_multivector_free(ptr::null_mut());
        spinhol_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include/spinhol.h");
    assert!(header.exists(), "build script writes the header");
    let lib = target_dir().join("libspinhol_ffi.a");
    assert!(lib.exists(), "static library at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("unsupported dimension"));
}
