use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use rldual::algebra::print_algebra;
use rldual::fixtures;
use rldual_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> Option<String> {
    let p = rld_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn fixture(name: &str) -> *mut RldAlgebra {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { rld_algebra_fixture(c(name).as_ptr(), &mut h) },
        RldStatus::Ok
    );
    h
}

fn parsed(a: &rldual::algebra::Algebra) -> *mut RldAlgebra {
    let text = c(&print_algebra(&a.spec()));
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { rld_algebra_parse(text.as_ptr(), &mut h) },
        RldStatus::Ok
    );
    h
}

#[test]
fn fixture_sizes_and_spectra() {
    for (name, size, points) in [("g3", 3, 2), ("nm4", 4, 3), ("bool4", 4, 2)] {
        let h = fixture(name);
        let (mut n, mut s) = (0, 0);
        unsafe {
            assert_eq!(rld_algebra_size(h, &mut n), RldStatus::Ok);
            assert_eq!(rld_spectrum_size(h, &mut s), RldStatus::Ok);
            rld_algebra_free(h);
        }
        assert_eq!((n, s), (size, points), "{name}");
    }
}

#[test]
fn parse_round_trip_and_properties() {
    let text = c(&print_algebra(&fixtures::nm4().spec()));
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(rld_algebra_parse(text.as_ptr(), &mut h), RldStatus::Ok);
        let mut v = -2;
        assert_eq!(
            rld_algebra_property(h, c("sbp").as_ptr(), &mut v),
            RldStatus::Ok
        );
        assert_eq!(v, 1);
        assert_eq!(
            rld_algebra_property(h, c("zero_divisors").as_ptr(), &mut v),
            RldStatus::Ok
        );
        assert_eq!(v, 1);
        assert_eq!(
            rld_algebra_property(h, c("nonsense").as_ptr(), &mut v),
            RldStatus::UnknownName
        );
        assert!(last_error().unwrap().contains("nonsense"));
        rld_algebra_free(h);
    }
    let gmtl = parsed(&fixtures::goedel_hoop(3));
    let mut v = 0;
    unsafe {
        assert_eq!(
            rld_algebra_property(gmtl, c("zero_divisors").as_ptr(), &mut v),
            RldStatus::Ok
        );
        assert_eq!(v, -1);
        rld_algebra_free(gmtl);
    }
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(
            rld_algebra_parse(ptr::null(), &mut h),
            RldStatus::NullPointer
        );
        assert_eq!(
            rld_algebra_parse(c("size: x").as_ptr(), &mut h),
            RldStatus::Parse
        );
        assert!(last_error().is_some());
        let bad =
            c("name: b\nmode: bounded\nsize: 2\nleq:\n11\n01\nmul:\n0 0\n0 0\none: 1\nzero: 0\n");
        assert_eq!(
            rld_algebra_parse(bad.as_ptr(), &mut h),
            RldStatus::InvalidAlgebra
        );
        assert_eq!(
            rld_algebra_fixture(c("nope").as_ptr(), &mut h),
            RldStatus::UnknownName
        );
        assert!(h.is_null());
        let mut n = 0;
        assert_eq!(
            rld_algebra_size(ptr::null(), &mut n),
            RldStatus::NullPointer
        );
        let g3 = fixture("g3");
        assert_eq!(last_error(), None);
        assert_eq!(
            rld_algebra_size(g3, ptr::null_mut()),
            RldStatus::NullPointer
        );
        rld_algebra_free(g3);
        let invalid = [0xffu8, 0];
        assert_eq!(
            rld_algebra_fixture(invalid.as_ptr() as *const c_char, &mut h),
            RldStatus::InvalidUtf8
        );
        rld_algebra_free(ptr::null_mut());
        rld_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suites() {
    let nm4 = fixture("nm4");
    let heyting = parsed(&fixtures::heyting5());
    let mut ok = false;
    unsafe {
        assert_eq!(
            rld_verify(nm4, c("bowtie").as_ptr(), &mut ok),
            RldStatus::Ok
        );
        assert!(ok);
        assert_eq!(
            rld_verify(nm4, c("nope").as_ptr(), &mut ok),
            RldStatus::UnknownName
        );
        assert_eq!(
            rld_verify(heyting, c("bowtie").as_ptr(), &mut ok),
            RldStatus::NotApplicable
        );
        rld_algebra_free(heyting);
        rld_algebra_free(nm4);
    }
}

#[test]
fn spectrum_json_and_chain_counts() {
    let g3 = fixture("g3");
    let mut s: *mut c_char = ptr::null_mut();
    unsafe {
        assert_eq!(rld_spectrum_json(g3, &mut s), RldStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        rld_string_free(s);
        rld_algebra_free(g3);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.is_object());
        let mut n = 0;
        let counts: Vec<usize> = (1..=5)
            .map(|k| {
                assert_eq!(rld_mtl_chain_count(k, &mut n), RldStatus::Ok);
                n
            })
            .collect();
        assert_eq!(counts, [1, 1, 2, 6, 22]);
        assert_eq!(rld_mtl_chain_count(100, &mut n), RldStatus::BoundExceeded);
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/rldual.h");
    let text = std::fs::read_to_string(&header).expect("header written by build.rs");
    for f in [
        "rld_algebra_parse",
        "rld_verify",
        "rld_last_error",
        "rld_string_free",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
