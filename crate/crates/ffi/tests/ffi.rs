use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::process::Command;
use std::ptr;

use permrex_ffi::*;

const R4: &str =
    "(12+21)(34+43)+(13+31)(24+42)+(23+32)(14+41)+(14+41)(23+32)+(24+42)(13+31)+(34+43)(12+21)";

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { permrex_string_free(p) };
    s
}

fn last_error() -> String {
    let p = permrex_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn build(builder: PermrexBuilder, n: u32) -> *mut PermrexRegex {
    let mut re = ptr::null_mut();
    assert_eq!(
        unsafe { permrex_build(builder as u32, n, 0, &mut re) },
        PermrexStatus::Ok
    );
    assert!(!re.is_null());
    re
}

#[test]
fn build_render_and_measure() {
    let re = build(PermrexBuilder::DivideAndConquer, 4);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { permrex_render(re, 0, &mut s) }, PermrexStatus::Ok);
    assert_eq!(take_string(s), R4);
    assert_eq!(
        unsafe { permrex_alphabetic_length(re, &mut s) },
        PermrexStatus::Ok
    );
    assert_eq!(take_string(s), "48");
    assert_eq!(unsafe { permrex_render(re, 1, &mut s) }, PermrexStatus::Ok);
    assert!(take_string(s).starts_with("( 1 2 + 2 1 )"));
    unsafe { permrex_regex_free(re) };
}

#[test]
fn counts_as_decimal_strings() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { permrex_f(10, &mut s) }, PermrexStatus::Ok);
    assert_eq!(take_string(s), "95760");
    assert_eq!(unsafe { permrex_t(4, &mut s) }, PermrexStatus::Ok);
    assert_eq!(take_string(s), "64");
    assert_eq!(unsafe { permrex_f(1024, &mut s) }, PermrexStatus::Ok);
    assert_eq!(take_string(s).len(), 610);
    assert_eq!(
        unsafe { permrex_f(0, &mut s) },
        PermrexStatus::InvalidArgument
    );
}

#[test]
fn verify_builders() {
    for (b, n) in [
        (PermrexBuilder::DivideAndConquer, 6),
        (PermrexBuilder::TailRecursive, 5),
        (PermrexBuilder::FlatUnion, 4),
    ] {
        let re = build(b, n);
        let mut c = PermrexCertificate::default();
        assert_eq!(unsafe { permrex_verify(re, n, &mut c) }, PermrexStatus::Ok);
        assert_eq!(c.passed, 1, "{b:?}");
        assert_eq!(c.words_tested, (n as u64).pow(n));
        assert_eq!(c.accepted, (1..=n as u64).product::<u64>());
        assert_eq!(c.non_permutations_accepted, 0);
        unsafe { permrex_regex_free(re) };
    }
}

#[test]
fn parse_and_reject() {
    let text = CString::new("(12+21)3").unwrap();
    let mut re = ptr::null_mut();
    assert_eq!(
        unsafe { permrex_parse(text.as_ptr(), 3, &mut re) },
        PermrexStatus::Ok
    );
    let mut c = PermrexCertificate::default();
    assert_eq!(unsafe { permrex_verify(re, 3, &mut c) }, PermrexStatus::Ok);
    assert_eq!(c.passed, 0);
    assert_eq!(c.accepted, 2);
    unsafe { permrex_regex_free(re) };

    let bad = CString::new("(12+").unwrap();
    assert_eq!(
        unsafe { permrex_parse(bad.as_ptr(), 3, &mut re) },
        PermrexStatus::ParseError
    );
    assert!(!last_error().is_empty());
}

#[test]
fn caps_and_bad_arguments() {
    let mut re = ptr::null_mut();
    assert_eq!(
        unsafe { permrex_build(2, 9, 0, &mut re) },
        PermrexStatus::CapExceeded
    );
    assert_eq!(
        unsafe { permrex_build(0, 16, 0, &mut re) },
        PermrexStatus::CapExceeded
    );
    assert_eq!(
        unsafe { permrex_build(7, 3, 0, &mut re) },
        PermrexStatus::InvalidArgument
    );
    assert!(last_error().contains('7'));
    assert!(re.is_null());

    let big = build(PermrexBuilder::DivideAndConquer, 8);
    let mut c = PermrexCertificate::default();
    assert_eq!(
        unsafe { permrex_verify(big, 8, &mut c) },
        PermrexStatus::CapExceeded
    );
    unsafe { permrex_regex_free(big) };
}

#[test]
fn null_pointers() {
    unsafe {
        assert_eq!(
            permrex_build(0, 3, 0, ptr::null_mut()),
            PermrexStatus::NullPointer
        );
        assert_eq!(
            permrex_parse(ptr::null(), 3, &mut ptr::null_mut()),
            PermrexStatus::NullPointer
        );
        assert_eq!(
            permrex_render(ptr::null(), 0, &mut ptr::null_mut()),
            PermrexStatus::NullPointer
        );
        assert_eq!(
            permrex_alphabetic_length(ptr::null(), &mut ptr::null_mut()),
            PermrexStatus::NullPointer
        );
        assert_eq!(permrex_f(3, ptr::null_mut()), PermrexStatus::NullPointer);
        assert_eq!(
            permrex_verify(ptr::null(), 3, &mut PermrexCertificate::default()),
            PermrexStatus::NullPointer
        );
        assert_eq!(
            permrex_oracle_cost(3, ptr::null_mut()),
            PermrexStatus::NullPointer
        );
        permrex_regex_free(ptr::null_mut());
        permrex_string_free(ptr::null_mut());
    }
    assert_eq!(last_error(), "out is NULL");
}

#[test]
fn oracle_and_bounds() {
    let mut cost = 0u32;
    for (n, want) in [(1, 1), (2, 4), (3, 15)] {
        assert_eq!(
            unsafe { permrex_oracle_cost(n, &mut cost) },
            PermrexStatus::Ok
        );
        assert_eq!(cost, want);
    }
    assert_eq!(
        unsafe { permrex_oracle_cost(4, &mut cost) },
        PermrexStatus::CapExceeded
    );
    assert_eq!(permrex_check_fn_bounds(128, 0), PermrexStatus::Ok);
    assert_eq!(permrex_check_fn_bounds(64, 400), PermrexStatus::Ok);
}

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/permrex.h");
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn header_declares_every_export() {
    let h = header();
    for name in [
        "permrex_last_error",
        "permrex_build",
        "permrex_parse",
        "permrex_regex_free",
        "permrex_string_free",
        "permrex_render",
        "permrex_alphabetic_length",
        "permrex_f",
        "permrex_t",
        "permrex_verify",
        "permrex_oracle_cost",
        "permrex_check_fn_bounds",
        "PERMREX_STATUS_OK = 0",
        "PERMREX_STATUS_PANIC = 8",
        "PERMREX_BUILDER_FLAT_UNION = 2",
        "typedef struct PermrexRegex PermrexRegex",
    ] {
        assert!(
            h.contains(&format!("{name}(")) || h.contains(name),
            "{name} missing"
        );
    }
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        r#"#include "permrex.h"
int main(void) {
    PermrexRegex *re = 0;
    char *s = 0;
    struct PermrexCertificate c;
    uint32_t cost;
    if (permrex_build(PERMREX_BUILDER_DIVIDE_AND_CONQUER, 4, 0, &re) != PERMREX_STATUS_OK) return 1;
    permrex_render(re, 0, &s);
    permrex_string_free(s);
    permrex_verify(re, 4, &c);
    permrex_regex_free(re);
    permrex_oracle_cost(3, &cost);
    return c.passed && permrex_last_error() == 0 ? 0 : 1;
}
"#,
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let out = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn which_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}
