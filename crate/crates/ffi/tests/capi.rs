use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use wanglab_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    wl_string_free(s);
    out
}

fn last_error() -> String {
    let p = wl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn parse_and_classify() {
    let lit = CString::new("0000,0011,0110,1001,1100").unwrap();
    let mut mask = 0u16;
    assert_eq!(unsafe { wl_tileset_parse(lit.as_ptr(), &mut mask) }, WlStatus::Ok);
    assert_eq!(mask, 1 << 0 | 1 << 3 | 1 << 6 | 1 << 9 | 1 << 12);
    let (mut id, mut verdict) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { wl_classify(mask, &mut id, &mut verdict) }, WlStatus::Ok);
    assert_eq!(unsafe { take(id) }, "6.5.6");
    assert_eq!(unsafe { take(verdict) }, "NotL0_L1Open");
    assert_eq!(wl_tileset_canonical(mask), mask);
}

#[test]
fn odd_tilesets_are_rejected() {
    let mut id = ptr::null_mut();
    assert_eq!(unsafe { wl_classify(1 << 1, &mut id, ptr::null_mut()) }, WlStatus::NotEven);
    assert!(id.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn bad_literal_is_a_parse_error() {
    let lit = CString::new("0000,2").unwrap();
    let mut mask = 0u16;
    assert_eq!(unsafe { wl_tileset_parse(lit.as_ptr(), &mut mask) }, WlStatus::Parse);
    assert_eq!(unsafe { wl_tileset_parse(ptr::null(), &mut mask) }, WlStatus::NullPointer);
}

#[test]
fn orbit_counts() {
    assert_eq!(wl_orbit_count(false), 36);
    assert_eq!(wl_orbit_count(true), 2889);
}

#[test]
fn emptiness() {
    let mut empty = false;
    // A lone corner cannot meet itself across its black edges.
    assert_eq!(unsafe { wl_is_empty(1 << 0b1100, &mut empty) }, WlStatus::Ok);
    assert!(empty);
    assert_eq!(unsafe { wl_is_empty(1, &mut empty) }, WlStatus::Ok);
    assert!(!empty);
}

#[test]
fn generated_pattern_handle() {
    let class = CString::new("6.8.1").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { wl_generate(class.as_ptr(), 5, 3, 7, &mut p) }, WlStatus::Ok);
    let (mut w, mut h) = (0, 0);
    assert_eq!(unsafe { wl_pattern_size(p, &mut w, &mut h) }, WlStatus::Ok);
    assert_eq!((w, h), (5, 3));
    assert!(unsafe { wl_pattern_is_valid(p) });
    let mut code = 0u8;
    assert_eq!(unsafe { wl_pattern_tile_at(p, 4, 2, &mut code) }, WlStatus::Ok);
    assert_eq!(code & 0b1010 == 0b1010, code & 0b0101 == 0b0101);
    assert_eq!(unsafe { wl_pattern_tile_at(p, 5, 0, &mut code) }, WlStatus::OutOfBounds);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wl_pattern_to_svg(p, 10, true, &mut s) }, WlStatus::Ok);
    assert!(unsafe { take(s) }.contains("width=\"50\""));
    assert_eq!(unsafe { wl_pattern_to_json(p, &mut s) }, WlStatus::Ok);
    assert!(unsafe { take(s) }.starts_with("{\"domain\""));
    unsafe { wl_pattern_free(p) };
    unsafe { wl_pattern_free(ptr::null_mut()) };
}

#[test]
fn unknown_and_empty_classes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("9.9.9").unwrap();
    assert_eq!(unsafe { wl_generate(bad.as_ptr(), 2, 2, 0, &mut p) }, WlStatus::UnknownClass);
    let empty = CString::new("6.1.2").unwrap();
    assert_eq!(unsafe { wl_generate(empty.as_ptr(), 2, 2, 0, &mut p) }, WlStatus::EmptyClass);
    assert!(p.is_null());
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/wanglab.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.trim_start().strip_prefix("pub ").and_then(|l| l.split("extern \"C\" fn ").nth(1)))
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct WlPattern WlPattern;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/wanglab.h"))
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
