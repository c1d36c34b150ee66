use std::ffi::{CStr, CString};
use std::ptr;

use opsymbol_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { opsym_string_free(p) };
    s
}

fn last_error() -> Option<String> {
    let p = opsym_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string())
}

fn operator(json: &str) -> *mut OpsymOperator {
    let mut out = ptr::null_mut();
    let st = unsafe { opsym_operator_from_json(cstr(json).as_ptr(), &mut out) };
    assert_eq!(st, OpsymStatus::Ok, "{:?}", last_error());
    out
}

fn symbol(json: &str) -> *mut OpsymSymbol {
    let mut out = ptr::null_mut();
    let st = unsafe { opsym_symbol_from_json(cstr(json).as_ptr(), &mut out) };
    assert_eq!(st, OpsymStatus::Ok, "{:?}", last_error());
    out
}

const D1: &str = r#"{"m":1,"n":2,"terms":[{"alpha":[1],"coeff":[["1","0"],["0","1"]]}]}"#;
const X1: &str = r#"{"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["x1","0"],["0","x1"]]}]}"#;
const E12_D1: &str = r#"{"m":1,"n":2,"terms":[{"alpha":[1],"coeff":[["0","1"],["0","0"]]}]}"#;

#[test]
fn operator_round_trip_and_commutator() {
    let (a, b) = (operator(D1), operator(X1));
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(opsym_operator_commutator(a, b, &mut c), OpsymStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(opsym_operator_to_json(c, &mut json), OpsymStatus::Ok);
        assert_eq!(
            take_string(json),
            r#"{"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["1","0"],["0","1"]]}]}"#
        );
        let mut ab = ptr::null_mut();
        assert_eq!(opsym_operator_compose(a, b, &mut ab), OpsymStatus::Ok);
        let mut order = 0;
        assert_eq!(opsym_operator_pson_order(ab, &mut order), OpsymStatus::Ok);
        assert_eq!(order, 1);
        for h in [a, b, c, ab] {
            opsym_operator_free(h);
        }
    }
    assert_eq!(last_error(), None);
}

#[test]
fn pson_order_of_non_scalar_leading_term() {
    let t = operator(E12_D1);
    let zero = operator(r#"{"m":1,"n":2,"terms":[]}"#);
    let mut order = 0;
    unsafe {
        assert_eq!(opsym_operator_pson_order(t, &mut order), OpsymStatus::Ok);
        assert_eq!(order, 2);
        assert_eq!(opsym_operator_pson_order(zero, &mut order), OpsymStatus::Ok);
        assert_eq!(order, OPSYM_ORDER_NEG_INF);

        let mut s = ptr::null_mut();
        assert_eq!(opsym_operator_sigma_pson(zero, &mut s), OpsymStatus::ZeroOperator);
        assert!(s.is_null());
        assert_eq!(opsym_operator_sigma(t, 1, &mut s), OpsymStatus::BelowOrder);
        assert!(last_error().unwrap().contains("below"));

        assert_eq!(opsym_operator_sigma(t, 2, &mut s), OpsymStatus::Ok);
        let mut json = ptr::null_mut();
        opsym_symbol_to_json(s, &mut json);
        let text = take_string(json);
        assert!(text.contains(r#""sl":[["0","xi1"],["0","0"]]"#), "{text}");
        opsym_symbol_free(s);
        opsym_operator_free(t);
        opsym_operator_free(zero);
    }
}

#[test]
fn symbol_algebra_calls() {
    let p = symbol(
        r#"{"m":1,"n":2,"components":[{"degree":0,"sl":[],"scalar":"2"},{"degree":1,"sl":[["0","1"],["0","0"]],"scalar":"0"}]}"#,
    );
    let u = symbol(r#"{"m":1,"n":2,"components":[{"degree":1,"sl":[["0","x1"],["0","0"]],"scalar":"0"}]}"#);
    unsafe {
        let mut inv = ptr::null_mut();
        assert_eq!(opsym_symbol_invert(p, &mut inv), OpsymStatus::Ok);
        let mut prod = ptr::null_mut();
        assert_eq!(opsym_symbol_product(p, inv, &mut prod), OpsymStatus::Ok);
        let mut json = ptr::null_mut();
        opsym_symbol_to_json(prod, &mut json);
        assert_eq!(
            take_string(json),
            r#"{"m":1,"n":2,"components":[{"degree":0,"sl":[],"scalar":"1"}]}"#
        );

        let mut delta = ptr::null_mut();
        assert_eq!(opsym_symbol_delta(p, &mut delta), OpsymStatus::Ok);
        assert_eq!(take_string(delta), "2");

        let mut in_j = true;
        assert_eq!(opsym_symbol_is_in_j(p, &mut in_j), OpsymStatus::Ok);
        assert!(!in_j);
        assert_eq!(opsym_symbol_is_in_j(u, &mut in_j), OpsymStatus::Ok);
        assert!(in_j);

        let mut bad = ptr::null_mut();
        assert_eq!(opsym_symbol_invert(u, &mut bad), OpsymStatus::NotInvertible);
        assert!(bad.is_null());

        let mut br = ptr::null_mut();
        assert_eq!(opsym_symbol_bracket(u, u, &mut br), OpsymStatus::Ok);
        let mut br_j = false;
        opsym_symbol_is_in_j(br, &mut br_j);
        assert!(br_j);

        for h in [p, u, inv, prod, br] {
            opsym_symbol_free(h);
        }
    }
}

#[test]
fn errors_are_reported_not_raised() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = opsym_symbol_from_json(cstr("{not json").as_ptr(), &mut out);
        assert_eq!(st, OpsymStatus::Parse);
        let st = opsym_symbol_from_json(
            cstr(r#"{"m":1,"n":2,"components":[{"degree":1,"sl":[["1","0"],["0","0"]],"scalar":"0"}]}"#).as_ptr(),
            &mut out,
        );
        assert_eq!(st, OpsymStatus::Schema);
        assert!(last_error().unwrap().contains("components[0].sl"));
        assert_eq!(opsym_symbol_from_json(ptr::null(), &mut out), OpsymStatus::NullPointer);
        let bytes = [0xffu8, 0];
        assert_eq!(
            opsym_operator_from_json(bytes.as_ptr().cast(), &mut ptr::null_mut()),
            OpsymStatus::InvalidUtf8
        );
        let a = operator(D1);
        let b = operator(r#"{"m":2,"n":2,"terms":[]}"#);
        let mut c = ptr::null_mut();
        assert_eq!(opsym_operator_compose(a, b, &mut c), OpsymStatus::DimensionMismatch);
        assert_eq!(opsym_operator_compose(a, ptr::null(), &mut c), OpsymStatus::NullPointer);
        assert_eq!(opsym_operator_to_json(a, ptr::null_mut()), OpsymStatus::NullPointer);
        opsym_operator_free(a);
        opsym_operator_free(b);
        opsym_operator_free(ptr::null_mut());
        opsym_symbol_free(ptr::null_mut());
        opsym_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite_writes_report() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = opsym_verify_suite(cstr("ideal").as_ptr(), 3, 1, 2, 10, &mut out);
        assert_eq!(st, OpsymStatus::Ok);
        let report = take_string(out);
        assert!(report.contains(r#""failed_properties": 0"#), "{report}");

        let st = opsym_verify_suite(cstr("nope").as_ptr(), 3, 1, 2, 10, &mut out);
        assert_eq!(st, OpsymStatus::Config);
        let st = opsym_verify_suite(cstr("ideal").as_ptr(), 3, 1, 1, 10, &mut out);
        assert_eq!(st, OpsymStatus::Config);
    }
    let version = unsafe { CStr::from_ptr(opsym_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/opsymbol.h");
    let source = include_str!("../src/lib.rs");
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 20, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct OpsymOperator OpsymOperator;"));
}

#[test]
fn c_program_links_against_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    if std::process::Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let exe_dir = std::env::current_exe().unwrap();
    let profile_dir = exe_dir.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libopsymbol_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built; skipping");
        return;
    }
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("smoke");
    let status = std::process::Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = std::process::Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(
        lines[0],
        r#"{"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["1","0"],["0","1"]]}]} 0"#
    );
    assert!(lines[1].contains(r#""degree":1"#));
    assert_eq!(lines[2], "4 msg");
}
