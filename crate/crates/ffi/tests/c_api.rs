use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use fmtlab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fmt_last_error()) }.to_str().unwrap().to_string()
}

unsafe fn generate(family: &str) -> *mut FmtStructure {
    let mut s = ptr::null_mut();
    assert_eq!(fmt_structure_generate(c(family).as_ptr(), &mut s), FmtStatus::Ok);
    s
}

#[test]
fn wheel_round_trip_and_chromatic_number() {
    unsafe {
        let w = generate("wheel:9");
        let mut n = 0;
        assert_eq!(fmt_structure_size(w, &mut n), FmtStatus::Ok);
        assert_eq!(n, 10);

        let mut text = ptr::null_mut();
        assert_eq!(fmt_structure_to_string(w, &mut text), FmtStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(fmt_structure_parse(text, &mut back), FmtStatus::Ok);
        fmt_string_free(text);

        let mut chi = 0;
        assert_eq!(fmt_chromatic_number(back, 0, &mut chi), FmtStatus::Ok);
        assert_eq!(chi, 4);

        let mut phi = ptr::null_mut();
        assert_eq!(fmt_formula_parse(c("phi_bouquet").as_ptr(), &mut phi), FmtStatus::Ok);
        let mut holds = false;
        assert_eq!(fmt_evaluate(phi, back, &mut holds), FmtStatus::Ok);
        assert!(holds);
        assert_eq!(last_error(), "");

        fmt_formula_free(phi);
        fmt_structure_free(back);
        fmt_structure_free(w);
    }
}

#[test]
fn homomorphism_flags() {
    unsafe {
        let g3 = generate("gn:3");
        let d4 = generate("dn:4");
        let mut all = 0;
        let mut injective = 0;
        assert_eq!(fmt_hom_count(g3, d4, 0, 0, &mut all), FmtStatus::Ok);
        assert_eq!(fmt_hom_count(g3, d4, FMT_HOM_INJECTIVE, 0, &mut injective), FmtStatus::Ok);
        assert!(all > 0);
        assert_eq!(all, injective);

        let d5 = generate("dn:5");
        let mut exists = true;
        assert_eq!(fmt_hom_exists(d4, d5, 0, 0, &mut exists), FmtStatus::Ok);
        assert!(!exists);

        let d8 = generate("dn:8");
        assert_eq!(fmt_hom_exists(d8, d4, 0, 0, &mut exists), FmtStatus::Ok);
        assert!(exists);
        for s in [g3, d4, d5, d8] {
            fmt_structure_free(s);
        }
    }
}

#[test]
fn minors() {
    unsafe {
        let d4 = generate("dn:4");
        let mut found = true;
        assert_eq!(fmt_has_minor(d4, c("k5").as_ptr(), 0, &mut found), FmtStatus::Ok);
        assert!(!found);
        assert_eq!(fmt_has_minor(d4, c("k4").as_ptr(), 0, &mut found), FmtStatus::Ok);
        assert!(found);
        assert_eq!(fmt_has_minor(d4, c("k7").as_ptr(), 0, &mut found), FmtStatus::UnknownName);
        assert!(last_error().contains("k7"));
        fmt_structure_free(d4);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(fmt_structure_parse(ptr::null(), &mut s), FmtStatus::NullPointer);
        assert_eq!(fmt_structure_parse(c("graph 2\nedge 0 5\n").as_ptr(), &mut s), FmtStatus::InvalidInput);
        assert!(s.is_null());
        assert_eq!(fmt_structure_parse(c("graph x\n").as_ptr(), &mut s), FmtStatus::ParseError);
        assert_eq!(fmt_structure_generate(c("wheel:2").as_ptr(), &mut s), FmtStatus::InvalidInput);
        assert_eq!(fmt_structure_generate(c("torus:3").as_ptr(), &mut s), FmtStatus::ParseError);

        let mut f = ptr::null_mut();
        assert_eq!(fmt_formula_parse(c("(and (rel E x").as_ptr(), &mut f), FmtStatus::ParseError);
        assert!(last_error().contains("syntax"));

        let bad = [0xffu8, 0];
        assert_eq!(fmt_formula_parse(bad.as_ptr().cast(), &mut f), FmtStatus::InvalidUtf8);

        // free variables cannot be evaluated without a valuation
        assert_eq!(fmt_formula_parse(c("(rel E x y)").as_ptr(), &mut f), FmtStatus::Ok);
        let w = generate("wheel:5");
        let mut out = false;
        assert_eq!(fmt_evaluate(f, w, &mut out), FmtStatus::InvalidInput);
        assert_eq!(fmt_evaluate(f, ptr::null(), &mut out), FmtStatus::NullPointer);
        assert_eq!(fmt_evaluate(f, w, ptr::null_mut()), FmtStatus::NullPointer);

        let mut k = ptr::null_mut();
        let vocab = c("vocab R/2\ndomain 2\ntuple R 0 1\n");
        assert_eq!(fmt_structure_parse(vocab.as_ptr(), &mut k), FmtStatus::Ok);
        assert_eq!(fmt_hom_exists(k, w, 0, 0, &mut out), FmtStatus::VocabularyMismatch);

        let w9 = generate("wheel:9");
        let c9 = generate("cycle:9");
        assert_eq!(fmt_hom_exists(w9, c9, 0, 1, &mut out), FmtStatus::BudgetExceeded);

        for s in [w, k, w9, c9] {
            fmt_structure_free(s);
        }
        fmt_formula_free(f);
        fmt_structure_free(ptr::null_mut());
        fmt_string_free(ptr::null_mut());
    }
}

#[test]
fn suites_through_the_abi() {
    unsafe {
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(
            fmt_run_suite(c("lemma-5-2-injective").as_ptr(), 2, &mut passed, &mut report),
            FmtStatus::Ok
        );
        assert!(passed);
        let text = CStr::from_ptr(report).to_str().unwrap().to_string();
        assert!(text.ends_with("PASS lemma-5-2-injective\n"), "{text}");
        fmt_string_free(report);
        assert_eq!(
            fmt_run_suite(c("no-such-suite").as_ptr(), 0, &mut passed, &mut report),
            FmtStatus::UnknownName
        );
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(fmt_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api_and_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/fmtlab.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "typedef struct FmtStructure FmtStructure;",
        "typedef struct FmtFormula FmtFormula;",
        "FMT_STATUS_BUDGET_EXCEEDED = 5",
        "fmt_structure_parse(",
        "fmt_evaluate(",
        "fmt_hom_exists(",
        "fmt_run_suite(",
        "fmt_last_error(void)",
        "fmt_string_free(",
    ] {
        assert!(text.contains(name), "missing `{name}`");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"fmtlab.h\"\n\
         int main(void) {\n\
           FmtStructure *g = 0;\n\
           size_t chi = 0;\n\
           if (fmt_structure_generate(\"wheel:9\", &g) != FMT_STATUS_OK) return 1;\n\
           FmtStatus st = fmt_chromatic_number(g, 0, &chi);\n\
           fmt_structure_free(g);\n\
           return st == FMT_STATUS_OK && chi == 4 ? 0 : 2;\n\
         }\n",
    )
    .unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header.parent().unwrap())
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
}
