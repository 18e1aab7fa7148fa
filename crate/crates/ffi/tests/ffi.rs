use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lcdcode_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lcd_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn g2m_round_trip_and_params() {
    unsafe {
        let mut code = ptr::null_mut();
        let text = c("3 7\n1010101\n0110011\n0001111\n");
        assert_eq!(lcd_code_from_g2m(text.as_ptr(), &mut code), LcdStatus::Ok);
        let mut p = LcdParams::default();
        assert_eq!(lcd_code_params(code, &mut p), LcdStatus::Ok);
        assert_eq!(p, LcdParams { n: 7, k: 3, d: 4, hull: 3 });
        let mut lcd = true;
        assert_eq!(lcd_code_is_lcd(code, &mut lcd), LcdStatus::Ok);
        assert!(!lcd);
        let mut s = ptr::null_mut();
        assert_eq!(lcd_code_to_g2m(code, &mut s), LcdStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "3 7\n1010101\n0110011\n0001111\n");
        lcd_string_free(s);
        lcd_code_free(code);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut code = ptr::null_mut();
        let bad = c("2 3\n101\n");
        assert_eq!(lcd_code_from_g2m(bad.as_ptr(), &mut code), LcdStatus::Parse);
        assert!(code.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(lcd_code_from_g2m(ptr::null(), &mut code), LcdStatus::NullPointer);
        let mut p = LcdParams::default();
        assert_eq!(lcd_code_params(ptr::null(), &mut p), LcdStatus::NullPointer);
        let ok = c("3: 1 1 1 1 1 1 1");
        assert_eq!(lcd_code_from_defvec(ok.as_ptr(), &mut code), LcdStatus::Ok);
        assert!(last_error().is_empty());
        lcd_code_free(code);
        let zero_col = c("2 2\n10\n00\n");
        assert_eq!(lcd_code_from_g2m(zero_col.as_ptr(), &mut code), LcdStatus::InvalidArgument);
        let mut db = ptr::null_mut();
        let missing = c("/nonexistent/lcd-db");
        assert_eq!(lcd_database_open(missing.as_ptr(), &mut db), LcdStatus::Io);
        lcd_code_free(ptr::null_mut());
        lcd_database_free(ptr::null_mut());
    }
}

#[test]
fn climb_and_theorem_report() {
    unsafe {
        let mut code = ptr::null_mut();
        assert_eq!(lcd_hill_climb(15, 6, 6, true, 200_000, 4, 7, &mut code), LcdStatus::Ok);
        let mut p = LcdParams::default();
        lcd_code_params(code, &mut p);
        assert_eq!((p.n, p.k, p.hull), (15, 6, 0));
        assert!(p.d >= 6);
        lcd_code_free(code);
        // [63, 6, 32] is always self-orthogonal
        let st = lcd_hill_climb(63, 6, 32, true, 2_000, 1, 7, &mut code);
        assert_eq!(st, LcdStatus::NotFound);

        let mut s = ptr::null_mut();
        let id = c("T7");
        assert_eq!(lcd_check_theorem(id.as_ptr(), &mut s), LcdStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        lcd_string_free(s);
        assert!(json.starts_with("{\"theorem\":\"T7\""));
        let unknown = c("T99");
        assert_eq!(lcd_check_theorem(unknown.as_ptr(), &mut s), LcdStatus::InvalidArgument);
    }
}

#[test]
fn construct_through_database() {
    let dir = tempfile::tempdir().unwrap();
    let mut db = lcdcode::db::Database::create(dir.path()).unwrap();
    // [51, 6] needs the [6, 4] record only
    let w = lcdcode::search::exhaustive_dl(6, 4).unwrap().unwrap();
    let code = lcdcode::LinearCode::new(lcdcode::defvec::matrix_from_defvec(&w.witness)).unwrap();
    db.put(&lcdcode::db::CodeRecord::new(code, "test").unwrap()).unwrap();
    let base = lcdcode::constructs::glue(
        &lcdcode::nested_witness(&lcdcode::constructs::g_6_45().unwrap()).unwrap(),
        &db.get(6, 4).unwrap().code,
    )
    .unwrap();
    db.put(&lcdcode::db::CodeRecord::new(base, "glue").unwrap()).unwrap();
    unsafe {
        let path = c(dir.path().to_str().unwrap());
        let mut h = ptr::null_mut();
        assert_eq!(lcd_database_open(path.as_ptr(), &mut h), LcdStatus::Ok);
        let mut code = ptr::null_mut();
        let mut status = LcdBuildStatus::OptimalOrNear;
        assert_eq!(lcd_construct(h, 114, &mut code, &mut status), LcdStatus::Ok);
        let mut p = LcdParams::default();
        lcd_code_params(code, &mut p);
        assert_eq!(p, LcdParams { n: 114, k: 6, d: 56, hull: 0 });
        assert_eq!(status, LcdBuildStatus::OptimalLcd);
        lcd_code_free(code);
        assert_eq!(lcd_construct(h, 20, &mut code, ptr::null_mut()), LcdStatus::InvalidArgument);
        assert_eq!(lcd_construct(h, 52, &mut code, ptr::null_mut()), LcdStatus::NotFound);
        lcd_database_free(h);
    }
}

#[test]
fn header_compiles_as_c() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = root.join("include/lcdcode.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "lcd_last_error",
        "lcd_code_from_g2m",
        "lcd_code_params",
        "lcd_construct",
        "lcd_hill_climb",
        "lcd_check_theorem",
        "lcd_string_free",
        "LCD_STATUS_NOT_FOUND = 6",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(cc) = which_cc() else { return };
    let smoke = root.join("tests/c/smoke.c");
    let status = Command::new(&cc)
        .args(["-std=c11", "-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(root.join("include"))
        .arg(&smoke)
        .status()
        .unwrap();
    assert!(status.success());

    // link against the static library when cargo has produced one
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("liblcdcode_ffi.a");
    if !lib.exists() {
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let status = Command::new(&cc)
        .args(["-std=c11", "-O1", "-I"])
        .arg(root.join("include"))
        .arg(&smoke)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{run:?}");
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        "n=7 k=3 d=4 hull=3 lcd=0\n"
    );
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
