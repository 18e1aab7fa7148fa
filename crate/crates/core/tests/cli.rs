use std::path::PathBuf;
use std::process::Command;

use lcdcode::cli::{run_with, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn shipped_db() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../db")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lcdcode").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn construct_prints_generator_and_summary() {
    let db = shipped_db();
    let (code, out, _) = run(&["construct", "--n", "131", "--db", db.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("6 131\n"));
    assert!(out.ends_with("n=131 k=6 d=64 hull=0 status=optimal-LCD\n"));
}

#[test]
fn construct_emit_then_check_and_defvec() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c.g2m");
    let db = shipped_db();
    let (code, out, _) = run(&[
        "construct",
        "--n",
        "108",
        "--db",
        db.to_str().unwrap(),
        "--emit",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n=108 k=6 d=52 hull=0 status=optimal-LCD-or-near\n");

    let (code, out, _) = run(&["check", g.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 52);
    assert_eq!(v["is_lcd"], true);

    // .g2m -> defining vector -> .g2m keeps the parameters
    let (_, line, _) = run(&["defvec", g.to_str().unwrap()]);
    assert!(line.starts_with("6:"));
    let l = dir.path().join("c.dv");
    std::fs::write(&l, &line).unwrap();
    let (code, back, _) = run(&["defvec", l.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let g2 = dir.path().join("c2.g2m");
    std::fs::write(&g2, back).unwrap();
    let (_, out, _) = run(&["check", g2.to_str().unwrap()]);
    assert_eq!(out, "n=108 k=6 d=52 hull=0 is_lcd=true\n");
}

#[test]
fn construct_rejects_short_lengths() {
    let db = shipped_db();
    let (code, _, err) = run(&["construct", "--n", "40", "--db", db.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("n >= 51"));
}

#[test]
fn table_rows_and_open_flags() {
    let (code, out, _) = run(&["table", "--s-max", "1"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "s\tt\tn\td_a_offset\td_l_offset\tstatus");
    assert!(lines.contains(&"1\t45\t108\t22\t20/21\topen"));
    assert!(lines.iter().all(|l| l.split('\t').count() == 6));
}

#[test]
fn search_exhaustive_and_climb() {
    let (code, out, _) = run(&["search", "exhaustive", "--n", "7", "--k", "3"]);
    assert_eq!(code, EXIT_OK);
    let json = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!((v["n"].as_u64(), v["k"].as_u64()), (Some(7), Some(3)));
    assert_eq!(v["found"], true);

    let (code, out, _) = run(&["search", "climb", "--n", "10", "--k", "6", "--target-d", "3", "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!((v["d"].as_u64(), v["hull"].as_u64()), (Some(3), Some(0)));

    let (code, _, _) = run(&["search", "climb", "--n", "63", "--k", "6", "--target-d", "32", "--iters", "2000"]);
    assert_eq!(code, EXIT_FAILURE);
}

#[test]
fn verify_theorems_single_id() {
    let (code, out, _) = run(&["verify-theorems", "--id", "T7", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["theorem"], "T7");

    let (code, _, err) = run(&["verify-theorems", "--id", "T99"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["construct"]).0, EXIT_USAGE);
    assert_eq!(run(&["check", "/nonexistent.g2m"]).0, EXIT_FAILURE);
}

#[test]
fn seed_db_is_idempotent_on_a_full_database() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(shipped_db()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let (code, out, _) = run(&["seed-db", "--db", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("records=81 missed=0 reverify_failures=0"), "{out}");
}

#[test]
fn binary_smoke() {
    let out = Command::new(env!("CARGO_BIN_EXE_lcdcode"))
        .args(["construct", "--n", "136", "--emit", "/dev/null"])
        .env("LCD_DB", shipped_db())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "n=136 k=6 d=67 hull=0 status=optimal-LCD\n");
}
