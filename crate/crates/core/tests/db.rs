use std::path::PathBuf;

use lcdcode::constructs::{small_lcd_db, TABLE2, TABLE3};
use lcdcode::db::Database;
use lcdcode::search::exhaustive_dl;

fn shipped() -> Database {
    Database::open(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../db")).unwrap()
}

#[test]
fn every_record_reverifies_and_is_lcd() {
    let db = shipped();
    assert_eq!(db.len(), 81);
    for (name, r) in db.verify_all() {
        assert!(r.is_ok(), "{name}: {r:?}");
    }
    assert!(db.entries().all(|m| m.hull == 0 && !m.provenance.is_empty()));
}

#[test]
fn glued_lengths_hold_reference_distances() {
    let db = shipped();
    for &(n, d) in TABLE2.iter().chain(&TABLE3) {
        let r = small_lcd_db(&db, n, 6).unwrap();
        assert_eq!(r.d(), d, "n={n}");
    }
}

#[test]
fn dimension_four_records_are_exact() {
    let db = shipped();
    for n in [6, 9, 13, 19] {
        let want = exhaustive_dl(n, 4).unwrap().unwrap().d;
        assert_eq!(db.get(n, 4).unwrap().d(), want, "n={n}");
    }
}
