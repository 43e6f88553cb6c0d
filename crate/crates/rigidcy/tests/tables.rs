//! Golden tests for the rendered classification tables.
//!
//! Regenerate with `UPDATE_GOLDEN=1 cargo test -p rigidcy --test tables`
//! and review the diff.

use rigidcy::numerology::{table1_json, table1_text, table2_json, table2_text};
use std::fs;
use std::path::Path;

fn check(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} drifted (UPDATE_GOLDEN=1 to accept)");
}

#[test]
fn class_table_text() {
    check("table1.txt", &table1_text());
}

#[test]
fn class_table_json() {
    check("table1.json", &format!("{:#}\n", table1_json()));
}

#[test]
fn case_table_text() {
    check("table2.txt", &table2_text());
}

#[test]
fn case_table_json() {
    check("table2.json", &format!("{:#}\n", table2_json()));
}
