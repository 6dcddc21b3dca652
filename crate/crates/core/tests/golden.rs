//! Frozen fixtures under `golden/`. Run with `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

use serde_json::{json, Value};

use coiso_core::catalog::canonical_indecomposable;
use coiso_core::invariants::{classification, PRINTED_M};
use coiso_core::{Flavor, IndecompType, RelationDocument};

fn check(name: &str, actual: &Value) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name);
    let text = format!("{}\n", serde_json::to_string_pretty(actual).unwrap());
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, text).unwrap();
        return;
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let stored: Value = serde_json::from_str(&stored).unwrap();
    assert_eq!(&stored, actual, "{name} differs from the stored fixture");
}

#[test]
fn m_matrix() {
    let c = classification();
    let columns: Vec<Value> = IndecompType::ALL
        .iter()
        .map(|&t| json!({ "type": t.label(), "column": c.column_of(t) }))
        .collect();
    let errata: Vec<Value> = c
        .errata
        .iter()
        .map(|e| json!({ "row": e.row, "col": e.col, "printed": e.printed, "derived": e.derived }))
        .collect();
    let doc = json!({
        "indexing": "zero-based",
        "printed": PRINTED_M,
        "derived": c.m,
        "inverse": c.inverse,
        "determinant": c.determinant,
        "columns": columns,
        "errata": errata,
    });
    check("m_matrix.json", &doc);
}

#[test]
fn catalog() {
    let mut models = Vec::new();
    for flavor in [Flavor::Presymplectic, Flavor::Poisson] {
        for t in IndecompType::ALL {
            let doc = RelationDocument::from(canonical_indecomposable(t, flavor));
            models.push(json!({
                "type": t.label(),
                "description": t.description(flavor),
                "document": doc.to_value(),
            }));
        }
    }
    check("catalog.json", &Value::Array(models));
}

#[test]
fn catalog_documents_parse_back() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden/catalog.json");
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let models = stored.as_array().unwrap();
    assert_eq!(models.len(), 26);
    for (i, entry) in models.iter().enumerate() {
        let flavor = if i < 13 { Flavor::Presymplectic } else { Flavor::Poisson };
        let t: IndecompType = entry["type"].as_str().unwrap().parse().unwrap();
        let doc = RelationDocument::from_value(&entry["document"]).unwrap();
        assert_eq!(doc.relation, canonical_indecomposable(t, flavor));
    }
}
