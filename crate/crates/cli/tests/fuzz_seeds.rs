//! Replays the `evaluate_document` fuzz corpus through every command.

use std::path::Path;

use abelchi_cli::commands;
use abelchi_core::document::parse_document;

#[test]
fn evaluate_document_seeds() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/evaluate_document");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let Ok(doc) = parse_document(&text) else {
            continue;
        };
        seen += 1;
        let _ = commands::chi("seed", doc.clone());
        let _ = commands::classify("seed", doc.clone());
        let _ = commands::genfun("seed", doc.clone());
        let _ = commands::delta("seed", doc.clone(), 8);
        let _ = commands::admissible("seed", doc.clone());
        let _ = commands::additivity("seed", doc.clone());
        let _ = commands::xi_cmd("seed", doc.clone());
        let _ = commands::oracle("seed", doc, 16);
    }
    assert!(seen >= 8);
}
