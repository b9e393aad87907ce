#![no_main]

use abelchi_cli::commands;
use abelchi_core::document::parse_document;
use libfuzzer_sys::fuzz_target;

// Every command either reports or returns an error; none may panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_document(text) else {
        return;
    };
    let _ = commands::chi("fuzz", doc.clone());
    let _ = commands::classify("fuzz", doc.clone());
    let _ = commands::genfun("fuzz", doc.clone());
    let _ = commands::delta("fuzz", doc.clone(), 8);
    let _ = commands::admissible("fuzz", doc.clone());
    let _ = commands::additivity("fuzz", doc.clone());
    let _ = commands::xi_cmd("fuzz", doc.clone());
    let _ = commands::oracle("fuzz", doc, 16);
});
