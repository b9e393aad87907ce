#![no_main]

use abelchi_core::document::{parse_document, to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = parse_document(text) else {
        return;
    };
    let printed = to_json(&doc);
    let again = parse_document(&printed).expect("serialized documents parse");
    assert_eq!(again, doc);
    assert_eq!(to_json(&again), printed);
});
