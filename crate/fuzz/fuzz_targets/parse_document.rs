#![no_main]

use abelchi_core::document::parse_document;
use abelchi_core::Error;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Err(e) = parse_document(text) {
            assert!(
                matches!(e, Error::Parse(_) | Error::Document { .. }),
                "{e:?}"
            );
        }
    }
});
