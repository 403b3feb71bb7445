#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::schwarzfit::corpus::{corpus_to_tsv, parse_corpus};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_corpus(text) {
        let again = parse_corpus(&corpus_to_tsv(&entries)).expect("serialized corpus parses");
        assert_eq!(again, entries);
    }
});
