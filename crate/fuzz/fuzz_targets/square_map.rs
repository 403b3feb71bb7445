#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::moonshine::{parse_square_map, square_map_to_tsv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entries) = parse_square_map(text) {
        let tsv = square_map_to_tsv(&entries);
        let again = parse_square_map(&tsv).expect("serialized square map parses");
        assert_eq!(square_map_to_tsv(&again), tsv);
    }
});
