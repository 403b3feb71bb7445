#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::rational::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_rational(text) {
        assert_eq!(
            parse_rational(&format_rational(&r)).expect("formatted rational parses"),
            r
        );
    }
});
