#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::qvalue::{parse_qvalue, qvalue_to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_qvalue(text) {
        assert_eq!(
            parse_qvalue(&qvalue_to_text(&q)).expect("serialized Q-value parses"),
            q
        );
    }
});
