#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::moonshine::parse_label;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((n, c)) = parse_label(text) {
        assert_eq!(
            parse_label(&format!("{n}{c}")).expect("canonical label parses"),
            (n, c)
        );
    }
});
