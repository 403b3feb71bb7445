#![no_main]

use libfuzzer_sys::fuzz_target;
use moonshine_core::moonshine::Registry;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(reg) = Registry::parse(text) {
        let tsv = reg.to_tsv();
        let again = Registry::parse(&tsv).expect("serialized registry parses");
        assert_eq!(again.to_tsv(), tsv);
    }
});
