#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::{laurent_to_json, parse_laurent};

// First byte picks the arity; the rest is the document.
fuzz_target!(|data: &[u8]| {
    let Some((&nvars, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let nvars = usize::from(nvars % 8);
    if let Ok(p) = parse_laurent(text, nvars) {
        assert_eq!(parse_laurent(&laurent_to_json(&p), nvars).unwrap(), p);
    }
});
