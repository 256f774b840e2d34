#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::{params_json, parse_family_params};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_family_params(text) {
        assert_eq!(parse_family_params(&params_json(&p).to_string()).unwrap(), p);
    }
});
