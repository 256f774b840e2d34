#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::{parse_algebra_spec, spec_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((spec, torus)) = parse_algebra_spec(text) {
        let again = spec_to_json(&spec, torus.as_ref());
        assert_eq!(parse_algebra_spec(&again).unwrap(), (spec, torus));
    }
});
