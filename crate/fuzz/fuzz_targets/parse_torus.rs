#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::{parse_torus, torus_to_doc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_torus(text) {
        let again = serde_json::to_string(&torus_to_doc(&t)).unwrap();
        assert_eq!(parse_torus(&again).unwrap(), t);
    }
});
