#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::{parse_skew_matrix, skew_to_doc};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_skew_matrix(text) {
        let again = serde_json::to_string(&skew_to_doc(&m)).unwrap();
        assert_eq!(parse_skew_matrix(&again).unwrap(), m);
    }
});
