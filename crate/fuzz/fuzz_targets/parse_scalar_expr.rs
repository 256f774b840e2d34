#![no_main]

use libfuzzer_sys::fuzz_target;
use ppa::format::parse_scalar_expr;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_scalar_expr(text) {
        // Display is a canonical form the parser accepts.
        assert_eq!(parse_scalar_expr(&v.to_string()).unwrap(), v);
    }
});
