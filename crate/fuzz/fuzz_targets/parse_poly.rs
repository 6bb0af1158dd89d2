#![no_main]

use freecurves::polycore::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_poly(text) {
        // printing and reparsing must be lossless
        assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }
});
