#![no_main]

use freecurves::polycore::parse_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_line(text) {
        assert_eq!(parse_line(&l.to_string()).unwrap(), l);
    }
});
