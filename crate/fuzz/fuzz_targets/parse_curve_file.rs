#![no_main]

use freecurves_cli::curvefile::{parse_curve_file, parse_inline};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_curve_file(text) {
        let _ = spec.polynomial();
    }
    let _ = parse_inline(text);
});
