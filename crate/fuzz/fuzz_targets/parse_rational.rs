#![no_main]

use libfuzzer_sys::fuzz_target;
use polyrefine::parse_rational;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(r) = parse_rational(s) {
            // canonical output must parse back to the same value
            let printed = r.to_string();
            assert_eq!(parse_rational(&printed).as_ref(), Ok(&r));
        }
    }
});
