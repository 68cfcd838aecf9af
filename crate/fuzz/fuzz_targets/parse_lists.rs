#![no_main]

use libfuzzer_sys::fuzz_target;
use polyrefine::cli::{parse_integer_list, parse_rational_list};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(values) = parse_rational_list(s) {
            assert_eq!(values.len(), s.split(',').count());
        }
        if let Ok(values) = parse_integer_list(s) {
            let printed: Vec<String> = values.iter().map(i64::to_string).collect();
            assert_eq!(parse_integer_list(&printed.join(",")), Ok(values));
        }
    }
});
