#![no_main]

use libfuzzer_sys::fuzz_target;
use polyrefine::cli::{parse_args, run, EXIT_DOMAIN, EXIT_NOT_VERIFIED, EXIT_OK};

// Arguments are newline separated; degree and shift count are capped so a
// single input cannot request an arbitrarily large exact solve.
const MAX_TERMS: usize = 24;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("polyrefine").chain(s.split('\n'));
    let Ok(request) = parse_args(args) else {
        return;
    };
    let oversized = request.poly.len() > MAX_TERMS
        || request.shifts.len() > MAX_TERMS
        || request.mask.as_ref().is_some_and(|m| m.len() > MAX_TERMS)
        || request.dilation.numer().bits() > 256
        || request.dilation.denom().bits() > 256;
    if oversized {
        return;
    }
    let outcome = run(&request);
    assert!(
        [EXIT_OK, EXIT_NOT_VERIFIED, EXIT_DOMAIN].contains(&outcome.code),
        "unexpected exit {}",
        outcome.code
    );
    if outcome.code == EXIT_OK && request.mask.is_none() {
        assert!(
            !outcome.stdout.contains("false"),
            "solve failed to self-verify"
        );
    }
});
