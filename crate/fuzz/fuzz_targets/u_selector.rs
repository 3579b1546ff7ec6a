#![no_main]

use libfuzzer_sys::fuzz_target;
use regconst::input::{parse_u_selector, resolve_u_selector};
use regconst::{Limits, Preset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(terms) = parse_u_selector(text) else { return };
    let limits = Limits::default();
    let group = Preset::Frobenius { p: 5, n: 4, k: 2 }.build(&limits).unwrap();
    let _ = resolve_u_selector(&terms, &group, &limits);
});
