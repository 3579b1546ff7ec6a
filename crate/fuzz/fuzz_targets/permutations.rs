#![no_main]

use libfuzzer_sys::fuzz_target;
use regconst::groups::group_from_permutations;
use regconst::input::parse_permutations;
use regconst::Limits;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let parts: Vec<&str> = text.split(';').collect();
    let Ok(perms) = parse_permutations(&parts) else { return };
    let limits = Limits { max_order: 64, ..Limits::default() };
    let _ = group_from_permutations(&perms, &limits);
});
