#![no_main]

use libfuzzer_sys::fuzz_target;
use regconst::input::parse_group_spec;
use regconst::Limits;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(spec) = parse_group_spec(text) else { return };
    assert_eq!(parse_group_spec(&spec.to_string()).ok(), Some(spec.clone()));
    let limits = Limits { max_order: 64, ..Limits::default() };
    if let Ok(g) = spec.build(&limits) {
        assert!(g.order() <= 64);
    }
});
