#![no_main]

use libfuzzer_sys::fuzz_target;
use regconst::input::{parse_binding, parse_subgroup_selector};
use regconst::{Limits, Preset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let limits = Limits::default();
    let group = Preset::Heisenberg(3).build(&limits).unwrap();
    if let Ok(sel) = parse_subgroup_selector(text) {
        if let Ok(h) = sel.resolve(&group, &limits) {
            assert_eq!(group.order() % h.order(), 0);
        }
    }
    let _ = parse_binding(text);
});
