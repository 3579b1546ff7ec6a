#![no_main]

use std::collections::BTreeMap;

use libfuzzer_sys::fuzz_target;
use regconst::input::{parse_relation, resolve_relation};
use regconst::relations::is_brauer_relation;
use regconst::{Limits, Preset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(terms) = parse_relation(text) else { return };
    let limits = Limits::default();
    let group = Preset::Frobenius { p: 5, n: 4, k: 2 }.build(&limits).unwrap();
    if let Ok(rel) = resolve_relation(&terms, &BTreeMap::new(), &group, &limits) {
        let _ = is_brauer_relation(&group, &rel);
    }
});
