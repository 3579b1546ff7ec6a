#![no_main]

use std::sync::Arc;

use libfuzzer_sys::fuzz_target;
use regconst::input::LatticeFile;
use regconst::{Limits, Preset};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = LatticeFile::parse(text) else { return };
    let limits = Limits::default();
    let group = Arc::new(Preset::Frobenius { p: 3, n: 2, k: 2 }.build(&limits).unwrap());
    if let Ok(m) = file.to_lattice(&group, &limits) {
        let again = LatticeFile::parse(&LatticeFile::from_lattice(None, &m).to_json()).unwrap();
        assert_eq!(again.to_lattice(&group, &limits).unwrap(), m);
    }
});
