//! The lattice files under `data/` are exactly what the catalog builds.
//! Run with `REGCONST_BLESS=1` to rewrite them.

use std::path::PathBuf;

use regconst::catalog::{f20, f20_lattices, hexagonal, hexagonal_sign_twist, s3};
use regconst::input::{parse_group_spec, LatticeFile};
use regconst::{GLattice, Limits};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn expected() -> Vec<(&'static str, &'static str, GLattice)> {
    let l = Limits::default();
    let g = f20(&l).unwrap();
    let m = f20_lattices(&g, &l).unwrap();
    let s = s3(&l).unwrap();
    let hex = hexagonal(&s).unwrap();
    vec![
        ("f20/m1.json", "frobenius:5,4,2", m.m1),
        ("f20/m2.json", "frobenius:5,4,2", m.m2),
        ("f20/m_rho.json", "frobenius:5,4,2", m.m_rho),
        ("f20/m_tau.json", "frobenius:5,4,2", m.m_tau),
        ("s3/hexagonal.json", "frobenius:3,2,2", hex.clone()),
        ("s3/sign_twist.json", "frobenius:3,2,2", hexagonal_sign_twist(&s, &l).unwrap()),
        ("s3/dual_hexagonal.json", "frobenius:3,2,2", hex.dual()),
    ]
}

#[test]
fn data_files_match_catalog() {
    let bless = std::env::var_os("REGCONST_BLESS").is_some();
    for (name, group, lattice) in expected() {
        let spec = parse_group_spec(group).unwrap();
        let file = LatticeFile::from_lattice(Some(&spec), &lattice);
        let path = data_dir().join(name);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, file.to_json() + "\n").unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let on_disk = LatticeFile::parse(&text).unwrap();
        assert_eq!(on_disk, file, "{name}");
        let rebuilt = on_disk.to_lattice(lattice.group(), &Limits::default()).unwrap();
        assert_eq!(rebuilt, lattice, "{name}");
    }
}
