//! The checked-in JSON fixtures agree with the built-in constructors.

use std::path::PathBuf;

use conlat::congruence::congruence_lattice;
use conlat::diagram::{check_admissible, check_star, limit};
use conlat::{fixtures, io, Guards};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn algebras_match_builtins() {
    for (stem, alg) in fixtures::algebra_corpus() {
        let read = io::read_algebra(&dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(read, alg, "{stem}");
    }
}

#[test]
fn posets_match_builtins() {
    for (stem, p) in fixtures::poset_corpus() {
        let read = io::read_poset(&dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(read, p, "{stem}");
    }
}

#[test]
fn relations_parse() {
    let e = io::read_relation(&dir().join("e_n5.json")).unwrap();
    assert_eq!(e.len(), 4);
    let e = io::read_relation(&dir().join("e_fig3.json")).unwrap();
    assert_eq!(e.len(), 8);
    assert!(!e.is_reflexive());
    assert!(e.has_off_diagonal());
}

#[test]
fn diagram_file_resolves_relative_algebras() {
    let d = io::read_diagram(&dir().join("diagram_n5_v.json")).unwrap();
    let g = Guards::default();
    let lim = limit(&d, &g).unwrap();
    assert_eq!(lim.algebra.len(), 5);
    assert!(check_admissible(&d, &lim).holds());
    assert!(check_star(&d, &g).unwrap().holds());
    assert_eq!(congruence_lattice(&lim.algebra, &g).unwrap().len(), 5);
}

#[test]
fn written_files_are_canonical() {
    for (stem, alg) in fixtures::algebra_corpus() {
        let text = std::fs::read_to_string(dir().join(format!("{stem}.json"))).unwrap();
        let fresh = io::to_canonical_string(&io::algebra_to_json(&alg));
        assert_eq!(text.trim_end(), fresh.trim_end(), "{stem}");
    }
}
