//! Writes the built-in fixtures as JSON files.
//!
//! Usage: `cargo run -p conlat --example dump_fixtures -- [DIR]` (default `fixtures`).

use std::path::PathBuf;

use conlat::compat::relation_of_pair;
use conlat::fixtures;
use conlat::io;
use conlat::morphism::enumerate_homs;
use conlat::Guards;
use serde_json::json;

fn main() -> conlat::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    for (stem, alg) in fixtures::algebra_corpus() {
        io::write_algebra(&dir.join(format!("{stem}.json")), &alg)?;
    }
    for (stem, p) in fixtures::poset_corpus() {
        io::write_json(&dir.join(format!("{stem}.json")), &io::poset_to_json(&p))?;
    }

    let g = Guards::default();
    let n5 = fixtures::n5();
    let two = fixtures::two();
    let h = enumerate_homs(&n5, &two, true, &g)?;
    let e = relation_of_pair(&n5, &two, &h[0], &h[1])?;
    io::write_json(&dir.join("e_n5.json"), &io::relation_to_json(&e))?;

    let c = fixtures::fig3_c();
    let b = fixtures::fig4_b();
    let h = enumerate_homs(&c, &b, true, &g)?;
    let e = relation_of_pair(&c, &b, &h[0], &h[1])?;
    io::write_json(&dir.join("e_fig3.json"), &io::relation_to_json(&e))?;

    let h = enumerate_homs(&n5, &two, true, &g)?;
    let diagram = json!({
        "poset": io::poset_to_json(&fixtures::poset_v()),
        "algebras": {"n": "n5.json", "d": "two.json", "e": "two.json"},
        "maps": [
            {"from": "n", "to": "d", "map": h[0].labels(&two)},
            {"from": "n", "to": "e", "map": h[1].labels(&two)},
        ],
    });
    io::write_json(&dir.join("diagram_n5_v.json"), &diagram)?;
    println!("wrote fixtures to {}", dir.display());
    Ok(())
}
