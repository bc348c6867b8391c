//! Built-in algebras and posets used throughout the tests and shipped as
//! JSON files under `fixtures/`.

use crate::algebra::{FiniteAlgebra, Operation};
use crate::poset::Poset;

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Lattice with `meet` and `join` derived from the order generated by `covers`.
///
/// Panics if the covers do not describe a lattice; only used on hand-written data.
pub fn lattice_from_covers(name: &str, labels: &[&str], covers: &[(&str, &str)]) -> FiniteAlgebra {
    let pairs: Vec<(String, String)> = covers
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    let poset = Poset::from_relation(strings(labels), &pairs).expect("valid order");
    let n = poset.len();
    let bound = |x: usize, y: usize, upper: bool| -> usize {
        let cands: Vec<usize> = (0..n)
            .filter(|&z| {
                if upper {
                    poset.leq(x, z) && poset.leq(y, z)
                } else {
                    poset.leq(z, x) && poset.leq(z, y)
                }
            })
            .collect();
        *cands
            .iter()
            .find(|&&z| {
                cands.iter().all(|&w| {
                    if upper {
                        poset.leq(z, w)
                    } else {
                        poset.leq(w, z)
                    }
                })
            })
            .expect("lattice order")
    };
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            meet.push(bound(x, y, false));
            join.push(bound(x, y, true));
        }
    }
    FiniteAlgebra::new(
        name,
        strings(labels),
        vec![
            Operation {
                name: "meet".into(),
                arity: 2,
                table: meet,
            },
            Operation {
                name: "join".into(),
                arity: 2,
                table: join,
            },
        ],
    )
    .expect("valid lattice")
}

/// Adds a unary operation given as `(argument, value)` label pairs.
pub fn with_unary(mut alg: FiniteAlgebra, name: &str, values: &[(&str, &str)]) -> FiniteAlgebra {
    let mut table = vec![usize::MAX; alg.len()];
    for (x, y) in values {
        table[alg.index_of(x).unwrap()] = alg.index_of(y).unwrap();
    }
    assert!(table.iter().all(|&v| v != usize::MAX), "incomplete table for {name}");
    alg.operations.push(Operation {
        name: name.into(),
        arity: 1,
        table,
    });
    alg
}

fn with_constant(mut alg: FiniteAlgebra, name: &str, value: &str) -> FiniteAlgebra {
    let v = alg.index_of(value).unwrap();
    alg.operations.push(Operation {
        name: name.into(),
        arity: 0,
        table: vec![v],
    });
    alg
}

/// The two-element lattice.
pub fn two() -> FiniteAlgebra {
    lattice_from_covers("2", &["0", "1"], &[("0", "1")])
}

/// `N5` with `0 < a < c < 1` and `0 < b < 1`.
pub fn n5() -> FiniteAlgebra {
    lattice_from_covers(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
}

/// `N5` with the unary operation `f(0)=f(b)=b`, `f(a)=f(c)=f(1)=1`.
pub fn n5_enriched() -> FiniteAlgebra {
    with_unary(
        n5(),
        "f",
        &[("0", "b"), ("b", "b"), ("a", "1"), ("c", "1"), ("1", "1")],
    )
    .renamed("N5f")
}

/// Seven-element lattice with three atoms; each atom pair below a coatom except the outer pair.
pub fn l1() -> FiniteAlgebra {
    lattice_from_covers(
        "L1",
        &["0", "p", "q", "r", "s", "t", "1"],
        &[
            ("0", "p"),
            ("0", "q"),
            ("0", "r"),
            ("p", "s"),
            ("q", "s"),
            ("q", "t"),
            ("r", "t"),
            ("s", "1"),
            ("t", "1"),
        ],
    )
}

/// Seven-element lattice with two atoms and three coatoms.
pub fn l2() -> FiniteAlgebra {
    lattice_from_covers(
        "L2",
        &["0", "p", "q", "s", "m", "t", "1"],
        &[
            ("0", "p"),
            ("0", "q"),
            ("p", "s"),
            ("p", "m"),
            ("q", "m"),
            ("q", "t"),
            ("s", "1"),
            ("m", "1"),
            ("t", "1"),
        ],
    )
}

/// The nine-element lattice `C` with unary operations `f` and `g`.
pub fn fig3_c() -> FiniteAlgebra {
    let c = lattice_from_covers(
        "C",
        &["0", "x", "y", "u", "v", "z", "w", "t", "1"],
        &[
            ("0", "x"),
            ("x", "y"),
            ("y", "u"),
            ("u", "v"),
            ("v", "w"),
            ("y", "z"),
            ("z", "w"),
            ("w", "t"),
            ("t", "1"),
        ],
    );
    let c = with_unary(
        c,
        "f",
        &[
            ("0", "0"),
            ("x", "y"),
            ("y", "z"),
            ("z", "z"),
            ("u", "t"),
            ("v", "t"),
            ("w", "t"),
            ("t", "1"),
            ("1", "1"),
        ],
    );
    with_unary(
        c,
        "g",
        &[
            ("1", "1"),
            ("t", "w"),
            ("w", "z"),
            ("z", "z"),
            ("u", "x"),
            ("v", "x"),
            ("y", "x"),
            ("x", "0"),
            ("0", "0"),
        ],
    )
}

/// The simple four-element chain `B = {0 < a < b < 1}` with `f` and `g`.
pub fn fig4_b() -> FiniteAlgebra {
    let b = lattice_from_covers("B", &["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]);
    let b = with_unary(b, "f", &[("0", "0"), ("a", "b"), ("b", "1"), ("1", "1")]);
    with_unary(b, "g", &[("1", "1"), ("b", "a"), ("a", "0"), ("0", "0")])
}

/// The three-element Stone algebra `({0,b,1}; meet, join, 0, 1, ')`.
pub fn stone_s() -> FiniteAlgebra {
    let s = lattice_from_covers("S", &["0", "b", "1"], &[("0", "b"), ("b", "1")]);
    let s = with_constant(s, "zero", "0");
    let s = with_constant(s, "one", "1");
    with_unary(s, "pc", &[("0", "1"), ("b", "0"), ("1", "0")])
}

/// Poset given by labels and a generating relation; panics on bad data.
pub fn poset(labels: &[&str], relation: &[(&str, &str)]) -> Poset {
    let pairs: Vec<(String, String)> = relation
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    Poset::from_relation(strings(labels), &pairs).expect("valid poset")
}

/// Meet-irreducibles of the lattice `V`: a bottom `n` below two maximal `d`, `e`.
pub fn poset_v() -> Poset {
    poset(&["n", "d", "e"], &[("n", "d"), ("n", "e")])
}

/// `n`-element antichain (meet-irreducibles of the Boolean lattice `2^n`).
pub fn antichain(n: usize) -> Poset {
    let labels: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    Poset::from_relation(labels, &[]).expect("antichain")
}

/// `n`-element chain `c1 < c2 < ..` (meet-irreducibles of the `(n+1)`-chain).
pub fn chain(n: usize) -> Poset {
    let labels: Vec<String> = (1..=n).map(|i| format!("c{i}")).collect();
    let rel: Vec<(String, String)> = (1..n)
        .map(|i| (labels[i - 1].clone(), labels[i].clone()))
        .collect();
    Poset::from_relation(labels, &rel).expect("chain")
}

/// `D = {d1..dk}` maximal and `N = {x_ij : i < j}` with `x_ij < d_i, d_j`.
pub fn double_star_complete(k: usize) -> Poset {
    let mut labels: Vec<String> = (1..=k).map(|i| format!("d{i}")).collect();
    let mut rel = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            let x = format!("x{i}{j}");
            rel.push((x.clone(), format!("d{i}")));
            rel.push((x.clone(), format!("d{j}")));
            labels.push(x);
        }
    }
    Poset::from_relation(labels, &rel).expect("double star")
}

/// Four maximal elements with `N` forming a 4-cycle `d1-d2-d3-d4-d1`.
pub fn double_star_cycle4() -> Poset {
    poset(
        &["d1", "d2", "d3", "d4", "x12", "x23", "x34", "x14"],
        &[
            ("x12", "d1"),
            ("x12", "d2"),
            ("x23", "d2"),
            ("x23", "d3"),
            ("x34", "d3"),
            ("x34", "d4"),
            ("x14", "d1"),
            ("x14", "d4"),
        ],
    )
}

/// Two `N` elements below the same pair of maximal elements.
pub fn double_star_twin() -> Poset {
    poset(
        &["d", "e", "n1", "n2"],
        &[("n1", "d"), ("n1", "e"), ("n2", "d"), ("n2", "e")],
    )
}

/// One element below three maximal elements; violates `(**)`.
pub fn poset_three_above() -> Poset {
    poset(
        &["n", "d1", "d2", "d3"],
        &[("n", "d1"), ("n", "d2"), ("n", "d3")],
    )
}

/// Every named algebra fixture, as `(file stem, algebra)`.
pub fn algebra_corpus() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("two", two()),
        ("n5", n5()),
        ("n5_enriched", n5_enriched()),
        ("l1", l1()),
        ("l2", l2()),
        ("fig3_C", fig3_c()),
        ("fig4_B", fig4_b()),
        ("stone_S", stone_s()),
    ]
}

/// Every named poset fixture, as `(file stem, poset)`.
pub fn poset_corpus() -> Vec<(&'static str, Poset)> {
    vec![
        ("poset_v", poset_v()),
        ("poset_k2", double_star_complete(2)),
        ("poset_k3", double_star_complete(3)),
        ("poset_k4", double_star_complete(4)),
        ("poset_cycle4", double_star_cycle4()),
        ("poset_twin", double_star_twin()),
        ("poset_three_above", poset_three_above()),
        ("chain1", chain(1)),
        ("chain2", chain(2)),
        ("antichain2", antichain(2)),
        ("antichain3", antichain(3)),
    ]
}
