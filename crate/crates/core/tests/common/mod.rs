//! Oracles shared by the integration tests. None of them call the code
//! path they are used to check.

#![allow(dead_code)]

use conlat::compat::ERelation;
use conlat::congruence::{
    brute_force_congruences, relation_closure_congruences, ConLattice,
};
use conlat::lattice::FiniteLattice;
use conlat::{FiniteAlgebra, Poset};

/// Congruence lattice by the partition sweep (small universes) or the
/// relation-matrix closure (larger ones).
pub fn independent_con(alg: &FiniteAlgebra) -> ConLattice {
    let congruences = if alg.len() <= 9 {
        brute_force_congruences(alg, 9).expect("small universe")
    } else {
        relation_closure_congruences(alg)
    };
    ConLattice::from_congruences(congruences).expect("congruences form a lattice")
}

/// Every naturally labeled partial order on `n` points: element `k` is only
/// ever above elements with smaller index. Returned as `n × n` matrices.
pub fn natural_orders(n: usize) -> Vec<Vec<bool>> {
    let mut out = vec![];
    grow(n, 0, &mut vec![false; n * n], &mut out);
    out
}

fn grow(n: usize, k: usize, leq: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    if k == n {
        out.push(leq.clone());
        return;
    }
    // the strict down-set of k must be a down-set of 0..k
    for mask in 0u32..(1 << k) {
        let below: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let closed = below
            .iter()
            .all(|&b| (0..k).all(|a| !leq[a * n + b] || mask >> a & 1 == 1));
        if !closed {
            continue;
        }
        for &b in &below {
            leq[b * n + k] = true;
        }
        leq[k * n + k] = true;
        grow(n, k + 1, leq, out);
        for &b in &below {
            leq[b * n + k] = false;
        }
        leq[k * n + k] = false;
    }
}

/// All posets with at most `max` points up to isomorphism.
pub fn posets_up_to_iso(max: usize) -> Vec<Poset> {
    let mut out: Vec<Poset> = Vec::new();
    for n in 0..=max {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut seen: Vec<Poset> = Vec::new();
        for m in natural_orders(n) {
            let p = Poset::from_matrix(labels.clone(), m).expect("order");
            if !seen.iter().any(|q| q.is_isomorphic(&p)) {
                seen.push(p);
            }
        }
        out.extend(seen);
    }
    out
}

/// All distributive lattices with at most `max` elements up to isomorphism,
/// built as bounded posets and filtered by the lattice and distributive laws.
pub fn distributive_lattices_up_to(max: usize) -> Vec<FiniteLattice> {
    let mut found: Vec<FiniteLattice> = vec![FiniteLattice::chain(1)];
    for size in 2..=max {
        let middle = size - 2;
        let labels: Vec<String> = std::iter::once("0".to_string())
            .chain((0..middle).map(|i| format!("m{i}")))
            .chain(std::iter::once("1".to_string()))
            .collect();
        for inner in natural_orders(middle) {
            let mut leq = vec![false; size * size];
            for a in 0..size {
                leq[a] = true; // 0 below everything
                leq[a * size + size - 1] = true;
                leq[a * size + a] = true;
            }
            for a in 0..middle {
                for b in 0..middle {
                    leq[(a + 1) * size + b + 1] = inner[a * middle + b];
                }
            }
            let Ok(lat) = FiniteLattice::from_order(labels.clone(), leq) else {
                continue;
            };
            if lat.is_distributive() && !found.iter().any(|f| f.is_isomorphic(&lat)) {
                found.push(lat);
            }
        }
    }
    found
}

/// Whether `E`-compatible families of `n` functions exist, decided exactly:
/// the domain can be taken to be all words `w ∈ B^n` with `(w_s, w_t) ∈ E`
/// for `s < t`, so it suffices that each `(a, b) ∈ E` occurs at each
/// position pair `i < j` of some such word.
pub fn family_of_size_exists(e: &ERelation, n: usize) -> bool {
    let pairs = e.pairs();
    for i in 0..n {
        for j in i + 1..n {
            for &(a, b) in &pairs {
                if !word_exists(e, n, &[(i, a), (j, b)]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Reachability over (position, set of values used so far).
fn word_exists(e: &ERelation, n: usize, fixed: &[(usize, usize)]) -> bool {
    let k = e.base_len();
    let mut states: Vec<bool> = vec![false; 1 << k];
    states[0] = true;
    for pos in 0..n {
        let mut next = vec![false; 1 << k];
        for (used, _) in states.iter().enumerate().filter(|(_, &on)| on) {
            let forced = fixed.iter().find(|(p, _)| *p == pos).map(|&(_, v)| v);
            for v in 0..k {
                if forced.is_some_and(|f| f != v) {
                    continue;
                }
                if (0..k).all(|u| used >> u & 1 == 0 || e.contains(u, v)) {
                    next[used | 1 << v] = true;
                }
            }
        }
        states = next;
    }
    states.iter().any(|&s| s)
}

/// Every relation on `{0..k}` as a bitmask-indexed list.
pub fn all_relations(k: usize) -> Vec<ERelation> {
    let base: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    (0u32..1 << (k * k))
        .map(|mask| {
            let pairs = (0..k * k)
                .filter(|&bit| mask >> bit & 1 == 1)
                .map(|bit| (bit / k, bit % k));
            ERelation::new(base.clone(), pairs).unwrap()
        })
        .collect()
}

/// Double-star posets from simple graphs on `k ≤ max_d` vertices: vertices
/// are the maximal elements and every edge is a non-maximal element below
/// its two endpoints. Deduplicated up to isomorphism.
pub fn double_star_graphs(max_d: usize) -> Vec<Poset> {
    let mut out: Vec<Poset> = Vec::new();
    for k in 1..=max_d {
        let edges: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..1 << edges.len() {
            let mut labels: Vec<String> = (1..=k).map(|i| format!("d{i}")).collect();
            let mut rel = Vec::new();
            for (bit, &(i, j)) in edges.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let x = format!("x{}{}", i + 1, j + 1);
                    rel.push((x.clone(), format!("d{}", i + 1)));
                    rel.push((x.clone(), format!("d{}", j + 1)));
                    labels.push(x);
                }
            }
            let p = Poset::from_relation(labels, &rel).unwrap();
            if !out.iter().any(|q| q.is_isomorphic(&p)) {
                out.push(p);
            }
        }
    }
    out
}
