//! Principal congruences, congruence lattices and subdirect irreducibility.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{for_each_tuple, FiniteAlgebra};
use crate::error::{Error, Guards, Result};
use crate::lattice::FiniteLattice;
use crate::partition::{all_partitions, Congruence, Partition, UnionFind};

/// Least congruence containing all the given pairs.
///
/// Union-find fixed point: every merged pair is pushed through every
/// operation with the other arguments ranging over the whole universe.
pub fn generate_congruence(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let n = alg.len();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(a, b)| uf.union(a, b))
        .collect();
    let ops: Vec<_> = alg.operations.iter().filter(|o| o.arity > 0).collect();
    while let Some((x, y)) = work.pop() {
        for op in &ops {
            let k = op.arity;
            for pos in 0..k {
                let stride = n.pow((k - 1 - pos) as u32);
                for_each_tuple(n, k - 1, |rest| {
                    // table index with the hole at `pos` filled by 0
                    let mut base = 0;
                    for (i, &r) in rest.iter().enumerate() {
                        let at = if i < pos { i } else { i + 1 };
                        base += r * n.pow((k - 1 - at) as u32);
                    }
                    let u = op.table[base + x * stride];
                    let v = op.table[base + y * stride];
                    if uf.union(u, v) {
                        work.push((u, v));
                    }
                });
            }
        }
    }
    uf.into_partition()
}

/// `Cg(a, b)`.
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Congruence {
    generate_congruence(alg, &[(a, b)])
}

/// The congruence lattice of an algebra, ordered by refinement.
#[derive(Clone, Debug)]
pub struct ConLattice {
    /// Congruences sorted by decreasing number of blocks, then by block vector;
    /// index 0 is the identity and the last entry is the total relation.
    pub congruences: Vec<Congruence>,
    pub lattice: FiniteLattice,
    index: HashMap<Congruence, usize>,
}

impl ConLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn position(&self, theta: &Congruence) -> Option<usize> {
        self.index.get(theta).copied()
    }

    pub fn get(&self, i: usize) -> &Congruence {
        &self.congruences[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.lattice.leq(i, j)
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.lattice.meet(i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.lattice.join(i, j)
    }

    /// Atoms of the lattice (minimal non-identity congruences).
    pub fn atoms(&self) -> Vec<usize> {
        if self.len() < 2 {
            return vec![];
        }
        self.lattice.upper_covers(self.bottom())
    }

    /// Indices of the completely meet-irreducible congruences.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        self.lattice.meet_irreducibles()
    }

    /// Cover pairs as congruence text, for export.
    pub fn cover_labels(&self, alg: &FiniteAlgebra) -> Vec<(String, String)> {
        self.lattice
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| {
                (
                    self.congruences[a].display_with(&alg.elements),
                    self.congruences[b].display_with(&alg.elements),
                )
            })
            .collect()
    }

    /// Builds the lattice from a complete list of congruences (any order).
    pub fn from_congruences(mut congruences: Vec<Congruence>) -> Result<Self> {
        congruences.sort_by(|a, b| {
            b.num_blocks()
                .cmp(&a.num_blocks())
                .then_with(|| a.block_indices().cmp(b.block_indices()))
        });
        congruences.dedup();
        let m = congruences.len();
        let index: HashMap<Congruence, usize> = congruences
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut leq = vec![false; m * m];
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = congruences[i].refines(&congruences[j]);
                let mt = congruences[i].meet(&congruences[j]);
                let jn = congruences[i].join(&congruences[j]);
                meet[i * m + j] = *index.get(&mt).ok_or_else(|| {
                    Error::precondition("congruence set is not closed under intersection")
                })?;
                join[i * m + j] = *index
                    .get(&jn)
                    .ok_or_else(|| Error::precondition("congruence set is not closed under join"))?;
            }
        }
        let labels = (0..m).map(|i| format!("#{i}")).collect();
        Ok(ConLattice {
            congruences,
            lattice: FiniteLattice::from_parts(labels, leq, meet, join),
            index,
        })
    }

    /// Relabels the lattice elements with the block text of each congruence.
    pub fn labeled(mut self, alg: &FiniteAlgebra) -> Self {
        let labels: Vec<String> = self
            .congruences
            .iter()
            .map(|c| c.display_with(&alg.elements))
            .collect();
        let m = self.len();
        let mut leq = Vec::with_capacity(m * m);
        let mut meet = Vec::with_capacity(m * m);
        let mut join = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                leq.push(self.lattice.leq(i, j));
                meet.push(self.lattice.meet(i, j));
                join.push(self.lattice.join(i, j));
            }
        }
        self.lattice = FiniteLattice::from_parts(labels, leq, meet, join);
        self
    }
}

/// All congruences: principal congruences for every pair, closed under join.
pub fn congruence_lattice(alg: &FiniteAlgebra, guards: &Guards) -> Result<ConLattice> {
    let n = alg.len();
    let mut all: Vec<Congruence> = vec![Partition::identity(n)];
    let mut seen: HashMap<Congruence, ()> = HashMap::new();
    seen.insert(Partition::identity(n), ());
    let mut principals = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(alg, a, b);
            if seen.insert(c.clone(), ()).is_none() {
                principals.push(c.clone());
                all.push(c);
                if all.len() > guards.congruences {
                    return Err(Error::guard("number of congruences", guards.congruences));
                }
            }
        }
    }
    // every congruence is a join of principal ones; joining new members with
    // the principals reaches the fixed point
    let mut frontier: Vec<Congruence> = principals.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = c.join(p);
                if seen.insert(j.clone(), ()).is_none() {
                    all.push(j.clone());
                    next.push(j);
                    if all.len() > guards.congruences {
                        return Err(Error::guard("number of congruences", guards.congruences));
                    }
                }
            }
        }
        frontier = next;
    }
    ConLattice::from_congruences(all)
}

/// Oracle: every partition of the universe that passes the compatibility check.
///
/// Exponential in `|A|` (Bell numbers); refuses universes above `max_size`.
pub fn brute_force_congruences(alg: &FiniteAlgebra, max_size: usize) -> Result<Vec<Congruence>> {
    if alg.len() > max_size {
        return Err(Error::guard("brute-force partition enumeration universe", max_size));
    }
    Ok(all_partitions(alg.len())
        .into_iter()
        .filter(|p| alg.is_congruence(p))
        .collect())
}

/// Congruence lattice assembled from the brute-force congruence list.
pub fn brute_force_congruence_lattice(alg: &FiniteAlgebra, max_size: usize) -> Result<ConLattice> {
    ConLattice::from_congruences(brute_force_congruences(alg, max_size)?)
}

/// Second oracle for universes too large for the partition sweep: principal
/// congruences by closing a boolean relation matrix under one-step
/// translations and equivalence, then all joins by graph connectivity.
pub fn relation_closure_congruences(alg: &FiniteAlgebra) -> Vec<Congruence> {
    let n = alg.len();
    let mut principals: Vec<Congruence> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = relation_closure(alg, a, b);
            if !principals.contains(&c) {
                principals.push(c);
            }
        }
    }
    let mut all = vec![Partition::identity(n)];
    all.extend(principals.iter().cloned());
    all.sort();
    all.dedup();
    let mut i = 0;
    while i < all.len() {
        for p in &principals {
            let j = connected_join(&all[i], p);
            if let Err(at) = all[..].binary_search(&j) {
                all.insert(at, j);
            }
        }
        i += 1;
    }
    all
}

fn relation_closure(alg: &FiniteAlgebra, a: usize, b: usize) -> Congruence {
    let n = alg.len();
    let mut rel = vec![false; n * n];
    for x in 0..n {
        rel[x * n + x] = true;
    }
    let mut pending = vec![(a, b)];
    while let Some((u, v)) = pending.pop() {
        if rel[u * n + v] {
            continue;
        }
        // merge the classes of u and v
        let cu: Vec<usize> = (0..n).filter(|&s| rel[u * n + s]).collect();
        let cv: Vec<usize> = (0..n).filter(|&t| rel[v * n + t]).collect();
        for &s in &cu {
            for &t in &cv {
                rel[s * n + t] = true;
                rel[t * n + s] = true;
            }
        }
        for op in alg.operations.iter().filter(|o| o.arity > 0) {
            for pos in 0..op.arity {
                for_each_tuple(n, op.arity - 1, |rest| {
                    let mut args: Vec<usize> = rest.to_vec();
                    args.insert(pos, u);
                    let fu = op.apply(n, &args);
                    args[pos] = v;
                    let fv = op.apply(n, &args);
                    if !rel[fu * n + fv] {
                        pending.push((fu, fv));
                    }
                });
            }
        }
    }
    let keys: Vec<usize> = (0..n)
        .map(|x| (0..n).find(|&y| rel[x * n + y]).expect("reflexive"))
        .collect();
    Partition::from_keys(&keys)
}

fn connected_join(p: &Partition, q: &Partition) -> Partition {
    let n = p.len();
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if comp[y] == usize::MAX && (p.related(x, y) || q.related(x, y)) {
                    comp[y] = start;
                    stack.push(y);
                }
            }
        }
    }
    Partition::from_keys(&comp)
}

/// The least non-identity congruence when it is unique.
pub fn monolith(alg: &FiniteAlgebra, guards: &Guards) -> Result<Option<Congruence>> {
    if alg.len() < 2 {
        return Err(Error::precondition("monolith of a one-element algebra"));
    }
    let con = congruence_lattice(alg, guards)?;
    Ok(monolith_of(&con))
}

pub(crate) fn monolith_of(con: &ConLattice) -> Option<Congruence> {
    match con.atoms().as_slice() {
        [only] => Some(con.get(*only).clone()),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Simple,
    SubdirectlyIrreducible,
    NotSubdirectlyIrreducible,
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Irreducibility::Simple => "simple",
            Irreducibility::SubdirectlyIrreducible => "subdirectly-irreducible-not-simple",
            Irreducibility::NotSubdirectlyIrreducible => "not-SI",
        })
    }
}

pub fn classify(alg: &FiniteAlgebra, guards: &Guards) -> Result<Irreducibility> {
    if alg.len() < 2 {
        return Err(Error::precondition("classification of a one-element algebra"));
    }
    Ok(classify_lattice(&congruence_lattice(alg, guards)?))
}

pub(crate) fn classify_lattice(con: &ConLattice) -> Irreducibility {
    if con.len() == 2 {
        Irreducibility::Simple
    } else if monolith_of(con).is_some() {
        Irreducibility::SubdirectlyIrreducible
    } else {
        Irreducibility::NotSubdirectlyIrreducible
    }
}

/// Meet-irreducible members of a congruence lattice, as congruences.
pub fn meet_irreducible_congruences(con: &ConLattice) -> Vec<Congruence> {
    con.meet_irreducibles()
        .into_iter()
        .map(|i| con.get(i).clone())
        .collect()
}

/// Whether `↑θ` in `Con A` is isomorphic to `Con(A/θ)`.
pub fn upset_isomorphic_to_quotient_con(
    alg: &FiniteAlgebra,
    theta: &Congruence,
    guards: &Guards,
) -> Result<bool> {
    let con = congruence_lattice(alg, guards)?;
    let at = con
        .position(theta)
        .ok_or_else(|| Error::NotCongruence(theta.display_with(&alg.elements)))?;
    let (quotient, _) = alg.quotient(theta)?;
    let qcon = congruence_lattice(&quotient, guards)?;
    Ok(con.lattice.up_interval(at).is_isomorphic(&qcon.lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn g() -> Guards {
        Guards::default()
    }

    fn text(alg: &FiniteAlgebra, c: &Congruence) -> String {
        c.display_with(&alg.elements)
    }

    #[test]
    fn n5_monolith_is_cg_a_c() {
        let n5 = fixtures::n5();
        let a = n5.index_of("a").unwrap();
        let c = n5.index_of("c").unwrap();
        let cg = principal_congruence(&n5, a, c);
        assert_eq!(text(&n5, &cg), "(0)(a c)(b)(1)");
        assert_eq!(monolith(&n5, &g()).unwrap(), Some(cg));
    }

    #[test]
    fn cg_of_equal_elements_is_identity() {
        let c = fixtures::fig3_c();
        for x in 0..c.len() {
            assert!(principal_congruence(&c, x, x).is_identity());
        }
    }

    #[test]
    fn fig3_monolith_collapses_u_v_only() {
        let c = fixtures::fig3_c();
        let u = c.index_of("u").unwrap();
        let v = c.index_of("v").unwrap();
        let cg = principal_congruence(&c, u, v);
        assert_eq!(text(&c, &cg), "(0)(x)(y)(u v)(z)(w)(t)(1)");
    }

    #[test]
    fn stone_algebra_has_three_chain() {
        let con = congruence_lattice(&fixtures::stone_s(), &g()).unwrap();
        assert_eq!(con.len(), 3);
        assert!(con.lattice.is_chain());
    }

    #[test]
    fn classify_cases() {
        assert_eq!(classify(&fixtures::fig4_b(), &g()).unwrap(), Irreducibility::Simple);
        assert_eq!(
            classify(&fixtures::fig3_c(), &g()).unwrap(),
            Irreducibility::SubdirectlyIrreducible
        );
        let c = fixtures::fig3_c();
        let c1 = c
            .subalgebra_generated(&["0", "z", "1"].map(|l| c.index_of(l).unwrap()))
            .unwrap();
        let (sub, _) = c.induced_subalgebra(&c1).unwrap();
        assert_eq!(classify(&sub, &g()).unwrap(), Irreducibility::NotSubdirectlyIrreducible);
    }

    #[test]
    fn one_element_algebra_errors() {
        let one = fixtures::two().quotient(&Partition::total(2)).unwrap().0;
        assert!(monolith(&one, &g()).is_err());
        assert!(classify(&one, &g()).is_err());
    }

    #[test]
    fn simple_algebra_monolith_is_total() {
        let b = fixtures::fig4_b();
        assert!(monolith(&b, &g()).unwrap().unwrap().is_total());
    }

    #[test]
    fn product_of_simples_has_no_monolith() {
        let two = fixtures::two();
        let sq = FiniteAlgebra::direct_product(&[two.clone(), two], &g()).unwrap();
        assert_eq!(monolith(&sq, &g()).unwrap(), None);
    }

    #[test]
    fn meet_irreducibles_of_con_n5() {
        let n5 = fixtures::n5();
        let con = congruence_lattice(&n5, &g()).unwrap();
        let mut mi: Vec<String> = meet_irreducible_congruences(&con)
            .iter()
            .map(|c| text(&n5, c))
            .collect();
        mi.sort();
        assert_eq!(mi, vec!["(0 a c)(b 1)", "(0 b)(a c 1)", "(0)(a)(b)(c)(1)"]);
    }

    #[test]
    fn upset_quotient_on_fig3() {
        let c = fixtures::fig3_c();
        let alpha = Partition::parse_with("(0xyz)(uvw)(t)(1)", &c.elements).unwrap();
        assert!(upset_isomorphic_to_quotient_con(&c, &alpha, &g()).unwrap());
        assert!(upset_isomorphic_to_quotient_con(&c, &Partition::identity(9), &g()).unwrap());
        let mono = monolith(&c, &g()).unwrap().unwrap();
        let con = congruence_lattice(&c, &g()).unwrap();
        assert_eq!(con.lattice.up_interval(con.position(&mono).unwrap()).len(), 4);
        assert!(upset_isomorphic_to_quotient_con(&c, &mono, &g()).unwrap());
    }

    #[test]
    fn guard_on_congruence_count() {
        let g = Guards {
            congruences: 3,
            ..Guards::default()
        };
        assert!(congruence_lattice(&fixtures::n5(), &g).unwrap_err().is_guard());
    }
}
