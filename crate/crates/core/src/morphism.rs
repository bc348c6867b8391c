//! Homomorphism enumeration and isomorphism testing by backtracking over
//! a generating set of the source.

use crate::algebra::{for_each_tuple_over, FiniteAlgebra, Homomorphism};
use crate::error::{Error, Guards, Result};

/// A small generating set: elements added greedily in index order when not
/// already generated by the constants and earlier picks.
pub fn generating_set(alg: &FiniteAlgebra) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; alg.len()];
    let mut members: Vec<usize> = alg.subalgebra_generated(&[]).unwrap_or_default();
    for &x in &members {
        reached[x] = true;
    }
    for x in 0..alg.len() {
        if !reached[x] {
            gens.push(x);
            members.push(x);
            members = alg.subalgebra_generated(&members).expect("nonempty seed");
            for &m in &members {
                reached[m] = true;
            }
        }
    }
    gens
}

/// Partial map under construction; `None` entries are not yet determined.
#[derive(Clone)]
struct Partial {
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

/// Extends a partial map by pushing mapped elements through the operations
/// until nothing changes. Returns false on a conflict (or, when `injective`,
/// a collision).
fn propagate(
    src: &FiniteAlgebra,
    tgt: &FiniteAlgebra,
    partial: &mut Partial,
    injective: bool,
    profiles: Option<(&[Vec<usize>], &[Vec<usize>])>,
) -> bool {
    let (n, m) = (src.len(), tgt.len());
    loop {
        let mapped: Vec<usize> = (0..n).filter(|&x| partial.map[x].is_some()).collect();
        let mut changed = false;
        let mut ok = true;
        for (sop, top) in src.operations.iter().zip(&tgt.operations) {
            let mut image = vec![0; sop.arity];
            for_each_tuple_over(&mapped, sop.arity, |args| {
                if !ok {
                    return;
                }
                for (i, &a) in image.iter_mut().zip(args) {
                    *i = partial.map[a].unwrap();
                }
                let r = sop.apply(n, args);
                let v = top.apply(m, &image);
                match partial.map[r] {
                    Some(w) if w != v => ok = false,
                    Some(_) => {}
                    None => {
                        if injective && partial.used[v] {
                            ok = false;
                            return;
                        }
                        if let Some((pa, pb)) = profiles {
                            if pa[r] != pb[v] {
                                ok = false;
                                return;
                            }
                        }
                        partial.map[r] = Some(v);
                        partial.used[v] = true;
                        changed = true;
                    }
                }
            });
            if !ok {
                return false;
            }
        }
        if !changed {
            return true;
        }
    }
}

struct Search<'a> {
    src: &'a FiniteAlgebra,
    tgt: &'a FiniteAlgebra,
    gens: Vec<usize>,
    injective: bool,
    profiles: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    budget: usize,
    nodes: usize,
    first_only: bool,
    found: Vec<Homomorphism>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, partial: Partial) -> Result<()> {
        if self.first_only && !self.found.is_empty() {
            return Ok(());
        }
        if depth == self.gens.len() {
            let map: Vec<usize> = partial.map.iter().map(|v| v.expect("generated")).collect();
            self.found.push(Homomorphism::new(map));
            return Ok(());
        }
        let g = self.gens[depth];
        if partial.map[g].is_some() {
            return self.run(depth + 1, partial);
        }
        for y in 0..self.tgt.len() {
            if self.injective && partial.used[y] {
                continue;
            }
            if let Some((pa, pb)) = &self.profiles {
                if pa[g] != pb[y] {
                    continue;
                }
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::guard("homomorphism search nodes", self.budget));
            }
            let mut next = partial.clone();
            next.map[g] = Some(y);
            next.used[y] = true;
            let profiles = self
                .profiles
                .as_ref()
                .map(|(a, b)| (a.as_slice(), b.as_slice()));
            if propagate(self.src, self.tgt, &mut next, self.injective, profiles) {
                self.run(depth + 1, next)?;
            }
        }
        Ok(())
    }
}

fn search(
    src: &FiniteAlgebra,
    tgt: &FiniteAlgebra,
    injective: bool,
    first_only: bool,
    profiles: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    guards: &Guards,
) -> Result<Vec<Homomorphism>> {
    let mut partial = Partial {
        map: vec![None; src.len()],
        used: vec![false; tgt.len()],
    };
    let p = profiles.as_ref().map(|(a, b)| (a.as_slice(), b.as_slice()));
    if !propagate(src, tgt, &mut partial, injective, p) {
        return Ok(vec![]);
    }
    let mut s = Search {
        src,
        tgt,
        gens: generating_set(src),
        injective,
        profiles,
        budget: guards.hom_search,
        nodes: 0,
        first_only,
        found: Vec::new(),
    };
    s.run(0, partial)?;
    Ok(s.found)
}

/// All homomorphisms `src -> tgt` (optionally only the surjective ones), sorted by map.
pub fn enumerate_homs(
    src: &FiniteAlgebra,
    tgt: &FiniteAlgebra,
    surjective_only: bool,
    guards: &Guards,
) -> Result<Vec<Homomorphism>> {
    if src.signature() != tgt.signature() {
        return Err(Error::SignatureMismatch(format!(
            "`{}` and `{}` have different signatures",
            src.name, tgt.name
        )));
    }
    let mut homs = search(src, tgt, false, false, None, guards)?;
    if surjective_only {
        homs.retain(|h| h.is_surjective(tgt));
    }
    homs.sort();
    Ok(homs)
}

/// Isomorphism-invariant profile of each element: per operation, how often
/// it occurs as a value, whether it is the value of the operation's diagonal,
/// and whether it is a constant.
fn element_profiles(alg: &FiniteAlgebra) -> Vec<Vec<usize>> {
    let n = alg.len();
    let mut prof = vec![Vec::new(); n];
    for op in &alg.operations {
        let mut count = vec![0usize; n];
        for &v in &op.table {
            count[v] += 1;
        }
        for x in 0..n {
            prof[x].push(count[x]);
            let diag = if op.arity == 0 {
                usize::from(op.table[0] == x)
            } else {
                usize::from(op.apply(n, &vec![x; op.arity]) == x)
            };
            prof[x].push(diag);
        }
    }
    prof
}

/// An isomorphism `a -> b`, if one exists.
pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Homomorphism> {
    if a.len() != b.len() || a.signature() != b.signature() {
        return None;
    }
    let pa = element_profiles(a);
    let pb = element_profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let guards = Guards {
        hom_search: usize::MAX,
        ..Guards::default()
    };
    search(a, b, true, true, Some((pa, pb)), &guards)
        .expect("unbounded search")
        .into_iter()
        .next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::partition::Partition;

    fn g() -> Guards {
        Guards::default()
    }

    #[test]
    fn n5_onto_two_has_two_surjections() {
        let n5 = fixtures::n5();
        let homs = enumerate_homs(&n5, &fixtures::two(), true, &g()).unwrap();
        assert_eq!(homs.len(), 2);
        let mut kernels: Vec<String> = homs
            .iter()
            .map(|h| h.kernel().display_with(&n5.elements))
            .collect();
        kernels.sort();
        assert_eq!(kernels, vec!["(0 a c)(b 1)", "(0 b)(a c 1)"]);
        for h in &homs {
            assert!(h.is_homomorphism(&n5, &fixtures::two()));
        }
    }

    #[test]
    fn all_homs_include_constants_and_identity() {
        let n5 = fixtures::n5();
        let endo = enumerate_homs(&n5, &n5, false, &g()).unwrap();
        assert!(endo.contains(&Homomorphism::identity(5)));
        // constant maps are lattice homomorphisms
        for x in 0..5 {
            assert!(endo.contains(&Homomorphism::new(vec![x; 5])));
        }
        for h in &endo {
            assert!(h.is_homomorphism(&n5, &n5));
        }
    }

    #[test]
    fn fig3_onto_b_has_exactly_two() {
        let c = fixtures::fig3_c();
        let b = fixtures::fig4_b();
        let homs = enumerate_homs(&c, &b, true, &g()).unwrap();
        assert_eq!(homs.len(), 2);
        let mut kernels: Vec<String> = homs
            .iter()
            .map(|h| h.kernel().display_with(&c.elements))
            .collect();
        kernels.sort();
        assert_eq!(kernels, vec!["(0 x y z)(u v w)(t)(1)", "(0)(x)(y u v)(z w t 1)"]);
    }

    #[test]
    fn signature_mismatch() {
        let r = enumerate_homs(&fixtures::n5(), &fixtures::fig4_b(), false, &g());
        assert!(matches!(r, Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn search_guard() {
        let tight = Guards {
            hom_search: 2,
            ..Guards::default()
        };
        let n5 = fixtures::n5();
        assert!(enumerate_homs(&n5, &n5, false, &tight).unwrap_err().is_guard());
    }

    #[test]
    fn isomorphism_cases() {
        let c = fixtures::fig3_c();
        let b = fixtures::fig4_b();
        for seed in [["0", "x"], ["1", "t"]] {
            let s: Vec<usize> = seed.iter().map(|l| c.index_of(l).unwrap()).collect();
            let sub = c.subalgebra_generated(&s).unwrap();
            let (alg, _) = c.induced_subalgebra(&sub).unwrap();
            let iso = are_isomorphic(&alg, &b).expect("isomorphic to B");
            assert!(iso.is_homomorphism(&alg, &b) && iso.is_injective());
        }
        assert_eq!(are_isomorphic(&c, &c), Some(Homomorphism::identity(9)));
    }

    #[test]
    fn enriched_n5_simple_quotients_differ() {
        let a = fixtures::n5_enriched();
        let k0 = Partition::parse_with("(0 a c)(b 1)", &a.elements).unwrap();
        let k1 = Partition::parse_with("(0 b)(a c 1)", &a.elements).unwrap();
        let (q0, _) = a.quotient(&k0).unwrap();
        let (q1, _) = a.quotient(&k1).unwrap();
        assert!(are_isomorphic(&q0, &q1).is_none());
        // on A/(0ac)(b1) the unary operation is constant, on A/(0b)(ac1) it is the identity
        assert_eq!(q0.operation("f").unwrap().table, vec![1, 1]);
        assert_eq!(q1.operation("f").unwrap().table, vec![0, 1]);
    }
}
