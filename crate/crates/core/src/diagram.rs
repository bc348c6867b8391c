//! Poset-indexed diagrams of finite algebras, their limits, and the two
//! realization constructions (chains of quotients, and the V-shape).

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{FiniteAlgebra, Homomorphism, Operation};
use crate::compat::{verify_compatible, CompatibleFamily};
use crate::congruence::{congruence_lattice, meet_irreducible_congruences};
use crate::error::{Error, Guards, Result};
use crate::partition::Congruence;
use crate::poset::Poset;
use crate::variety::WitnessPair;

/// Algebras `A_p` for `p ∈ P` and maps `f_pq : A_p → A_q` for every `p ≤ q`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub poset: Poset,
    pub algebras: Vec<FiniteAlgebra>,
    maps: HashMap<(usize, usize), Homomorphism>,
}

impl Diagram {
    /// Builds a diagram from a generating set of maps.
    ///
    /// Identities and composites are synthesized; every given map must be a
    /// homomorphism along a relation `p ≤ q`, and the completed system must
    /// be functorial.
    pub fn new(
        poset: Poset,
        algebras: Vec<FiniteAlgebra>,
        given: Vec<((usize, usize), Homomorphism)>,
    ) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Validation(vec!["index poset is empty".into()]));
        }
        if algebras.len() != n {
            return Err(Error::Validation(vec![format!(
                "{} algebras for {} index points",
                algebras.len(),
                n
            )]));
        }
        let mut problems = Vec::new();
        if let Some(first) = algebras.first() {
            for a in &algebras[1..] {
                if a.signature() != first.signature() {
                    problems.push(format!(
                        "`{}` and `{}` have different signatures",
                        first.name, a.name
                    ));
                }
            }
        }
        let mut direct: BTreeMap<(usize, usize), Homomorphism> = BTreeMap::new();
        for ((p, q), h) in given {
            let (lp, lq) = (poset.label(p).to_string(), poset.label(q).to_string());
            if !poset.leq(p, q) {
                problems.push(format!("map from `{lp}` to `{lq}` but `{lp}` ≰ `{lq}`"));
                continue;
            }
            if h.map.len() != algebras[p].len() || h.map.iter().any(|&y| y >= algebras[q].len()) {
                problems.push(format!("map from `{lp}` to `{lq}` has the wrong shape"));
                continue;
            }
            if !h.is_homomorphism(&algebras[p], &algebras[q]) {
                problems.push(format!("map from `{lp}` to `{lq}` is not a homomorphism"));
                continue;
            }
            if direct.insert((p, q), h).is_some() {
                problems.push(format!("map from `{lp}` to `{lq}` given twice"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }

        // Paths out of each p through given maps, shortest first.
        let mut maps = HashMap::new();
        for p in 0..n {
            maps.insert((p, p), Homomorphism::identity(algebras[p].len()));
            let mut frontier = vec![p];
            while let Some(q) = frontier.pop() {
                let fpq = maps[&(p, q)].clone();
                for (&(s, r), h) in direct.range((q, 0)..(q + 1, 0)) {
                    debug_assert_eq!(s, q);
                    if !maps.contains_key(&(p, r)) {
                        maps.insert((p, r), fpq.then(h));
                        frontier.insert(0, r);
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if poset.leq(p, q) && !maps.contains_key(&(p, q)) {
                    problems.push(format!(
                        "no map from `{}` to `{}` can be composed from the given maps",
                        poset.label(p),
                        poset.label(q)
                    ));
                }
            }
        }
        for ((p, q), h) in &direct {
            if &maps[&(*p, *q)] != h {
                problems.push(format!(
                    "given map from `{}` to `{}` disagrees with a composite",
                    poset.label(*p),
                    poset.label(*q)
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let d = Diagram {
            poset,
            algebras,
            maps,
        };
        d.check_functorial()?;
        Ok(d)
    }

    fn check_functorial(&self) -> Result<()> {
        let n = self.poset.len();
        let mut problems = Vec::new();
        for p in 0..n {
            if self.maps[&(p, p)] != Homomorphism::identity(self.algebras[p].len()) {
                problems.push(format!("map at `{}` is not the identity", self.poset.label(p)));
            }
            for q in (0..n).filter(|&q| self.poset.leq(p, q)) {
                for r in (0..n).filter(|&r| self.poset.leq(q, r)) {
                    if self.maps[&(p, q)].then(&self.maps[&(q, r)]) != self.maps[&(p, r)] {
                        problems.push(format!(
                            "maps through `{}`, `{}`, `{}` do not compose",
                            self.poset.label(p),
                            self.poset.label(q),
                            self.poset.label(r)
                        ));
                    }
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `f_pq`, defined iff `p ≤ q`.
    pub fn map(&self, p: usize, q: usize) -> Option<&Homomorphism> {
        self.maps.get(&(p, q))
    }

    /// The maps along cover relations, which generate all others.
    pub fn cover_maps(&self) -> Vec<((usize, usize), &Homomorphism)> {
        self.poset
            .covers()
            .into_iter()
            .map(|(p, q)| ((p, q), &self.maps[&(p, q)]))
            .collect()
    }
}

/// The limit of a diagram, with coordinates kept per index point.
#[derive(Clone, Debug)]
pub struct Limit {
    pub algebra: FiniteAlgebra,
    /// Index points in the coordinate order used for labels.
    pub order: Vec<usize>,
    /// `tuples[a][p]` is the `p`-coordinate of limit element `a`.
    pub tuples: Vec<Vec<usize>>,
}

impl Limit {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn projection(&self, p: usize) -> Homomorphism {
        Homomorphism::new(self.tuples.iter().map(|t| t[p]).collect())
    }
}

/// All compatible tuples `a` with `a_q = f_pq(a_p)` for `p ≤ q`, as a
/// subalgebra of the product ordered lexicographically along a linear extension.
pub fn limit(d: &Diagram, guards: &Guards) -> Result<Limit> {
    let n = d.len();
    let order = d.poset.linear_extension();
    let minimal = d.poset.minimal();
    let mut tuples = Vec::new();
    let mut partial = vec![None; n];
    extend(d, &minimal, 0, &mut partial, &mut tuples, guards.limit_size)?;
    tuples.sort_by(|a: &Vec<usize>, b: &Vec<usize>| {
        order.iter().map(|&p| a[p]).cmp(order.iter().map(|&p| b[p]))
    });
    let name = format!("lim({})", d.poset.labels().join(","));
    let algebra = if tuples.is_empty() {
        empty_algebra(name, &d.algebras[0])?
    } else {
        let factors: Vec<FiniteAlgebra> = order.iter().map(|&p| d.algebras[p].clone()).collect();
        let permuted = tuples
            .iter()
            .map(|t| order.iter().map(|&p| t[p]).collect())
            .collect();
        FiniteAlgebra::from_tuples(name, &factors, permuted)?
    };
    Ok(Limit {
        algebra,
        order,
        tuples,
    })
}

fn extend(
    d: &Diagram,
    minimal: &[usize],
    depth: usize,
    partial: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
    limit_size: usize,
) -> Result<()> {
    if depth == minimal.len() {
        out.push(partial.iter().map(|v| v.expect("every point lies above a minimal one")).collect());
        if out.len() > limit_size {
            return Err(Error::guard("diagram limit size", limit_size));
        }
        return Ok(());
    }
    let m = minimal[depth];
    let above: Vec<usize> = (0..d.len()).filter(|&q| d.poset.leq(m, q)).collect();
    'values: for v in 0..d.algebras[m].len() {
        let saved = partial.clone();
        for &q in &above {
            let w = d.maps[&(m, q)].apply(v);
            match partial[q] {
                Some(x) if x != w => {
                    *partial = saved;
                    continue 'values;
                }
                _ => partial[q] = Some(w),
            }
        }
        extend(d, minimal, depth + 1, partial, out, limit_size)?;
        *partial = saved;
    }
    Ok(())
}

/// The empty algebra of a constant-free signature.
fn empty_algebra(name: String, like: &FiniteAlgebra) -> Result<FiniteAlgebra> {
    if like.has_constants() {
        return Err(Error::precondition(
            "limit is empty although the signature has constants",
        ));
    }
    Ok(FiniteAlgebra {
        name,
        elements: vec![],
        operations: like
            .operations
            .iter()
            .map(|op| Operation {
                name: op.name.clone(),
                arity: op.arity,
                table: vec![],
            })
            .collect(),
    })
}

/// Results of the admissibility check on a computed limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// Every projection is surjective.
    pub cond_i: bool,
    /// Every `p ≰ q` is separated by two limit elements agreeing at `p`.
    pub cond_ii: bool,
    /// `(p, u)` with `u ∈ A_p` outside the image of the projection.
    pub unreached: Vec<(usize, usize)>,
    /// `(p, q)` with `p ≰ q` and no separating pair.
    pub unseparated: Vec<(usize, usize)>,
    /// For each separated `p ≰ q`, limit elements `a, b` with `a_p = b_p`, `a_q ≠ b_q`.
    pub separations: Vec<((usize, usize), (usize, usize))>,
}

impl Admissibility {
    pub fn holds(&self) -> bool {
        self.cond_i && self.cond_ii
    }

    /// Human-readable description of the first failure.
    pub fn describe_failure(&self, d: &Diagram) -> Option<String> {
        if let Some(&(p, u)) = self.unreached.first() {
            return Some(format!(
                "admissibility (i) fails: `{}` at `{}` is not the coordinate of any limit element",
                d.algebras[p].label(u),
                d.poset.label(p)
            ));
        }
        self.unseparated.first().map(|&(p, q)| {
            format!(
                "admissibility (ii) fails: no two limit elements agree at `{}` and differ at `{}`",
                d.poset.label(p),
                d.poset.label(q)
            )
        })
    }
}

pub fn check_admissible(d: &Diagram, lim: &Limit) -> Admissibility {
    let n = d.len();
    let mut unreached = Vec::new();
    for p in 0..n {
        let mut hit = vec![false; d.algebras[p].len()];
        for t in &lim.tuples {
            hit[t[p]] = true;
        }
        unreached.extend(hit.iter().enumerate().filter(|(_, &h)| !h).map(|(u, _)| (p, u)));
    }
    let mut unseparated = Vec::new();
    let mut separations = Vec::new();
    for p in 0..n {
        for q in (0..n).filter(|&q| !d.poset.leq(p, q)) {
            let mut first_with: HashMap<usize, usize> = HashMap::new();
            let mut found = None;
            for (a, t) in lim.tuples.iter().enumerate() {
                let b = *first_with.entry(t[p]).or_insert(a);
                if lim.tuples[b][q] != t[q] {
                    found = Some((b, a));
                    break;
                }
            }
            match found {
                Some(w) => separations.push(((p, q), w)),
                None => unseparated.push((p, q)),
            }
        }
    }
    Admissibility {
        cond_i: unreached.is_empty(),
        cond_ii: unseparated.is_empty(),
        unreached,
        unseparated,
        separations,
    }
}

/// Comparison at one index point of the outgoing kernels with `M(Con A_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarPoint {
    pub point: usize,
    /// Meet-irreducible congruences not realized as a kernel.
    pub missing: Vec<Congruence>,
    /// Kernels that are not meet-irreducible.
    pub extra: Vec<Congruence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub points: Vec<StarPoint>,
}

impl StarReport {
    pub fn holds(&self) -> bool {
        self.points
            .iter()
            .all(|s| s.missing.is_empty() && s.extra.is_empty())
    }

    pub fn describe_failure(&self, d: &Diagram) -> Option<String> {
        let s = self
            .points
            .iter()
            .find(|s| !s.missing.is_empty() || !s.extra.is_empty())?;
        let alg = &d.algebras[s.point];
        let show = |cs: &[Congruence]| {
            cs.iter()
                .map(|c| c.display_with(&alg.elements))
                .collect::<Vec<_>>()
                .join(", ")
        };
        Some(format!(
            "(*) fails at `{}`: missing [{}], extra [{}]",
            d.poset.label(s.point),
            show(&s.missing),
            show(&s.extra)
        ))
    }
}

pub fn check_star(d: &Diagram, guards: &Guards) -> Result<StarReport> {
    let n = d.len();
    let mut points = Vec::with_capacity(n);
    for p in 0..n {
        let con = congruence_lattice(&d.algebras[p], guards)?;
        let mut mi = meet_irreducible_congruences(&con);
        mi.sort();
        let mut kernels: Vec<Congruence> = (0..n)
            .filter(|&q| d.poset.leq(p, q))
            .map(|q| d.maps[&(p, q)].kernel())
            .collect();
        kernels.sort();
        kernels.dedup();
        points.push(StarPoint {
            point: p,
            missing: mi.iter().filter(|c| !kernels.contains(c)).cloned().collect(),
            extra: kernels.iter().filter(|c| !mi.contains(c)).cloned().collect(),
        });
    }
    Ok(StarReport { points })
}

/// A diagram with its limit and the checked hypotheses.
#[derive(Clone, Debug)]
pub struct Realization {
    pub diagram: Diagram,
    pub limit: Limit,
    pub admissibility: Admissibility,
    pub star: StarReport,
}

impl Realization {
    fn checked(diagram: Diagram, guards: &Guards) -> Result<Self> {
        let lim = limit(&diagram, guards)?;
        let admissibility = check_admissible(&diagram, &lim);
        let star = check_star(&diagram, guards)?;
        if let Some(msg) = admissibility
            .describe_failure(&diagram)
            .or_else(|| star.describe_failure(&diagram))
        {
            return Err(Error::precondition(format!("realization check failed: {msg}")));
        }
        Ok(Realization {
            diagram,
            limit: lim,
            admissibility,
            star,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.limit.algebra
    }
}

/// Realizes the distributive lattice with meet-irreducible poset `mi` from an
/// algebra whose congruence lattice is a chain, using `A_p = C/α_{|↑p|}`.
pub fn realize_chain(c: &FiniteAlgebra, mi: &Poset, guards: &Guards) -> Result<Realization> {
    let con = congruence_lattice(c, guards)?;
    if !con.lattice.is_chain() {
        return Err(Error::precondition(format!(
            "Con({}) is not a chain",
            c.name
        )));
    }
    let top = con.len() - 1;
    if !mi.check_chain_condition(top) {
        return Err(Error::precondition(format!(
            "chain condition fails: some ↑p is not a chain of at most {top} elements"
        )));
    }
    // α_0 = ∇ > α_1 > … > α_top = Δ; Con is sorted finest first.
    let alpha = |i: usize| con.get(top - i);
    let quotients: Vec<(FiniteAlgebra, Homomorphism)> = (0..=top)
        .map(|i| c.quotient(alpha(i)))
        .collect::<Result<_>>()?;
    let g = |i: usize, j: usize| -> Homomorphism {
        let (qi, pi) = &quotients[i];
        let pj = &quotients[j].1;
        let mut map = vec![0; qi.len()];
        for x in 0..c.len() {
            map[pi.apply(x)] = pj.apply(x);
        }
        Homomorphism::new(map)
    };
    let level: Vec<usize> = (0..mi.len()).map(|p| mi.up_set(p).len()).collect();
    let algebras = level.iter().map(|&i| quotients[i].0.clone()).collect();
    let given = mi
        .covers()
        .into_iter()
        .map(|(p, q)| ((p, q), g(level[p], level[q])))
        .collect();
    Realization::checked(Diagram::new(mi.clone(), algebras, given)?, guards)
}

/// Realizes the distributive lattice with double-star meet-irreducible poset
/// `mi` from a witness pair: `A_d = B`, `A_n = C`, `f_nd = h0`, `f_ne = h1`
/// for `d ⊏ e` above `n`, where the maximal elements take the family's order.
pub fn realize_vshape(
    witness: &WitnessPair,
    family: &CompatibleFamily,
    mi: &Poset,
    guards: &Guards,
) -> Result<Realization> {
    let split = match mi.check_doublestar() {
        crate::poset::DoubleStarCheck::Holds(s) => s,
        crate::poset::DoubleStarCheck::Fails(why) => {
            return Err(Error::precondition(format!("(**) fails: {why}")))
        }
    };
    if family.len() != split.d.len() {
        return Err(Error::precondition(format!(
            "family has {} functions but the poset has {} maximal elements",
            family.len(),
            split.d.len()
        )));
    }
    if family.base.len() != witness.b.len() {
        return Err(Error::precondition(
            "family values do not live in the witness target",
        ));
    }
    if let Err(v) = verify_compatible(family, &witness.e, true) {
        return Err(Error::precondition(format!(
            "family is not strongly E-compatible: {v}"
        )));
    }
    let rank: HashMap<usize, usize> = split.d.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut algebras = vec![witness.b.clone(); mi.len()];
    let mut given = Vec::new();
    for (&x, &(d1, d2)) in split.n.iter().zip(&split.above) {
        algebras[x] = witness.c.clone();
        let (lo, hi) = if rank[&d1] < rank[&d2] { (d1, d2) } else { (d2, d1) };
        given.push(((x, lo), witness.h0.clone()));
        given.push(((x, hi), witness.h1.clone()));
    }
    Realization::checked(Diagram::new(mi.clone(), algebras, given)?, guards)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::{build_family, relation_of_pair};
    use crate::congruence::{brute_force_congruence_lattice, relation_closure_congruences, ConLattice};
    use crate::fixtures;
    use crate::morphism::{are_isomorphic, enumerate_homs};
    use crate::poset::FinDistLattice;

    fn g() -> Guards {
        Guards::default()
    }

    fn n5_witness() -> WitnessPair {
        let c = fixtures::n5();
        let b = fixtures::two();
        let homs = enumerate_homs(&c, &b, true, &g()).unwrap();
        let e = relation_of_pair(&c, &b, &homs[0], &homs[1]).unwrap();
        WitnessPair {
            c,
            b,
            h0: homs[0].clone(),
            h1: homs[1].clone(),
            e,
        }
    }

    fn n5_v_diagram(h0: &Homomorphism, h1: &Homomorphism) -> Diagram {
        let p = fixtures::poset_v();
        let idx = |l: &str| p.index_of(l).unwrap();
        let (n, d, e) = (idx("n"), idx("d"), idx("e"));
        let mut algebras = vec![fixtures::two(); 3];
        algebras[n] = fixtures::n5();
        Diagram::new(p, algebras, vec![((n, d), h0.clone()), ((n, e), h1.clone())]).unwrap()
    }

    /// Filters the full product for compatible tuples.
    fn product_filter(d: &Diagram) -> Vec<Vec<usize>> {
        let dims: Vec<usize> = d.algebras.iter().map(|a| a.len()).collect();
        let mut out = Vec::new();
        crate::algebra::for_each_mixed(&dims, |t| {
            let ok = (0..d.len()).all(|p| {
                (0..d.len())
                    .filter(|&q| d.poset.leq(p, q))
                    .all(|q| d.map(p, q).unwrap().apply(t[p]) == t[q])
            });
            if ok {
                out.push(t.to_vec());
            }
        });
        out
    }

    #[test]
    fn n5_v_shape_limit() {
        let w = n5_witness();
        let d = n5_v_diagram(&w.h0, &w.h1);
        let lim = limit(&d, &g()).unwrap();
        assert_eq!(lim.len(), 5);
        assert!(are_isomorphic(&lim.algebra, &fixtures::n5()).is_some());
        let mut expected = product_filter(&d);
        let mut got = lim.tuples.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        let adm = check_admissible(&d, &lim);
        assert!(adm.holds(), "{adm:?}");
        assert!(check_star(&d, &g()).unwrap().holds());
    }

    #[test]
    fn star_fails_when_one_kernel_is_reused() {
        let w = n5_witness();
        let d = n5_v_diagram(&w.h0, &w.h0);
        let star = check_star(&d, &g()).unwrap();
        assert!(!star.holds());
        let at_n = &star.points[d.poset.index_of("n").unwrap()];
        assert_eq!(at_n.missing, vec![w.h1.kernel()]);
        assert!(at_n.extra.is_empty());
    }

    #[test]
    fn single_point_and_antichain() {
        let p = fixtures::chain(1);
        let d = Diagram::new(p, vec![fixtures::n5()], vec![]).unwrap();
        let lim = limit(&d, &g()).unwrap();
        assert!(are_isomorphic(&lim.algebra, &fixtures::n5()).is_some());

        let d = Diagram::new(fixtures::antichain(2), vec![fixtures::two(); 2], vec![]).unwrap();
        assert_eq!(limit(&d, &g()).unwrap().len(), 4);
    }

    #[test]
    fn singleton_target_cannot_separate() {
        let two = fixtures::two();
        let (one, collapse) = two.quotient(&Congruence::total(2)).unwrap();
        // below a singleton the chain is still separated
        let d = Diagram::new(fixtures::chain(2), vec![two.clone(), one.clone()], vec![((0, 1), collapse)])
            .unwrap();
        let adm = check_admissible(&d, &limit(&d, &g()).unwrap());
        assert!(adm.holds());
        // a singleton coordinate incomparable to another never differs
        let d = Diagram::new(fixtures::antichain(2), vec![two, one], vec![]).unwrap();
        let adm = check_admissible(&d, &limit(&d, &g()).unwrap());
        assert!(adm.cond_i);
        assert!(!adm.cond_ii);
        assert_eq!(adm.unseparated, vec![(0, 1)]);
    }

    #[test]
    fn rejects_non_functorial_or_missing_maps() {
        let p = fixtures::chain(2);
        let two = fixtures::two();
        assert!(Diagram::new(p.clone(), vec![two.clone(), two.clone()], vec![]).is_err());
        let bad = Homomorphism::new(vec![1, 0]);
        assert!(Diagram::new(p.clone(), vec![two.clone(), two.clone()], vec![((0, 1), bad)]).is_err());
        let wrong_way = Homomorphism::identity(2);
        assert!(Diagram::new(p, vec![two.clone(), two], vec![((1, 0), wrong_way)]).is_err());
    }

    #[test]
    fn composites_are_synthesized() {
        let s = fixtures::stone_s();
        let r = realize_chain(&s, &fixtures::chain(2), &g()).unwrap();
        // c1 < c2: A_c1 = S, A_c2 = S/α_1
        assert_eq!(r.diagram.algebras[0].len(), 3);
        assert_eq!(r.diagram.algebras[1].len(), 2);
        assert!(are_isomorphic(r.algebra(), &s).is_some());
        let con = congruence_lattice(r.algebra(), &g()).unwrap();
        assert!(con.lattice.is_chain() && con.len() == 3);
    }

    #[test]
    fn stone_square() {
        let r = realize_chain(&fixtures::stone_s(), &fixtures::antichain(2), &g()).unwrap();
        assert_eq!(r.limit.len(), 4);
        let con = brute_force_congruence_lattice(r.algebra(), 8).unwrap();
        assert_eq!(con.lattice.shape_tag(), "boolean-2^2");
    }

    #[test]
    fn two_element_lattice_cube() {
        let r = realize_chain(&fixtures::two(), &fixtures::antichain(3), &g()).unwrap();
        assert_eq!(r.limit.len(), 8);
        let con = congruence_lattice(r.algebra(), &g()).unwrap();
        assert_eq!(con.lattice.shape_tag(), "boolean-2^3");
        assert!(realize_chain(&fixtures::two(), &fixtures::chain(2), &g()).is_err());
        assert!(realize_chain(&fixtures::n5(), &fixtures::chain(1), &g()).is_err());
    }

    #[test]
    fn vshape_on_v_and_k3() {
        let w = n5_witness();
        let f2 = build_family(&w.e, 2).unwrap();
        let r = realize_vshape(&w, &f2, &fixtures::poset_v(), &g()).unwrap();
        assert_eq!(r.limit.len(), 5);
        assert!(are_isomorphic(r.algebra(), &fixtures::n5()).is_some());

        let k3 = fixtures::double_star_complete(3);
        let f3 = build_family(&w.e, 3).unwrap();
        let r = realize_vshape(&w, &f3, &k3, &g()).unwrap();
        assert_eq!(r.limit.len(), 16);
        let con = ConLattice::from_congruences(relation_closure_congruences(r.algebra())).unwrap();
        assert_eq!(con.congruences, congruence_lattice(r.algebra(), &g()).unwrap().congruences);
        let target = FinDistLattice::new(k3).materialize(&g()).unwrap();
        assert!(con.lattice.is_isomorphic(&target));
    }

    #[test]
    fn vshape_preconditions() {
        let w = n5_witness();
        let f3 = build_family(&w.e, 3).unwrap();
        let err = realize_vshape(&w, &f3, &fixtures::poset_three_above(), &g()).unwrap_err();
        assert!(err.to_string().contains("(**)"));
        assert!(realize_vshape(&w, &f3, &fixtures::poset_v(), &g()).is_err());
    }

    #[test]
    fn limit_guard() {
        let w = n5_witness();
        let f = build_family(&w.e, 4).unwrap();
        let k4 = fixtures::double_star_complete(4);
        let err = realize_vshape(&w, &f, &k4, &g()).unwrap_err();
        assert!(err.is_guard());
        let r = realize_vshape(&w, &f, &k4, &Guards::with_limit_size(128)).unwrap();
        assert_eq!(r.limit.len(), 67);
    }
}
