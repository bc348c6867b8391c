//! Binary relations `E ⊆ B × B` and `E`-compatible families of functions.
//!
//! A family `f_1 ⊏ … ⊏ f_k` of maps `X → B` is `E`-compatible when every
//! ordered pair realizes exactly `E`, that is `{(f_i(x), f_j(x)) : x ∈ X} = E`
//! for `i < j`. It is strongly compatible when, in addition, no kernel
//! `Ker f_i` contains the intersection of the other kernels.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{FiniteAlgebra, Homomorphism};
use crate::error::{Error, Result};

/// A relation on a finite labeled set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ERelation {
    base: Vec<String>,
    member: Vec<bool>,
}

impl ERelation {
    pub fn new(base: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = base.len();
        let mut member = vec![false; n * n];
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Validation(vec![format!(
                    "pair ({a},{b}) outside a base of {n} elements"
                )]));
            }
            member[a * n + b] = true;
        }
        Ok(ERelation { base, member })
    }

    /// Builds a relation from label pairs.
    pub fn from_labels(base: Vec<String>, pairs: &[(String, String)]) -> Result<Self> {
        let find = |l: &str| {
            base.iter()
                .position(|b| b == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let idx: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<_>>()?;
        ERelation::new(base, idx)
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.member[a * self.base.len() + b]
    }

    /// Members in lexicographic index order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.base.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.base.len()).all(|a| self.contains(a, a))
    }

    pub fn has_off_diagonal(&self) -> bool {
        self.pairs().iter().any(|&(a, b)| a != b)
    }

    pub fn inverse(&self) -> ERelation {
        ERelation::new(self.base.clone(), self.pairs().into_iter().map(|(a, b)| (b, a)))
            .expect("same base")
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.base[a].clone(), self.base[b].clone()))
            .collect()
    }

    pub fn format_pair(&self, (a, b): (usize, usize)) -> String {
        format!("({},{})", self.base[a], self.base[b])
    }
}

/// `{(h0(c), h1(c)) : c ∈ C}` for two maps out of the same source into the same target.
pub fn relation_of_pair(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    h0: &Homomorphism,
    h1: &Homomorphism,
) -> Result<ERelation> {
    if h0.map.len() != source.len() || h1.map.len() != source.len() {
        return Err(Error::precondition(
            "both maps must be defined on the same source universe",
        ));
    }
    if h0.map.iter().chain(&h1.map).any(|&y| y >= target.len()) {
        return Err(Error::precondition("map value outside the target universe"));
    }
    ERelation::new(
        target.elements.clone(),
        h0.map.iter().copied().zip(h1.map.iter().copied()),
    )
}

/// Witness triple for one pair `(a, b)`.
pub type Xyz = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XyzCheck {
    /// Every pair has a witness; listed in pair order.
    Holds(Vec<((usize, usize), Xyz)>),
    /// The first pair (in index order) without a witness.
    Fails((usize, usize)),
    /// `E` has no off-diagonal pair, so the criterion does not apply.
    Inapplicable,
}

impl XyzCheck {
    pub fn holds(&self) -> bool {
        matches!(self, XyzCheck::Holds(_))
    }
}

/// Lexicographically least `(x, y, z)` with
/// `(x,x),(y,y),(z,z),(x,y),(x,z),(y,z),(x,a),(x,b),(a,y),(y,b),(a,z),(b,z) ∈ E`.
pub fn xyz_witness(e: &ERelation, a: usize, b: usize) -> Option<Xyz> {
    let n = e.base_len();
    let xs: Vec<usize> = (0..n)
        .filter(|&x| e.contains(x, x) && e.contains(x, a) && e.contains(x, b))
        .collect();
    let ys: Vec<usize> = (0..n)
        .filter(|&y| e.contains(y, y) && e.contains(a, y) && e.contains(y, b))
        .collect();
    let zs: Vec<usize> = (0..n)
        .filter(|&z| e.contains(z, z) && e.contains(a, z) && e.contains(b, z))
        .collect();
    for &x in &xs {
        for &y in ys.iter().filter(|&&y| e.contains(x, y)) {
            if let Some(&z) = zs.iter().find(|&&z| e.contains(x, z) && e.contains(y, z)) {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// Decides whether `E` admits arbitrarily large compatible families.
pub fn check_xyz(e: &ERelation) -> XyzCheck {
    if !e.has_off_diagonal() {
        return XyzCheck::Inapplicable;
    }
    let mut witnesses = Vec::new();
    for (a, b) in e.pairs() {
        match xyz_witness(e, a, b) {
            Some(w) => witnesses.push(((a, b), w)),
            None => return XyzCheck::Fails((a, b)),
        }
    }
    XyzCheck::Holds(witnesses)
}

/// A finite family of functions `X → B`, ordered by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleFamily {
    pub base: Vec<String>,
    pub domain: Vec<String>,
    /// `functions[m][x]` is the value of the `m`-th function at domain element `x`.
    pub functions: Vec<Vec<usize>>,
}

impl CompatibleFamily {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn domain_len(&self) -> usize {
        self.domain.len()
    }

    /// `{(f_i(x), f_j(x)) : x ∈ X}`.
    pub fn image(&self, i: usize, j: usize) -> BTreeSet<(usize, usize)> {
        self.functions[i]
            .iter()
            .zip(&self.functions[j])
            .map(|(&a, &b)| (a, b))
            .collect()
    }
}

/// Domain point `(a, b, i, j)` of the explicit construction, with the
/// half-integers `i, j ∈ {1/2, 1, …, k + 1/2}` stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SlotPoint {
    pub a: usize,
    pub b: usize,
    pub i2: usize,
    pub j2: usize,
}

fn half(h2: usize) -> String {
    if h2 % 2 == 0 {
        (h2 / 2).to_string()
    } else {
        format!("{h2}/2")
    }
}

/// The domain `E × U` of the construction, in order: pairs of `E`, then `i < j`.
pub fn slot_points(e: &ERelation, k: usize) -> Vec<SlotPoint> {
    let top = 2 * k + 1;
    let mut out = Vec::new();
    for (a, b) in e.pairs() {
        for i2 in 1..=top {
            for j2 in i2 + 1..=top {
                out.push(SlotPoint { a, b, i2, j2 });
            }
        }
    }
    out
}

/// Value of `f_m` (1-based) at a slot point, given the chosen witness triple.
fn slot_value(m: usize, p: &SlotPoint, (x, y, z): Xyz) -> usize {
    let m2 = 2 * m;
    if m2 < p.i2 {
        x
    } else if m2 == p.i2 {
        p.a
    } else if m2 < p.j2 {
        y
    } else if m2 == p.j2 {
        p.b
    } else {
        z
    }
}

/// Builds a strongly `E`-compatible family of `k` functions on `X = E × U`.
///
/// `f_m(a,b,i,j)` is `x_ab` below `i`, `a` at `i`, `y_ab` strictly between,
/// `b` at `j` and `z_ab` above `j`, with the least witness triple for each pair.
pub fn build_family(e: &ERelation, k: usize) -> Result<CompatibleFamily> {
    if k == 0 {
        return Err(Error::precondition("family size must be positive"));
    }
    let witnesses = match check_xyz(e) {
        XyzCheck::Holds(w) => w,
        XyzCheck::Fails(p) => {
            return Err(Error::precondition(format!(
                "xyz condition (iii) fails at pair {}",
                e.format_pair(p)
            )))
        }
        XyzCheck::Inapplicable => {
            return Err(Error::precondition(
                "relation has no off-diagonal pair; the xyz criterion does not apply",
            ))
        }
    };
    let witness_of = |a: usize, b: usize| {
        witnesses
            .iter()
            .find(|((pa, pb), _)| (*pa, *pb) == (a, b))
            .map(|(_, w)| *w)
            .expect("witness for every pair")
    };
    let points = slot_points(e, k);
    let functions = (1..=k)
        .map(|m| {
            points
                .iter()
                .map(|p| slot_value(m, p, witness_of(p.a, p.b)))
                .collect()
        })
        .collect();
    let domain = points
        .iter()
        .map(|p| {
            format!(
                "({},{},{},{})",
                e.base()[p.a],
                e.base()[p.b],
                half(p.i2),
                half(p.j2)
            )
        })
        .collect();
    let family = CompatibleFamily {
        base: e.base().to_vec(),
        domain,
        functions,
    };
    debug_assert!(verify_compatible(&family, e, true).is_ok());
    Ok(family)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompatibilityViolation {
    /// `(f_i, f_j)[X] ≠ E`.
    Image {
        i: usize,
        j: usize,
        missing: Vec<(usize, usize)>,
        extra: Vec<(usize, usize)>,
    },
    /// `Ker f_i ⊇ ⋂_{j ≠ i} Ker f_j`.
    KernelContained { i: usize },
    /// A function value lies outside the relation's base.
    OutOfBase { i: usize },
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompatibilityViolation::Image { i, j, missing, extra } => write!(
                f,
                "image of functions {} and {} differs from E (missing {:?}, extra {:?})",
                i + 1,
                j + 1,
                missing,
                extra
            ),
            CompatibilityViolation::KernelContained { i } => write!(
                f,
                "kernel of function {} contains the intersection of the other kernels",
                i + 1
            ),
            CompatibilityViolation::OutOfBase { i } => {
                write!(f, "function {} takes a value outside the base set", i + 1)
            }
        }
    }
}

/// Checks `E`-compatibility in the stored order, and the kernel condition when `strong`.
pub fn verify_compatible(
    family: &CompatibleFamily,
    e: &ERelation,
    strong: bool,
) -> std::result::Result<(), CompatibilityViolation> {
    let target: BTreeSet<(usize, usize)> = e.pairs().into_iter().collect();
    for (i, f) in family.functions.iter().enumerate() {
        if f.len() != family.domain_len() || f.iter().any(|&v| v >= e.base_len()) {
            return Err(CompatibilityViolation::OutOfBase { i });
        }
    }
    let k = family.len();
    for i in 0..k {
        for j in i + 1..k {
            let img = family.image(i, j);
            if img != target {
                return Err(CompatibilityViolation::Image {
                    i,
                    j,
                    missing: target.difference(&img).copied().collect(),
                    extra: img.difference(&target).copied().collect(),
                });
            }
        }
    }
    if strong {
        for i in 0..k {
            if !separates_alone(family, i) {
                return Err(CompatibilityViolation::KernelContained { i });
            }
        }
    }
    Ok(())
}

/// True iff some pair of domain points is identified by every function but `f_i`
/// and separated by `f_i`.
fn separates_alone(family: &CompatibleFamily, i: usize) -> bool {
    let x = family.domain_len();
    let key = |p: usize| -> Vec<usize> {
        family
            .functions
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f[p])
            .collect()
    };
    let mut groups: std::collections::HashMap<Vec<usize>, usize> = Default::default();
    for p in 0..x {
        let v = family.functions[i][p];
        match groups.entry(key(p)) {
            std::collections::hash_map::Entry::Occupied(o) => {
                if *o.get() != v {
                    return true;
                }
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(v);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn full2() -> ERelation {
        ERelation::new(vec!["0".into(), "1".into()], [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    fn fig3_e() -> ERelation {
        let base: Vec<String> = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
        let pairs: Vec<(String, String)> = [
            ("0", "0"),
            ("0", "a"),
            ("0", "b"),
            ("0", "1"),
            ("a", "b"),
            ("a", "1"),
            ("b", "1"),
            ("1", "1"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        ERelation::from_labels(base, &pairs).unwrap()
    }

    #[test]
    fn diagonal_pair_gives_diagonal_of_image() {
        let n5 = fixtures::n5();
        let two = fixtures::two();
        let h = Homomorphism::new(vec![0, 0, 1, 0, 1]);
        let e = relation_of_pair(&n5, &two, &h, &h).unwrap();
        assert_eq!(e.pairs(), vec![(0, 0), (1, 1)]);
        assert_eq!(check_xyz(&e), XyzCheck::Inapplicable);
    }

    #[test]
    fn source_mismatch() {
        let r = relation_of_pair(
            &fixtures::n5(),
            &fixtures::two(),
            &Homomorphism::new(vec![0; 5]),
            &Homomorphism::new(vec![0; 4]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn full_relation_passes_xyz() {
        assert!(check_xyz(&full2()).holds());
    }

    #[test]
    fn fig3_relation_fails_at_a_b() {
        let e = fig3_e();
        match check_xyz(&e) {
            XyzCheck::Fails(p) => assert_eq!(e.format_pair(p), "(a,b)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(build_family(&e, 3).is_err());
    }

    #[test]
    fn family_of_two_on_full_relation() {
        let f = build_family(&full2(), 2).unwrap();
        assert_eq!(f.domain_len(), 40);
        assert_eq!(f.len(), 2);
        assert_eq!(verify_compatible(&f, &full2(), true), Ok(()));
        assert_eq!(f.domain[0], "(0,0,1/2,1)");
    }

    #[test]
    fn family_of_one_is_strong() {
        let f = build_family(&full2(), 1).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(verify_compatible(&f, &full2(), true), Ok(()));
        assert!(build_family(&full2(), 0).is_err());
    }

    #[test]
    fn repeated_function_is_not_compatible() {
        let f = build_family(&full2(), 1).unwrap();
        let doubled = CompatibleFamily {
            functions: vec![f.functions[0].clone(), f.functions[0].clone()],
            ..f
        };
        assert!(matches!(
            verify_compatible(&doubled, &full2(), false),
            Err(CompatibilityViolation::Image { .. })
        ));
    }

    #[test]
    fn single_slot_pair_separates_exactly_one_function() {
        let e = full2();
        let k = 4;
        let f = build_family(&e, k).unwrap();
        let points = slot_points(&e, k);
        let find = |p: SlotPoint| points.iter().position(|&q| q == p).unwrap();
        for m in 1..=k {
            let left = find(SlotPoint { a: 0, b: 1, i2: 2 * m - 1, j2: 2 * m });
            let right = find(SlotPoint { a: 0, b: 1, i2: 2 * m, j2: 2 * m + 1 });
            for (idx, func) in f.functions.iter().enumerate() {
                let separated = func[left] != func[right];
                assert_eq!(separated, idx + 1 == m, "m = {m}, function {}", idx + 1);
            }
        }
    }
}
