//! Finite lattices given by order, meet and join tables.

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Guards, Result};
use crate::fixtures;
use crate::poset::{order_isomorphism, FinDistLattice, Poset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl FiniteLattice {
    /// Trusted constructor for callers that already hold consistent tables.
    pub(crate) fn from_parts(
        labels: Vec<String>,
        leq: Vec<bool>,
        meet: Vec<usize>,
        join: Vec<usize>,
    ) -> Self {
        FiniteLattice {
            labels,
            leq,
            meet,
            join,
        }
    }

    /// Computes meets and joins of a partial order; fails if some pair lacks a glb or lub.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let poset = Poset::from_matrix(labels.clone(), leq.clone())?;
        let n = poset.len();
        if n == 0 {
            return Err(Error::Validation(vec!["empty lattice".into()]));
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| poset.leq(z, x) && poset.leq(z, y)).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| poset.leq(x, z) && poset.leq(y, z)).collect();
                let glb = lower.iter().copied().find(|&z| lower.iter().all(|&w| poset.leq(w, z)));
                let lub = upper.iter().copied().find(|&z| upper.iter().all(|&w| poset.leq(z, w)));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet[x * n + y] = g;
                        join[x * n + y] = l;
                    }
                    _ => {
                        return Err(Error::Validation(vec![format!(
                            "`{}` and `{}` lack a meet or a join",
                            labels[x], labels[y]
                        )]))
                    }
                }
            }
        }
        Ok(FiniteLattice {
            labels,
            leq,
            meet,
            join,
        })
    }

    /// Reads a lattice from an algebra with binary operations named `meet` and `join`.
    ///
    /// The order is `a ≤ b iff meet(a,b) = a`; the tables must agree with the
    /// glb and lub of that order.
    pub fn from_algebra(alg: &FiniteAlgebra) -> Result<Self> {
        let n = alg.len();
        let op = |name: &str| {
            alg.operation(name)
                .filter(|o| o.arity == 2)
                .ok_or_else(|| Error::precondition(format!("algebra has no binary `{name}`")))
        };
        let (meet, join) = (op("meet")?, op("join")?);
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                let m = meet.apply(n, &[a, b]) == a;
                let j = join.apply(n, &[a, b]) == b;
                if m != j {
                    return Err(Error::Validation(vec![format!(
                        "meet and join disagree on the order of `{}` and `{}`",
                        alg.label(a),
                        alg.label(b)
                    )]));
                }
                leq[a * n + b] = m;
            }
        }
        let lat = FiniteLattice::from_order(alg.elements.clone(), leq)?;
        if lat.meet != meet.table || lat.join != join.table {
            return Err(Error::Validation(vec![
                "meet/join tables are not the glb/lub of the induced order".into(),
            ]));
        }
        Ok(lat)
    }

    /// The five-element lattice `V`: bottom, one atom, two coatoms, top.
    pub fn v() -> Self {
        FinDistLattice::new(fixtures::poset_v())
            .materialize(&Guards::default())
            .expect("V materializes")
    }

    /// The `k`-element chain.
    pub fn chain(k: usize) -> Self {
        FinDistLattice::new(fixtures::chain(k.saturating_sub(1)))
            .materialize(&Guards::default())
            .expect("chain materializes")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y))).unwrap()
    }

    pub fn top(&self) -> usize {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(y, x))).unwrap()
    }

    fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.len()).any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.covers(x, y)).collect()
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.covers(y, x)).collect()
    }

    /// Hasse diagram edges `(lower, upper)`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.covers(a, b))
            .collect()
    }

    /// Elements with exactly one upper cover; the top is never included.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upper_covers(x).len() == 1)
            .collect()
    }

    /// The induced poset on the meet-irreducibles.
    pub fn meet_irreducible_poset(&self) -> Poset {
        self.as_poset().induced(&self.meet_irreducibles())
    }

    pub fn as_poset(&self) -> Poset {
        Poset::from_matrix(self.labels.clone(), self.leq.clone()).expect("lattice order")
    }

    /// A triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, if any.
    ///
    /// A finite lattice satisfies this law exactly when it has no
    /// sublattice isomorphic to `M3` or `N5`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// The principal filter `↑x` as a lattice in its own right.
    pub fn up_interval(&self, x: usize) -> FiniteLattice {
        self.sublattice(&(0..self.len()).filter(|&y| self.leq(x, y)).collect::<Vec<_>>())
    }

    /// Restriction to a subset closed under meet and join.
    fn sublattice(&self, members: &[usize]) -> FiniteLattice {
        let m = members.len();
        let pos = |y: usize| members.iter().position(|&z| z == y).expect("closed subset");
        let mut leq = vec![false; m * m];
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                leq[i * m + j] = self.leq(a, b);
                meet[i * m + j] = pos(self.meet(a, b));
                join[i * m + j] = pos(self.join(a, b));
            }
        }
        FiniteLattice {
            labels: members.iter().map(|&x| self.labels[x].clone()).collect(),
            leq,
            meet,
            join,
        }
    }

    /// An order isomorphism `self -> other`, if any (for lattices this is a lattice isomorphism).
    pub fn isomorphism(&self, other: &FiniteLattice) -> Option<Vec<usize>> {
        order_isomorphism(self.len(), &self.leq, other.len(), &other.leq)
    }

    pub fn is_isomorphic(&self, other: &FiniteLattice) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Short description of the shape: `chain-<k>`, `V`, `boolean-2^<k>` or `other`.
    pub fn shape_tag(&self) -> String {
        if self.is_chain() {
            return format!("chain-{}", self.len());
        }
        if self.is_isomorphic(&FiniteLattice::v()) {
            return "V".into();
        }
        let mi = self.meet_irreducible_poset();
        if self.is_distributive() && mi.is_antichain(&(0..mi.len()).collect::<Vec<_>>()) {
            return format!("boolean-2^{}", mi.len());
        }
        "other".into()
    }
}

/// Lattice isomorphism test.
pub fn lattice_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.is_isomorphic(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn from_algebra_reads_n5() {
        let l = FiniteLattice::from_algebra(&fixtures::n5()).unwrap();
        assert_eq!(l.len(), 5);
        assert!(!l.is_distributive());
        assert_eq!(l.shape_tag(), "other");
    }

    #[test]
    fn from_algebra_rejects_inconsistent_tables() {
        let mut alg = fixtures::two();
        // join(0,1) := 0 makes join disagree with meet
        alg.operations[1].table[1] = 0;
        assert!(FiniteLattice::from_algebra(&alg).is_err());
    }

    #[test]
    fn from_order_rejects_non_lattice() {
        // two minimal elements below two maximal ones: no meet
        let labels = strings(&["a", "b", "c", "d"]);
        let p = fixtures::poset(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]);
        assert!(FiniteLattice::from_order(labels, p.matrix().to_vec()).is_err());
    }

    #[test]
    fn meet_irreducibles_of_v_and_chains() {
        let v = FiniteLattice::v();
        let mi = v.meet_irreducible_poset();
        assert_eq!(mi.len(), 3);
        assert!(mi.is_isomorphic(&fixtures::poset_v()));
        for k in 1..=5 {
            let c = FiniteLattice::chain(k);
            let mi = c.meet_irreducible_poset();
            assert_eq!(mi.len(), k - 1);
            assert!(mi.is_chain(&(0..mi.len()).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn boolean_square_meet_irreducibles_are_coatoms() {
        let sq = FinDistLattice::new(fixtures::antichain(2))
            .materialize(&Guards::default())
            .unwrap();
        let mi = sq.meet_irreducibles();
        assert_eq!(mi.len(), 2);
        assert!(mi.iter().all(|&x| sq.upper_covers(x) == vec![sq.top()]));
        assert_eq!(sq.shape_tag(), "boolean-2^2");
    }

    #[test]
    fn chains_of_different_length_differ() {
        assert!(!lattice_isomorphic(&FiniteLattice::chain(2), &FiniteLattice::chain(3)));
        assert_eq!(FiniteLattice::chain(3).shape_tag(), "chain-3");
        assert_eq!(FiniteLattice::v().shape_tag(), "V");
    }

    #[test]
    fn up_interval_of_v_atom_is_square() {
        let v = FiniteLattice::v();
        let atom = v.upper_covers(v.bottom())[0];
        let up = v.up_interval(atom);
        assert_eq!(up.len(), 4);
        assert_eq!(up.shape_tag(), "boolean-2^2");
    }
}
