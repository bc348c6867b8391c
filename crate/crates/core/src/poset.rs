//! Finite posets, the Birkhoff representation of finite distributive
//! lattices, and the shape predicates on posets of meet-irreducibles.

use std::collections::HashMap;

use crate::error::{Error, Guards, Result};
use crate::lattice::FiniteLattice;

/// A finite partial order stored as a dense `n × n` relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Reflexive-transitive closure of a generating relation given by labels;
    /// fails if the closure is not antisymmetric.
    pub fn from_relation(labels: Vec<String>, relation: &[(String, String)]) -> Result<Self> {
        let n = labels.len();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != n {
            return Err(Error::Validation(vec!["duplicate poset labels".into()]));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in relation {
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            leq[ia * n + ib] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { labels, leq };
        for i in 0..n {
            for j in i + 1..n {
                if p.leq(i, j) && p.leq(j, i) {
                    return Err(Error::Validation(vec![format!(
                        "order is not antisymmetric: `{}` and `{}` are mutually below each other",
                        p.labels[i], p.labels[j]
                    )]));
                }
            }
        }
        Ok(p)
    }

    /// Builds a poset from a full relation matrix, checking the order axioms.
    pub fn from_matrix(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::Validation(vec!["relation matrix has wrong size".into()]));
        }
        let p = Poset { labels, leq };
        let mut bad = Vec::new();
        for a in 0..n {
            if !p.leq(a, a) {
                bad.push(format!("not reflexive at {a}"));
            }
            for b in 0..n {
                if a != b && p.leq(a, b) && p.leq(b, a) {
                    bad.push(format!("not antisymmetric at ({a},{b})"));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) && !p.leq(a, c) {
                        bad.push(format!("not transitive at ({a},{b},{c})"));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(p)
        } else {
            bad.truncate(5);
            Err(Error::Validation(bad))
        }
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

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(x, y)))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(y, x)))
            .collect()
    }

    /// Cover pairs `(a, b)` with `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: repeatedly the least-indexed element whose lower elements are placed.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&x| !placed[x] && (0..n).all(|y| !self.lt(y, x) || placed[y]))
                .expect("partial order has a minimal unplaced element");
            placed[next] = true;
            order.push(next);
        }
        order
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| self.leq(a, b) || self.leq(b, a)))
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| a == b || !self.leq(a, b)))
    }

    /// Induced subposet on `subset`, keeping the given order of elements.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let m = subset.len();
        let mut leq = vec![false; m * m];
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                leq[i * m + j] = self.leq(a, b);
            }
        }
        Poset {
            labels: subset.iter().map(|&x| self.labels[x].clone()).collect(),
            leq,
        }
    }

    /// An order isomorphism `self -> other`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        order_isomorphism(self.len(), &self.leq, other.len(), &other.leq)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// All order filters (up-closed subsets), each as an ascending index list.
    pub fn up_sets(&self, limit: usize) -> Result<Vec<Vec<usize>>> {
        // deciding elements from the top down means every partial choice extends
        let mut order = self.linear_extension();
        order.reverse();
        let mut out = Vec::new();
        let mut chosen = vec![false; self.len()];
        self.up_sets_rec(&order, 0, &mut chosen, &mut out, limit)?;
        Ok(out)
    }

    fn up_sets_rec(
        &self,
        order: &[usize],
        pos: usize,
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if pos == order.len() {
            if out.len() >= limit {
                return Err(Error::guard("number of order filters", limit));
            }
            out.push((0..self.len()).filter(|&x| chosen[x]).collect());
            return Ok(());
        }
        let x = order[pos];
        self.up_sets_rec(order, pos + 1, chosen, out, limit)?;
        if (0..self.len()).all(|y| !self.lt(x, y) || chosen[y]) {
            chosen[x] = true;
            self.up_sets_rec(order, pos + 1, chosen, out, limit)?;
            chosen[x] = false;
        }
        Ok(())
    }

    /// Splits the poset as `N ⊎ D` per the double-star condition, or explains why not.
    ///
    /// `D` is forced to be the set of maximal elements; `N` is the rest.
    pub fn check_doublestar(&self) -> DoubleStarCheck {
        let d = self.maximal();
        let n: Vec<usize> = (0..self.len()).filter(|x| !d.contains(x)).collect();
        if !self.is_antichain(&n) {
            let (a, b) = n
                .iter()
                .flat_map(|&a| n.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| self.lt(a, b))
                .unwrap();
            return DoubleStarCheck::Fails(format!(
                "non-maximal elements `{}` < `{}` are comparable, so no antichain split exists",
                self.label(a),
                self.label(b)
            ));
        }
        let mut above = Vec::with_capacity(n.len());
        for &x in &n {
            let ups: Vec<usize> = d.iter().copied().filter(|&y| self.lt(x, y)).collect();
            if ups.len() != 2 {
                return DoubleStarCheck::Fails(format!(
                    "`{}` lies below {} maximal elements instead of exactly two",
                    self.label(x),
                    ups.len()
                ));
            }
            above.push((ups[0], ups[1]));
        }
        DoubleStarCheck::Holds(DoubleStar { n, d, above })
    }

    /// True iff `↑x` is a chain with at most `max_len` elements for every `x`.
    pub fn check_chain_condition(&self, max_len: usize) -> bool {
        (0..self.len()).all(|x| {
            let up = self.up_set(x);
            up.len() <= max_len && self.is_chain(&up)
        })
    }

    /// Cover pairs as labels, a compact generating relation for export.
    pub fn cover_labels(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
            .collect()
    }
}

/// The split `N ⊎ D` of a double-star poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleStar {
    /// Non-maximal elements, ascending.
    pub n: Vec<usize>,
    /// Maximal elements, ascending.
    pub d: Vec<usize>,
    /// For each member of `n` (same position), the two elements of `d` above it, ascending.
    pub above: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoubleStarCheck {
    Holds(DoubleStar),
    Fails(String),
}

impl DoubleStarCheck {
    pub fn holds(&self) -> bool {
        matches!(self, DoubleStarCheck::Holds(_))
    }

    pub fn split(&self) -> Option<&DoubleStar> {
        match self {
            DoubleStarCheck::Holds(s) => Some(s),
            DoubleStarCheck::Fails(_) => None,
        }
    }
}

/// A finite distributive lattice represented by its poset of meet-irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDistLattice {
    pub mi_poset: Poset,
}

impl FinDistLattice {
    pub fn new(mi_poset: Poset) -> Self {
        FinDistLattice { mi_poset }
    }

    /// The lattice of order filters of the poset under reverse inclusion.
    ///
    /// Element `0` is the whole poset (the bottom); the empty filter is the
    /// top. Filters are listed by decreasing size, ties broken by comparing
    /// ascending member lists. `x ↦ ↑x` embeds the poset as the
    /// meet-irreducibles.
    pub fn materialize(&self, guards: &Guards) -> Result<FiniteLattice> {
        let p = &self.mi_poset;
        let mut filters = p.up_sets(guards.congruences)?;
        filters.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let m = filters.len();
        let index: HashMap<&[usize], usize> = filters
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let masks: Vec<Vec<bool>> = filters
            .iter()
            .map(|f| {
                let mut v = vec![false; p.len()];
                for &x in f {
                    v[x] = true;
                }
                v
            })
            .collect();
        let mut leq = vec![false; m * m];
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = (0..p.len()).all(|x| !masks[j][x] || masks[i][x]);
                let union: Vec<usize> = (0..p.len()).filter(|&x| masks[i][x] || masks[j][x]).collect();
                let inter: Vec<usize> = (0..p.len()).filter(|&x| masks[i][x] && masks[j][x]).collect();
                meet[i * m + j] = index[union.as_slice()];
                join[i * m + j] = index[inter.as_slice()];
            }
        }
        let labels = filters
            .iter()
            .map(|f| {
                let names: Vec<&str> = f.iter().map(|&x| p.label(x)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect();
        Ok(FiniteLattice::from_parts(labels, leq, meet, join))
    }
}

/// Order isomorphism between two dense relation matrices by backtracking.
///
/// Candidates are pruned by (down-set size, up-set size, lower covers,
/// upper covers) and by consistency with every element already mapped.
pub fn order_isomorphism(n: usize, a: &[bool], m: usize, b: &[bool]) -> Option<Vec<usize>> {
    if n != m {
        return None;
    }
    let profile = |rel: &[bool], x: usize| -> (usize, usize, usize, usize) {
        let lt = |p: usize, q: usize| p != q && rel[p * n + q];
        let down = (0..n).filter(|&y| rel[y * n + x]).count();
        let up = (0..n).filter(|&y| rel[x * n + y]).count();
        let lower = (0..n)
            .filter(|&y| lt(y, x) && !(0..n).any(|z| lt(y, z) && lt(z, x)))
            .count();
        let upper = (0..n)
            .filter(|&y| lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)))
            .count();
        (down, up, lower, upper)
    };
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    // most constrained first: rarest profile
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (pa.iter().filter(|&&p| p == pa[x]).count(), x));

    fn rec(
        k: usize,
        order: &[usize],
        n: usize,
        a: &[bool],
        b: &[bool],
        pa: &[(usize, usize, usize, usize)],
        pb: &[(usize, usize, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..n {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let consistent = order[..k].iter().all(|&x2| {
                let y2 = map[x2];
                a[x * n + x2] == b[y * n + y2] && a[x2 * n + x] == b[y2 * n + y]
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if rec(k + 1, order, n, a, b, pa, pb, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    rec(0, &order, n, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closure_and_antisymmetry() {
        let p = fixtures::chain(3);
        assert!(p.leq(0, 2));
        let bad = Poset::from_relation(
            vec!["a".into(), "b".into()],
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        );
        assert!(bad.is_err());
        let unknown = Poset::from_relation(vec!["a".into()], &[("a".into(), "q".into())]);
        assert!(matches!(unknown, Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn from_matrix_checks_axioms() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(Poset::from_matrix(labels.clone(), vec![true, true, false, true]).is_ok());
        assert!(Poset::from_matrix(labels.clone(), vec![true, true, true, true]).is_err());
        assert!(Poset::from_matrix(labels, vec![false, false, false, true]).is_err());
    }

    #[test]
    fn materialize_small_cases() {
        let g = Guards::default();
        let v = FinDistLattice::new(fixtures::poset_v()).materialize(&g).unwrap();
        assert_eq!(v.len(), 5);
        // bottom, single atom, two coatoms, top
        assert_eq!(v.upper_covers(v.bottom()).len(), 1);
        assert_eq!(v.lower_covers(v.top()).len(), 2);
        let two = FinDistLattice::new(fixtures::chain(1)).materialize(&g).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.is_chain());
        let square = FinDistLattice::new(fixtures::antichain(2)).materialize(&g).unwrap();
        assert_eq!(square.len(), 4);
        assert!(!square.is_chain());
        assert_eq!(square.labels()[0], "{p1,p2}");
        assert_eq!(square.labels()[3], "{}");
    }

    #[test]
    fn doublestar_cases() {
        match fixtures::poset_v().check_doublestar() {
            DoubleStarCheck::Holds(s) => {
                assert_eq!(s.n, vec![0]);
                assert_eq!(s.d, vec![1, 2]);
                assert_eq!(s.above, vec![(1, 2)]);
            }
            DoubleStarCheck::Fails(r) => panic!("{r}"),
        }
        assert!(!fixtures::poset_three_above().check_doublestar().holds());
        let k3 = fixtures::double_star_complete(3);
        let s = k3.check_doublestar();
        let split = s.split().unwrap();
        assert_eq!(split.d.len(), 3);
        assert_eq!(split.n.len(), 3);
        // a 3-chain has comparable non-maximal elements
        assert!(!fixtures::chain(3).check_doublestar().holds());
    }

    #[test]
    fn chain_condition_cases() {
        for k in 1..=4 {
            assert!(fixtures::antichain(k).check_chain_condition(1));
        }
        assert!(fixtures::chain(2).check_chain_condition(2));
        assert!(!fixtures::chain(2).check_chain_condition(1));
        for n in 1..=4 {
            assert!(!fixtures::poset_v().check_chain_condition(n));
        }
    }

    #[test]
    fn poset_isomorphism() {
        let a = fixtures::poset_v();
        let b = fixtures::poset(&["e", "d", "n"], &[("n", "d"), ("n", "e")]);
        let iso = a.isomorphism(&b).unwrap();
        assert_eq!(iso[0], 2);
        assert!(!a.is_isomorphic(&fixtures::chain(3)));
        assert!(!fixtures::antichain(3).is_isomorphic(&fixtures::poset_v()));
    }
}
