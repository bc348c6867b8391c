//! Finite algebras given by operation tables.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Guards, Result};
use crate::partition::{Congruence, Partition};

/// A finitary operation stored as a flattened row-major table of length `n^arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    /// Index into `table` for the given argument tuple.
    #[inline]
    pub fn index(n: usize, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * n + a)
    }

    #[inline]
    pub fn apply(&self, n: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        self.table[Operation::index(n, args)]
    }

    /// Value of an arity-0 operation.
    pub fn constant(&self) -> Option<usize> {
        (self.arity == 0).then(|| self.table[0])
    }
}

/// Calls `f` on every tuple `t` with `t[i] < dims[i]`, in lexicographic order.
pub fn for_each_mixed(dims: &[usize], mut f: impl FnMut(&[usize])) {
    if dims.iter().any(|&d| d == 0) {
        return;
    }
    let mut cur = vec![0; dims.len()];
    loop {
        f(&cur);
        let mut i = cur.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < dims[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// Calls `f` on every `k`-tuple over `0..n`, in table order.
pub fn for_each_tuple(n: usize, k: usize, f: impl FnMut(&[usize])) {
    for_each_mixed(&vec![n; k], f)
}

/// Calls `f` on every `k`-tuple drawn from `items`.
pub fn for_each_tuple_over(items: &[usize], k: usize, mut f: impl FnMut(&[usize])) {
    let mut buf = vec![0; k];
    for_each_tuple(items.len(), k, |idx| {
        for (b, &i) in buf.iter_mut().zip(idx) {
            *b = items[i];
        }
        f(&buf);
    });
}

/// A finite algebra: a labeled universe `0..n` with finitely many operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub name: String,
    pub elements: Vec<String>,
    pub operations: Vec<Operation>,
}

/// Operation names and arities, in declaration order.
pub type Signature = Vec<(String, usize)>;

impl FiniteAlgebra {
    /// Validates and builds an algebra from index tables.
    pub fn new(
        name: impl Into<String>,
        elements: Vec<String>,
        operations: Vec<Operation>,
    ) -> Result<Self> {
        let alg = FiniteAlgebra {
            name: name.into(),
            elements,
            operations,
        };
        let violations = alg.violations();
        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Every structural problem with the algebra; empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let n = self.elements.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push("universe is empty".to_string());
        }
        let mut seen = HashMap::new();
        for (i, l) in self.elements.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                out.push(format!("duplicate element label `{l}` at positions {j} and {i}"));
            }
        }
        let mut names = BTreeSet::new();
        for op in &self.operations {
            if !names.insert(op.name.as_str()) {
                out.push(format!("duplicate operation name `{}`", op.name));
            }
            let expected = n.checked_pow(op.arity as u32);
            if expected != Some(op.table.len()) {
                out.push(format!(
                    "operation `{}` of arity {} has {} table entries, expected {}",
                    op.name,
                    op.arity,
                    op.table.len(),
                    expected.map_or("overflow".to_string(), |e| e.to_string())
                ));
                continue;
            }
            if let Some((pos, &v)) = op.table.iter().enumerate().find(|(_, &v)| v >= n) {
                out.push(format!(
                    "operation `{}` entry {pos} is index {v}, outside 0..{n}",
                    op.name
                ));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn signature(&self) -> Signature {
        self.operations
            .iter()
            .map(|o| (o.name.clone(), o.arity))
            .collect()
    }

    pub fn operation(&self, name: &str) -> Option<&Operation> {
        self.operations.iter().find(|o| o.name == name)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn labels_of(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.elements[x].clone()).collect()
    }

    pub fn has_constants(&self) -> bool {
        self.operations.iter().any(|o| o.arity == 0)
    }

    /// `[n, table_0.., table_1.., ..]`; used to pick deterministic representatives.
    pub fn table_encoding(&self) -> Vec<usize> {
        let mut enc = vec![self.len()];
        for op in &self.operations {
            enc.extend_from_slice(&op.table);
        }
        enc
    }

    /// Same algebra under a new name.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Applies every operation once to tuples over `set` and adds the results.
    fn closure_step(&self, members: &mut [bool]) -> bool {
        let n = self.len();
        let current: Vec<usize> = (0..n).filter(|&x| members[x]).collect();
        let mut changed = false;
        for op in &self.operations {
            for_each_tuple_over(&current, op.arity, |args| {
                let r = op.apply(n, args);
                if !members[r] {
                    members[r] = true;
                    changed = true;
                }
            });
        }
        changed
    }

    /// Least subuniverse containing `seed` and all constants.
    pub fn subalgebra_generated(&self, seed: &[usize]) -> Result<Vec<usize>> {
        if seed.is_empty() && !self.has_constants() {
            return Err(Error::precondition(
                "empty seed generates the empty set in a signature without constants",
            ));
        }
        self.closure(seed)
    }

    /// Like `subalgebra_generated`, but an empty result is allowed.
    fn closure(&self, seed: &[usize]) -> Result<Vec<usize>> {
        let n = self.len();
        let mut members = vec![false; n];
        for &s in seed {
            if s >= n {
                return Err(Error::UnknownLabel(format!("#{s}")));
            }
            members[s] = true;
        }
        while self.closure_step(&mut members) {}
        Ok((0..n).filter(|&x| members[x]).collect())
    }

    /// True iff `set` is closed under every operation (and contains the constants).
    pub fn is_closed(&self, set: &[usize]) -> bool {
        let n = self.len();
        let mut members = vec![false; n];
        for &s in set {
            members[s] = true;
        }
        self.operations.iter().all(|op| {
            let mut ok = true;
            for_each_tuple_over(set, op.arity, |args| ok &= members[op.apply(n, args)]);
            ok
        })
    }

    /// All nonempty subuniverses, sorted by size and then lexicographically.
    pub fn all_subalgebras(&self, guards: &Guards) -> Result<Vec<Vec<usize>>> {
        if self.len() > guards.subalgebra_universe {
            return Err(Error::guard(
                format!("subalgebra search over {} elements", self.len()),
                guards.subalgebra_universe,
            ));
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = Vec::new();
        let base = self.closure(&[])?;
        if base.is_empty() {
            for x in 0..self.len() {
                stack.push(self.closure(&[x])?);
            }
        } else {
            stack.push(base);
        }
        while let Some(s) = stack.pop() {
            if !found.insert(s.clone()) {
                continue;
            }
            let mut members = vec![false; self.len()];
            for &x in &s {
                members[x] = true;
            }
            for x in (0..self.len()).filter(|&x| !members[x]) {
                let mut seed = s.clone();
                seed.push(x);
                let next = self.closure(&seed)?;
                if !found.contains(&next) {
                    stack.push(next);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// The subalgebra on a closed subset, with elements in ascending order.
    /// Returns the algebra and the inclusion map into `self`.
    pub fn induced_subalgebra(&self, set: &[usize]) -> Result<(FiniteAlgebra, Homomorphism)> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() || !self.is_closed(&sorted) {
            return Err(Error::precondition("subset is empty or not closed"));
        }
        let n = self.len();
        let m = sorted.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in sorted.iter().enumerate() {
            pos[x] = i;
        }
        let operations = self
            .operations
            .iter()
            .map(|op| {
                let mut table = Vec::with_capacity(m.pow(op.arity as u32));
                for_each_tuple_over(&sorted, op.arity, |args| table.push(pos[op.apply(n, args)]));
                Operation {
                    name: op.name.clone(),
                    arity: op.arity,
                    table,
                }
            })
            .collect();
        let name = format!("{}[{}]", self.name, self.labels_of(&sorted).join(" "));
        let sub = FiniteAlgebra {
            name,
            elements: self.labels_of(&sorted),
            operations,
        };
        Ok((sub, Homomorphism::new(sorted)))
    }

    /// True iff `theta` is compatible with every operation.
    ///
    /// Checks one argument position at a time, which for an equivalence
    /// relation is equivalent to checking all componentwise-related tuples.
    pub fn is_congruence(&self, theta: &Partition) -> bool {
        self.compatibility_failure(theta).is_none()
    }

    /// First witness of incompatibility, as (operation, argument tuple, position, replacement).
    pub fn compatibility_failure(
        &self,
        theta: &Partition,
    ) -> Option<(String, Vec<usize>, usize, usize)> {
        let n = self.len();
        if theta.len() != n {
            return Some(("<size>".into(), vec![], 0, 0));
        }
        let reps = theta.representatives();
        for op in self.operations.iter().filter(|o| o.arity > 0) {
            let mut failure = None;
            for_each_tuple(n, op.arity, |args| {
                if failure.is_some() {
                    return;
                }
                let base = op.apply(n, args);
                let mut moved = args.to_vec();
                for pos in 0..op.arity {
                    // comparing against the block representative covers every related pair
                    let rep = reps[theta.block_of(args[pos])];
                    if rep == args[pos] {
                        continue;
                    }
                    moved[pos] = rep;
                    if !theta.related(base, op.apply(n, &moved)) {
                        failure = Some((op.name.clone(), args.to_vec(), pos, rep));
                        return;
                    }
                    moved[pos] = args[pos];
                }
            });
            if failure.is_some() {
                return failure;
            }
        }
        None
    }

    /// The quotient by a congruence, blocks labeled by their least member,
    /// together with the natural projection.
    pub fn quotient(&self, theta: &Congruence) -> Result<(FiniteAlgebra, Homomorphism)> {
        if let Some((op, args, pos, rep)) = self.compatibility_failure(theta) {
            return Err(Error::NotCongruence(format!(
                "operation `{op}` at arguments {:?} with position {pos} replaced by {}",
                self.labels_of(&args),
                self.label(rep)
            )));
        }
        let n = self.len();
        let reps = theta.representatives();
        let m = reps.len();
        let operations = self
            .operations
            .iter()
            .map(|op| {
                let mut table = Vec::with_capacity(m.pow(op.arity as u32));
                for_each_tuple_over(&reps, op.arity, |args| {
                    table.push(theta.block_of(op.apply(n, args)))
                });
                Operation {
                    name: op.name.clone(),
                    arity: op.arity,
                    table,
                }
            })
            .collect();
        let q = FiniteAlgebra {
            name: format!("{}/{}", self.name, theta.display_with(&self.elements)),
            elements: self.labels_of(&reps),
            operations,
        };
        let projection = Homomorphism::new(theta.block_indices().to_vec());
        Ok((q, projection))
    }

    /// Direct product; elements are tuples in lexicographic order, labeled `(a,b,..)`.
    pub fn direct_product(factors: &[FiniteAlgebra], guards: &Guards) -> Result<FiniteAlgebra> {
        let first = factors
            .first()
            .ok_or_else(|| Error::precondition("direct product of an empty list"))?;
        let sig = first.signature();
        for f in &factors[1..] {
            if f.signature() != sig {
                return Err(Error::SignatureMismatch(format!(
                    "`{}` and `{}` have different signatures",
                    first.name, f.name
                )));
            }
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
            .filter(|&s| s <= guards.limit_size)
            .ok_or_else(|| Error::guard("direct product universe", guards.limit_size))?;
        let mut tuples = Vec::with_capacity(size);
        let dims: Vec<usize> = factors.iter().map(|f| f.len()).collect();
        for_each_mixed(&dims, |t| tuples.push(t.to_vec()));
        let name = factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join(" x ");
        FiniteAlgebra::from_tuples(name, factors, tuples)
    }

    /// The subalgebra of the product of `factors` on the given tuple list,
    /// which must be closed under the componentwise operations.
    pub fn from_tuples(
        name: impl Into<String>,
        factors: &[FiniteAlgebra],
        tuples: Vec<Vec<usize>>,
    ) -> Result<FiniteAlgebra> {
        let index: HashMap<&[usize], usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let m = tuples.len();
        let mut operations = Vec::new();
        for (oi, (op_name, arity)) in factors[0].signature().into_iter().enumerate() {
            let mut table = Vec::with_capacity(m.pow(arity as u32));
            let mut comp = vec![0; factors.len()];
            let mut args = vec![0; arity];
            let mut missing = false;
            for_each_tuple(m, arity, |idx| {
                for (c, f) in factors.iter().enumerate() {
                    for (a, &i) in args.iter_mut().zip(idx) {
                        *a = tuples[i][c];
                    }
                    comp[c] = f.operations[oi].apply(f.len(), &args);
                }
                match index.get(comp.as_slice()) {
                    Some(&r) => table.push(r),
                    None => missing = true,
                }
            });
            if missing {
                return Err(Error::precondition(format!(
                    "tuple set is not closed under `{op_name}`"
                )));
            }
            operations.push(Operation {
                name: op_name,
                arity,
                table,
            });
        }
        let elements = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t
                    .iter()
                    .zip(factors)
                    .map(|(&x, f)| f.label(x))
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        FiniteAlgebra::new(name, elements, operations)
    }
}

/// A map between universes, stored as source index -> target index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homomorphism {
    pub map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn kernel(&self) -> Congruence {
        Partition::kernel(&self.map)
    }

    pub fn is_surjective(&self, target: &FiniteAlgebra) -> bool {
        let mut hit = vec![false; target.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len()
    }

    /// Exhaustive commutation check against every operation and argument tuple.
    pub fn is_homomorphism(&self, source: &FiniteAlgebra, target: &FiniteAlgebra) -> bool {
        if self.map.len() != source.len()
            || self.map.iter().any(|&y| y >= target.len())
            || source.signature() != target.signature()
        {
            return false;
        }
        let (n, m) = (source.len(), target.len());
        source
            .operations
            .iter()
            .zip(&target.operations)
            .all(|(sop, top)| {
                let mut ok = true;
                let mut image = vec![0; sop.arity];
                for_each_tuple(n, sop.arity, |args| {
                    for (i, &a) in image.iter_mut().zip(args) {
                        *i = self.map[a];
                    }
                    ok &= self.map[sop.apply(n, args)] == top.apply(m, &image);
                });
                ok
            })
    }

    pub fn labels(&self, target: &FiniteAlgebra) -> Vec<String> {
        target.labels_of(&self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn tuples_enumerate_in_table_order() {
        let mut seen = Vec::new();
        for_each_tuple(3, 2, |t| seen.push(Operation::index(3, t)));
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
        let mut count = 0;
        for_each_tuple(4, 0, |t| {
            assert!(t.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn one_element_identity_algebra_is_valid() {
        let a = FiniteAlgebra::new(
            "one",
            vec!["e".into()],
            vec![Operation {
                name: "id".into(),
                arity: 1,
                table: vec![0],
            }],
        );
        assert!(a.is_ok());
    }

    #[test]
    fn closure_violation_reported() {
        let mut n5 = fixtures::n5();
        n5.operations[0].table[3] = 9;
        let err = FiniteAlgebra::new(n5.name, n5.elements, n5.operations).unwrap_err();
        match err {
            Error::Validation(v) => assert!(v[0].contains("index 9")),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn duplicate_labels_and_bad_dimensions() {
        let err = FiniteAlgebra::new(
            "bad",
            vec!["a".into(), "a".into()],
            vec![Operation {
                name: "f".into(),
                arity: 2,
                table: vec![0, 1, 0],
            }],
        )
        .unwrap_err();
        let Error::Validation(v) = err else {
            panic!("expected validation error")
        };
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn generated_subalgebras_of_fig3() {
        let c = fixtures::fig3_c();
        let idx = |s: &str| c.index_of(s).unwrap();
        let sg = c.subalgebra_generated(&[idx("0"), idx("1")]).unwrap();
        assert_eq!(c.labels_of(&sg), vec!["0", "1"]);
        let sg = c.subalgebra_generated(&[idx("z"), idx("1"), idx("0")]).unwrap();
        assert_eq!(c.labels_of(&sg), vec!["0", "z", "1"]);
        let sg = c.subalgebra_generated(&[idx("0"), idx("x")]).unwrap();
        assert_eq!(c.labels_of(&sg), vec!["0", "x", "y", "z"]);
        let all: Vec<usize> = (0..c.len()).collect();
        assert_eq!(c.subalgebra_generated(&all).unwrap(), all);
    }

    #[test]
    fn empty_seed_without_constants_errors() {
        assert!(fixtures::n5().subalgebra_generated(&[]).is_err());
        let s = fixtures::stone_s();
        assert_eq!(s.labels_of(&s.subalgebra_generated(&[]).unwrap()), vec!["0", "1"]);
    }

    #[test]
    fn subalgebras_of_two() {
        let two = fixtures::two();
        let subs = two.all_subalgebras(&Guards::default()).unwrap();
        assert_eq!(subs, vec![vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn large_subalgebras_of_fig3() {
        let c = fixtures::fig3_c();
        let subs = c.all_subalgebras(&Guards::default()).unwrap();
        let mut big: Vec<String> = subs
            .iter()
            .filter(|s| s.len() > 2)
            .map(|s| c.labels_of(s).concat())
            .collect();
        big.sort();
        let mut expected: Vec<String> = [
            "0z1", "0xyz", "zwt1", "0xyz1", "0zwt1", "0xyzwt1", "0xyvzwt1", "0xyuzwt1",
            "0xyuvzwt1",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        expected.sort();
        assert_eq!(big, expected);
        // every two-element subalgebra is a copy of 2
        for s in subs.iter().filter(|s| s.len() == 2) {
            let (sub, _) = c.induced_subalgebra(s).unwrap();
            let (two, _) = c.induced_subalgebra(&[0, 8]).unwrap();
            assert!(crate::morphism::are_isomorphic(&sub, &two).is_some());
        }
    }

    #[test]
    fn subalgebra_guard() {
        let g = Guards {
            subalgebra_universe: 4,
            ..Guards::default()
        };
        assert!(fixtures::n5().all_subalgebras(&g).unwrap_err().is_guard());
    }

    #[test]
    fn quotient_by_trivial_congruences() {
        let n5 = fixtures::n5();
        let (q, p) = n5.quotient(&Partition::identity(5)).unwrap();
        assert_eq!(q.table_encoding(), n5.table_encoding());
        assert_eq!(p.kernel(), Partition::identity(5));
        let (q, p) = n5.quotient(&Partition::total(5)).unwrap();
        assert_eq!(q.len(), 1);
        assert!(p.is_homomorphism(&n5, &q));
    }

    #[test]
    fn quotient_rejects_non_congruence() {
        let n5 = fixtures::n5();
        // (0 a) alone is not a lattice congruence of N5
        let theta = Partition::parse_with("(0 a)(b)(c)(1)", &n5.elements).unwrap();
        assert!(matches!(n5.quotient(&theta), Err(Error::NotCongruence(_))));
    }

    #[test]
    fn product_of_two_chains_is_boolean_square() {
        let two = fixtures::two();
        let p = FiniteAlgebra::direct_product(&[two.clone(), two.clone()], &Guards::default())
            .unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.elements, vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        let meet = p.operation("meet").unwrap();
        assert_eq!(meet.apply(4, &[1, 2]), 0);
        let single = FiniteAlgebra::direct_product(&[two.clone()], &Guards::default()).unwrap();
        assert_eq!(single.table_encoding(), two.table_encoding());
    }

    #[test]
    fn product_signature_mismatch_and_guard() {
        let r = FiniteAlgebra::direct_product(&[fixtures::two(), fixtures::fig4_b()], &Guards::default());
        assert!(matches!(r, Err(Error::SignatureMismatch(_))));
        let n5 = fixtures::n5();
        let r = FiniteAlgebra::direct_product(&[n5.clone(), n5.clone(), n5], &Guards::default());
        assert!(r.unwrap_err().is_guard());
    }
}
