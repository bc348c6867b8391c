//! Set partitions of `0..n` in canonical form, plus the union-find used to
//! build them.

use std::fmt;

use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_keys(&roots)
    }
}

/// A partition of `0..n`.
///
/// Stored as a block index per element where blocks are numbered in order
/// of their least element, so two partitions are equal iff their vectors are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block: Vec<usize>,
}

/// Congruences are partitions that happen to be compatible with an algebra.
pub type Congruence = Partition;

impl Partition {
    /// Canonicalizes an arbitrary per-element key: elements with equal keys share a block.
    pub fn from_keys<K: PartialEq>(keys: &[K]) -> Self {
        let mut reps: Vec<&K> = Vec::new();
        let block = keys
            .iter()
            .map(|k| match reps.iter().position(|r| *r == k) {
                Some(i) => i,
                None => {
                    reps.push(k);
                    reps.len() - 1
                }
            })
            .collect();
        Partition { block }
    }

    pub fn identity(n: usize) -> Self {
        Partition {
            block: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition { block: vec![0; n] }
    }

    /// Builds a partition from explicit blocks; every element of `0..n` must occur exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut key = vec![usize::MAX; n];
        for (b, members) in blocks.iter().enumerate() {
            for &x in members {
                if x >= n {
                    return Err(Error::Validation(vec![format!(
                        "element {x} out of range 0..{n}"
                    )]));
                }
                if key[x] != usize::MAX {
                    return Err(Error::Validation(vec![format!(
                        "element {x} occurs in two blocks"
                    )]));
                }
                key[x] = b;
            }
        }
        if let Some(x) = key.iter().position(|&k| k == usize::MAX) {
            return Err(Error::Validation(vec![format!(
                "element {x} is not covered by any block"
            )]));
        }
        Ok(Partition::from_keys(&key))
    }

    /// The partition induced by `x ~ y iff map[x] == map[y]`.
    pub fn kernel(map: &[usize]) -> Self {
        Partition::from_keys(map)
    }

    pub fn len(&self) -> usize {
        self.block.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn block_indices(&self) -> &[usize] {
        &self.block
    }

    pub fn num_blocks(&self) -> usize {
        self.block.iter().max().map_or(0, |m| m + 1)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block[a] == self.block[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Least member of each block, in block order.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.num_blocks()];
        for (x, &b) in self.block.iter().enumerate() {
            let target = other.block[x];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return false;
            }
        }
        true
    }

    /// Intersection of the two equivalence relations.
    pub fn meet(&self, other: &Partition) -> Partition {
        let keys: Vec<(usize, usize)> = self
            .block
            .iter()
            .zip(&other.block)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_keys(&keys)
    }

    /// Least equivalence relation containing both.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.num_blocks()];
            for (x, &b) in p.block.iter().enumerate() {
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        uf.into_partition()
    }

    /// Formats blocks as `(0 x y z)(u v w)(t)(1)` using the given labels.
    pub fn display_with(&self, labels: &[String]) -> String {
        self.blocks()
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&x| labels[x].as_str()).collect();
                format!("({})", names.join(" "))
            })
            .collect()
    }

    /// Parses the block text form. Labels inside a block are separated by
    /// whitespace; a block written without spaces (`(0xyz)`) is split into
    /// single characters when all labels are one character long.
    pub fn parse_with(text: &str, labels: &[String]) -> Result<Partition> {
        let single_char = labels.iter().all(|l| l.chars().count() == 1);
        let lookup = |name: &str| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        };
        let mut blocks = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| Error::Parse(format!("expected `(block)` at `{rest}`")))?;
            let (body, tail) = inner;
            let mut block = Vec::new();
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.len() == 1 && single_char && tokens[0].chars().count() > 1 {
                for c in tokens[0].chars() {
                    block.push(lookup(&c.to_string())?);
                }
            } else {
                for t in tokens {
                    block.push(lookup(t)?);
                }
            }
            blocks.push(block);
            rest = tail.trim_start();
        }
        Partition::from_blocks(labels.len(), &blocks)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.blocks() {
            write!(f, "(")?;
            for (i, x) in b.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Every partition of `0..n`, in restricted-growth-string order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    // `used` = number of blocks opened so far
    fn rec(n: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Partition>) {
        if cur.len() == n {
            out.push(Partition { block: cur.clone() });
            return;
        }
        for b in 0..=used {
            cur.push(b);
            rec(n, cur, used.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn canonical_form_is_key_independent() {
        let a = Partition::from_keys(&[7, 3, 7, 3]);
        let b = Partition::from_blocks(4, &[vec![1, 3], vec![0, 2]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.block_indices(), &[0, 1, 0, 1]);
    }

    #[test]
    fn meet_join_refines() {
        let p = Partition::from_keys(&[0, 0, 1, 1]);
        let q = Partition::from_keys(&[0, 1, 1, 2]);
        assert_eq!(p.meet(&q), Partition::identity(4));
        assert_eq!(p.join(&q), Partition::total(4));
        assert!(Partition::identity(4).refines(&p));
        assert!(!p.refines(&q));
    }

    #[test]
    fn text_round_trip() {
        let l = labels(&["0", "x", "y", "u", "v", "z", "w", "t", "1"]);
        let p = Partition::parse_with("(0xyz)(uvw)(t)(1)", &l).unwrap();
        assert_eq!(p.display_with(&l), "(0 x y z)(u v w)(t)(1)");
        assert_eq!(Partition::parse_with(&p.display_with(&l), &l).unwrap(), p);
    }

    #[test]
    fn bad_blocks_rejected() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![0, 5]]).is_err());
    }
}
