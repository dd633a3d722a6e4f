//! Equivalence relations on `{0, .., n-1}` as union-find forests.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An equivalence relation on `{0, .., n-1}`.
///
/// Finds do not compress paths so that lookups work through `&self`;
/// union by rank keeps the trees logarithmic. Equality, hashing and
/// serialization go through the canonical block structure, never the
/// forest layout.
#[derive(Clone)]
pub struct Partition {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut p = Self::identity(n);
        for x in 1..n {
            p.union(0, x);
        }
        p
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut p = Self::identity(n);
        let mut seen = vec![false; n];
        for block in blocks {
            for &x in block {
                if x >= n {
                    return Err(Error::ElementOutOfRange {
                        element: x,
                        size: n,
                    });
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidParameter(format!(
                        "element {x} appears in more than one block"
                    )));
                }
            }
            for w in block.windows(2) {
                p.union(w[0], w[1]);
            }
        }
        Ok(p)
    }

    /// The partition whose blocks are the classes of `labels[x]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut p = Self::identity(labels.len());
        let mut first = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            match first.entry(l) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    p.union(*e.get(), x);
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(x);
                }
            }
        }
        p
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the blocks of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// For each element, the least element of its block.
    pub fn canonical(&self) -> Vec<usize> {
        let n = self.size();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            least[r] = least[r].min(x);
        }
        (0..n).map(|x| least[self.find(x)]).collect()
    }

    /// Blocks sorted internally and by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.size()];
        for (x, &c) in canon.iter().enumerate() {
            if slot[c] == usize::MAX {
                slot[c] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[c]].push(x);
        }
        blocks
    }

    pub fn block_count(&self) -> usize {
        (0..self.size()).filter(|&x| self.find(x) == x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// All related ordered pairs, including the diagonal.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for &a in &block {
                for &b in &block {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Partition) -> bool {
        self.size() == other.size() && (0..self.size()).all(|x| other.related(x, self.find(x)))
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check_same_size(other)?;
        let a = self.canonical();
        let b = other.canonical();
        let n = self.size();
        Ok(Partition::from_labels(
            &(0..n).map(|x| a[x] * n + b[x]).collect::<Vec<_>>(),
        ))
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check_same_size(other)?;
        let mut out = self.clone();
        for x in 0..other.size() {
            out.union(x, other.find(x));
        }
        Ok(out)
    }

    fn check_same_size(&self, other: &Partition) -> Result<()> {
        if self.size() == other.size() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "partitions on {} and {} elements",
                self.size(),
                other.size()
            )))
        }
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.size() == other.size() && self.canonical() == other.canonical()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order for deterministic listings; unrelated to refinement.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            self.size(),
            std::cmp::Reverse(self.block_count()),
            self.canonical(),
        )
            .cmp(&(
                other.size(),
                std::cmp::Reverse(other.block_count()),
                other.canonical(),
            ))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.blocks())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(" | "))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn blocks_are_canonical() {
        let p = Partition::from_blocks(4, &[vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(p.to_string(), "{0,2 | 1,3}");
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 3]]).is_err());
    }

    #[test]
    fn lattice_basics() {
        let id = Partition::identity(4);
        let full = Partition::full(4);
        let p = Partition::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(id.meet(&p).unwrap(), id);
        assert_eq!(full.join(&p).unwrap(), full);
        assert_eq!(p.meet(&full).unwrap(), p);
        assert!(id.leq(&p) && p.leq(&full) && !full.leq(&p));
        assert!(id.meet(&Partition::identity(3)).is_err());
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        proptest::collection::vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels))
    }

    proptest! {
        #[test]
        fn meet_and_join_bound(p in arb_partition(6), q in arb_partition(6)) {
            let m = p.meet(&q).unwrap();
            let j = p.join(&q).unwrap();
            prop_assert!(m.leq(&p) && m.leq(&q));
            prop_assert!(p.leq(&j) && q.leq(&j));
            for a in 0..6 {
                for b in 0..6 {
                    prop_assert_eq!(m.related(a, b), p.related(a, b) && q.related(a, b));
                }
            }
        }

        #[test]
        fn equality_ignores_forest_shape(labels in proptest::collection::vec(0..4usize, 7)) {
            let p = Partition::from_labels(&labels);
            let q = Partition::from_blocks(7, &p.blocks()).unwrap();
            prop_assert_eq!(&p, &q);
            prop_assert_eq!(p.blocks().iter().map(Vec::len).sum::<usize>(), 7);
        }
    }
}
