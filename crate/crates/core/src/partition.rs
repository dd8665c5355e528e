//! Set partitions of a ground set `0..n` (n <= 64), stored as block bitmasks.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, UnionFind};

/// A partition of `0..n` into nonempty blocks, sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<u64>,
}

impl SetPartition {
    /// Validate and canonicalize.
    pub fn new(n: usize, mut blocks: Vec<u64>) -> Result<Self> {
        if n > 64 {
            return Err(Error::SizeCap { what: "ground set", actual: n, cap: 64 });
        }
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b & seen != 0 {
                return Err(Error::InvalidPartition("blocks overlap".into()));
            }
            seen |= b;
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPartition("blocks do not cover the ground set".into()));
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(SetPartition { n, blocks })
    }

    /// Canonicalize blocks known to partition `0..n`.
    pub(crate) fn from_blocks(n: usize, mut blocks: Vec<u64>) -> Self {
        blocks.sort_by_key(|b| b.trailing_zeros());
        SetPartition { n, blocks }
    }

    pub fn one(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![full_mask(n)] };
        SetPartition { n, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        SetPartition { n, blocks: (0..n).map(|i| 1u64 << i).collect() }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Number of blocks `|a|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> Option<u64> {
        self.blocks.iter().copied().find(|b| b >> x & 1 == 1)
    }

    fn same_ground(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GroundMismatch(self.n, other.n))
        }
    }

    /// `self <= other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        self.n == other.n && self.blocks.iter().all(|&b| other.blocks.iter().any(|&c| b & !c == 0))
    }

    /// Finest common coarsening, by union-find over overlapping blocks.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let mut uf = UnionFind::new(self.n);
        for b in self.blocks.iter().chain(&other.blocks) {
            let first = b.trailing_zeros() as usize;
            for x in bits(*b) {
                uf.union(first, x);
            }
        }
        Ok(Self::from_union_find(self.n, &mut uf))
    }

    /// Coarsest common refinement: nonempty pairwise intersections.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let blocks =
            self.blocks.iter().flat_map(|&a| other.blocks.iter().map(move |&b| a & b)).filter(|&c| c != 0).collect();
        Ok(Self::from_blocks(self.n, blocks))
    }

    pub(crate) fn from_union_find(n: usize, uf: &mut UnionFind) -> Self {
        let mut by_root = vec![0u64; n];
        for x in 0..n {
            by_root[uf.find(x)] |= 1 << x;
        }
        Self::from_blocks(n, by_root.into_iter().filter(|&b| b != 0).collect())
    }

    /// Render blocks with the given element names, e.g. `e1e2|f1f2`.
    pub fn display_with(&self, names: &[String]) -> String {
        self.blocks
            .iter()
            .map(|&b| bits(b).map(|x| names[x].as_str()).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| {
                let xs: Vec<String> = bits(b).map(|x| x.to_string()).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// All set partitions of the elements of `mask`, as lists of block masks.
///
/// Generated by restricted growth strings; the count is the Bell number of
/// `|mask|`.
pub fn partitions_of_mask(mask: u64) -> Vec<Vec<u64>> {
    let elems: Vec<usize> = bits(mask).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<u64> = Vec::new();
    fn rec(elems: &[usize], i: usize, blocks: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == elems.len() {
            out.push(blocks.clone());
            return;
        }
        let bit = 1u64 << elems[i];
        for k in 0..blocks.len() {
            blocks[k] |= bit;
            rec(elems, i + 1, blocks, out);
            blocks[k] &= !bit;
        }
        blocks.push(bit);
        rec(elems, i + 1, blocks, out);
        blocks.pop();
    }
    rec(&elems, 0, &mut blocks, &mut out);
    out
}

/// All set partitions of `0..n`.
pub fn all_partitions(n: usize) -> Vec<SetPartition> {
    partitions_of_mask(full_mask(n)).into_iter().map(|b| SetPartition::from_blocks(n, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(n: usize, blocks: &[&[usize]]) -> SetPartition {
        let masks = blocks.iter().map(|b| b.iter().fold(0u64, |m, &x| m | 1 << x)).collect();
        SetPartition::new(n, masks).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SetPartition::new(3, vec![0b011, 0b110]).is_err());
        assert!(SetPartition::new(3, vec![0b011]).is_err());
        assert!(SetPartition::new(2, vec![0b01, 0, 0b10]).is_err());
        let a = SetPartition::new(3, vec![0b100, 0b011]).unwrap();
        assert_eq!(a.blocks(), &[0b011, 0b100]);
    }

    #[test]
    fn join_examples() {
        let a = p(2, &[&[0], &[1]]);
        let b = p(2, &[&[0, 1]]);
        assert_eq!(a.join(&b).unwrap(), b);
        assert_eq!(a.join(&a).unwrap(), a);
        let c = p(4, &[&[0, 1], &[2], &[3]]);
        let d = p(4, &[&[0], &[1, 2], &[3]]);
        assert_eq!(c.join(&d).unwrap(), p(4, &[&[0, 1, 2], &[3]]));
        assert_eq!(c.meet(&d).unwrap(), SetPartition::singletons(4));
        assert_eq!(a.join(&p(3, &[&[0, 1, 2]])), Err(Error::GroundMismatch(2, 3)));
    }

    #[test]
    fn bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(all_partitions(n).len(), b);
        }
    }

    /// Reference join: the finest partition whose blocks are closed under both
    /// relations, found by repeated merging of any two blocks that share an
    /// element with a common block of `a` or `b`.
    fn join_by_closure(a: &SetPartition, b: &SetPartition) -> SetPartition {
        let n = a.ground_size();
        let mut rel = vec![vec![false; n]; n];
        for part in [a, b] {
            for &blk in part.blocks() {
                for x in bits(blk) {
                    for y in bits(blk) {
                        rel[x][y] = true;
                    }
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let mut blocks: Vec<u64> = (0..n).map(|i| (0..n).filter(|&j| rel[i][j]).fold(0, |m, j| m | 1 << j)).collect();
        blocks.sort();
        blocks.dedup();
        SetPartition::new(n, blocks).unwrap()
    }

    fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> SetPartition {
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let mut blocks = vec![0u64; n];
        for (x, &l) in labels.iter().enumerate() {
            blocks[l] |= 1 << x;
        }
        SetPartition::new(n, blocks.into_iter().filter(|&b| b != 0).collect()).unwrap()
    }

    #[test]
    fn join_matches_transitive_closure_on_eight_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_partition(&mut rng, 8);
            let b = random_partition(&mut rng, 8);
            assert_eq!(a.join(&b).unwrap(), join_by_closure(&a, &b));
        }
    }

    proptest! {
        #[test]
        fn lattice_laws(seed in any::<u64>(), n in 1usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_partition(&mut rng, n);
            let b = random_partition(&mut rng, n);
            let j = a.join(&b).unwrap();
            let m = a.meet(&b).unwrap();
            prop_assert!(a.refines(&j) && b.refines(&j));
            prop_assert!(m.refines(&a) && m.refines(&b));
            prop_assert_eq!(&a.join(&m).unwrap(), &a);
            prop_assert_eq!(&a.meet(&j).unwrap(), &a);
            prop_assert_eq!(b.join(&a).unwrap(), j);
        }
    }
}
