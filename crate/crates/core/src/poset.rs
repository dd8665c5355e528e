//! Finite posets with an explicit element list and cached Möbius values.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite poset on `0..len`, stored as up-set and down-set bitsets.
#[derive(Debug)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    /// Elements sorted by down-set size: a linear extension.
    linear: Vec<usize>,
    rows: Vec<OnceLock<Vec<i64>>>,
    cols: Vec<OnceLock<Vec<i64>>>,
}

impl Clone for FinitePoset {
    fn clone(&self) -> Self {
        Self::from_up_sets(self.up.clone())
    }
}

impl FinitePoset {
    /// Build from a reflexive, antisymmetric, transitive relation.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i == j || leq(i, j) {
                    row.insert(j);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if i != j && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!("{i} and {j} are mutually below")));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::InvalidOrder(format!("not transitive through {i} <= {j}")));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// Build from a strict relation by transitive closure. Fails on cycles.
    pub fn from_relations(n: usize, lt: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(a, b) in lt {
            up[a].insert(b);
        }
        // closure by repeated propagation in reverse topological order
        loop {
            let mut changed = false;
            for i in 0..n {
                let succ: Vec<usize> = up[i].ones().filter(|&j| j != i).collect();
                for j in succ {
                    let add = up[j].clone();
                    if !add.is_subset(&up[i]) {
                        up[i].union_with(&add);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if i != j && up[j].contains(i) {
                    return Err(Error::InvalidOrder(format!("cycle through {i} and {j}")));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    fn from_up_sets(up: Vec<FixedBitSet>) -> Self {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let mut linear: Vec<usize> = (0..n).collect();
        linear.sort_by_key(|&i| (down[i].count_ones(..), i));
        FinitePoset {
            up,
            down,
            linear,
            rows: (0..n).map(|_| OnceLock::new()).collect(),
            cols: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    fn check(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::NotInPoset)
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].count_ones(..) == 1).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].count_ones(..) == 1).collect()
    }

    /// Covering pairs `(a, b)` with `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if a == b {
                    continue;
                }
                let between = self.up[a].intersection(&self.down[b]).count();
                if between == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Möbius values `μ(a, y)` for every `y` (zero off the up-set of `a`).
    pub fn mobius_row(&self, a: usize) -> &[i64] {
        self.rows[a].get_or_init(|| {
            let mut mu = vec![0i64; self.len()];
            for &y in &self.linear {
                if !self.up[a].contains(y) {
                    continue;
                }
                if y == a {
                    mu[y] = 1;
                    continue;
                }
                let s: i64 = self.up[a].intersection(&self.down[y]).filter(|&z| z != y).map(|z| mu[z]).sum();
                mu[y] = -s;
            }
            mu
        })
    }

    /// Möbius values `μ(x, b)` for every `x` (zero off the down-set of `b`).
    pub fn mobius_col(&self, b: usize) -> &[i64] {
        self.cols[b].get_or_init(|| {
            let mut mu = vec![0i64; self.len()];
            for &x in self.linear.iter().rev() {
                if !self.down[b].contains(x) {
                    continue;
                }
                if x == b {
                    mu[x] = 1;
                    continue;
                }
                let s: i64 = self.up[x].intersection(&self.down[b]).filter(|&z| z != x).map(|z| mu[z]).sum();
                mu[x] = -s;
            }
            mu
        })
    }

    /// `μ(a, b)`; zero when `a ≰ b`.
    pub fn mobius(&self, a: usize, b: usize) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mobius_row(a)[b])
    }

    /// The induced sub-poset on `elems` (in the given order).
    pub fn sub_poset(&self, elems: &[usize]) -> Result<FinitePoset> {
        for &e in elems {
            self.check(e)?;
        }
        FinitePoset::from_leq(elems.len(), |i, j| self.leq(elems[i], elems[j]))
    }

    /// Rank function with minimal elements at rank 0, if every maximal chain
    /// between comparable elements has a consistent length.
    pub fn rank(&self) -> Result<Vec<usize>> {
        let mut rank = vec![usize::MAX; self.len()];
        let covers = self.covers();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &covers {
            below[b].push(a);
        }
        for &y in &self.linear {
            if below[y].is_empty() {
                rank[y] = 0;
                continue;
            }
            let r = rank[below[y][0]] + 1;
            if below[y].iter().any(|&a| rank[a] + 1 != r) {
                return Err(Error::NotRanked);
            }
            rank[y] = r;
        }
        Ok(rank)
    }
}
