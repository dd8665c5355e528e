//! The semilattice `T(D)` of partitions of `E(D)` into Eulerian parts, the
//! `F`/`G` functions on it, circuit-partition counts and Martin polynomials.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bond::{characteristic_polynomial_of_lattice, chromatic_polynomial, connected_partitions, BondLattice};
use crate::error::{Error, Result};
use crate::graph::{bits, Digraph, SimpleGraph};
use crate::partition::{all_partitions, SetPartition};
use crate::poset::FinitePoset;
use crate::scalar::factorial;
use crate::trails::{count_circuits_best, count_circuits_on};
use crate::IntPolynomial;

/// Cap on `|T(D)|` for materializing the order.
pub const MAX_T_SIZE: usize = 1 << 15;

/// Edge masks of the simple directed cycles of `d` within `mask`, sorted.
pub fn directed_cycles_on(d: &Digraph, mask: u64) -> Vec<u64> {
    let mut found = BTreeSet::new();
    let used = d.vertex_mask(mask);
    for s in bits(used) {
        // cycles whose least vertex is s
        let mut stack = vec![(s, 1u64 << s, 0u64)];
        while let Some((v, seen, edges)) = stack.pop() {
            for e in bits(d.out_mask(v, mask)) {
                let w = d.head(e);
                if w == s {
                    found.insert(edges | 1 << e);
                } else if w > s && seen >> w & 1 == 0 {
                    stack.push((w, seen | 1 << w, edges | 1 << e));
                }
            }
        }
    }
    found.into_iter().collect()
}

/// `Q(D)`: all partitions of `E(D)` into directed cycles, found by covering
/// the least uncovered edge with each cycle through it.
pub fn cycle_partitions(d: &Digraph) -> Result<Vec<SetPartition>> {
    if !d.is_balanced_on(d.all_edges()) {
        return Err(Error::NotEulerian);
    }
    let cycles = directed_cycles_on(d, d.all_edges());
    let mut out = Vec::new();
    fn rec(cycles: &[u64], free: u64, cur: &mut Vec<u64>, m: usize, out: &mut Vec<SetPartition>) {
        if free == 0 {
            out.push(SetPartition::from_blocks(m, cur.clone()));
            return;
        }
        let e = free.trailing_zeros();
        for &c in cycles {
            if c >> e & 1 == 1 && c & !free == 0 {
                cur.push(c);
                rec(cycles, free & !c, cur, m, out);
                cur.pop();
            }
        }
    }
    rec(&cycles, d.all_edges(), &mut Vec::new(), d.edge_count(), &mut out);
    out.sort();
    Ok(out)
}

/// `G_a`: one vertex per block of `a`, adjacent when the blocks share a
/// vertex of `d`.
pub fn intersection_graph(d: &Digraph, a: &SetPartition) -> SimpleGraph {
    let verts: Vec<u64> = a.blocks().iter().map(|&b| d.vertex_mask(b)).collect();
    let mut edges = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i] & verts[j] != 0 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(verts.len(), edges).expect("pairs are distinct")
}

/// `F(b) = (-1)^{|b|} ∏ |𝔠(A_i)|`, zero if a block is not connected Eulerian.
pub fn f_value(d: &Digraph, b: &SetPartition) -> Result<BigInt> {
    if b.ground_size() != d.edge_count() {
        return Err(Error::GroundMismatch(b.ground_size(), d.edge_count()));
    }
    let mut v = BigInt::one();
    for &blk in b.blocks() {
        v *= -BigInt::from(count_circuits_on(d, blk));
    }
    Ok(v)
}

/// `T(D)` with its refinement order and `F` values.
#[derive(Clone, Debug)]
pub struct EulerianSemilattice {
    digraph: Digraph,
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    poset: FinitePoset,
    minimal: Vec<usize>,
    top: usize,
    f: Vec<BigInt>,
}

/// Deliberate corruption for exercising the verification suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fault {
    #[default]
    None,
    /// Negate `F` on every two-block partition.
    FlipTwoBlockSign,
}

impl EulerianSemilattice {
    pub fn build(d: &Digraph) -> Result<Self> {
        Self::build_with(d, Fault::None)
    }

    /// Generated from the connected partitions of each `G_a`, `a ∈ Q(D)`,
    /// mapped to edge partitions by merging cycles.
    pub fn build_with(d: &Digraph, fault: Fault) -> Result<Self> {
        if !d.is_eulerian() {
            return Err(Error::NotEulerian);
        }
        let m = d.edge_count();
        let q = cycle_partitions(d)?;
        let mut set = BTreeSet::new();
        for a in &q {
            let g = intersection_graph(d, a);
            for p in connected_partitions(&g) {
                let blocks = p.blocks().iter().map(|&pb| bits(pb).fold(0u64, |acc, i| acc | a.blocks()[i])).collect();
                set.insert(SetPartition::from_blocks(m, blocks));
                if set.len() > MAX_T_SIZE {
                    return Err(Error::SizeCap { what: "|T(D)|", actual: set.len(), cap: MAX_T_SIZE });
                }
            }
        }
        let elements: Vec<SetPartition> = set.into_iter().collect();
        let poset = FinitePoset::from_leq(elements.len(), |i, j| elements[i].refines(&elements[j]))?;
        let index: HashMap<SetPartition, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let minimal = q.iter().map(|a| index[a]).collect();
        let top = index[&SetPartition::one(m)];
        let f = elements
            .par_iter()
            .map(|b| {
                let v = f_value(d, b).expect("same ground set");
                if fault == Fault::FlipTwoBlockSign && b.len() == 2 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Ok(EulerianSemilattice { digraph: d.clone(), elements, index, poset, minimal, top, f })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn elements(&self) -> &[SetPartition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn index_of(&self, b: &SetPartition) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Indices of `Q(D)`.
    pub fn minimal(&self) -> &[usize] {
        &self.minimal
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn f(&self, i: usize) -> &BigInt {
        &self.f[i]
    }

    pub fn f_values(&self) -> &[BigInt] {
        &self.f
    }

    /// `G(b) = Σ_{a ≤ b} F(a)` by element index.
    pub fn g(&self, i: usize) -> BigInt {
        self.poset.down_set(i).ones().map(|a| &self.f[a]).sum()
    }

    /// `G(b)`; errors if `b ∉ T(D)`.
    pub fn g_value(&self, b: &SetPartition) -> Result<BigInt> {
        self.index_of(b).map(|i| self.g(i)).ok_or(Error::NotInPoset)
    }

    /// Elements `b` with `|b| = k` summed as `(-1)^k Σ F(b)`, for
    /// `k = 1..=max |b|`.
    pub fn circuit_partition_counts(&self) -> Vec<BigInt> {
        let kmax = self.elements.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut f = vec![BigInt::zero(); kmax];
        for (b, v) in self.elements.iter().zip(&self.f) {
            let k = b.len();
            if k % 2 == 0 {
                f[k - 1] += v;
            } else {
                f[k - 1] -= v;
            }
        }
        f
    }

    /// Whether every join of two elements of `T(D)` lies in `T(D)`.
    pub fn is_join_closed(&self) -> bool {
        self.elements
            .iter()
            .enumerate()
            .all(|(i, a)| self.elements[i..].iter().all(|b| self.index.contains_key(&a.join(b).unwrap())))
    }

    /// `F(𝟙)` against `Σ_b μ(b,𝟙) G(b)`.
    pub fn mobius_inversion(&self) -> (BigInt, BigInt) {
        let col = self.poset.mobius_col(self.top);
        let rhs = (0..self.len()).map(|b| self.g(b) * col[b]).sum();
        (self.f[self.top].clone(), rhs)
    }
}

pub fn build_t(d: &Digraph) -> Result<EulerianSemilattice> {
    EulerianSemilattice::build(d)
}

/// `T(D)` by filtering every set partition of `E(D)` on `F ≠ 0`.
pub fn build_t_by_filter(d: &Digraph) -> Result<Vec<SetPartition>> {
    let m = d.edge_count();
    if m > 10 {
        return Err(Error::SizeCap { what: "edges for the Bell-number filter", actual: m, cap: 10 });
    }
    let mut out: Vec<SetPartition> =
        all_partitions(m).into_iter().filter(|b| b.blocks().iter().all(|&blk| d.is_eulerian_on(blk))).collect();
    out.sort();
    Ok(out)
}

/// `f_k(D)` for `k = 1..`, via the semilattice.
pub fn circuit_partition_counts(d: &Digraph) -> Result<Vec<BigInt>> {
    Ok(EulerianSemilattice::build(d)?.circuit_partition_counts())
}

/// `f_k(D)` by summing over all set partitions of `E(D)` with each block's
/// circuits counted by the BEST theorem.
pub fn circuit_partition_counts_by_filter(d: &Digraph) -> Result<Vec<BigInt>> {
    if !d.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let mut f: Vec<BigInt> = Vec::new();
    for b in build_t_by_filter(d)? {
        let mut prod = BigInt::one();
        for &blk in b.blocks() {
            prod *= count_circuits_best(&d.restrict(blk).0)?;
        }
        if f.len() < b.len() {
            f.resize(b.len(), BigInt::zero());
        }
        f[b.len() - 1] += prod;
    }
    Ok(f)
}

/// `r_D(t) = Σ f_k t^k` and `s_D(t) = Σ f_k (t-1)^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MartinPolynomials {
    pub r: IntPolynomial,
    pub s: IntPolynomial,
}

pub fn martin_from_counts(f: &[BigInt]) -> MartinPolynomials {
    let mut r = vec![BigInt::zero()];
    r.extend(f.iter().cloned());
    let t_minus_one = IntPolynomial::from_i64s(&[-1, 1]);
    let mut s = IntPolynomial::zero();
    let mut power = IntPolynomial::one();
    for fk in f {
        s = &s + &power.scale(fk);
        power = &power * &t_minus_one;
    }
    MartinPolynomials { r: IntPolynomial::new(r), s }
}

pub fn martin_polynomial(d: &Digraph) -> Result<MartinPolynomials> {
    Ok(martin_from_counts(&circuit_partition_counts(d)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub f: Vec<BigInt>,
    /// `Σ (-1)^k f_k`.
    pub alternating_sum: BigInt,
    pub single_cycle: bool,
}

impl CancellationReport {
    /// Zero, or `-1` exactly when the digraph is a single directed cycle.
    pub fn holds(&self) -> bool {
        let expect = if self.single_cycle { -BigInt::one() } else { BigInt::zero() };
        self.alternating_sum == expect
    }
}

pub fn cancellation_from(t: &EulerianSemilattice) -> CancellationReport {
    let f = t.circuit_partition_counts();
    let alternating_sum = f.iter().enumerate().map(|(i, fk)| if (i + 1) % 2 == 0 { fk.clone() } else { -fk }).sum();
    CancellationReport { f, alternating_sum, single_cycle: t.digraph().is_single_cycle() }
}

pub fn verify_cancellation(d: &Digraph) -> Result<CancellationReport> {
    Ok(cancellation_from(&EulerianSemilattice::build(d)?))
}

/// Both sides of `s_D(1-t) = -Σ_a (-1)^{|a|} χ_{L(a)}(t)` and of
/// `r_D(-t) = Σ_a (-1)^{|a|} P_{G_a}(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub s: IntPolynomial,
    /// `(a, χ_{L(a)}, P_{G_a})` for each cycle partition.
    pub terms: Vec<(SetPartition, IntPolynomial, IntPolynomial)>,
    pub s_lhs: IntPolynomial,
    pub s_rhs: IntPolynomial,
    pub r_lhs: IntPolynomial,
    pub r_rhs: IntPolynomial,
    /// `t·χ_{L(a)} = P_{G_a}` for every term.
    pub chromatic_consistent: bool,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.s_lhs == self.s_rhs && self.r_lhs == self.r_rhs && self.chromatic_consistent
    }
}

pub fn martin_chromatic_identity(d: &Digraph) -> Result<IdentityReport> {
    identity_from(&EulerianSemilattice::build(d)?)
}

pub fn identity_from(t: &EulerianSemilattice) -> Result<IdentityReport> {
    let d = t.digraph();
    let MartinPolynomials { r, s } = martin_from_counts(&t.circuit_partition_counts());
    let mut terms = Vec::new();
    let mut chi_sum = IntPolynomial::zero();
    let mut p_sum = IntPolynomial::zero();
    let mut consistent = true;
    let tpoly = IntPolynomial::from_i64s(&[0, 1]);
    for &i in t.minimal() {
        let a = t.elements()[i].clone();
        let g = intersection_graph(d, &a);
        let chi = characteristic_polynomial_of_lattice(&BondLattice::new(&g));
        let p = chromatic_polynomial(&g);
        consistent &= &tpoly * &chi == p;
        if a.len().is_multiple_of(2) {
            chi_sum = &chi_sum + &chi;
            p_sum = &p_sum + &p;
        } else {
            chi_sum = &chi_sum - &chi;
            p_sum = &p_sum - &p;
        }
        terms.push((a, chi, p));
    }
    let one = BigInt::one();
    Ok(IdentityReport {
        s_lhs: s.compose_linear(&-one.clone(), &one),
        s_rhs: -&chi_sum,
        r_lhs: r.compose_linear(&-one, &BigInt::zero()),
        r_rhs: p_sum,
        s,
        terms,
        chromatic_consistent: consistent,
    })
}

/// Divisibility of `s_D(t)` by `t(t+1)…(t+Δ-2)`, `Δ` the maximum out-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub delta: usize,
    pub divisor: IntPolynomial,
    pub quotient: IntPolynomial,
    pub remainder: IntPolynomial,
}

impl DivisibilityReport {
    pub fn divisible(&self) -> bool {
        self.remainder.is_zero()
    }
}

pub fn las_vergnas_divisibility(d: &Digraph) -> Result<DivisibilityReport> {
    if !d.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let delta = d.max_out_degree();
    if delta < 2 {
        return Err(Error::DegreeTooSmall(delta));
    }
    let s = martin_polynomial(d)?.s;
    let divisor = IntPolynomial::product_of_shifts((2..=delta).map(|i| BigInt::from(delta - i)));
    let (quotient, remainder) = s.div_rem_monic(&divisor);
    Ok(DivisibilityReport { delta, divisor, quotient, remainder })
}

/// `∏_v deg⁺(v)!`, the value `s_D(2)` should take.
pub fn out_degree_factorial_product(d: &Digraph) -> BigInt {
    (0..d.vertex_count()).map(|v| factorial(d.out_degree(v).unwrap())).product()
}
