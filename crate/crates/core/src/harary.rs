//! Rank-2 Veblen multigraphs, their decompositions and associated
//! coefficients, Harary-Sachs weights, and characteristic polynomials of
//! simple graphs by three routes.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bond::cycles;
use crate::corpus::{canonical_form, multigraph_matrix};
use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, ApproxClass, Digraph, Multigraph, SimpleGraph, UnionFind, Vertex};
use crate::linalg::charpoly_by_interpolation;
use crate::partition::SetPartition;
use crate::scalar::{factorial, rational_to_integer};
use crate::trails::{count_circuits_best, count_circuits_on};
use crate::{IntPolynomial, Rational};

/// Cap on infragraph size.
pub const MAX_INFRAGRAPH_EDGES: usize = 12;
/// Cap on host size for the infragraph expansion of the characteristic
/// polynomial.
pub const MAX_HS_VERTICES: usize = 8;

pub fn is_veblen(x: &Multigraph) -> bool {
    (0..x.vertex_count()).all(|v| x.degree(v).is_multiple_of(2))
}

/// A multigraph with every degree even, with `M_X` cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeblenMultigraph {
    graph: Multigraph,
    m_x: BigInt,
}

impl VeblenMultigraph {
    pub fn new(x: Multigraph) -> Result<Self> {
        if let Some(v) = (0..x.vertex_count()).find(|&v| x.degree(v) % 2 == 1) {
            return Err(Error::NotVeblen(v));
        }
        let m_x = x.parallel_factor();
        Ok(VeblenMultigraph { graph: x, m_x })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// `M_X = ∏ m_X(e)!` over parallel classes.
    pub fn m_x(&self) -> &BigInt {
        &self.m_x
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Edge masks of the connected components.
    pub fn components(&self) -> Vec<u64> {
        edge_components(&self.graph, self.graph.all_edges())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Edge masks of the connected components of the edges in `mask`.
pub fn edge_components(x: &Multigraph, mask: u64) -> Vec<u64> {
    let mut uf = UnionFind::new(x.vertex_count());
    for e in bits(mask) {
        let (u, v) = x.endpoints(e);
        uf.union(u, v);
    }
    let mut by_root: BTreeMap<usize, u64> = BTreeMap::new();
    for e in bits(mask) {
        *by_root.entry(uf.find(x.endpoints(e).0)).or_insert(0) |= 1 << e;
    }
    let mut out: Vec<u64> = by_root.into_values().collect();
    out.sort_by_key(|m| m.trailing_zeros());
    out
}

/// The sub-multigraph on `mask`, with its touched vertices renumbered from 0.
pub fn compact(x: &Multigraph, mask: u64) -> Multigraph {
    let mut index = BTreeMap::new();
    for e in bits(mask) {
        let (u, v) = x.endpoints(e);
        index.entry(u).or_insert(0);
        index.entry(v).or_insert(0);
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let edges = bits(mask)
        .map(|e| {
            let (u, v) = x.endpoints(e);
            (index[&u], index[&v])
        })
        .collect();
    Multigraph::new(index.len(), edges).expect("sub-multigraph of a valid multigraph")
}

fn is_connected_veblen_on(x: &Multigraph, mask: u64) -> bool {
    mask != 0 && x.is_connected_on(mask) && (0..x.vertex_count()).all(|v| x.degree_on(v, mask).is_multiple_of(2))
}

/// A partition of `E(X)` into connected Veblen blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<u64>,
    /// `M_S = ∏ M_{A_i}`.
    pub m_s: BigInt,
    /// `α_S = ∏ k!` over groups of `k` blocks with the same edge count in
    /// every parallel class.
    pub alpha: BigInt,
    /// Class key under parallel-edge permutations: sorted block profiles.
    pub key: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A ~-class of decompositions with its enumerated size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionClass {
    pub representative: Decomposition,
    pub size: usize,
}

impl DecompositionClass {
    /// `M_X / (M_S α_S)`.
    pub fn predicted_size(&self, m_x: &BigInt) -> BigInt {
        m_x / (&self.representative.m_s * &self.representative.alpha)
    }
}

/// All decompositions of `X` into connected Veblen blocks.
pub fn decompositions(x: &VeblenMultigraph) -> Result<Vec<Decomposition>> {
    let g = x.graph();
    let m = g.edge_count();
    if m > MAX_INFRAGRAPH_EDGES {
        return Err(Error::SizeCap { what: "edges for decomposition", actual: m, cap: MAX_INFRAGRAPH_EDGES });
    }
    let classes = g.parallel_classes();
    let profile = |mask: u64| -> Vec<usize> { classes.iter().map(|c| (c & mask).count_ones() as usize).collect() };
    let blocks_ok: Vec<u64> = (1..=full_mask(m)).filter(|&s| is_connected_veblen_on(g, s)).collect();
    let mut raw = Vec::new();
    fn rec(free: u64, ok: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if free == 0 {
            out.push(cur.clone());
            return;
        }
        let low = free & free.wrapping_neg();
        for &b in ok {
            if b & low != 0 && b & !free == 0 {
                cur.push(b);
                rec(free & !b, ok, cur, out);
                cur.pop();
            }
        }
    }
    rec(g.all_edges(), &blocks_ok, &mut Vec::new(), &mut raw);
    Ok(raw
        .into_iter()
        .map(|blocks| {
            let mut key: Vec<Vec<usize>> = blocks.iter().map(|&b| profile(b)).collect();
            key.sort();
            let mut alpha = BigInt::one();
            let mut i = 0;
            while i < key.len() {
                let j = (i..key.len()).find(|&j| key[j] != key[i]).unwrap_or(key.len());
                alpha *= factorial(j - i);
                i = j;
            }
            let m_s = blocks.iter().map(|&b| g.parallel_factor_on(b)).product();
            Decomposition { blocks, m_s, alpha, key }
        })
        .collect())
}

/// Decompositions grouped into ~-classes, in key order.
pub fn decomposition_classes(x: &VeblenMultigraph) -> Result<Vec<DecompositionClass>> {
    let mut groups: BTreeMap<Vec<Vec<usize>>, DecompositionClass> = BTreeMap::new();
    for d in decompositions(x)? {
        groups
            .entry(d.key.clone())
            .and_modify(|c| c.size += 1)
            .or_insert(DecompositionClass { representative: d, size: 1 });
    }
    Ok(groups.into_values().collect())
}

/// `|𝔠(X)|` for undirected `X`: closed trails using every edge once, up to
/// rotation, each traversal direction counted separately. Counted as the
/// closed trails whose first edge is the least edge, in either direction.
pub fn undirected_circuit_count(x: &Multigraph, mask: u64) -> u64 {
    if mask == 0 || !is_connected_veblen_on(x, mask) {
        return 0;
    }
    let n = x.vertex_count();
    let mut incident = vec![0u64; n];
    for e in bits(mask) {
        let (u, v) = x.endpoints(e);
        incident[u] |= 1 << e;
        incident[v] |= 1 << e;
    }
    fn rec(
        x: &Multigraph,
        incident: &[u64],
        v: Vertex,
        remaining: u64,
        target: Vertex,
        memo: &mut HashMap<(Vertex, u64), u64>,
    ) -> u64 {
        if remaining == 0 {
            return (v == target) as u64;
        }
        if let Some(&c) = memo.get(&(v, remaining)) {
            return c;
        }
        let mut total = 0;
        for e in bits(incident[v] & remaining) {
            let (a, b) = x.endpoints(e);
            let w = if a == v { b } else { a };
            total += rec(x, incident, w, remaining & !(1 << e), target, memo);
        }
        memo.insert((v, remaining), total);
        total
    }
    let e0 = mask.trailing_zeros() as usize;
    let (a, b) = x.endpoints(e0);
    let rest = mask & !(1 << e0);
    let mut memo = HashMap::new();
    let forward = rec(x, &incident, b, rest, a, &mut memo);
    memo.clear();
    let backward = rec(x, &incident, a, rest, b, &mut memo);
    forward + backward
}

fn require_connected_veblen(x: &VeblenMultigraph) -> Result<()> {
    if x.edge_count() == 0 || !x.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// `|𝔠(X)|` as the sum of `|𝔠(O)|` over the Eulerian orientations `O` of `X`.
pub fn circuit_count_via_orientations(x: &Multigraph) -> BigInt {
    x.eulerian_orientations().iter().map(|o| BigInt::from(count_circuits_on(o, o.all_edges()))).sum()
}

/// `C_X = |𝔠(X)| / M_X`.
pub fn associated_coefficient(x: &VeblenMultigraph) -> Result<Rational> {
    require_connected_veblen(x)?;
    Ok(Rational::new(circuit_count_via_orientations(x.graph()), x.m_x().clone()))
}

/// A rooting in rank 2: the sequence of directed stars `(root, other)` with
/// roots nondecreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rooting {
    pub stars: Vec<(Vertex, Vertex)>,
}

impl Rooting {
    /// `D_R`: one arc per star.
    pub fn digraph(&self, n: usize) -> Digraph {
        Digraph::new(n, self.stars.clone()).expect("stars join distinct vertices")
    }
}

/// Distinct permutations of a sorted slice, in lexicographic order.
fn multiset_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Every Eulerian rooting of `X`, by choosing a root for every edge and
/// listing the distinct star sequences.
pub fn eulerian_rootings(x: &VeblenMultigraph) -> Result<Vec<Rooting>> {
    let g = x.graph();
    let m = g.edge_count();
    if m > 10 {
        return Err(Error::SizeCap { what: "edges for rooting enumeration", actual: m, cap: 10 });
    }
    let n = g.vertex_count();
    let mut seen = HashSet::new();
    for r in 0..1u64 << m {
        let o = g.orient(r);
        if !o.is_eulerian_on(o.all_edges()) {
            continue;
        }
        let mut per_root: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(u, v) in o.arcs() {
            per_root[u].push(v);
        }
        let options: Vec<Vec<Vec<Vertex>>> = per_root.iter().map(|s| multiset_permutations(s)).collect();
        let mut idx = vec![0usize; n];
        loop {
            let stars = (0..n).flat_map(|u| options[u][idx[u]].iter().map(move |&v| (u, v))).collect();
            seen.insert(Rooting { stars });
            let Some(k) = (0..n).rev().find(|&k| idx[k] + 1 < options[k].len()) else {
                break;
            };
            idx[k] += 1;
            for slot in idx.iter_mut().skip(k + 1) {
                *slot = 0;
            }
        }
    }
    let mut out: Vec<Rooting> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// One ≡-class of Eulerian rootings: its `D_R` up to ≈, the enumerated size
/// and the quantities entering `C_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootingClass {
    pub class: ApproxClass,
    pub size: usize,
    /// `N_D = ∏ deg⁺(u)!`.
    pub n_d: BigInt,
    /// `K_D = ∏ m(u,v)!`.
    pub k_d: BigInt,
    pub circuits: BigInt,
}

impl RootingClass {
    /// Whether the enumerated size equals `N_D / K_D`.
    pub fn size_matches(&self) -> bool {
        BigInt::from(self.size) * &self.k_d == self.n_d
    }
}

pub fn rooting_classes(x: &VeblenMultigraph) -> Result<Vec<RootingClass>> {
    let n = x.graph().vertex_count();
    let mut groups: BTreeMap<ApproxClass, usize> = BTreeMap::new();
    for r in eulerian_rootings(x)? {
        *groups.entry(r.digraph(n).approx_class()).or_insert(0) += 1;
    }
    groups
        .into_iter()
        .map(|(class, size)| {
            let d = class.to_digraph();
            let n_d = (0..d.vertex_count()).map(|u| factorial(d.out_degree(u).unwrap())).product();
            Ok(RootingClass { size, n_d, k_d: d.parallel_factor(), circuits: count_circuits_best(&d)?, class })
        })
        .collect()
}

/// `C_X = Σ_R |R| · |𝔠(D_R)| / N_{D_R}` over ≡-classes of Eulerian rootings.
pub fn associated_coefficient_via_rootings(x: &VeblenMultigraph) -> Result<Rational> {
    require_connected_veblen(x)?;
    let mut total = Rational::zero();
    for c in rooting_classes(x)? {
        total += Rational::new(BigInt::from(c.size) * c.circuits, c.n_d);
    }
    Ok(total)
}

/// `w_n(X) = -Σ_{S̃} (-(k-1)^n)^{c(S)} C_S / α_S` with `k = 2`.
pub fn weight(x: &VeblenMultigraph, n: u32) -> Result<Rational> {
    let g = x.graph();
    let base = -BigInt::from(1u32.pow(n));
    let mut memo: HashMap<u64, Rational> = HashMap::new();
    let mut sum = Rational::zero();
    for class in decomposition_classes(x)? {
        let s = &class.representative;
        let mut c_s = Rational::one();
        for &b in &s.blocks {
            let c = memo.entry(b).or_insert_with(|| {
                Rational::new(BigInt::from(undirected_circuit_count(g, b)), g.parallel_factor_on(b))
            });
            c_s *= c.clone();
        }
        let sign = num_traits::pow(base.clone(), s.len());
        sum += Rational::from_integer(sign) * c_s / Rational::from_integer(s.alpha.clone());
    }
    Ok(-sum)
}

/// `|𝔠_t(O)|` as a sum over decompositions of the underlying multigraph into
/// `t` blocks on which `O` restricts to Eulerian orientations.
pub fn circuit_partition_of_orientation(o: &Digraph, t: usize) -> Result<BigInt> {
    if !o.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let x = VeblenMultigraph::new(o.underlying())?;
    let mut total = BigInt::zero();
    for s in decompositions(&x)? {
        if s.len() != t {
            continue;
        }
        let mut prod = BigInt::one();
        for &b in &s.blocks {
            prod *= count_circuits_on(o, b);
        }
        total += prod;
    }
    Ok(total)
}

/// Veblen multiplicity vectors over the edges of `host` with at most
/// `max_edges` edges in total, as ≈-classes, ordered by edge count,
/// component count and multiplicities. The empty class is excluded.
pub fn enumerate_infragraphs(host: &SimpleGraph, max_edges: usize) -> Result<Vec<ApproxClass>> {
    if max_edges > MAX_INFRAGRAPH_EDGES {
        return Err(Error::SizeCap { what: "infragraph edges", actual: max_edges, cap: MAX_INFRAGRAPH_EDGES });
    }
    let n = host.vertex_count();
    let edges = host.edges().to_vec();
    // last host edge touching each vertex, to prune on parity
    let mut last = vec![None; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        last[u] = Some(i);
        last[v] = Some(i);
    }
    let mut out = Vec::new();
    let mut mult = vec![0usize; edges.len()];
    let mut deg = vec![0usize; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        left: usize,
        edges: &[(usize, usize)],
        last: &[Option<usize>],
        mult: &mut Vec<usize>,
        deg: &mut Vec<usize>,
        n: usize,
        out: &mut Vec<ApproxClass>,
    ) {
        if i == edges.len() {
            if mult.iter().any(|&k| k > 0) {
                let map = edges.iter().zip(mult.iter()).filter(|(_, &k)| k > 0).map(|(&p, &k)| (p, k)).collect();
                out.push(ApproxClass { directed: false, n, mult: map });
            }
            return;
        }
        let (u, v) = edges[i];
        for k in 0..=left {
            deg[u] += k;
            deg[v] += k;
            let parity_ok = [u, v].iter().all(|&w| last[w] != Some(i) || deg[w].is_multiple_of(2));
            if parity_ok {
                mult[i] = k;
                rec(i + 1, left - k, edges, last, mult, deg, n, out);
            }
            deg[u] -= k;
            deg[v] -= k;
        }
        mult[i] = 0;
    }
    rec(0, max_edges, &edges, &last, &mut mult, &mut deg, n, &mut out);
    let comps = |c: &ApproxClass| {
        let x = c.to_multigraph();
        edge_components(&x, x.all_edges()).len()
    };
    out.sort_by_cached_key(|c| (c.edge_count(), comps(c), c.mult.clone()));
    Ok(out)
}

/// Cache of weights keyed by canonical form of a connected component.
#[derive(Default)]
struct WeightCache(HashMap<Vec<u8>, Rational>);

impl WeightCache {
    fn weight_of(&mut self, x: &Multigraph) -> Result<Rational> {
        let m = multigraph_matrix(x);
        let key = [vec![m.len() as u8], canonical_form(&m).0].concat();
        if let Some(w) = self.0.get(&key) {
            return Ok(w.clone());
        }
        let w = weight(&VeblenMultigraph::new(x.clone())?, x.vertex_count() as u32)?;
        self.0.insert(key, w.clone());
        Ok(w)
    }
}

/// `χ(t) = Σ_X (-1)^{c(X)} ∏_i w(X_i) t^{n-|E(X)|}` over infragraphs `X` with
/// components `X_i` and at most `n` edges; the empty infragraph gives `t^n`.
pub fn hs_characteristic_polynomial(host: &SimpleGraph) -> Result<IntPolynomial> {
    let n = host.vertex_count();
    if n > MAX_HS_VERTICES {
        return Err(Error::SizeCap { what: "host vertices", actual: n, cap: MAX_HS_VERTICES });
    }
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut cache = WeightCache::default();
    for class in enumerate_infragraphs(host, n.min(MAX_INFRAGRAPH_EDGES))? {
        let x = class.to_multigraph();
        let comps = edge_components(&x, x.all_edges());
        let mut term = if comps.len().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        for &c in &comps {
            term *= cache.weight_of(&compact(&x, c))?;
            if term.is_zero() {
                break;
            }
        }
        coeffs[n - class.edge_count()] += term;
    }
    let ints = coeffs
        .iter()
        .map(|c| rational_to_integer(c).ok_or_else(|| Error::NonIntegral(c.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(ints))
}

/// Classical Harary-Sachs: `Σ (-1)^{c} 2^{z} t^{n-|V(X)|}` over elementary
/// subgraphs (vertex-disjoint edges and cycles of length at least 3).
pub fn elementary_subgraph_formula(host: &SimpleGraph) -> Result<IntPolynomial> {
    let n = host.vertex_count();
    let cyc: Vec<u64> = cycles(host)?
        .into_iter()
        .map(|c| {
            bits(c).fold(0u64, |m, e| {
                let (u, v) = host.endpoints(e);
                m | 1 << u | 1 << v
            })
        })
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    fn rec(host: &SimpleGraph, cyc: &[u64], v: usize, covered: u64, sign: i64, pow2: u32, coeffs: &mut [BigInt]) {
        let n = host.vertex_count();
        if v == n {
            let k = covered.count_ones() as usize;
            coeffs[n - k] += BigInt::from(sign) << pow2;
            return;
        }
        if covered >> v & 1 == 1 {
            rec(host, cyc, v + 1, covered, sign, pow2, coeffs);
            return;
        }
        rec(host, cyc, v + 1, covered, sign, pow2, coeffs);
        for w in bits(host.neighbors(v) & !covered) {
            if w > v {
                rec(host, cyc, v + 1, covered | 1 << v | 1 << w, -sign, pow2, coeffs);
            }
        }
        for &c in cyc {
            if c.trailing_zeros() as usize == v && c & covered == 0 {
                rec(host, cyc, v + 1, covered | c, -sign, pow2 + 1, coeffs);
            }
        }
    }
    rec(host, &cyc, 0, 0, 1, 0, &mut coeffs);
    Ok(IntPolynomial::new(coeffs))
}

/// `det(tI - A)` by exact interpolation.
pub fn charpoly_determinant_oracle(host: &SimpleGraph) -> IntPolynomial {
    charpoly_by_interpolation(&host.adjacency_matrix())
}

/// Connected components of an undirected multiplicity class, as a set
/// partition of its edge ids.
pub fn component_partition(x: &Multigraph) -> SetPartition {
    SetPartition::new(x.edge_count(), edge_components(x, x.all_edges())).expect("components partition the edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn veb(n: usize, edges: &[(usize, usize)]) -> VeblenMultigraph {
        VeblenMultigraph::new(Multigraph::new(n, edges.to_vec()).unwrap()).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn veblen_predicate() {
        assert!(is_veblen(&Multigraph::new(2, vec![(0, 1), (0, 1)]).unwrap()));
        assert!(!is_veblen(&Multigraph::new(2, vec![(0, 1)]).unwrap()));
        assert!(is_veblen(&Multigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()));
        assert_eq!(VeblenMultigraph::new(Multigraph::new(2, vec![(0, 1)]).unwrap()), Err(Error::NotVeblen(0)));
    }

    #[test]
    fn decompositions_of_small_graphs() {
        let doubled = veb(2, &[(0, 1), (0, 1)]);
        assert_eq!(decompositions(&doubled).unwrap().len(), 1);
        let quad = veb(2, &[(0, 1); 4]);
        let ds = decompositions(&quad).unwrap();
        assert_eq!(ds.len(), 4);
        let classes = decomposition_classes(&quad).unwrap();
        assert_eq!(classes.len(), 2);
        let pair = classes.iter().find(|c| c.representative.len() == 2).unwrap();
        assert_eq!(pair.size, 3);
        assert_eq!(pair.representative.alpha, BigInt::from(2));
        assert_eq!(pair.representative.m_s, BigInt::from(4));
        assert_eq!(pair.predicted_size(quad.m_x()), BigInt::from(3));
        let tri = veb(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(decompositions(&tri).unwrap().len(), 1);
    }

    #[test]
    fn associated_coefficients() {
        let doubled = veb(2, &[(0, 1), (0, 1)]);
        let tri = veb(3, &[(0, 1), (1, 2), (0, 2)]);
        let quad = veb(2, &[(0, 1); 4]);
        assert_eq!(associated_coefficient(&doubled).unwrap(), q(1, 1));
        assert_eq!(associated_coefficient(&tri).unwrap(), q(2, 1));
        assert_eq!(associated_coefficient(&quad).unwrap(), q(12, 24));
        for x in [&doubled, &tri, &quad] {
            let all = x.graph().all_edges();
            assert_eq!(
                circuit_count_via_orientations(x.graph()),
                BigInt::from(undirected_circuit_count(x.graph(), all))
            );
            assert_eq!(associated_coefficient_via_rootings(x).unwrap(), associated_coefficient(x).unwrap());
            assert!(rooting_classes(x).unwrap().iter().all(|c| c.size_matches()));
        }
        assert_eq!(rooting_classes(&doubled).unwrap().len(), 1);
        let two = veb(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]);
        assert_eq!(associated_coefficient(&two), Err(Error::Disconnected));
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&veb(2, &[(0, 1), (0, 1)]), 2).unwrap(), q(1, 1));
        assert_eq!(weight(&veb(3, &[(0, 1), (1, 2), (0, 2)]), 3).unwrap(), q(2, 1));
        let quad = veb(2, &[(0, 1); 4]);
        for n in 1..5 {
            assert_eq!(weight(&quad, n).unwrap(), Rational::zero());
        }
    }

    #[test]
    fn circuit_partitions_of_running_example() {
        let (d, _) = crate::io::running_example();
        assert_eq!(circuit_partition_of_orientation(&d, 1).unwrap(), BigInt::from(6));
        assert_eq!(circuit_partition_of_orientation(&d, 2).unwrap(), BigInt::from(11));
    }

    #[test]
    fn infragraph_enumeration() {
        let k2 = SimpleGraph::complete(2);
        let xs = enumerate_infragraphs(&k2, 4).unwrap();
        let mults: Vec<usize> = xs.iter().map(|c| c.edge_count()).collect();
        assert_eq!(mults, vec![2, 4]);
        let k3 = SimpleGraph::complete(3);
        let xs = enumerate_infragraphs(&k3, 3).unwrap();
        assert_eq!(xs.len(), 4);
        assert!(enumerate_infragraphs(&SimpleGraph::edgeless(3), 6).unwrap().is_empty());
        assert!(enumerate_infragraphs(&k3, 13).is_err());
    }

    #[test]
    fn three_routes_on_small_graphs() {
        for (g, want) in [
            (SimpleGraph::complete(2), vec![-1, 0, 1]),
            (SimpleGraph::complete(3), vec![-2, -3, 0, 1]),
            (SimpleGraph::path(3), vec![0, -2, 0, 1]),
            (SimpleGraph::cycle(4), vec![0, 0, -4, 0, 1]),
        ] {
            let want = IntPolynomial::from_i64s(&want);
            assert_eq!(charpoly_determinant_oracle(&g), want);
            assert_eq!(elementary_subgraph_formula(&g).unwrap(), want);
            assert_eq!(hs_characteristic_polynomial(&g).unwrap(), want);
        }
        let e = SimpleGraph::edgeless(3);
        assert_eq!(elementary_subgraph_formula(&e).unwrap(), IntPolynomial::monomial(BigInt::one(), 3));
        assert_eq!(hs_characteristic_polynomial(&e).unwrap(), IntPolynomial::monomial(BigInt::one(), 3));
    }
}
