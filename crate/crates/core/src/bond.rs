//! Bond lattices of simple graphs, NBC bases, chromatic polynomials and
//! acyclic orientations with a unique sink.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::corpus::cheap_relabel;
use crate::error::{Error, Result};
use crate::graph::{bits, Digraph, EdgeId, SimpleGraph, Vertex};
use crate::heaps::{compose, orientation_to_pyramid, pyramid_to_orientation, Heap, PieceSystem};
use crate::partition::SetPartition;
use crate::poset::FinitePoset;
use crate::IntPolynomial;

/// Cap on cycle enumeration for broken circuits.
pub const MAX_CYCLE_VERTICES: usize = 8;
pub const MAX_CYCLE_EDGES: usize = 28;

/// All partitions of the vertex set of `g` into blocks inducing connected
/// subgraphs.
pub fn connected_partitions(g: &SimpleGraph) -> Vec<SetPartition> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    fn rec(g: &SimpleGraph, free: u64, blocks: &mut Vec<u64>, out: &mut Vec<SetPartition>) {
        if free == 0 {
            out.push(SetPartition::from_blocks(g.vertex_count(), blocks.clone()));
            return;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        // every subset of `rest`, joined with v, that is connected
        let mut sub = rest;
        loop {
            let block = sub | 1 << v;
            if g.is_connected_set(block) {
                blocks.push(block);
                rec(g, free & !block, blocks, out);
                blocks.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    rec(g, crate::graph::full_mask(n), &mut blocks, &mut out);
    out.sort();
    out
}

/// The bond lattice `L(G)`: vertex partitions into connected blocks.
#[derive(Clone, Debug)]
pub struct BondLattice {
    graph: SimpleGraph,
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    poset: FinitePoset,
    bottom: usize,
    top: usize,
}

impl BondLattice {
    pub fn new(g: &SimpleGraph) -> Self {
        let elements = connected_partitions(g);
        let poset = FinitePoset::from_leq(elements.len(), |i, j| elements[i].refines(&elements[j]))
            .expect("refinement is a partial order");
        let n = g.vertex_count();
        let bottom = elements.iter().position(|p| p.len() == n).unwrap();
        let top = (0..elements.len()).min_by_key(|&i| elements[i].len()).unwrap();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        BondLattice { graph: g.clone(), elements, index, poset, bottom, top }
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
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

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn index_of(&self, p: &SetPartition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `rk(x) = n - #blocks`.
    pub fn rank(&self, i: usize) -> usize {
        self.graph.vertex_count() - self.elements[i].len()
    }

    /// The closed edge set corresponding to an element: edges inside blocks.
    pub fn flat(&self, i: usize) -> u64 {
        self.elements[i].blocks().iter().fold(0, |m, &b| m | self.graph.induced_edges(b))
    }

    /// `μ(0, x)` for every element.
    pub fn mobius_from_bottom(&self) -> &[i64] {
        self.poset.mobius_row(self.bottom)
    }
}

pub fn build_bond_lattice(g: &SimpleGraph) -> BondLattice {
    BondLattice::new(g)
}

/// `Σ_x μ(0,x) t^{rk(1) - rk(x)}`, using the rank function of the poset.
pub fn characteristic_polynomial_of_poset(p: &FinitePoset, bottom: usize) -> Result<IntPolynomial> {
    let rank = p.rank()?;
    let top_rank = rank.iter().copied().max().unwrap_or(0);
    let mu = p.mobius_row(bottom);
    let mut coeffs = vec![BigInt::from(0); top_rank + 1];
    for (x, &m) in mu.iter().enumerate() {
        if p.leq(bottom, x) {
            coeffs[top_rank - rank[x]] += m;
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

pub fn characteristic_polynomial_of_lattice(l: &BondLattice) -> IntPolynomial {
    characteristic_polynomial_of_poset(&l.poset, l.bottom).expect("bond lattices are ranked")
}

/// A linear order on edge ids: `perm[k]` is the edge in position `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeOrder {
    perm: Vec<EdgeId>,
    pos: Vec<usize>,
}

impl EdgeOrder {
    pub fn new(perm: Vec<EdgeId>) -> Result<Self> {
        let m = perm.len();
        let mut pos = vec![usize::MAX; m];
        for (k, &e) in perm.iter().enumerate() {
            if e >= m || pos[e] != usize::MAX {
                return Err(Error::InvalidEdgeOrder);
            }
            pos[e] = k;
        }
        Ok(EdgeOrder { perm, pos })
    }

    pub fn identity(m: usize) -> Self {
        EdgeOrder::new((0..m).collect()).unwrap()
    }

    pub fn random<R: Rng>(m: usize, rng: &mut R) -> Self {
        let mut perm: Vec<EdgeId> = (0..m).collect();
        perm.shuffle(rng);
        EdgeOrder::new(perm).unwrap()
    }

    pub fn perm(&self) -> &[EdgeId] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn position(&self, e: EdgeId) -> usize {
        self.pos[e]
    }

    /// The ⊴-largest edge of a nonempty mask.
    pub fn max_of(&self, mask: u64) -> Option<EdgeId> {
        bits(mask).max_by_key(|&e| self.pos[e])
    }

    fn check_for(&self, g: &SimpleGraph) -> Result<()> {
        if self.perm.len() == g.edge_count() {
            Ok(())
        } else {
            Err(Error::InvalidEdgeOrder)
        }
    }
}

fn check_cycle_cap(g: &SimpleGraph) -> Result<()> {
    if g.vertex_count() > MAX_CYCLE_VERTICES {
        return Err(Error::SizeCap {
            what: "vertex count for cycle enumeration",
            actual: g.vertex_count(),
            cap: MAX_CYCLE_VERTICES,
        });
    }
    if g.edge_count() > MAX_CYCLE_EDGES {
        return Err(Error::SizeCap {
            what: "edge count for cycle enumeration",
            actual: g.edge_count(),
            cap: MAX_CYCLE_EDGES,
        });
    }
    Ok(())
}

/// Edge masks of all cycles (length at least 3) of `g`.
pub fn cycles(g: &SimpleGraph) -> Result<Vec<u64>> {
    check_cycle_cap(g)?;
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    for s in 0..n {
        let allowed = g.all_vertices() & !((1u64 << (s + 1)) - 1);
        let mut stack = vec![(s, 1u64 << s, 0u64)];
        while let Some((v, seen, edges)) = stack.pop() {
            for w in bits(g.neighbors(v)) {
                let e = g.edge_id(v, w).unwrap();
                if w == s && seen.count_ones() >= 3 {
                    found.insert(edges | 1 << e);
                } else if allowed >> w & 1 == 1 && seen >> w & 1 == 0 {
                    stack.push((w, seen | 1 << w, edges | 1 << e));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Each cycle minus its ⊴-maximal edge.
pub fn broken_circuits(g: &SimpleGraph, ord: &EdgeOrder) -> Result<Vec<u64>> {
    ord.check_for(g)?;
    let mut out: Vec<u64> = cycles(g)?.into_iter().map(|c| c & !(1 << ord.max_of(c).unwrap())).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All edge sets containing no broken circuit.
pub fn nbc_sets(g: &SimpleGraph, ord: &EdgeOrder) -> Result<Vec<u64>> {
    let bcs = broken_circuits(g, ord)?;
    let m = g.edge_count();
    let mut out = Vec::new();
    fn rec(e: usize, m: usize, cur: u64, bcs: &[u64], out: &mut Vec<u64>) {
        if e == m {
            out.push(cur);
            return;
        }
        rec(e + 1, m, cur, bcs, out);
        let next = cur | 1 << e;
        if !bcs.iter().any(|&b| b >> e & 1 == 1 && b & !next == 0) {
            rec(e + 1, m, next, bcs, out);
        }
    }
    rec(0, m, 0, &bcs, &mut out);
    out.sort();
    Ok(out)
}

/// The vertex partition into components of the spanning subgraph with the
/// given edges (the lattice element spanned by the edge set).
pub fn span(g: &SimpleGraph, edges: u64) -> SetPartition {
    let mut uf = crate::graph::UnionFind::new(g.vertex_count());
    for e in bits(edges) {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    SetPartition::from_union_find(g.vertex_count(), &mut uf)
}

/// NBC bases of the top element: spanning trees with no broken circuit.
pub fn nbc_bases(g: &SimpleGraph, ord: &EdgeOrder) -> Result<Vec<u64>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    Ok(nbc_sets(g, ord)?.into_iter().filter(|s| s.count_ones() as usize + 1 == n).collect())
}

pub fn is_nbc_base(g: &SimpleGraph, ord: &EdgeOrder, t: u64) -> Result<bool> {
    Ok(nbc_bases(g, ord)?.contains(&t))
}

/// Outcome of checking `μ(0,x) = (-1)^{rk x} |N^x|` on every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaReport {
    pub elements: usize,
    /// `(element, μ(0,x), |N^x|)` for each element where the identity fails.
    pub failures: Vec<(SetPartition, i64, usize)>,
}

impl RotaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn rota_check(l: &BondLattice, ord: &EdgeOrder) -> Result<RotaReport> {
    let g = l.graph();
    let mut by_flat: HashMap<SetPartition, usize> = HashMap::new();
    for s in nbc_sets(g, ord)? {
        *by_flat.entry(span(g, s)).or_insert(0) += 1;
    }
    let mu = l.mobius_from_bottom();
    let mut failures = Vec::new();
    for (i, x) in l.elements().iter().enumerate() {
        let count = by_flat.get(x).copied().unwrap_or(0);
        let sign = if l.rank(i).is_multiple_of(2) { 1 } else { -1 };
        if mu[i] != sign * count as i64 {
            failures.push((x.clone(), mu[i], count));
        }
    }
    Ok(RotaReport { elements: l.len(), failures })
}

/// Chromatic polynomial by deletion-contraction, memoized on relabelled
/// adjacency.
pub fn chromatic_polynomial(g: &SimpleGraph) -> IntPolynomial {
    let mut memo = HashMap::new();
    dc(g.adjacency().to_vec(), &mut memo)
}

fn dc(adj: Vec<u64>, memo: &mut HashMap<Vec<u64>, IntPolynomial>) -> IntPolynomial {
    let n = adj.len();
    let Some(u) = (0..n).find(|&v| adj[v] != 0) else {
        return IntPolynomial::monomial(BigInt::from(1), n);
    };
    let key = cheap_relabel(&adj);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let v = adj[u].trailing_zeros() as usize;
    let mut del = adj.clone();
    del[u] &= !(1 << v);
    del[v] &= !(1 << u);
    // contract v into u, then drop v and shift higher ids down
    let mut con = del.clone();
    con[u] |= con[v];
    for w in bits(con[v]) {
        con[w] |= 1 << u;
    }
    con[u] &= !(1 << u);
    let squeeze = |m: u64| (m & ((1u64 << v) - 1)) | ((m >> (v + 1)) << v);
    let contracted: Vec<u64> = (0..n).filter(|&w| w != v).map(|w| squeeze(con[w])).collect();
    let p = &dc(del, memo) - &dc(contracted, memo);
    memo.insert(key, p.clone());
    p
}

/// Chromatic polynomial by Whitney's NBC-set sum: `Σ_S (-1)^{|S|} t^{n-|S|}`.
pub fn chromatic_polynomial_whitney(g: &SimpleGraph, ord: &EdgeOrder) -> Result<IntPolynomial> {
    let n = g.vertex_count();
    let mut coeffs = vec![BigInt::from(0); n + 1];
    for s in nbc_sets(g, ord)? {
        let k = s.count_ones() as usize;
        coeffs[n - k] += if k.is_multiple_of(2) { 1 } else { -1 };
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Arc list of an orientation of `g` from a reversal mask.
fn orient(g: &SimpleGraph, reversed: u64) -> Vec<(Vertex, Vertex)> {
    g.edges().iter().enumerate().map(|(e, &(a, b))| if reversed >> e & 1 == 1 { (b, a) } else { (a, b) }).collect()
}

/// Out-neighbour masks of an arc list.
fn out_masks(n: usize, arcs: &[(Vertex, Vertex)]) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for &(u, v) in arcs {
        out[u] |= 1 << v;
    }
    out
}

/// `true` iff the digraph given by out-neighbour masks has no directed cycle.
pub fn is_acyclic_masks(out: &[u64]) -> bool {
    let n = out.len();
    let mut alive = crate::graph::full_mask(n);
    loop {
        let sinks = bits(alive).filter(|&v| out[v] & alive == 0).fold(0u64, |m, v| m | 1 << v);
        if sinks == 0 {
            return alive == 0;
        }
        alive &= !sinks;
    }
}

pub fn is_acyclic(d: &Digraph) -> bool {
    is_acyclic_masks(&out_masks(d.vertex_count(), d.arcs()))
}

/// Vertices with out-degree zero.
pub fn sinks(d: &Digraph) -> Vec<Vertex> {
    let out = out_masks(d.vertex_count(), d.arcs());
    (0..d.vertex_count()).filter(|&v| out[v] == 0).collect()
}

/// All acyclic orientations of `g`, as digraphs whose arc `e` orients edge `e`.
pub fn acyclic_orientations(g: &SimpleGraph) -> Vec<Digraph> {
    let m = g.edge_count();
    assert!(m < 32, "too many edges to enumerate orientations");
    (0..1u64 << m)
        .filter_map(|r| {
            let arcs = orient(g, r);
            is_acyclic_masks(&out_masks(g.vertex_count(), &arcs)).then(|| Digraph::new(g.vertex_count(), arcs).unwrap())
        })
        .collect()
}

/// Acyclic orientations of `g` whose only sink is `x`.
pub fn unique_sink_orientations(g: &SimpleGraph, x: Vertex) -> Result<Vec<Digraph>> {
    g.check_vertex(x)?;
    Ok(acyclic_orientations(g).into_iter().filter(|o| sinks(o) == [x]).collect())
}

/// Tree adjacency restricted to the edges of `t`.
fn tree_adjacency(g: &SimpleGraph, t: u64) -> Vec<Vec<(Vertex, EdgeId)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in bits(t) {
        let (u, v) = g.endpoints(e);
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    adj
}

fn require_nbc(g: &SimpleGraph, ord: &EdgeOrder, t: u64, x: Vertex) -> Result<()> {
    g.check_vertex(x)?;
    ord.check_for(g)?;
    if !is_nbc_base(g, ord, t)? {
        return Err(Error::NotNbcBase);
    }
    Ok(())
}

/// The explicit map from an NBC base to a unique-sink orientation: root the
/// tree at `x`, compare vertices by the largest edge on their path up to the
/// meet, and point every edge of `g` toward the smaller vertex.
pub fn mu_explicit(t: u64, g: &SimpleGraph, x: Vertex, ord: &EdgeOrder) -> Result<Digraph> {
    require_nbc(g, ord, t, x)?;
    let n = g.vertex_count();
    let adj = tree_adjacency(g, t);
    // parent pointers and depth by BFS from the root
    let mut parent: Vec<Option<(Vertex, EdgeId)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = 1u64 << x;
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if seen >> w & 1 == 0 {
                seen |= 1 << w;
                parent[w] = Some((v, e));
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let meet = |mut i: Vertex, mut j: Vertex| {
        while depth[i] > depth[j] {
            i = parent[i].unwrap().0;
        }
        while depth[j] > depth[i] {
            j = parent[j].unwrap().0;
        }
        while i != j {
            i = parent[i].unwrap().0;
            j = parent[j].unwrap().0;
        }
        i
    };
    // position of the largest edge on the path from i up to m, or None
    let path_max = |mut i: Vertex, m: Vertex| {
        let mut best: Option<usize> = None;
        while i != m {
            let (p, e) = parent[i].unwrap();
            best = best.max(Some(ord.position(e)));
            i = p;
        }
        best
    };
    // j ≺ i iff e_ji ◁ e_ij, with None as the null edge below everything
    let precedes = |j: Vertex, i: Vertex| {
        let m = meet(i, j);
        path_max(j, m) < path_max(i, m)
    };
    let arcs = g.edges().iter().map(|&(a, b)| if precedes(b, a) { (a, b) } else { (b, a) }).collect();
    Digraph::new(n, arcs)
}

/// The recursive map from an NBC base to a full pyramid with apex `x`:
/// split at the largest edge of the induced subgraph, recurse on both sides,
/// and compose. Element ids and labels are vertex numbers.
pub fn phi_pyramid(t: u64, g: &SimpleGraph, x: Vertex, ord: &EdgeOrder) -> Result<Heap> {
    require_nbc(g, ord, t, x)?;
    let ps = PieceSystem::from_graph(g);
    Ok(phi_rec(g, &ps, ord, t, g.all_vertices(), x))
}

fn phi_rec(g: &SimpleGraph, ps: &PieceSystem, ord: &EdgeOrder, t: u64, s: u64, x: Vertex) -> Heap {
    if s.count_ones() == 1 {
        return Heap::singleton(x as u32, x);
    }
    let es = ord.max_of(g.induced_edges(s)).expect("connected set with two vertices has an edge");
    let tree = t & g.induced_edges(s) & !(1 << es);
    // component of x in the forest `tree`
    let mut s2 = 1u64 << x;
    loop {
        let mut grown = s2;
        for e in bits(tree) {
            let (a, b) = g.endpoints(e);
            if (s2 >> a | s2 >> b) & 1 == 1 {
                grown |= 1 << a | 1 << b;
            }
        }
        if grown == s2 {
            break;
        }
        s2 = grown;
    }
    let s1 = s & !s2;
    let (a, b) = g.endpoints(es);
    let u = if s1 >> a & 1 == 1 { a } else { b };
    let p1 = phi_rec(g, ps, ord, t, s1, u);
    let p2 = phi_rec(g, ps, ord, t, s2, x);
    compose(ps, &p1, &p2).expect("disjoint vertex sets")
}

/// `φ'(T) = O_{φ(T)}`.
pub fn phi_recursive(t: u64, g: &SimpleGraph, x: Vertex, ord: &EdgeOrder) -> Result<Digraph> {
    let p = phi_pyramid(t, g, x, ord)?;
    pyramid_to_orientation(&PieceSystem::from_graph(g), &p)
}

/// `ψ(P)`: the NBC base recovered from a full pyramid whose element ids are
/// vertex numbers.
pub fn psi(p: &Heap, g: &SimpleGraph, ord: &EdgeOrder) -> Result<u64> {
    ord.check_for(g)?;
    let ps = PieceSystem::from_graph(g);
    if !p.is_full(&ps) || p.elements().any(|(id, l)| id as usize != l) {
        return Err(Error::InvalidHeap("not a full heap on the vertex set".into()));
    }
    p.apex().ok_or(Error::NotUniqueSink)?;
    Ok(psi_rec(g, ord, p, g.all_vertices()))
}

fn psi_rec(g: &SimpleGraph, ord: &EdgeOrder, p: &Heap, s: u64) -> u64 {
    if s.count_ones() == 1 {
        return 0;
    }
    let es = ord.max_of(g.induced_edges(s)).unwrap();
    let (a, b) = g.endpoints(es);
    let y = if p.leq(a as u32, b as u32) { a } else { b };
    let s1 = p.down_set(y as u32).iter().fold(0u64, |m, &v| m | 1 << v) & s;
    let s2 = s & !s1;
    1 << es | psi_rec(g, ord, p, s1) | psi_rec(g, ord, p, s2)
}

/// `ψ'(O) = ψ(P_O)`.
pub fn psi_prime(o: &Digraph, g: &SimpleGraph, x: Vertex, ord: &EdgeOrder) -> Result<u64> {
    g.check_vertex(x)?;
    let p = orientation_to_pyramid(&PieceSystem::from_graph(g), o)?;
    if p.apex() != Some(x as u32) {
        return Err(Error::NotUniqueSink);
    }
    psi(&p, g, ord)
}

/// Orientation counts next to the two chromatic evaluations they are
/// usually compared with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationCounts {
    pub acyclic_total: usize,
    /// Unique-sink acyclic orientation counts, one per vertex.
    pub unique_sink: Vec<usize>,
    pub chromatic_at_minus_one_abs: BigInt,
    pub linear_coefficient_abs: BigInt,
    pub total_matches_minus_one: bool,
    pub total_matches_linear: bool,
    pub unique_sink_matches_minus_one: bool,
    pub unique_sink_matches_linear: bool,
}

pub fn orientation_counts_vs_chromatic(g: &SimpleGraph) -> Result<OrientationCounts> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let acyclic = acyclic_orientations(g);
    let mut unique_sink = vec![0usize; g.vertex_count()];
    for o in &acyclic {
        if let [s] = sinks(o)[..] {
            unique_sink[s] += 1;
        }
    }
    let p = chromatic_polynomial(g);
    let at_minus_one = p.eval(&BigInt::from(-1)).abs();
    let linear = p.coeff(1).abs();
    let total = BigInt::from(acyclic.len());
    let all_equal = |target: &BigInt| unique_sink.iter().all(|&c| BigInt::from(c) == *target);
    Ok(OrientationCounts {
        acyclic_total: acyclic.len(),
        total_matches_minus_one: total == at_minus_one,
        total_matches_linear: total == linear,
        unique_sink_matches_minus_one: all_equal(&at_minus_one),
        unique_sink_matches_linear: all_equal(&linear),
        unique_sink,
        chromatic_at_minus_one_abs: at_minus_one,
        linear_coefficient_abs: linear,
    })
}

/// Per-element Möbius values of `↓b` against the product of the blocks' own
/// bond lattices: returns the pairs that disagree.
pub fn down_set_product_mismatches(l: &BondLattice, b: usize) -> Vec<(usize, i64, i64)> {
    let g = l.graph();
    let elem = &l.elements()[b];
    let factors: Vec<(BondLattice, Vec<Vertex>)> = elem
        .blocks()
        .iter()
        .map(|&blk| {
            let verts: Vec<Vertex> = bits(blk).collect();
            let idx: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges = g
                .edges()
                .iter()
                .filter(|&&(u, v)| idx.contains_key(&u) && idx.contains_key(&v))
                .map(|&(u, v)| (idx[&u], idx[&v]))
                .collect();
            (BondLattice::new(&SimpleGraph::new(verts.len(), edges).unwrap()), verts)
        })
        .collect();
    let mut bad = Vec::new();
    for a in l.poset().down_set(b).ones() {
        let whole = l.poset().mobius(a, b).unwrap();
        let mut prod = 1i64;
        for (sub, verts) in &factors {
            let local: Vec<u64> = l.elements()[a]
                .blocks()
                .iter()
                .filter(|&&blk| blk >> verts[0] & 1 == 1 || verts.iter().any(|&v| blk >> v & 1 == 1))
                .map(|&blk| {
                    verts.iter().enumerate().filter(|(_, &v)| blk >> v & 1 == 1).fold(0u64, |m, (i, _)| m | 1 << i)
                })
                .collect();
            let part = SetPartition::new(verts.len(), local).expect("a refines b");
            let ia = sub.index_of(&part).expect("connected blocks");
            prod *= sub.poset().mobius(ia, sub.top()).unwrap();
        }
        if prod != whole {
            bad.push((a, whole, prod));
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bond_lattice_sizes() {
        assert_eq!(BondLattice::new(&SimpleGraph::complete(3)).len(), 5);
        let p3 = BondLattice::new(&SimpleGraph::path(3));
        assert_eq!(p3.len(), 4);
        assert!(!p3.elements().iter().any(|p| p.blocks() == [0b101, 0b010]));
        assert_eq!(BondLattice::new(&SimpleGraph::edgeless(2)).len(), 1);
    }

    #[test]
    fn flats_are_closed_and_span_back() {
        let g = SimpleGraph::complete(4);
        let l = BondLattice::new(&g);
        for i in 0..l.len() {
            let f = l.flat(i);
            assert_eq!(span(&g, f), l.elements()[i]);
            // closure: every edge with both ends in one component is in f
            let comp = span(&g, f);
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                if comp.block_of(u) == comp.block_of(v) {
                    assert!(f >> e & 1 == 1);
                }
            }
        }
    }

    #[test]
    fn broken_circuits_small() {
        let k3 = SimpleGraph::complete(3);
        let ord = EdgeOrder::identity(3);
        assert_eq!(broken_circuits(&k3, &ord).unwrap(), vec![0b011]);
        assert!(broken_circuits(&SimpleGraph::star(5), &EdgeOrder::identity(4)).unwrap().is_empty());
        assert_eq!(cycles(&SimpleGraph::complete(4)).unwrap().len(), 7);
        assert!(matches!(cycles(&SimpleGraph::complete(9)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn nbc_bases_of_triangle_and_tree() {
        let k3 = SimpleGraph::complete(3);
        let ord = EdgeOrder::identity(3);
        assert_eq!(nbc_bases(&k3, &ord).unwrap(), vec![0b101, 0b110]);
        let tree = SimpleGraph::star(4);
        assert_eq!(nbc_bases(&tree, &EdgeOrder::identity(3)).unwrap(), vec![0b111]);
        assert_eq!(nbc_bases(&SimpleGraph::edgeless(2), &EdgeOrder::identity(0)), Err(Error::Disconnected));
    }

    #[test]
    fn rota_on_triangle() {
        let l = BondLattice::new(&SimpleGraph::complete(3));
        assert_eq!(l.poset().mobius(l.bottom(), l.top()).unwrap(), 2);
        assert!(rota_check(&l, &EdgeOrder::identity(3)).unwrap().holds());
    }

    #[test]
    fn chromatic_examples() {
        let k3 = SimpleGraph::complete(3);
        assert_eq!(chromatic_polynomial(&k3), IntPolynomial::from_i64s(&[0, 2, -3, 1]));
        assert_eq!(chromatic_polynomial(&SimpleGraph::path(2)), IntPolynomial::from_i64s(&[0, -1, 1]));
        // K4 minus an edge: t(t-1)(t-2)^2
        let g = SimpleGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let p = chromatic_polynomial(&g);
        assert_eq!(p, IntPolynomial::from_i64s(&[0, -4, 8, -5, 1]));
        let chi = characteristic_polynomial_of_lattice(&BondLattice::new(&g));
        assert_eq!(chi, IntPolynomial::from_i64s(&[-4, 8, -5, 1]));
        assert_eq!(
            characteristic_polynomial_of_lattice(&BondLattice::new(&SimpleGraph::edgeless(1))),
            IntPolynomial::one()
        );
    }

    #[test]
    fn whitney_agrees_with_deletion_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for g in [SimpleGraph::complete(5), SimpleGraph::cycle(6), SimpleGraph::star(5)] {
            let ord = EdgeOrder::random(g.edge_count(), &mut rng);
            assert_eq!(chromatic_polynomial_whitney(&g, &ord).unwrap(), chromatic_polynomial(&g));
        }
    }

    #[test]
    fn unique_sink_counts() {
        let k3 = SimpleGraph::complete(3);
        for x in 0..3 {
            assert_eq!(unique_sink_orientations(&k3, x).unwrap().len(), 2);
        }
        assert_eq!(unique_sink_orientations(&SimpleGraph::path(2), 1).unwrap().len(), 1);
        assert_eq!(unique_sink_orientations(&k3, 7), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn explicit_map_on_star_points_to_centre() {
        let g = SimpleGraph::star(5);
        let o = mu_explicit(0b1111, &g, 0, &EdgeOrder::identity(4)).unwrap();
        assert!(o.arcs().iter().all(|&(_, h)| h == 0));
    }

    #[test]
    fn explicit_and_recursive_agree_on_k3() {
        let g = SimpleGraph::complete(3);
        let ord = EdgeOrder::identity(3);
        for x in 0..3 {
            for t in nbc_bases(&g, &ord).unwrap() {
                let a = mu_explicit(t, &g, x, &ord).unwrap();
                let b = phi_recursive(t, &g, x, &ord).unwrap();
                assert_eq!(a, b);
                assert_eq!(sinks(&a), vec![x]);
                assert_eq!(psi_prime(&a, &g, x, &ord).unwrap(), t);
            }
        }
        assert_eq!(mu_explicit(0b011, &g, 0, &ord), Err(Error::NotNbcBase));
    }

    #[test]
    fn singleton_graph_maps() {
        let g = SimpleGraph::edgeless(1);
        let ord = EdgeOrder::identity(0);
        let o = phi_recursive(0, &g, 0, &ord).unwrap();
        assert_eq!(o.edge_count(), 0);
        assert_eq!(mu_explicit(0, &g, 0, &ord).unwrap(), o);
    }

    #[test]
    fn counts_vs_chromatic_on_triangle() {
        let r = orientation_counts_vs_chromatic(&SimpleGraph::complete(3)).unwrap();
        assert_eq!(r.acyclic_total, 6);
        assert_eq!(r.unique_sink, vec![2, 2, 2]);
        assert!(r.total_matches_minus_one && r.unique_sink_matches_linear);
        assert!(!r.total_matches_linear && !r.unique_sink_matches_minus_one);
        let e = orientation_counts_vs_chromatic(&SimpleGraph::path(2)).unwrap();
        assert_eq!((e.acyclic_total, e.unique_sink.clone()), (2, vec![1, 1]));
    }

    #[test]
    fn down_set_products() {
        let l = BondLattice::new(&SimpleGraph::complete(4));
        for b in 0..l.len() {
            assert!(down_set_product_mismatches(&l, b).is_empty());
        }
    }
}
