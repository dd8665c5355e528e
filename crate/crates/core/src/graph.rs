//! Multigraphs, digraphs and simple graphs on dense integer ids.
//!
//! Vertices are `0..n` and edges are `0..m`; an edge id is the index into the
//! endpoint (or arc) vector. Edge subsets are `u64` masks, so every graph is
//! limited to 64 edges, which is far beyond what the exhaustive algorithms
//! downstream can handle anyway.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::factorial;

pub type Vertex = usize;
pub type EdgeId = usize;

pub const MAX_EDGES: usize = 64;

/// Original vertex and edge names, kept beside a graph parsed from text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

impl Labels {
    pub fn numeric(n: usize, m: usize) -> Self {
        Labels { vertices: (0..n).map(|v| v.to_string()).collect(), edges: (0..m).map(|e| e.to_string()).collect() }
    }

    pub fn vertex(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: EdgeId) -> &str {
        &self.edges[e]
    }

    pub fn vertex_id(&self, name: &str) -> Option<Vertex> {
        self.vertices.iter().position(|s| s == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|s| s == name)
    }
}

/// Iterate the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub fn full_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Small union-find used for connectivity and partition joins.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

fn check_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<()> {
    if pairs.len() > MAX_EDGES {
        return Err(Error::SizeCap { what: "edge count", actual: pairs.len(), cap: MAX_EDGES });
    }
    for (e, &(u, v)) in pairs.iter().enumerate() {
        for w in [u, v] {
            if w >= n {
                return Err(Error::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(Error::Loop { edge: e, vertex: u });
        }
    }
    Ok(())
}

/// `true` iff the edges in `mask` form a connected edge-support (isolated
/// vertices ignored). The empty mask counts as connected.
fn support_connected(n: usize, pairs: &[(Vertex, Vertex)], mask: u64) -> bool {
    let mut uf = UnionFind::new(n);
    let mut touched = 0u64;
    for e in bits(mask) {
        let (u, v) = pairs[e];
        uf.union(u, v);
        touched |= (1 << u) | (1 << v);
    }
    let mut root = None;
    for v in bits(touched) {
        let r = uf.find(v);
        match root {
            None => root = Some(r),
            Some(r0) if r0 != r => return false,
            _ => {}
        }
    }
    true
}

/// Loopless directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(Vertex, Vertex)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        check_pairs(n, &arcs)?;
        if n > 64 {
            return Err(Error::SizeCap { what: "vertex count", actual: n, cap: 64 });
        }
        Ok(Digraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn arc(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.arcs[e]
    }

    pub fn tail(&self, e: EdgeId) -> Vertex {
        self.arcs[e].0
    }

    pub fn head(&self, e: EdgeId) -> Vertex {
        self.arcs[e].1
    }

    pub fn all_edges(&self) -> u64 {
        full_mask(self.arcs.len())
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.arcs.len() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e))
        }
    }

    pub fn out_degree(&self, u: Vertex) -> Result<usize> {
        if u >= self.n {
            return Err(Error::UnknownVertex(u));
        }
        Ok(self.arcs.iter().filter(|a| a.0 == u).count())
    }

    pub fn in_degree(&self, u: Vertex) -> Result<usize> {
        if u >= self.n {
            return Err(Error::UnknownVertex(u));
        }
        Ok(self.arcs.iter().filter(|a| a.1 == u).count())
    }

    /// Out-arcs of `u` restricted to `mask`, as an edge mask.
    pub fn out_mask(&self, u: Vertex, mask: u64) -> u64 {
        bits(mask).filter(|&e| self.arcs[e].0 == u).fold(0, |m, e| m | 1 << e)
    }

    /// Vertices touched by the edges in `mask`.
    pub fn vertex_mask(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |m, e| m | 1 << self.arcs[e].0 | 1 << self.arcs[e].1)
    }

    /// `m_D(u, v)`.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> usize {
        self.arcs.iter().filter(|&&a| a == (u, v)).count()
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|u| self.out_degree(u).unwrap()).max().unwrap_or(0)
    }

    pub fn is_balanced_on(&self, mask: u64) -> bool {
        let mut bal = vec![0i64; self.n];
        for e in bits(mask) {
            let (u, v) = self.arcs[e];
            bal[u] += 1;
            bal[v] -= 1;
        }
        bal.iter().all(|&b| b == 0)
    }

    pub fn is_connected_on(&self, mask: u64) -> bool {
        support_connected(self.n, &self.arcs, mask)
    }

    /// Nonempty, balanced and with a connected edge-support.
    pub fn is_eulerian_on(&self, mask: u64) -> bool {
        mask != 0 && self.is_balanced_on(mask) && self.is_connected_on(mask)
    }

    pub fn is_eulerian(&self) -> bool {
        self.is_eulerian_on(self.all_edges())
    }

    /// `true` iff the edges in `mask` form one directed cycle.
    pub fn is_cycle_on(&self, mask: u64) -> bool {
        if !self.is_eulerian_on(mask) {
            return false;
        }
        bits(self.vertex_mask(mask)).all(|v| self.out_mask(v, mask).count_ones() == 1)
    }

    pub fn is_single_cycle(&self) -> bool {
        self.is_cycle_on(self.all_edges())
    }

    /// The sub-digraph on the given edges, with edges renumbered in increasing
    /// order of their original ids. Vertex ids are unchanged.
    pub fn restrict(&self, mask: u64) -> (Digraph, Vec<EdgeId>) {
        let ids: Vec<EdgeId> = bits(mask).collect();
        let arcs = ids.iter().map(|&e| self.arcs[e]).collect();
        (Digraph { n: self.n, arcs }, ids)
    }

    /// Forget directions.
    pub fn underlying(&self) -> Multigraph {
        Multigraph { n: self.n, edges: self.arcs.clone() }
    }

    pub fn approx_class(&self) -> ApproxClass {
        let mut mult = BTreeMap::new();
        for &a in &self.arcs {
            *mult.entry(a).or_insert(0) += 1;
        }
        ApproxClass { directed: true, n: self.n, mult }
    }

    /// `K_D`: product of `m_D(u,v)!` over ordered pairs.
    pub fn parallel_factor(&self) -> BigInt {
        self.approx_class().mult.values().map(|&k| factorial(k)).product()
    }
}

/// Loopless undirected multigraph. Endpoint pairs are stored as given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        check_pairs(n, &edges)?;
        if n > 64 {
            return Err(Error::SizeCap { what: "vertex count", actual: n, cap: 64 });
        }
        Ok(Multigraph { n, edges })
    }

    /// Build from a multiplicity map on unordered pairs; edges are emitted in
    /// key order.
    pub fn from_multiplicities(n: usize, mult: &BTreeMap<(Vertex, Vertex), usize>) -> Result<Self> {
        let edges = mult.iter().flat_map(|(&p, &k)| std::iter::repeat_n(p, k)).collect();
        Multigraph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn all_edges(&self) -> u64 {
        full_mask(self.edges.len())
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == u || b == u).count()
    }

    pub fn degree_on(&self, u: Vertex, mask: u64) -> usize {
        bits(mask).filter(|&e| self.edges[e].0 == u || self.edges[e].1 == u).count()
    }

    fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
        if u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    /// `m_X(e)`: number of edges parallel to `e`, including `e`.
    pub fn multiplicity(&self, e: EdgeId) -> usize {
        let k = Self::key(self.edges[e].0, self.edges[e].1);
        self.edges.iter().filter(|&&(a, b)| Self::key(a, b) == k).count()
    }

    /// Parallelism classes as edge masks, ordered by least edge id.
    pub fn parallel_classes(&self) -> Vec<u64> {
        let mut by_key: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            *by_key.entry(Self::key(a, b)).or_insert(0) |= 1 << e;
        }
        let mut cls: Vec<u64> = by_key.into_values().collect();
        cls.sort_by_key(|c| c.trailing_zeros());
        cls
    }

    /// `M_X`: product of `m_X(e)!` over parallelism classes.
    pub fn parallel_factor(&self) -> BigInt {
        self.parallel_factor_on(self.all_edges())
    }

    pub fn parallel_factor_on(&self, mask: u64) -> BigInt {
        self.parallel_classes().iter().map(|c| factorial((c & mask).count_ones() as usize)).product()
    }

    pub fn is_connected_on(&self, mask: u64) -> bool {
        support_connected(self.n, &self.edges, mask)
    }

    /// Connected as a graph on all of its vertices.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let touched = bits(self.all_edges()).fold(0u64, |m, e| m | 1 << self.edges[e].0 | 1 << self.edges[e].1);
        touched == full_mask(self.n) && self.is_connected_on(self.all_edges())
    }

    /// The sub-multigraph on the given edges, renumbered in increasing order.
    pub fn restrict(&self, mask: u64) -> (Multigraph, Vec<EdgeId>) {
        let ids: Vec<EdgeId> = bits(mask).collect();
        let edges = ids.iter().map(|&e| self.edges[e]).collect();
        (Multigraph { n: self.n, edges }, ids)
    }

    /// The orientation whose arc `e` runs against the stored endpoint order
    /// exactly when bit `e` of `reversed` is set.
    pub fn orient(&self, reversed: u64) -> Digraph {
        let arcs = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| if reversed >> e & 1 == 1 { (b, a) } else { (a, b) })
            .collect();
        Digraph { n: self.n, arcs }
    }

    /// All `2^m` orientations, in increasing order of the reversal mask.
    pub fn orientations(&self) -> impl Iterator<Item = Digraph> + '_ {
        let m = self.edges.len();
        assert!(m < 64, "too many edges to enumerate orientations");
        (0..1u64 << m).map(move |r| self.orient(r))
    }

    /// Orientations in which every vertex has in-degree equal to out-degree.
    pub fn eulerian_orientations(&self) -> Vec<Digraph> {
        let m = self.edges.len();
        assert!(m < 64, "too many edges to enumerate orientations");
        let mut out = Vec::new();
        let mut bal = vec![0i64; self.n];
        let mut cur = vec![(0, 0); m];
        self.balanced_rec(0, &mut bal, &mut cur, &mut out);
        out
    }

    fn balanced_rec(&self, e: usize, bal: &mut [i64], cur: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Digraph>) {
        if e == self.edges.len() {
            if bal.iter().all(|&b| b == 0) {
                out.push(Digraph { n: self.n, arcs: cur.clone() });
            }
            return;
        }
        let remaining_deg = |v: Vertex| self.edges[e..].iter().filter(|&&(a, b)| a == v || b == v).count() as i64;
        let (a, b) = self.edges[e];
        for (u, v) in [(a, b), (b, a)] {
            bal[u] += 1;
            bal[v] -= 1;
            cur[e] = (u, v);
            let ok = [u, v].iter().all(|&w| bal[w].abs() < remaining_deg(w));
            if ok {
                self.balanced_rec(e + 1, bal, cur, out);
            }
            bal[u] -= 1;
            bal[v] += 1;
        }
    }

    /// `true` iff `o` has the same vertices, and arc `e` of `o` joins the
    /// endpoints of edge `e` of `self`.
    pub fn is_orientation(&self, o: &Digraph) -> bool {
        o.n == self.n
            && o.arcs.len() == self.edges.len()
            && o.arcs.iter().zip(&self.edges).all(|(&(u, v), &(a, b))| Self::key(u, v) == Self::key(a, b))
    }

    pub fn approx_class(&self) -> ApproxClass {
        let mut mult = BTreeMap::new();
        for &(a, b) in &self.edges {
            *mult.entry(Self::key(a, b)).or_insert(0) += 1;
        }
        ApproxClass { directed: false, n: self.n, mult }
    }

    /// The flattening: one edge per parallelism class.
    pub fn flatten(&self) -> SimpleGraph {
        let edges = self.approx_class().mult.into_keys().collect();
        SimpleGraph::new(self.n, edges).expect("flattening of a loopless multigraph is simple")
    }
}

/// `|[O]_≈|`, the number of orientations of `host` that are ≈-equivalent to `o`,
/// computed as `M_X / K_O`.
pub fn approx_class_size(o: &Digraph, host: &Multigraph) -> Result<BigInt> {
    if !host.is_orientation(o) {
        return Err(Error::NotOrientation);
    }
    Ok(host.parallel_factor() / o.parallel_factor())
}

/// Canonical representative of a ≈-class: the multiplicity map on the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApproxClass {
    pub directed: bool,
    pub n: usize,
    /// Ordered pairs for digraphs, `(min, max)` pairs for multigraphs.
    pub mult: BTreeMap<(Vertex, Vertex), usize>,
}

impl ApproxClass {
    pub fn edge_count(&self) -> usize {
        self.mult.values().sum()
    }

    /// A representative multigraph, parallel edges numbered consecutively.
    pub fn to_multigraph(&self) -> Multigraph {
        let mut m = BTreeMap::new();
        for (&(u, v), &k) in &self.mult {
            *m.entry(if u < v { (u, v) } else { (v, u) }).or_insert(0) += k;
        }
        Multigraph::from_multiplicities(self.n, &m).expect("class built from a loopless graph")
    }

    /// A representative digraph (only meaningful for directed classes).
    pub fn to_digraph(&self) -> Digraph {
        let arcs = self.mult.iter().flat_map(|(&p, &k)| std::iter::repeat_n(p, k)).collect();
        Digraph { n: self.n, arcs }
    }
}

/// Simple undirected graph on at most 64 vertices with adjacency bitmasks.
///
/// Edges are numbered in the order given to [`SimpleGraph::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if n > 64 {
            return Err(Error::SizeCap { what: "vertex count", actual: n, cap: 64 });
        }
        check_pairs(n, &edges)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in &edges {
            if adj[u] >> v & 1 == 1 {
                return Err(Error::MultiEdge(u.min(v), u.max(v)));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(SimpleGraph { n, edges, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn star(n: usize) -> Self {
        let edges = (1..n).map(|i| (0, i)).collect();
        SimpleGraph::new(n, edges).unwrap()
    }

    pub fn edgeless(n: usize) -> Self {
        SimpleGraph::new(n, Vec::new()).unwrap()
    }

    /// Build from adjacency masks; edges are numbered lexicographically.
    pub fn from_adjacency(adj: &[u64]) -> Self {
        let n = adj.len();
        let edges = (0..n).flat_map(|u| bits(adj[u] >> u >> 1).map(move |k| (u, u + 1 + k))).collect();
        SimpleGraph::new(n, edges).expect("adjacency is symmetric and loopless")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.edges.iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn all_vertices(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// `true` iff the induced subgraph on the vertex mask is connected.
    /// The empty set is not connected.
    pub fn is_connected_set(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let start = set & set.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & set;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == set
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_set(self.all_vertices())
    }

    /// Edge ids with both endpoints in the vertex mask, as an edge mask.
    pub fn induced_edges(&self, set: u64) -> u64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| set >> u & 1 == 1 && set >> v & 1 == 1)
            .fold(0, |m, (e, _)| m | 1 << e)
    }

    /// 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|u| (0..self.n).map(|v| (self.adj[u] >> v & 1) as i64).collect()).collect()
    }

    pub fn as_multigraph(&self) -> Multigraph {
        Multigraph { n: self.n, edges: self.edges.clone() }
    }

    /// Graph with vertices relabelled by `perm` (old id to new id); edges are
    /// renumbered lexicographically.
    pub fn relabel(&self, perm: &[Vertex]) -> SimpleGraph {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        SimpleGraph::from_adjacency(&adj)
    }
}
