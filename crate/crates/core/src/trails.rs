//! Eulerian trails and circuits, cycle sequences and trail insertion.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bits, Digraph, EdgeId, Vertex};
use crate::linalg::det_bareiss;
use crate::partition::SetPartition;
use crate::scalar::factorial;

/// A trail `(v0, e1, v1, ..., ed, vd)` with distinct edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Trail {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl Trail {
    /// Build a trail in `d` from a start vertex and an edge sequence.
    pub fn new(d: &Digraph, start: Vertex, edges: Vec<EdgeId>) -> Result<Self> {
        if start >= d.vertex_count() {
            return Err(Error::UnknownVertex(start));
        }
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(start);
        let mut used = 0u64;
        for &e in &edges {
            d.check_edge(e)?;
            if used >> e & 1 == 1 {
                return Err(Error::InvalidTrail(format!("edge {e} repeated")));
            }
            used |= 1 << e;
            let (t, h) = d.arc(e);
            if t != *vertices.last().unwrap() {
                return Err(Error::InvalidTrail(format!("edge {e} leaves {t}, not {}", vertices.last().unwrap())));
            }
            vertices.push(h);
        }
        Ok(Trail { vertices, edges })
    }

    /// A trail of length zero at `v`.
    pub fn empty_at(v: Vertex) -> Self {
        Trail { vertices: vec![v], edges: Vec::new() }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn edge_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &e| m | 1 << e)
    }

    /// `true` iff closed and no vertex repeats except the endpoints.
    pub fn is_simple_closed(&self) -> bool {
        if !self.is_closed() || self.is_empty() {
            return false;
        }
        let inner = &self.vertices[..self.vertices.len() - 1];
        let mut seen = 0u64;
        inner.iter().all(|&v| {
            let fresh = seen >> v & 1 == 0;
            seen |= 1 << v;
            fresh
        })
    }

    /// Rotate a closed trail so that it starts at position `i`.
    pub fn rotate(&self, i: usize) -> Trail {
        assert!(self.is_closed());
        let d = self.edges.len();
        if d == 0 {
            return self.clone();
        }
        let i = i % d;
        let edges = (0..d).map(|k| self.edges[(i + k) % d]).collect();
        let vertices = (0..=d).map(|k| self.vertices[(i + k) % d]).collect();
        Trail { vertices, edges }
    }

    /// Rotate a closed trail so that it starts at the first occurrence of `v`.
    pub fn rotate_to_vertex(&self, v: Vertex) -> Option<Trail> {
        let i = self.vertices[..self.vertices.len() - 1].iter().position(|&w| w == v)?;
        Some(self.rotate(i))
    }

    /// Its rotation class, for a closed trail.
    pub fn circuit(&self) -> Result<Circuit> {
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(Circuit::from_closed(self))
    }
}

/// Rotation class of a closed trail, represented by the rotation whose
/// edge-id sequence is lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    trail: Trail,
}

impl Circuit {
    fn from_closed(w: &Trail) -> Circuit {
        let d = w.len();
        let best = (0..d.max(1))
            .min_by(|&i, &j| {
                let a = (0..d).map(|k| w.edges[(i + k) % d]);
                let b = (0..d).map(|k| w.edges[(j + k) % d]);
                a.cmp(b)
            })
            .unwrap_or(0);
        Circuit { trail: w.rotate(best) }
    }

    pub fn edges(&self) -> &[EdgeId] {
        self.trail.edges()
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn edge_mask(&self) -> u64 {
        self.trail.edge_mask()
    }
}

/// The ordered list of simple closed subtrails extracted from a closed trail.
///
/// Each entry is kept as a closed trail starting at its base vertex (the
/// vertex at which it was cut out), which is what reconstruction needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleSeq {
    cycles: Vec<Trail>,
}

impl CycleSeq {
    pub fn cycles(&self) -> &[Trail] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn circuits(&self) -> Vec<Circuit> {
        self.cycles.iter().map(Circuit::from_closed).collect()
    }

    /// The set of cycles as a partition of `0..m`.
    pub fn partition(&self, m: usize) -> SetPartition {
        SetPartition::from_blocks(m, self.cycles.iter().map(|c| c.edge_mask()).collect())
    }

    /// Reinsert the cycles: `c1 . (c2 . ( ... . cm))`.
    pub fn reconstruct(&self) -> Result<Trail> {
        let Some(last) = self.cycles.last() else {
            return Err(Error::InvalidTrail("empty cycle sequence".into()));
        };
        let mut acc = last.clone();
        for c in self.cycles[..self.cycles.len() - 1].iter().rev() {
            acc = insert_trail(c, &acc)?;
        }
        Ok(acc)
    }
}

/// Decompose a closed trail by repeatedly cutting out its first simple closed
/// subtrail.
pub fn cycle_sequence(w: &Trail) -> Result<CycleSeq> {
    if !w.is_closed() {
        return Err(Error::NotClosed);
    }
    let mut cycles = Vec::new();
    let mut verts = w.vertices.clone();
    let mut edges = w.edges.clone();
    while !edges.is_empty() {
        let mut pos: HashMap<Vertex, usize> = HashMap::new();
        let mut cut = None;
        for (k, &v) in verts.iter().enumerate() {
            if let Some(&j) = pos.get(&v) {
                cut = Some((j, k));
                break;
            }
            pos.insert(v, k);
        }
        let (j, k) = cut.expect("a closed trail of positive length repeats a vertex");
        cycles.push(Trail { vertices: verts[j..=k].to_vec(), edges: edges[j..k].to_vec() });
        verts.drain(j + 1..=k);
        edges.drain(j..k);
    }
    Ok(CycleSeq { cycles })
}

/// Insert closed trail `w1` into closed trail `w2` at the first vertex of `w2`
/// that `w1` visits, which must be the base vertex of `w1`.
pub fn insert_trail(w1: &Trail, w2: &Trail) -> Result<Trail> {
    if !w1.is_closed() || !w2.is_closed() {
        return Err(Error::NotClosed);
    }
    if w1.edge_mask() & w2.edge_mask() != 0 {
        return Err(Error::Insertion("trails share an edge"));
    }
    let on_w1 = w1.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
    let Some(j) = w2.vertices.iter().position(|&v| on_w1 >> v & 1 == 1) else {
        return Err(Error::Insertion("base vertex of the inserted trail does not occur in the host trail"));
    };
    if w2.vertices[j] != w1.start() {
        if w2.vertices.contains(&w1.start()) {
            return Err(Error::Insertion("host trail meets the inserted trail before reaching its base vertex"));
        }
        return Err(Error::Insertion("base vertex of the inserted trail does not occur in the host trail"));
    }
    let mut vertices = w2.vertices[..=j].to_vec();
    vertices.extend_from_slice(&w1.vertices[1..]);
    vertices.extend_from_slice(&w2.vertices[j + 1..]);
    let mut edges = w2.edges[..j].to_vec();
    edges.extend_from_slice(&w1.edges);
    edges.extend_from_slice(&w2.edges[j..]);
    Ok(Trail { vertices, edges })
}

/// Precomputed out-arc masks for the backtracking kernels.
struct Adjacency {
    out: Vec<u64>,
    head: Vec<Vertex>,
}

impl Adjacency {
    fn new(d: &Digraph, mask: u64) -> Self {
        let mut out = vec![0u64; d.vertex_count()];
        for e in bits(mask) {
            out[d.tail(e)] |= 1 << e;
        }
        Adjacency { out, head: d.arcs().iter().map(|a| a.1).collect() }
    }
}

/// Enumerate all trails from `v` using exactly the edges of `remaining` and
/// ending at `target`, in ascending edge-id order at each step.
fn enumerate_from(
    adj: &Adjacency,
    v: Vertex,
    remaining: u64,
    target: Vertex,
    path: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
) {
    if remaining == 0 {
        if v == target {
            out.push(path.clone());
        }
        return;
    }
    for e in bits(adj.out[v] & remaining) {
        path.push(e);
        enumerate_from(adj, adj.head[e], remaining & !(1 << e), target, path, out);
        path.pop();
    }
}

/// All Eulerian trails whose last edge is `e`; empty if `d` is not Eulerian.
pub fn eulerian_trails_ending_at(d: &Digraph, e: EdgeId) -> Result<Vec<Trail>> {
    d.check_edge(e)?;
    if !d.is_eulerian() {
        return Ok(Vec::new());
    }
    let (t, h) = d.arc(e);
    let rest = d.all_edges() & !(1 << e);
    let adj = Adjacency::new(d, rest);
    let mut seqs = Vec::new();
    enumerate_from(&adj, h, rest, t, &mut Vec::new(), &mut seqs);
    Ok(seqs
        .into_iter()
        .map(|mut s| {
            s.push(e);
            Trail::new(d, h, s).expect("enumerated sequence is a trail")
        })
        .collect())
}

/// All Eulerian closed trails starting at `u`.
pub fn eulerian_trails_at(d: &Digraph, u: Vertex) -> Result<Vec<Trail>> {
    d.out_degree(u)?;
    if !d.is_eulerian() {
        return Ok(Vec::new());
    }
    let adj = Adjacency::new(d, d.all_edges());
    let mut seqs = Vec::new();
    enumerate_from(&adj, u, d.all_edges(), u, &mut Vec::new(), &mut seqs);
    Ok(seqs.into_iter().map(|s| Trail::new(d, u, s).unwrap()).collect())
}

/// The Eulerian circuits of `d` in canonical form (rotation starting at the
/// least edge id), in lexicographic order.
pub fn eulerian_circuits(d: &Digraph) -> Vec<Circuit> {
    eulerian_circuits_on(d, d.all_edges())
}

/// Eulerian circuits of the sub-digraph spanned by `mask`.
pub fn eulerian_circuits_on(d: &Digraph, mask: u64) -> Vec<Circuit> {
    if !d.is_eulerian_on(mask) {
        return Vec::new();
    }
    let e0 = mask.trailing_zeros() as usize;
    let (t, h) = d.arc(e0);
    let rest = mask & !(1 << e0);
    let adj = Adjacency::new(d, rest);
    let mut seqs = Vec::new();
    enumerate_from(&adj, h, rest, t, &mut vec![e0], &mut seqs);
    seqs.into_iter().map(|s| Circuit { trail: Trail::new(d, t, s).unwrap() }).collect()
}

/// `|𝔠(A)|` for the edges in `mask` by memoized backtracking; 0 unless the
/// edges form a connected Eulerian sub-digraph.
pub fn count_circuits_on(d: &Digraph, mask: u64) -> u64 {
    if !d.is_eulerian_on(mask) {
        return 0;
    }
    let e0 = mask.trailing_zeros() as usize;
    let (t, h) = d.arc(e0);
    let rest = mask & !(1 << e0);
    let adj = Adjacency::new(d, rest);
    let mut memo = HashMap::new();
    count_rec(&adj, h, rest, t, &mut memo)
}

fn count_rec(
    adj: &Adjacency,
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
    for e in bits(adj.out[v] & remaining) {
        total += count_rec(adj, adj.head[e], remaining & !(1 << e), target, memo);
    }
    memo.insert((v, remaining), total);
    total
}

/// `|𝔠(D)|` by the BEST theorem: in-arborescences rooted at any vertex (a
/// Laplacian minor) times the product of `(deg⁺(v) - 1)!`.
pub fn count_circuits_best(d: &Digraph) -> Result<BigInt> {
    if !d.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let used: Vec<Vertex> = bits(d.vertex_mask(d.all_edges())).collect();
    let idx: HashMap<Vertex, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = used.len();
    let mut lap = vec![vec![BigInt::zero(); k]; k];
    for &(u, v) in d.arcs() {
        let (i, j) = (idx[&u], idx[&v]);
        lap[i][i] += 1;
        lap[i][j] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    let arborescences = det_bareiss(&minor);
    let mut prod = BigInt::one();
    for &v in &used {
        prod *= factorial(d.out_degree(v)? - 1);
    }
    Ok(arborescences * prod)
}

/// The fiber of trails ending at `e` whose cycle sequence has edge sets `a`.
pub fn trails_with_cycle_partition(d: &Digraph, e: EdgeId, a: &SetPartition) -> Result<Vec<Trail>> {
    if a.ground_size() != d.edge_count() {
        return Err(Error::GroundMismatch(a.ground_size(), d.edge_count()));
    }
    if !a.blocks().iter().all(|&b| d.is_cycle_on(b)) {
        return Err(Error::NotCyclePartition);
    }
    let mut out = Vec::new();
    for w in eulerian_trails_ending_at(d, e)? {
        if cycle_sequence(&w)?.partition(d.edge_count()) == *a {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::running_example;

    fn two_cycle() -> Digraph {
        Digraph::new(2, vec![(0, 1), (1, 0)]).unwrap()
    }

    /// Two directed triangles through vertex 0.
    fn figure_eight() -> Digraph {
        Digraph::new(5, vec![(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn running_example_counts() {
        let (d, _) = running_example();
        for e in 0..d.edge_count() {
            assert_eq!(eulerian_trails_ending_at(&d, e).unwrap().len(), 6);
        }
        assert_eq!(eulerian_circuits(&d).len(), 6);
        assert_eq!(count_circuits_best(&d).unwrap(), BigInt::from(6));
        assert_eq!(count_circuits_on(&d, d.all_edges()), 6);
        for u in 0..4 {
            let n = eulerian_trails_at(&d, u).unwrap().len();
            assert_eq!(n, 6 * d.out_degree(u).unwrap());
        }
    }

    #[test]
    fn small_cases() {
        let d = two_cycle();
        assert_eq!(eulerian_trails_ending_at(&d, 1).unwrap().len(), 1);
        assert_eq!(eulerian_circuits(&d).len(), 1);
        let path = Digraph::new(2, vec![(0, 1)]).unwrap();
        assert!(eulerian_trails_ending_at(&path, 0).unwrap().is_empty());
        assert_eq!(eulerian_trails_ending_at(&path, 3), Err(Error::UnknownEdge(3)));
        let tri = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_circuits_best(&tri).unwrap(), BigInt::from(1));
        assert_eq!(count_circuits_best(&path), Err(Error::NotEulerian));
    }

    #[test]
    fn best_matches_enumeration_on_complete_digraph() {
        let k3 = Digraph::new(3, vec![(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        let brute = eulerian_circuits(&k3).len();
        assert_eq!(count_circuits_best(&k3).unwrap(), BigInt::from(brute));
        assert_eq!(brute, 3);
        let doubled = Digraph::new(2, vec![(0, 1), (1, 0), (0, 1), (1, 0)]).unwrap();
        let brute = eulerian_circuits(&doubled).len();
        assert_eq!(count_circuits_best(&doubled).unwrap(), BigInt::from(brute));
    }

    #[test]
    fn circuit_canonical_rotation() {
        let d = figure_eight();
        let w = Trail::new(&d, 3, vec![4, 5, 0, 1, 2, 3]).unwrap();
        let c = w.circuit().unwrap();
        assert_eq!(c.edges(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(w.rotate(2).circuit().unwrap(), c);
    }

    #[test]
    fn cycle_sequence_of_simple_cycle() {
        let d = Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let w = Trail::new(&d, 1, vec![1, 2, 0]).unwrap();
        let cs = cycle_sequence(&w).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs.reconstruct().unwrap(), w);
    }

    #[test]
    fn cycle_sequence_of_figure_eight() {
        let d = figure_eight();
        // start at 1: 1 -> 2 -> 0 -> 3 -> 4 -> 0 -> 1
        let w = Trail::new(&d, 1, vec![1, 2, 3, 4, 5, 0]).unwrap();
        let cs = cycle_sequence(&w).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs.cycles()[0].vertices(), &[0, 3, 4, 0]);
        assert_eq!(cs.cycles()[1].vertices(), &[1, 2, 0, 1]);
        assert_eq!(cs.reconstruct().unwrap(), w);
        assert!(cycle_sequence(&Trail::new(&d, 0, vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn insertion_cases() {
        let d = figure_eight();
        let t1 = Trail::new(&d, 0, vec![0, 1, 2]).unwrap();
        let t2 = Trail::new(&d, 0, vec![3, 4, 5]).unwrap();
        let joined = insert_trail(&t1, &t2).unwrap();
        assert_eq!(joined.edges(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(insert_trail(&t1, &t1), Err(Error::Insertion("trails share an edge")));

        // square 0->1->2->3->0 with a triangle 2->4->5->2 hung at vertex 2
        let sq = Digraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 2)]).unwrap();
        let square = Trail::new(&sq, 0, vec![0, 1, 2, 3]).unwrap();
        let tri = Trail::new(&sq, 2, vec![4, 5, 6]).unwrap();
        let w = insert_trail(&tri, &square).unwrap();
        assert_eq!(w.edges(), &[0, 1, 4, 5, 6, 2, 3]);
        assert!(Trail::new(&sq, 0, w.edges().to_vec()).unwrap().is_closed());
        let wrong_base = tri.rotate(1);
        assert!(matches!(insert_trail(&wrong_base, &square), Err(Error::Insertion(_))));
    }

    #[test]
    fn running_example_cycle_partitions() {
        let (d, l) = running_example();
        let m = d.edge_count();
        let e = l.edge_id("e1").unwrap();
        let trails = eulerian_trails_ending_at(&d, e).unwrap();
        let mut parts: Vec<SetPartition> = trails.iter().map(|w| cycle_sequence(w).unwrap().partition(m)).collect();
        for w in &trails {
            let cs = cycle_sequence(w).unwrap();
            assert_eq!(&cs.reconstruct().unwrap(), w);
            let last = cs.cycles().last().unwrap();
            assert!(last.edges().contains(&e));
            assert_eq!(last.start(), d.head(e));
        }
        parts.sort();
        parts.dedup();
        assert_eq!(parts.len(), 2);
        let total: usize = parts.iter().map(|a| trails_with_cycle_partition(&d, e, a).unwrap().len()).sum();
        assert_eq!(total, 6);
        assert_eq!(trails_with_cycle_partition(&d, e, &SetPartition::one(m)), Err(Error::NotCyclePartition));
    }
}
