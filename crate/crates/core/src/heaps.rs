//! Heaps of pieces, full pyramids, and their conversions to orientations
//! and Eulerian trails.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bond::{is_acyclic_masks, unique_sink_orientations};
use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, Digraph, EdgeId, SimpleGraph};
use crate::lattice::{cycle_partitions, intersection_graph};
use crate::partition::SetPartition;
use crate::trails::{cycle_sequence, insert_trail, Trail};

/// Pieces `0..k` with a symmetric concurrence relation, stored as a simple
/// graph (reflexivity is implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceSystem {
    graph: SimpleGraph,
}

impl PieceSystem {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        PieceSystem { graph: g.clone() }
    }

    /// Pieces `0..k`; each pair in `concurrent` is made concurrent. Pairs
    /// `(a, a)` and repeats are ignored.
    pub fn new(k: usize, concurrent: &[(usize, usize)]) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> =
            concurrent.iter().filter(|(a, b)| a != b).map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        pairs.dedup();
        if let Some(&(_, b)) = pairs.iter().find(|&&(_, b)| b >= k) {
            return Err(Error::UnknownPiece(b));
        }
        Ok(PieceSystem { graph: SimpleGraph::new(k, pairs)? })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn concurrent(&self, a: usize, b: usize) -> bool {
        a == b || self.graph.has_edge(a, b)
    }

    /// Pieces concurrent with `a`, including `a`.
    pub fn closed_neighbors(&self, a: usize) -> u64 {
        self.graph.neighbors(a) | 1 << a
    }

    pub fn check_piece(&self, a: usize) -> Result<()> {
        if a < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownPiece(a))
        }
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected_set(self.graph.all_vertices())
    }
}

/// A finite labelled poset. Elements are identified by distinct `u32` ids and
/// kept sorted by id; `up[i]` is the up-set of element `i` (including `i`) as
/// a bitmask over positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heap {
    ids: Vec<u32>,
    labels: Vec<usize>,
    up: Vec<u64>,
}

/// A failed heap axiom with the offending element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeapViolation {
    /// Concurrent labels on incomparable elements.
    Incomparable(u32, u32),
    /// A covering pair whose labels are not concurrent.
    CoverNotConcurrent(u32, u32),
}

/// Result of checking a candidate against the axioms and, separately,
/// against the sandwich condition on the concurrence graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapCheck {
    pub violation: Option<HeapViolation>,
    pub sandwiched: bool,
}

impl HeapCheck {
    pub fn is_heap(&self) -> bool {
        self.violation.is_none()
    }

    /// Whether the two characterizations agree.
    pub fn consistent(&self) -> bool {
        self.is_heap() == self.sandwiched
    }
}

impl Heap {
    pub fn empty() -> Self {
        Heap { ids: vec![], labels: vec![], up: vec![] }
    }

    pub fn singleton(id: u32, label: usize) -> Self {
        Heap { ids: vec![id], labels: vec![label], up: vec![1] }
    }

    /// A labelled poset from strict relations `a < b` given by element ids,
    /// closed transitively. The heap axioms are not checked here.
    pub fn from_relations(elements: &[(u32, usize)], lt: &[(u32, u32)]) -> Result<Self> {
        let k = elements.len();
        if k > 64 {
            return Err(Error::SizeCap { what: "heap size", actual: k, cap: 64 });
        }
        let mut sorted = elements.to_vec();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidHeap(format!("element {} appears twice", w[0].0)));
        }
        let ids: Vec<u32> = sorted.iter().map(|e| e.0).collect();
        let labels = sorted.iter().map(|e| e.1).collect();
        let pos = |id: u32| {
            ids.binary_search(&id).map_err(|_| Error::InvalidHeap(format!("relation mentions unknown element {id}")))
        };
        let mut up: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
        for &(a, b) in lt {
            up[pos(a)?] |= 1 << pos(b)?;
        }
        close(&mut up);
        for i in 0..k {
            for j in bits(up[i]) {
                if i != j && up[j] >> i & 1 == 1 {
                    return Err(Error::InvalidHeap(format!("cycle through {} and {}", ids[i], ids[j])));
                }
            }
        }
        Ok(Heap { ids, labels, up })
    }

    /// Validated construction.
    pub fn new(ps: &PieceSystem, elements: &[(u32, usize)], lt: &[(u32, u32)]) -> Result<Self> {
        let h = Self::from_relations(elements, lt)?;
        match is_heap(ps, &h)?.violation {
            None => Ok(h),
            Some(v) => Err(Error::InvalidHeap(format!("{v:?}"))),
        }
    }

    /// Build from unsorted parts with up-sets over the given positions.
    fn from_parts(ids: Vec<u32>, labels: Vec<usize>, up: Vec<u64>) -> Self {
        let k = ids.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| ids[i]);
        let mut new_pos = vec![0; k];
        for (p, &i) in order.iter().enumerate() {
            new_pos[i] = p;
        }
        let remap = |m: u64| bits(m).fold(0u64, |acc, i| acc | 1 << new_pos[i]);
        Heap {
            ids: order.iter().map(|&i| ids[i]).collect(),
            labels: order.iter().map(|&i| labels[i]).collect(),
            up: order.iter().map(|&i| remap(up[i])).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    fn pos(&self, id: u32) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.pos(id).is_some()
    }

    pub fn label(&self, id: u32) -> Option<usize> {
        self.pos(id).map(|i| self.labels[i])
    }

    /// `(id, label)` pairs in id order.
    pub fn elements(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.ids.iter().copied().zip(self.labels.iter().copied())
    }

    /// `a ≤ b`; false if either is absent.
    pub fn leq(&self, a: u32, b: u32) -> bool {
        match (self.pos(a), self.pos(b)) {
            (Some(i), Some(j)) => self.up[i] >> j & 1 == 1,
            _ => false,
        }
    }

    fn down_mask(&self, j: usize) -> u64 {
        (0..self.len()).filter(|&i| self.up[i] >> j & 1 == 1).fold(0, |m, i| m | 1 << i)
    }

    /// Ids of the down-set of `id`, including `id`.
    pub fn down_set(&self, id: u32) -> Vec<u32> {
        self.pos(id).map(|j| bits(self.down_mask(j)).map(|i| self.ids[i]).collect()).unwrap_or_default()
    }

    pub fn maxima(&self) -> Vec<u32> {
        (0..self.len()).filter(|&i| self.up[i] == 1 << i).map(|i| self.ids[i]).collect()
    }

    pub fn is_pyramid(&self) -> bool {
        self.maxima().len() == 1
    }

    /// The unique maximal element of a pyramid.
    pub fn apex(&self) -> Option<u32> {
        match self.maxima()[..] {
            [a] => Some(a),
            _ => None,
        }
    }

    /// Covering pairs `(a, b)` by id.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let strict = self.up[i] & !(1 << i);
            for j in bits(strict) {
                let between = bits(strict).any(|k| k != j && self.up[k] >> j & 1 == 1);
                if !between {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    /// Every piece used exactly once.
    pub fn is_full(&self, ps: &PieceSystem) -> bool {
        let mut seen = 0u64;
        for &l in &self.labels {
            if l >= ps.len() || seen >> l & 1 == 1 {
                return false;
            }
            seen |= 1 << l;
        }
        seen == full_mask(ps.len())
    }

    /// Ids in a linear extension: by down-set size, then by id.
    pub fn linear_extension(&self) -> Vec<u32> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&j| (self.down_mask(j).count_ones(), self.ids[j]));
        order.into_iter().map(|j| self.ids[j]).collect()
    }

    /// Labels read along [`Heap::linear_extension`], followed by the cover
    /// relation; used to order enumeration output.
    pub fn signature(&self) -> (Vec<usize>, Vec<(u32, u32)>) {
        let labels = self.linear_extension().into_iter().map(|id| self.label(id).unwrap()).collect();
        (labels, self.covers())
    }

    fn restrict(&self, mask: u64) -> Heap {
        let keep: Vec<usize> = bits(mask).collect();
        let mut new_pos = vec![usize::MAX; self.len()];
        for (p, &i) in keep.iter().enumerate() {
            new_pos[i] = p;
        }
        let remap = |m: u64| bits(m & mask).fold(0u64, |acc, i| acc | 1 << new_pos[i]);
        Heap {
            ids: keep.iter().map(|&i| self.ids[i]).collect(),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            up: keep.iter().map(|&i| remap(self.up[i])).collect(),
        }
    }
}

/// Transitive closure of reflexive up-set masks, in place.
fn close(up: &mut [u64]) {
    loop {
        let mut changed = false;
        for i in 0..up.len() {
            let mut acc = up[i];
            for j in bits(up[i]) {
                acc |= up[j];
            }
            if acc != up[i] {
                up[i] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Check both heap axioms, and independently whether the concurrence graph
/// on elements lies between the Hasse diagram and the comparability graph.
pub fn is_heap(ps: &PieceSystem, h: &Heap) -> Result<HeapCheck> {
    for &l in &h.labels {
        ps.check_piece(l)?;
    }
    let k = h.len();
    let comparable = |i: usize, j: usize| h.up[i] >> j & 1 == 1 || h.up[j] >> i & 1 == 1;
    let conc = |i: usize, j: usize| ps.concurrent(h.labels[i], h.labels[j]);
    let mut violation = None;
    'outer: for i in 0..k {
        for j in i + 1..k {
            if conc(i, j) && !comparable(i, j) {
                violation = Some(HeapViolation::Incomparable(h.ids[i], h.ids[j]));
                break 'outer;
            }
        }
    }
    let covers = h.covers();
    if violation.is_none() {
        for &(a, b) in &covers {
            let (i, j) = (h.pos(a).unwrap(), h.pos(b).unwrap());
            if !conc(i, j) {
                violation = Some(HeapViolation::CoverNotConcurrent(a, b));
                break;
            }
        }
    }
    // sandwich: Hasse edges ⊆ concurrence edges ⊆ comparability edges
    let mut hasse = vec![0u64; k];
    for &(a, b) in &covers {
        let (i, j) = (h.pos(a).unwrap(), h.pos(b).unwrap());
        hasse[i] |= 1 << j;
        hasse[j] |= 1 << i;
    }
    let concurrence: Vec<u64> =
        (0..k).map(|i| (0..k).filter(|&j| j != i && conc(i, j)).fold(0, |m, j| m | 1 << j)).collect();
    let comparability: Vec<u64> =
        (0..k).map(|i| (0..k).filter(|&j| j != i && comparable(i, j)).fold(0, |m, j| m | 1 << j)).collect();
    let sandwiched = (0..k).all(|i| hasse[i] & !concurrence[i] == 0 && concurrence[i] & !comparability[i] == 0);
    Ok(HeapCheck { violation, sandwiched })
}

/// `h1 ∘ h2`: `h2` stacked on top of `h1`, with `x ≤ y` whenever `x ∈ h1`,
/// `y ∈ h2` carry concurrent labels.
pub fn compose(ps: &PieceSystem, h1: &Heap, h2: &Heap) -> Result<Heap> {
    for &l in h1.labels.iter().chain(&h2.labels) {
        ps.check_piece(l)?;
    }
    if let Some(&id) = h1.ids.iter().find(|&&id| h2.contains(id)) {
        return Err(Error::OverlappingHeaps(id));
    }
    let (k1, k2) = (h1.len(), h2.len());
    if k1 + k2 > 64 {
        return Err(Error::SizeCap { what: "heap size", actual: k1 + k2, cap: 64 });
    }
    let mut up = Vec::with_capacity(k1 + k2);
    for i in 0..k1 {
        let mut m = h1.up[i];
        for y in bits(h1.up[i]) {
            for z in 0..k2 {
                if ps.concurrent(h1.labels[y], h2.labels[z]) {
                    m |= h2.up[z] << k1;
                }
            }
        }
        up.push(m);
    }
    up.extend(h2.up.iter().map(|&m| m << k1));
    let ids = h1.ids.iter().chain(&h2.ids).copied().collect();
    let labels = h1.labels.iter().chain(&h2.labels).copied().collect();
    Ok(Heap::from_parts(ids, labels, up))
}

/// Split off the down-set of a maximal element: `h = ↓w ∘ (h \ ↓w)`.
pub fn push_down(h: &Heap, w: u32) -> Result<(Heap, Heap)> {
    let j = match h.pos(w) {
        Some(j) if h.up[j] == 1 << j => j,
        _ => return Err(Error::NotMaximal(w)),
    };
    let down = h.down_mask(j);
    Ok((h.restrict(down), h.restrict(full_mask(h.len()) & !down)))
}

/// Full pyramids over a subset of pieces, with piece `p` as its own element;
/// `up[p]` is an up-set mask over pieces.
type FullOrder = Vec<u64>;

fn compose_orders(ps: &PieceSystem, s1: u64, p1: &FullOrder, s2: u64, p2: &FullOrder) -> FullOrder {
    let mut up = vec![0u64; p1.len()];
    for z in bits(s2) {
        up[z] = p2[z];
    }
    for y in bits(s1) {
        let mut m = p1[y];
        for y2 in bits(p1[y]) {
            for z in bits(ps.closed_neighbors(y2) & s2) {
                m |= p2[z];
            }
        }
        up[y] = m;
    }
    up
}

fn enumerate_orders(ps: &PieceSystem, mask: u64, apex: usize) -> Vec<FullOrder> {
    let k = ps.len();
    if mask == 1 << apex {
        let mut up = vec![0u64; k];
        up[apex] = 1 << apex;
        return vec![up];
    }
    let g = ps.graph();
    let beta1 = (g.neighbors(apex) & mask).trailing_zeros() as usize;
    let free = mask & !(1 << apex) & !(1 << beta1);
    let mut out = Vec::new();
    let mut sub = free;
    loop {
        let s2 = sub | 1 << apex;
        let s1 = mask & !s2;
        if g.is_connected_set(s1) && g.is_connected_set(s2) {
            let lower = enumerate_orders(ps, s1, beta1);
            let upper = enumerate_orders(ps, s2, apex);
            for p1 in &lower {
                for p2 in &upper {
                    out.push(compose_orders(ps, s1, p1, s2, p2));
                }
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    out
}

fn order_to_heap(up: &FullOrder, mask: u64) -> Heap {
    let keep: Vec<usize> = bits(mask).collect();
    let ids = keep.iter().map(|&p| p as u32).collect();
    let up = keep
        .iter()
        .map(|&p| keep.iter().enumerate().filter(|(_, &q)| up[p] >> q & 1 == 1).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    Heap { ids, labels: keep, up }
}

/// All full pyramids with apex `beta`. Element ids equal piece numbers.
/// Empty when the piece system is disconnected.
pub fn full_pyramids(ps: &PieceSystem, beta: usize) -> Result<Vec<Heap>> {
    ps.check_piece(beta)?;
    if !ps.is_connected() {
        return Ok(Vec::new());
    }
    let mask = full_mask(ps.len());
    let mut out: Vec<Heap> = enumerate_orders(ps, mask, beta).iter().map(|o| order_to_heap(o, mask)).collect();
    out.sort_by_cached_key(|h| h.signature());
    Ok(out)
}

/// All full pyramids, grouped by apex in piece order.
pub fn all_full_pyramids(ps: &PieceSystem) -> Vec<Heap> {
    (0..ps.len())
        .into_par_iter()
        .map(|b| full_pyramids(ps, b).unwrap())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// `|ℙ^β|` over the pieces in `mask`, memoized on `(mask, apex)`.
pub fn count_full_pyramids(ps: &PieceSystem, beta: usize) -> Result<u128> {
    ps.check_piece(beta)?;
    if !ps.is_connected() {
        return Ok(0);
    }
    Ok(count_rec(ps, full_mask(ps.len()), beta, None, &mut HashMap::new()))
}

fn count_rec(
    ps: &PieceSystem,
    mask: u64,
    apex: usize,
    beta1: Option<usize>,
    memo: &mut HashMap<(u64, usize), u128>,
) -> u128 {
    if mask == 1 << apex {
        return 1;
    }
    if beta1.is_none() {
        if let Some(&c) = memo.get(&(mask, apex)) {
            return c;
        }
    }
    let g = ps.graph();
    let b1 = beta1.unwrap_or_else(|| (g.neighbors(apex) & mask).trailing_zeros() as usize);
    let free = mask & !(1 << apex) & !(1 << b1);
    let mut total = 0;
    let mut sub = free;
    loop {
        let s2 = sub | 1 << apex;
        let s1 = mask & !s2;
        if g.is_connected_set(s1) && g.is_connected_set(s2) {
            total += count_rec(ps, s1, b1, None, memo) * count_rec(ps, s2, apex, None, memo);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    if beta1.is_none() {
        memo.insert((mask, apex), total);
    }
    total
}

/// Both sides of the split-sum recursion for concurrent `b1`, `b2`: the
/// left side counted as unique-sink acyclic orientations with sink `b2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub direct: u128,
    pub split_sum: u128,
    /// `(B1, B2, |ℙ^{b1}(B1)|, |ℙ^{b2}(B2)|)` for each admissible split.
    pub terms: Vec<(u64, u64, u128, u128)>,
}

impl RecursionReport {
    pub fn holds(&self) -> bool {
        self.direct == self.split_sum
    }
}

pub fn pyramid_recursion_check(ps: &PieceSystem, b1: usize, b2: usize) -> Result<RecursionReport> {
    ps.check_piece(b1)?;
    ps.check_piece(b2)?;
    if b1 == b2 || !ps.concurrent(b1, b2) {
        return Err(Error::NotConcurrent(b1, b2));
    }
    if !ps.is_connected() {
        return Err(Error::Disconnected);
    }
    let direct = unique_sink_orientations(ps.graph(), b2)?.len() as u128;
    let g = ps.graph();
    let mask = full_mask(ps.len());
    let free = mask & !(1 << b1) & !(1 << b2);
    let mut memo = HashMap::new();
    let mut terms = Vec::new();
    let mut sub = free;
    loop {
        let s2 = sub | 1 << b2;
        let s1 = mask & !s2;
        if g.is_connected_set(s1) && g.is_connected_set(s2) {
            let c1 = count_rec(ps, s1, b1, None, &mut memo);
            let c2 = count_rec(ps, s2, b2, None, &mut memo);
            terms.push((s1, s2, c1, c2));
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    terms.sort();
    let split_sum = terms.iter().map(|t| t.2 * t.3).sum();
    Ok(RecursionReport { direct, split_sum, terms })
}

/// `O_P`: orient each concurrence edge from the lower piece to the upper.
pub fn pyramid_to_orientation(ps: &PieceSystem, p: &Heap) -> Result<Digraph> {
    if !p.is_full(ps) || !p.is_pyramid() {
        return Err(Error::InvalidHeap("not a full pyramid over the piece system".into()));
    }
    let elem = |piece: usize| p.ids[p.labels.iter().position(|&l| l == piece).unwrap()];
    let arcs = ps.graph().edges().iter().map(|&(a, b)| if p.leq(elem(a), elem(b)) { (a, b) } else { (b, a) }).collect();
    Digraph::new(ps.len(), arcs)
}

/// `P_O`: the transitive closure of `tail < head` over an acyclic
/// orientation with a unique sink. Element ids equal piece numbers.
pub fn orientation_to_pyramid(ps: &PieceSystem, o: &Digraph) -> Result<Heap> {
    let g = ps.graph();
    if o.vertex_count() != g.vertex_count() || o.edge_count() != g.edge_count() {
        return Err(Error::NotOrientation);
    }
    for (e, &(u, v)) in o.arcs().iter().enumerate() {
        let (a, b) = g.endpoints(e);
        if (u, v) != (a, b) && (u, v) != (b, a) {
            return Err(Error::NotOrientation);
        }
    }
    let k = ps.len();
    let mut up: Vec<u64> = (0..k).map(|i| 1u64 << i).collect();
    for &(u, v) in o.arcs() {
        up[u] |= 1 << v;
    }
    let out: Vec<u64> = (0..k).map(|i| up[i] & !(1 << i)).collect();
    if !is_acyclic_masks(&out) || out.iter().filter(|&&m| m == 0).count() != 1 {
        return Err(Error::NotUniqueSink);
    }
    close(&mut up);
    Ok(Heap { ids: (0..k as u32).collect(), labels: (0..k).collect(), up })
}

/// The piece system of a cycle partition: its blocks, concurrent when they
/// share a vertex.
pub fn cycle_piece_system(d: &Digraph, a: &SetPartition) -> PieceSystem {
    PieceSystem::from_graph(&intersection_graph(d, a))
}

/// A decomposition pyramid: a full pyramid over the cycles of `partition`,
/// labels being block indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPyramid {
    pub partition: SetPartition,
    pub pyramid: Heap,
}

/// All full pyramids over every cycle partition, with apex the cycle that
/// contains `e`.
pub fn decomposition_pyramids(d: &Digraph, e: EdgeId) -> Result<Vec<DecompositionPyramid>> {
    d.check_edge(e)?;
    if !d.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let mut out = Vec::new();
    for a in cycle_partitions(d)? {
        let ps = cycle_piece_system(d, &a);
        let beta = a.blocks().iter().position(|b| b >> e & 1 == 1).unwrap();
        for pyramid in full_pyramids(&ps, beta)? {
            out.push(DecompositionPyramid { partition: a.clone(), pyramid });
        }
    }
    Ok(out)
}

/// `singleton(β1) ∘ … ∘ singleton(βm)` over the cycle sequence of an
/// Eulerian trail; element `i` is the `i`-th cycle.
pub fn trail_to_pyramid(d: &Digraph, w: &Trail) -> Result<DecompositionPyramid> {
    if w.edge_mask() != d.all_edges() || !w.is_closed() {
        return Err(Error::InvalidTrail("not an Eulerian trail of the digraph".into()));
    }
    let cs = cycle_sequence(w)?;
    let a = cs.partition(d.edge_count());
    let ps = cycle_piece_system(d, &a);
    let mut h = Heap::empty();
    for (i, c) in cs.cycles().iter().enumerate() {
        let m = c.edge_mask();
        let label = a.blocks().iter().position(|&b| b == m).unwrap();
        h = compose(&ps, &h, &Heap::singleton(i as u32, label))?;
    }
    Ok(DecompositionPyramid { partition: a, pyramid: h })
}

/// The simple directed cycle on edge set `mask`, starting at `start`.
fn cycle_trail(d: &Digraph, mask: u64, start: usize) -> Result<Trail> {
    let mut edges = Vec::new();
    let mut v = start;
    loop {
        let e = bits(mask)
            .find(|&e| d.tail(e) == v)
            .ok_or_else(|| Error::InvalidTrail(format!("no cycle edge leaves vertex {v}")))?;
        edges.push(e);
        v = d.head(e);
        if v == start {
            break;
        }
    }
    Trail::new(d, start, edges)
}

/// Read a decomposition pyramid back into the Eulerian trail ending at `e`:
/// start from the apex cycle, then insert the remaining cycles from the top
/// of a linear extension downward, each based at its first vertex on the
/// trail built so far.
pub fn pyramid_to_trail(d: &Digraph, e: EdgeId, dp: &DecompositionPyramid) -> Result<Trail> {
    d.check_edge(e)?;
    let a = &dp.partition;
    let p = &dp.pyramid;
    let ps = cycle_piece_system(d, a);
    if !p.is_full(&ps) || !p.is_pyramid() {
        return Err(Error::InvalidHeap("not a full pyramid over the cycle partition".into()));
    }
    let order = p.linear_extension();
    let top = a.blocks()[p.label(*order.last().unwrap()).unwrap()];
    if top >> e & 1 == 0 {
        return Err(Error::InvalidHeap("apex cycle does not contain the final edge".into()));
    }
    let mut acc = cycle_trail(d, top, d.head(e))?;
    for &id in order.iter().rev().skip(1) {
        let block = a.blocks()[p.label(id).unwrap()];
        let on_cycle = d.vertex_mask(block);
        let base = *acc
            .vertices()
            .iter()
            .find(|&&v| on_cycle >> v & 1 == 1)
            .ok_or(Error::Insertion("cycle shares no vertex with the trail"))?;
        acc = insert_trail(&cycle_trail(d, block, base)?, &acc)?;
    }
    Ok(acc)
}
