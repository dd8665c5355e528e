//! Canonical forms under vertex relabelling, and the small exhaustive
//! corpora used by the verification suite.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::{bits, Digraph, Multigraph, SimpleGraph};

/// A square matrix of edge multiplicities, `m[u][v]` arcs from `u` to `v`
/// (symmetric for undirected graphs).
pub type MultMatrix = Vec<Vec<u8>>;

/// Ordered vertex cells; refined until every vertex in a cell has the same
/// multiset of (cell, out, in) multiplicities.
fn refine(m: &MultMatrix, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = m.len();
    loop {
        let mut cell_of = vec![0; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let sig = |v: usize| {
            let mut s: Vec<(usize, u8, u8)> =
                (0..n).filter(|&w| m[v][w] != 0 || m[w][v] != 0).map(|w| (cell_of[w], m[v][w], m[w][v])).collect();
            s.sort();
            s
        };
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<(usize, u8, u8)>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn relabelled(m: &MultMatrix, perm: &[usize]) -> Vec<u8> {
    perm.iter().flat_map(|&i| perm.iter().map(move |&j| m[i][j])).collect()
}

fn search(m: &MultMatrix, cells: Vec<Vec<usize>>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let cells = refine(m, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let form = relabelled(m, &perm);
            if best.as_ref().is_none_or(|b| form < b.0) {
                *best = Some((form, perm));
            }
        }
        Some(k) => {
            for &v in &cells[k] {
                let mut split = cells[..k].to_vec();
                split.push(vec![v]);
                split.push(cells[k].iter().copied().filter(|&w| w != v).collect());
                split.extend_from_slice(&cells[k + 1..]);
                search(m, split, best);
            }
        }
    }
}

/// Canonical form of a multiplicity matrix by individualization and
/// refinement: the least relabelled matrix over all leaves of the search.
/// Returns the flattened matrix and the permutation (new position → old
/// vertex) achieving it.
pub fn canonical_form(m: &MultMatrix) -> (Vec<u8>, Vec<usize>) {
    let n = m.len();
    let mut best = None;
    search(m, vec![(0..n).collect()], &mut best);
    best.unwrap_or_default()
}

/// Adjacency relabelled by one round of refinement with ties broken by
/// index. Isomorphic inputs do not always agree, but equal outputs always
/// denote isomorphic graphs, which is all a memo key needs.
pub fn cheap_relabel(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let m: MultMatrix = (0..n).map(|u| (0..n).map(|v| (adj[u] >> v & 1) as u8).collect()).collect();
    let perm: Vec<usize> = refine(&m, vec![(0..n).collect()]).concat();
    let mut pos = vec![0; n];
    for (p, &v) in perm.iter().enumerate() {
        pos[v] = p;
    }
    perm.iter().map(|&v| bits(adj[v]).fold(0u64, |acc, w| acc | 1 << pos[w])).collect()
}

pub fn digraph_matrix(d: &Digraph) -> MultMatrix {
    let n = d.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for &(u, v) in d.arcs() {
        m[u][v] += 1;
    }
    m
}

pub fn multigraph_matrix(x: &Multigraph) -> MultMatrix {
    let n = x.vertex_count();
    let mut m = vec![vec![0u8; n]; n];
    for &(u, v) in x.edges() {
        m[u][v] += 1;
        m[v][u] += 1;
    }
    m
}

pub fn simple_matrix(g: &SimpleGraph) -> MultMatrix {
    let n = g.vertex_count();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v) as u8).collect()).collect()
}

/// Arcs listed in `(u, v)` order with multiplicity.
pub fn digraph_from_matrix(m: &MultMatrix) -> Digraph {
    let n = m.len();
    let arcs = (0..n).flat_map(|u| (0..n).flat_map(move |v| std::iter::repeat_n((u, v), m[u][v] as usize))).collect();
    Digraph::new(n, arcs).expect("loop-free matrix")
}

/// Edges listed in `(u, v)`, `u < v` order with multiplicity.
pub fn multigraph_from_matrix(m: &MultMatrix) -> Multigraph {
    let n = m.len();
    let edges =
        (0..n).flat_map(|u| (u + 1..n).flat_map(move |v| std::iter::repeat_n((u, v), m[u][v] as usize))).collect();
    Multigraph::new(n, edges).expect("loop-free matrix")
}

/// The canonical representative as a fresh matrix.
fn canonical_matrix(m: &MultMatrix) -> MultMatrix {
    let n = m.len();
    let (flat, _) = canonical_form(m);
    flat.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect()
}

/// Connected simple graphs on exactly `n` vertices, one per isomorphism
/// class, in canonical order.
pub fn connected_simple_graphs(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 7, "exhaustive generation is limited to 7 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = bits(mask).map(|i| pairs[i]).collect();
        if edges.len() + 1 < n {
            continue;
        }
        let g = SimpleGraph::new(n, edges).unwrap();
        if g.is_connected() {
            seen.insert(canonical_matrix(&simple_matrix(&g)));
        }
    }
    seen.into_iter().map(|m| SimpleGraph::new(n, multigraph_from_matrix(&m).edges().to_vec()).unwrap()).collect()
}

/// Connected simple graphs with `1..=max_n` vertices.
pub fn connected_simple_graphs_up_to(max_n: usize) -> Vec<SimpleGraph> {
    (1..=max_n).flat_map(connected_simple_graphs).collect()
}

/// Grow connected graphs that are unions of cycles: start from single
/// cycles and repeatedly add a cycle meeting the current vertex set. Cycles
/// have length at least 2; in the undirected case a 2-cycle is a doubled
/// edge. Returns canonical matrices of every size up to `max_edges`.
fn cycle_unions(max_edges: usize, directed: bool) -> Vec<MultMatrix> {
    let mut all = BTreeSet::new();
    let mut frontier = BTreeSet::new();
    for len in 2..=max_edges {
        let mut m = vec![vec![0u8; len]; len];
        for i in 0..len {
            let j = (i + 1) % len;
            m[i][j] += 1;
            if !directed {
                m[j][i] += 1;
            }
        }
        frontier.insert(canonical_matrix(&m));
    }
    while !frontier.is_empty() {
        let mut next = BTreeSet::new();
        for m in &frontier {
            let used: usize = m.iter().flatten().map(|&x| x as usize).sum::<usize>() / if directed { 1 } else { 2 };
            let n = m.len();
            for len in 2..=max_edges.saturating_sub(used) {
                // cycle vertex sequences: existing ids < n or fresh ids n.., at
                // least one existing, fresh ids introduced in order
                let mut seq = Vec::with_capacity(len);
                extend_cycle(m, n, len, directed, &mut seq, &mut next);
            }
        }
        for m in &frontier {
            all.insert(m.clone());
        }
        next.retain(|m| !all.contains(m));
        frontier = next;
    }
    all.into_iter().collect()
}

fn extend_cycle(
    m: &MultMatrix,
    n: usize,
    len: usize,
    directed: bool,
    seq: &mut Vec<usize>,
    out: &mut BTreeSet<MultMatrix>,
) {
    if seq.len() == len {
        if seq.iter().all(|&v| v >= n) {
            return;
        }
        let fresh = seq.iter().filter(|&&v| v >= n).count();
        let size = n + fresh;
        let mut g = vec![vec![0u8; size]; size];
        for u in 0..n {
            g[u][..n].copy_from_slice(&m[u]);
        }
        for i in 0..len {
            let (a, b) = (seq[i], seq[(i + 1) % len]);
            g[a][b] += 1;
            if !directed {
                g[b][a] += 1;
            }
        }
        out.insert(canonical_matrix(&g));
        return;
    }
    let next_fresh = n + seq.iter().filter(|&&v| v >= n).count();
    for v in 0..=next_fresh {
        if !seq.contains(&v) {
            seq.push(v);
            extend_cycle(m, n, len, directed, seq, out);
            seq.pop();
        }
    }
}

/// Connected Eulerian digraphs with at most `max_edges` arcs and no isolated
/// vertices, one per isomorphism class, ordered by arc count then canonical
/// form.
pub fn eulerian_digraphs(max_edges: usize) -> Vec<Digraph> {
    let mut ms = cycle_unions(max_edges, true);
    ms.sort_by_key(|m| (m.iter().flatten().map(|&x| x as usize).sum::<usize>(), m.clone()));
    ms.iter().map(digraph_from_matrix).collect()
}

/// Connected multigraphs with every degree even, at most `max_edges` edges
/// and no isolated vertices, one per isomorphism class.
pub fn veblen_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    let mut ms = cycle_unions(max_edges, false);
    ms.sort_by_key(|m| (m.iter().flatten().map(|&x| x as usize).sum::<usize>(), m.clone()));
    ms.iter().map(multigraph_from_matrix).collect()
}

/// A connected graph on `n` vertices: a random spanning tree plus each
/// remaining pair with probability `p`.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> SimpleGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges.sort();
    SimpleGraph::new(n, edges).unwrap()
}

/// Complete, cycle, path and star graphs on `n` vertices (deduplicated by
/// isomorphism).
pub fn named_graphs(n: usize) -> Vec<SimpleGraph> {
    let mut out: Vec<SimpleGraph> = Vec::new();
    let mut candidates = vec![SimpleGraph::complete(n), SimpleGraph::path(n)];
    if n >= 3 {
        candidates.push(SimpleGraph::cycle(n));
    }
    if n >= 2 {
        candidates.push(SimpleGraph::star(n));
    }
    let mut seen = BTreeSet::new();
    for g in candidates {
        if seen.insert(canonical_form(&simple_matrix(&g)).0) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_form_is_relabelling_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = random_connected_graph(7, 0.4, &mut rng);
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            assert_eq!(canonical_form(&simple_matrix(&g)).0, canonical_form(&simple_matrix(&h)).0);
        }
        let c = SimpleGraph::cycle(6);
        let p = SimpleGraph::path(6);
        assert_ne!(canonical_form(&simple_matrix(&c)).0, canonical_form(&simple_matrix(&p)).0);
    }

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_simple_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    /// Labelled brute force: every loop-free multiplicity matrix with the
    /// given arc total, filtered and reduced by canonical form.
    fn eulerian_by_brute_force(m_edges: usize) -> usize {
        let mut seen = BTreeSet::new();
        for n in 2..=m_edges {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
            let mut mult = vec![0u8; pairs.len()];
            fn rec(
                i: usize,
                left: usize,
                pairs: &[(usize, usize)],
                mult: &mut Vec<u8>,
                n: usize,
                seen: &mut BTreeSet<Vec<u8>>,
            ) {
                if i == pairs.len() {
                    if left != 0 {
                        return;
                    }
                    let mut m = vec![vec![0u8; n]; n];
                    for (k, &(u, v)) in pairs.iter().enumerate() {
                        m[u][v] = mult[k];
                    }
                    let d = digraph_from_matrix(&m);
                    let touches_all = (0..n).all(|v| d.out_degree(v).unwrap() > 0);
                    if touches_all && d.is_eulerian() {
                        seen.insert(canonical_form(&m).0);
                    }
                    return;
                }
                for k in 0..=left {
                    mult[i] = k as u8;
                    rec(i + 1, left - k, pairs, mult, n, seen);
                }
                mult[i] = 0;
            }
            if pairs.len() <= 12 {
                rec(0, m_edges, &pairs, &mut mult, n, &mut seen);
            }
        }
        seen.len()
    }

    #[test]
    fn eulerian_generation_matches_brute_force() {
        let gen = eulerian_digraphs(4);
        for m in 2..=4 {
            let count = gen.iter().filter(|d| d.edge_count() == m).count();
            assert_eq!(count, eulerian_by_brute_force(m), "m = {m}");
        }
        assert!(gen.iter().all(|d| d.is_eulerian()));
    }

    #[test]
    fn veblen_generation_small() {
        let xs = veblen_multigraphs(4);
        // doubled edge; triangle; quadrupled edge, 4-cycle, two doubled edges
        // sharing a vertex, doubled edge + ... (a 2-path of doubled edges)
        let by_size: Vec<usize> = (2..=4).map(|m| xs.iter().filter(|x| x.edge_count() == m).count()).collect();
        assert_eq!(by_size, vec![1, 1, 3]);
        assert!(xs.iter().all(|x| x.is_connected() && (0..x.vertex_count()).all(|v| x.degree(v) % 2 == 0)));
    }

    #[test]
    fn cheap_relabel_keeps_isomorphism_class() {
        let g = SimpleGraph::path(5);
        let h = SimpleGraph::from_adjacency(&cheap_relabel(g.adjacency()));
        assert_eq!(canonical_form(&simple_matrix(&g)).0, canonical_form(&simple_matrix(&h)).0);
    }
}
