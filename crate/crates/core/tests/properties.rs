use proptest::prelude::*;

use num_bigint::BigInt;
use num_traits::Signed;

use eulerlat::bond::{
    chromatic_polynomial, chromatic_polynomial_whitney, nbc_bases, unique_sink_orientations, EdgeOrder,
};
use eulerlat::harary::{charpoly_determinant_oracle, elementary_subgraph_formula, hs_characteristic_polynomial};
use eulerlat::heaps::{compose, is_heap, push_down, Heap, PieceSystem};
use eulerlat::{IntPolynomial, SetPartition, SimpleGraph};

fn graph(n: usize, mask: u64) -> SimpleGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
    SimpleGraph::new(n, edges).unwrap()
}

fn connected_graph() -> impl Strategy<Value = SimpleGraph> {
    (2usize..=6, any::<u64>()).prop_map(|(n, mask)| {
        // a path keeps it connected
        let mut g = graph(n, mask);
        for v in 1..n {
            if !g.has_edge(v - 1, v) {
                let mut edges = g.edges().to_vec();
                edges.push((v - 1, v));
                g = SimpleGraph::new(n, edges).unwrap();
            }
        }
        g
    })
}

fn piece_system() -> impl Strategy<Value = PieceSystem> {
    (1usize..=5, any::<u64>()).prop_map(|(n, mask)| PieceSystem::from_graph(&graph(n, mask)))
}

/// The heap of a word, element ids starting at `offset`.
fn heap_of(ps: &PieceSystem, word: &[usize], offset: u32) -> Heap {
    word.iter()
        .enumerate()
        .fold(Heap::empty(), |h, (i, &p)| compose(ps, &h, &Heap::singleton(offset + i as u32, p % ps.len())).unwrap())
}

fn partition(labels: &[usize]) -> SetPartition {
    let mut blocks = vec![0u64; labels.len()];
    for (x, &b) in labels.iter().enumerate() {
        blocks[b] |= 1 << x;
    }
    SetPartition::new(labels.len(), blocks.into_iter().filter(|&b| b != 0).collect()).unwrap()
}

fn partition_pair() -> impl Strategy<Value = (SetPartition, SetPartition, SetPartition)> {
    (1usize..=7).prop_flat_map(|n| {
        let labels = proptest::collection::vec(0..n, n);
        (labels.clone(), labels.clone(), labels).prop_map(|(a, b, c)| (partition(&a), partition(&b), partition(&c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heap_composition_is_a_monoid(
        ps in piece_system(),
        a in proptest::collection::vec(0usize..5, 0..5),
        b in proptest::collection::vec(0usize..5, 0..5),
        c in proptest::collection::vec(0usize..5, 0..5),
    ) {
        let (ha, hb, hc) = (heap_of(&ps, &a, 0), heap_of(&ps, &b, 10), heap_of(&ps, &c, 20));
        let left = compose(&ps, &compose(&ps, &ha, &hb).unwrap(), &hc).unwrap();
        let right = compose(&ps, &ha, &compose(&ps, &hb, &hc).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&compose(&ps, &Heap::empty(), &ha).unwrap(), &ha);
        prop_assert_eq!(&compose(&ps, &ha, &Heap::empty()).unwrap(), &ha);
        let check = is_heap(&ps, &left).unwrap();
        prop_assert!(check.is_heap() && check.consistent());
    }

    #[test]
    fn push_down_reconstructs(ps in piece_system(), word in proptest::collection::vec(0usize..5, 1..8)) {
        let h = heap_of(&ps, &word, 0);
        for w in h.maxima() {
            let (down, rest) = push_down(&h, w).unwrap();
            prop_assert!(down.is_pyramid());
            prop_assert_eq!(down.apex(), Some(w));
            prop_assert_eq!(&compose(&ps, &down, &rest).unwrap(), &h);
        }
    }

    #[test]
    fn heap_axioms_agree_with_sandwich(
        ps in piece_system(),
        labels in proptest::collection::vec(0usize..5, 1..7),
        rel in any::<u64>(),
    ) {
        let k = labels.len() as u32;
        let elements: Vec<(u32, usize)> = labels.iter().enumerate().map(|(i, &p)| (i as u32, p % ps.len())).collect();
        let mut lt = Vec::new();
        let mut bit = 0;
        for i in 0..k {
            for j in i + 1..k {
                if rel >> (bit % 64) & 1 == 1 {
                    lt.push((i, j));
                }
                bit += 1;
            }
        }
        let h = Heap::from_relations(&elements, &lt).unwrap();
        prop_assert!(is_heap(&ps, &h).unwrap().consistent());
    }

    #[test]
    fn partition_lattice_laws((a, b, c) in partition_pair()) {
        let j = a.join(&b).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert!(a.refines(&j) && b.refines(&j));
        prop_assert!(m.refines(&a) && m.refines(&b));
        prop_assert_eq!(&a.join(&m).unwrap(), &a);
        prop_assert_eq!(&a.meet(&j).unwrap(), &a);
        prop_assert_eq!(j.join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
    }

    #[test]
    fn nbc_bases_count_unique_sink_orientations(g in connected_graph(), seed in any::<u64>(), x in 0usize..6) {
        use rand::SeedableRng;
        let ord = EdgeOrder::random(g.edge_count(), &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let p = chromatic_polynomial(&g);
        prop_assert_eq!(&chromatic_polynomial_whitney(&g, &ord).unwrap(), &p);
        let bases = nbc_bases(&g, &ord).unwrap().len();
        prop_assert_eq!(BigInt::from(bases), p.coeff(1).abs());
        let x = x % g.vertex_count();
        prop_assert_eq!(unique_sink_orientations(&g, x).unwrap().len(), bases);
    }

    #[test]
    fn characteristic_polynomial_routes_agree(n in 1usize..=6, mask in any::<u64>()) {
        let g = graph(n, mask);
        let det = charpoly_determinant_oracle(&g);
        prop_assert_eq!(&elementary_subgraph_formula(&g).unwrap(), &det);
        prop_assert_eq!(&hs_characteristic_polynomial(&g).unwrap(), &det);
        prop_assert_eq!(det.leading(), Some(&BigInt::from(1)));
    }

    #[test]
    fn polynomial_evaluation_is_a_ring_map(
        a in proptest::collection::vec(-5i64..5, 0..5),
        b in proptest::collection::vec(-5i64..5, 0..5),
        t in -4i64..4,
    ) {
        let (p, q) = (IntPolynomial::from_i64s(&a), IntPolynomial::from_i64s(&b));
        let t = BigInt::from(t);
        prop_assert_eq!((&p * &q).eval(&t), p.eval(&t) * q.eval(&t));
        prop_assert_eq!((&p + &q).eval(&t), p.eval(&t) + q.eval(&t));
    }
}
