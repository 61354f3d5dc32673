use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rainbow_core::edge_rainbow::EdgeColouring;
use rainbow_core::edge_rainbow::{euler_degree_split, rc_min_degree, split_colouring, EdgeSplit};
use rainbow_core::graph::{all_eccentricities, bfs_layers, diameter, is_connected};
use rainbow_core::random::{
    gap_sequence_from_subset, sample_regular, subset_from_gap_sequence, RegularSampler,
};
use rainbow_core::verify::{
    check_edge_certificate, is_rainbow_edge_connected_exact, is_rainbow_vertex_connected_exact,
    PairSelection,
};
use rainbow_core::vertex_rainbow::VertexColouring;
use rainbow_core::{Graph, Seed};

/// Graph on `n` vertices from one bit per unordered pair.
fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn dense_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(prop::bool::weighted(0.85), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Every simple path between `s` and `t`, by plain DFS.
fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbours(u) {
            if !path.contains(&w) {
                path.push(w);
                go(g, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, t, &mut vec![s], &mut out);
    out
}

fn all_distinct(xs: impl Iterator<Item = u32>) -> bool {
    let mut seen = BTreeSet::new();
    xs.into_iter().all(|x| seen.insert(x))
}

fn naive_edge_rainbow(g: &Graph, colours: &[u32]) -> bool {
    (0..g.n()).all(|s| {
        (s + 1..g.n()).all(|t| {
            simple_paths(g, s, t).iter().any(|p| {
                all_distinct(
                    p.windows(2)
                        .map(|w| colours[g.edge_index(w[0], w[1]).unwrap()]),
                )
            })
        })
    })
}

fn naive_vertex_rainbow(g: &Graph, colours: &[u32]) -> bool {
    (0..g.n()).all(|s| {
        (s + 1..g.n()).all(|t| {
            simple_paths(g, s, t)
                .iter()
                .any(|p| all_distinct(p[1..p.len() - 1].iter().map(|&v| colours[v])))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn bfs_layers_are_consistent(g in small_graph(12), root in 0usize..12) {
        let root = root % g.n();
        let layers = bfs_layers(&g, root).unwrap();
        prop_assert_eq!(layers.dist[root], Some(0));
        for &(u, v) in g.edges() {
            match (layers.dist[u], layers.dist[v]) {
                (Some(a), Some(b)) => prop_assert!(a.abs_diff(b) <= 1),
                (None, None) => {}
                _ => prop_assert!(false, "edge ({}, {}) leaves the reached set", u, v),
            }
        }
        // every non-root reached vertex has a neighbour one layer closer
        for v in 0..g.n() {
            if let Some(d) = layers.dist[v].filter(|&d| d > 0) {
                prop_assert!(g.neighbours(v).iter().any(|&w| layers.dist[w] == Some(d - 1)));
            }
        }
        let total: usize = layers.layers().iter().map(Vec::len).sum();
        prop_assert_eq!(total, layers.dist.iter().flatten().count());
    }

    #[test]
    fn diameter_is_max_eccentricity(g in small_graph(12)) {
        if is_connected(&g) {
            let ecc = all_eccentricities(&g).unwrap();
            prop_assert_eq!(diameter(&g).unwrap(), *ecc.iter().max().unwrap());
            // radius <= diameter <= 2·radius
            let rad = *ecc.iter().min().unwrap();
            prop_assert!(diameter(&g).unwrap() <= 2 * rad);
        } else {
            prop_assert!(diameter(&g).is_err());
        }
    }

    #[test]
    fn split_bound_holds(g in small_graph(10), seed in any::<u64>()) {
        prop_assume!(is_connected(&g));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // both sides start from the whole edge set; drop edges while connected
        let mut sides = [(0..g.m()).collect::<Vec<_>>(), (0..g.m()).collect::<Vec<_>>()];
        for side in &mut sides {
            for e in (0..g.m()).rev() {
                if rng.gen_bool(0.5) {
                    let without: Vec<usize> = side.iter().copied().filter(|&x| x != e).collect();
                    if is_connected(&g.spanning_subgraph(&without)) {
                        *side = without;
                    }
                }
            }
        }
        let [e1, e2] = sides;
        let shared = e1.iter().filter(|e| e2.contains(e)).count();
        let d1 = diameter(&g.spanning_subgraph(&e1)).unwrap();
        let d2 = diameter(&g.spanning_subgraph(&e2)).unwrap();
        let out = split_colouring(&EdgeSplit::new(g.clone(), e1, e2).unwrap()).unwrap();
        let used = out.colouring.colours.iter().collect::<BTreeSet<_>>().len();
        prop_assert!(used <= d1 + d2 + shared);
        if g.n() <= 10 {
            prop_assert!(is_rainbow_edge_connected_exact(&g, &out.colouring).unwrap().verdict);
        }
    }

    #[test]
    fn euler_split_keeps_half_of_every_degree(g in small_graph(12)) {
        prop_assume!(is_connected(&g));
        let (f1, f2) = euler_degree_split(&g).unwrap();
        let mut all: Vec<usize> = f1.iter().chain(&f2).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.m()).collect::<Vec<_>>());
        let d1 = g.spanning_subgraph(&f1).degrees();
        let d2 = g.spanning_subgraph(&f2).degrees();
        for v in 0..g.n() {
            let floor = g.degree(v).saturating_sub(1) / 2;
            prop_assert!(d1[v] >= floor && d2[v] >= floor);
        }
    }

    #[test]
    fn gap_round_trip(n in 2usize..10_000, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = 2 * rng.gen_range(1..=(n / 2).min(50));
        let mut b: Vec<usize> = rand::seq::index::sample(&mut rng, n, k)
            .into_iter()
            .map(|x| x + 1)
            .collect();
        b.sort_unstable();
        let gaps = gap_sequence_from_subset(&b, n).unwrap();
        prop_assert_eq!(gaps.values().iter().sum::<usize>(), n);
        prop_assert_eq!(subset_from_gap_sequence(&gaps), b);
    }

    #[test]
    fn sampling_is_deterministic(n in 8usize..60, seed in any::<u64>()) {
        let n = n + n % 2;
        let a = sample_regular(n, 3, Seed(seed), RegularSampler::auto(3), 100_000).unwrap();
        let b = sample_regular(n, 3, Seed(seed), RegularSampler::auto(3), 100_000).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
        prop_assert_eq!(a.regular_degree(), Some(3));
    }

    #[test]
    fn exact_edge_check_matches_path_enumeration(
        g in small_graph(7),
        colours in proptest::collection::vec(0u32..4, 21),
    ) {
        prop_assume!(is_connected(&g));
        let col = EdgeColouring::plain(colours[..g.m()].to_vec());
        let exact = is_rainbow_edge_connected_exact(&g, &col).unwrap().verdict;
        prop_assert_eq!(exact, naive_edge_rainbow(&g, &col.colours));
    }

    #[test]
    fn exact_vertex_check_matches_path_enumeration(
        g in small_graph(7),
        colours in proptest::collection::vec(0u32..3, 7),
    ) {
        prop_assume!(is_connected(&g));
        let col = VertexColouring::plain(colours[..g.n()].to_vec());
        let exact = is_rainbow_vertex_connected_exact(&g, &col).unwrap().verdict;
        prop_assert_eq!(exact, naive_vertex_rainbow(&g, &col.colours));
    }

    #[test]
    fn certificate_never_passes_what_exact_rejects(
        g in dense_graph(5, 9),
        edge in any::<prop::sample::Index>(),
        shift in 1u32..4,
    ) {
        prop_assume!(is_connected(&g) && g.min_degree() >= 4);
        let mut col = rc_min_degree(&g).unwrap().colouring;
        // recolour one edge, keeping the certificate
        let e = edge.index(g.m());
        col.colours[e] = (col.colours[e] + shift) % (col.colour_count() as u32 + 1);
        let replay = check_edge_certificate(&g, &col, PairSelection::All).unwrap();
        if replay.verdict {
            prop_assert!(is_rainbow_edge_connected_exact(&g, &col).unwrap().verdict);
        }
    }
}

#[test]
fn gap_round_trip_ten_thousand_subsets_of_ten_thousand() {
    let n = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let k = 2 * rng.gen_range(1..=n / 2);
        let mut b: Vec<usize> = rand::seq::index::sample(&mut rng, n, k)
            .into_iter()
            .map(|x| x + 1)
            .collect();
        b.sort_unstable();
        let gaps = gap_sequence_from_subset(&b, n).unwrap();
        assert_eq!(subset_from_gap_sequence(&gaps), b);
    }
}
