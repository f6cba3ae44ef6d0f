use proptest::prelude::*;
use specgraph_core::families::{clique_extension, complement};
use specgraph_core::regularity::common_neighbors;
use specgraph_core::spectral::{extension_spectrum_map, spectrum, DEFAULT_CLUSTER_TOL};
use specgraph_core::structure::{
    check_interlacing, hoffman_coclique_bound, is_equitable, max_coclique, quotient_matrix, quotient_spectrum,
    Partition,
};
use specgraph_core::Graph;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut it = bits.iter().copied();
    let mut adj = vec![vec![false; n]; n];
    for (x, row) in adj.iter_mut().enumerate() {
        for cell in &mut row[x + 1..] {
            *cell = it.next().unwrap_or(false);
        }
    }
    Graph::from_fn(n, |x, y| adj[x][y]).unwrap()
}

fn small_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn graph_with_partition(max: usize) -> impl Strategy<Value = (Graph, Partition)> {
    small_graph(max).prop_flat_map(|g| {
        let n = g.order();
        (1..=n).prop_flat_map(move |m| {
            let g = g.clone();
            prop::collection::vec(0..m, n).prop_map(move |labels| {
                (g.clone(), Partition::from_labels(&labels).unwrap())
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_spectrum_matches_numeric(g in small_graph(12), s in 1usize..=4) {
        let ext = clique_extension(&g, s).unwrap();
        let predicted = extension_spectrum_map(&spectrum(&g, DEFAULT_CLUSTER_TOL).unwrap(), s, g.order());
        let direct = spectrum(&ext, DEFAULT_CLUSTER_TOL).unwrap();
        prop_assert_eq!(predicted.order(), ext.order());
        let a = predicted.expanded();
        let b = direct.expanded();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.as_f64() - y.as_f64()).abs() < 1e-6, "{} vs {}", x, y);
        }
    }

    #[test]
    fn complement_is_an_involution(g in small_graph(20)) {
        let c = complement(&g);
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.order() * (g.order() - 1) / 2);
        prop_assert_eq!(complement(&c), g);
    }

    #[test]
    fn common_neighbors_symmetric(g in small_graph(16), x in 0usize..16, y in 0usize..16) {
        let n = g.order();
        let (x, y) = (x % n, y % n);
        if x != y {
            let brute = (0..n).filter(|&z| g.has_edge(x, z) && g.has_edge(y, z)).count();
            prop_assert_eq!(common_neighbors(&g, x, y).unwrap(), brute);
            prop_assert_eq!(common_neighbors(&g, y, x).unwrap(), brute);
        }
    }

    #[test]
    fn low_power_sums(g in small_graph(12)) {
        let spec = spectrum(&g, DEFAULT_CLUSTER_TOL).unwrap();
        prop_assert!(spec.power_sum(1).abs() < 1e-6);
        prop_assert!((spec.power_sum(2) - 2.0 * g.edge_count() as f64).abs() < 1e-6);
        let n = g.order();
        let triangles = (0..n)
            .flat_map(|x| (x + 1..n).flat_map(move |y| (y + 1..n).map(move |z| (x, y, z))))
            .filter(|&(x, y, z)| g.has_edge(x, y) && g.has_edge(y, z) && g.has_edge(x, z))
            .count();
        prop_assert!((spec.power_sum(3) - 6.0 * triangles as f64).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn quotients_interlace((g, pi) in graph_with_partition(12)) {
        let big = spectrum(&g, DEFAULT_CLUSTER_TOL).unwrap();
        let small = quotient_spectrum(&quotient_matrix(&g, &pi).unwrap()).unwrap();
        let r = check_interlacing(&big, &small).unwrap();
        prop_assert!(r.interlaces, "{} vs {}", big, small);
        if r.tight {
            prop_assert!(is_equitable(&g, &pi).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hoffman_bounds_cocliques_of_regular_graphs(n in 2usize..=12, k in 1usize..=11, seed in any::<u64>()) {
        // circulants are a cheap source of regular graphs
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut steps: Vec<usize> = (1..=n / 2).collect();
        steps.shuffle(&mut rng);
        steps.truncate(k.min(n / 2));
        let g = Graph::from_fn(n, |x, y| {
            let d = (y - x).min(n - (y - x));
            steps.contains(&d)
        }).unwrap();
        if let Ok(b) = hoffman_coclique_bound(&g) {
            prop_assert!(max_coclique(&g).len() as i64 <= b.floor());
        }
    }
}
