use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_bounds::graph::{
    adjacency_matrix, brute_force_alpha, brute_force_chi, fractional_chi_bound, hoffman_chi_bound, is_independent,
    max_independent_set, optimize_weights, ratio_bound, Graph,
};
use spectral_bounds::BoundError;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

fn is_regular(g: &Graph) -> bool {
    let d = g.degrees();
    d.iter().all(|&x| x == d[0])
}

#[test]
fn bounds_are_sound_against_exact_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked_ratio = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=14);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        if g.edges().is_empty() {
            continue;
        }
        let a = adjacency_matrix(&g);
        let chi = brute_force_chi(&g).unwrap() as f64;
        let alpha = brute_force_alpha(&g).unwrap() as f64;
        let h = hoffman_chi_bound(&a).unwrap();
        assert!(h.value <= chi + 1e-9, "hoffman {} > chi {chi}", h.value);
        let f = fractional_chi_bound(&a).unwrap();
        assert!(f.value <= chi + 1e-9);
        match ratio_bound(&a, None) {
            Ok(r) => {
                assert!(
                    n as f64 * r.value >= alpha - 1e-9,
                    "ratio {} < alpha {alpha}/{n}",
                    r.value
                );
                checked_ratio += 1;
            }
            Err(BoundError::Inapplicable(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked_ratio > 50);
}

#[test]
fn independent_sets_annihilate_the_quadratic_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(3..=16);
        let g = random_graph(&mut rng, n, 0.4);
        let a = adjacency_matrix(&g);
        let s = max_independent_set(&g).unwrap();
        assert!(is_independent(&g, &s).unwrap());
        let indicator: Vec<f64> = (0..n).map(|v| if s.contains(&v) { 1.0 } else { 0.0 }).collect();
        assert_eq!(a.quadratic_form(&indicator), 0.0);
    }
}

#[test]
fn regular_graphs_have_zero_defect() {
    let graphs = [Graph::cycle(7), Graph::petersen(), Graph::complete(6), Graph::cycle(10)];
    for g in &graphs {
        assert!(is_regular(g));
        let a = adjacency_matrix(g);
        let by_default = ratio_bound(&a, None).unwrap();
        assert_eq!(by_default.epsilon, Some(0.0));
        let big_m = hoffman_chi_bound(&a).unwrap().big_m;
        let with_top = ratio_bound(&a, Some(big_m)).unwrap();
        assert!(with_top.epsilon.unwrap() < 1e-12);
        let m = with_top.m;
        assert!((with_top.value - (-m / (big_m - m))).abs() < 1e-12);
    }
}

#[test]
fn pentagon_and_petersen() {
    let c5 = adjacency_matrix(&Graph::cycle(5));
    let sqrt5 = 5f64.sqrt();
    assert!((hoffman_chi_bound(&c5).unwrap().value - sqrt5).abs() < 1e-9);
    assert!((5.0 * ratio_bound(&c5, None).unwrap().value - sqrt5).abs() < 1e-9);
    let p = adjacency_matrix(&Graph::petersen());
    assert!((hoffman_chi_bound(&p).unwrap().value - 2.5).abs() < 1e-9);
    assert!((ratio_bound(&p, None).unwrap().value - 0.4).abs() < 1e-9);
    assert!((fractional_chi_bound(&p).unwrap().value - 2.5).abs() < 1e-9);
}

#[test]
fn vertex_transitive_product_is_one() {
    // the Hoffman and ratio bounds multiply to one on regular graphs
    for g in [Graph::cycle(5), Graph::cycle(9), Graph::petersen(), Graph::complete(4)] {
        let a = adjacency_matrix(&g);
        let chi = hoffman_chi_bound(&a).unwrap().value;
        let alpha = ratio_bound(&a, None).unwrap().value;
        assert!((chi * alpha - 1.0).abs() < 1e-10);
    }
}

#[test]
fn edgeless_graph_is_vacuous() {
    let a = adjacency_matrix(&Graph::empty(3));
    assert!(hoffman_chi_bound(&a).unwrap_err().is_vacuous());
    assert!(ratio_bound(&a, None).unwrap_err().is_vacuous());
}

#[test]
fn optimizer_never_regresses_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..15 {
        let n = rng.gen_range(4..=10);
        let g = random_graph(&mut rng, n, 0.5);
        if g.edges().is_empty() {
            continue;
        }
        let base = hoffman_chi_bound(&adjacency_matrix(&g)).unwrap().value;
        let chi = brute_force_chi(&g).unwrap() as f64;
        let opt = optimize_weights(&g, true, 60).unwrap();
        assert!(opt.report.value >= base - 1e-12);
        assert!(opt.history.windows(2).all(|w| w[1] >= w[0]));
        // every weighting is still a valid lower bound
        assert!(opt.report.value <= chi + 1e-9);
    }
}

#[test]
fn edge_list_round_trip() {
    let g = Graph::petersen();
    let back = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
    assert_eq!(back, g);
    let dimacs = "c pentagon\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
    assert_eq!(Graph::parse_edge_list(dimacs).unwrap(), Graph::cycle(5));
    assert!(Graph::parse_edge_list("p edge 3 2\ne 1 2\n").is_err());
    assert!(Graph::parse_edge_list("0 x\n").is_err());
}
