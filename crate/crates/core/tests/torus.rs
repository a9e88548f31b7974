use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_bounds::graph::{adjacency_matrix, brute_force_alpha, brute_force_chi, Graph};
use spectral_bounds::spectral::eigenvalues;
use spectral_bounds::torus::{
    build_torus_graph, circulant_chi_bound, circulant_ratio_bound, circulant_spectrum, convergence_study, symmetrize,
    CirculantGraph,
};
use spectral_bounds::SymMatrix;

fn random_circulant(rng: &mut ChaCha8Rng, max_vertices: usize) -> CirculantGraph {
    loop {
        let n = rng.gen_range(1..=2);
        let m = if n == 1 {
            rng.gen_range(3..=max_vertices.min(300))
        } else {
            rng.gen_range(3..=16)
        };
        let gens: Vec<Vec<i64>> = (0..rng.gen_range(1..=3))
            .map(|_| (0..n).map(|_| rng.gen_range(0..m as i64)).collect())
            .filter(|s: &Vec<i64>| s.iter().any(|&x| x != 0))
            .collect();
        let set: Vec<Vec<i64>> = gens
            .iter()
            .flat_map(|s| [s.clone(), s.iter().map(|x| -x).collect()])
            .collect();
        if let Ok(g) = CirculantGraph::new(m, n, set) {
            return g;
        }
    }
}

#[test]
fn character_sums_match_dense_spectra() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..30 {
        let g = random_circulant(&mut rng, 256);
        let dense = eigenvalues(&g.adjacency().unwrap(), 1e-12).unwrap();
        let fast = circulant_spectrum(&g);
        assert_eq!(dense.len(), fast.len());
        for (a, b) in dense.iter().zip(&fast) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b} on {g:?}");
        }
    }
}

#[test]
fn torus_bounds_respect_exact_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut checked = 0;
    while checked < 40 {
        let g = random_circulant(&mut rng, 18);
        if g.vertices() > 18 {
            continue;
        }
        let graph = g.to_graph().unwrap();
        let chi = brute_force_chi(&graph).unwrap() as f64;
        let alpha = brute_force_alpha(&graph).unwrap() as f64;
        assert!(circulant_chi_bound(&g).unwrap().value <= chi + 1e-9);
        assert!(g.vertices() as f64 * circulant_ratio_bound(&g).unwrap().value >= alpha - 1e-9);
        checked += 1;
    }
}

#[test]
fn grid_and_cycle_examples() {
    let grid = build_torus_graph(16, 2, &[1.0], 0.25).unwrap();
    assert!((circulant_chi_bound(&grid).unwrap().value - 2.0).abs() < 1e-12);
    for m in [6, 12, 24] {
        let c = build_torus_graph(m, 1, &[1.0], 0.25).unwrap();
        assert!((circulant_chi_bound(&c).unwrap().value - 2.0).abs() < 1e-12);
    }
    let c7 = build_torus_graph(7, 1, &[1.0, 2.0], 0.25).unwrap();
    let graph = c7.to_graph().unwrap();
    assert_eq!(brute_force_alpha(&graph).unwrap(), 2);
    assert!(7.0 * circulant_ratio_bound(&c7).unwrap().value >= 2.0);
}

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
}

#[test]
fn symmetrization_is_idempotent_and_keeps_the_bottom() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let n = 6;
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let swap: Vec<usize> = vec![1, 0, 2, 3, 4, 5];
    for gens in [
        vec![rotation.clone()],
        vec![rotation.clone(), reflection.clone()],
        vec![swap],
    ] {
        for _ in 0..10 {
            let a = random_symmetric(&mut rng, n);
            let once = symmetrize(&a, &gens, 10_000).unwrap();
            let twice = symmetrize(&once, &gens, 10_000).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert!((once.get(i, j) - twice.get(i, j)).abs() < 1e-12);
                }
            }
            for g in &gens {
                let p = once.permuted(g);
                for i in 0..n {
                    for j in 0..n {
                        assert!((p.get(i, j) - once.get(i, j)).abs() < 1e-10);
                    }
                }
            }
            let (ea, eo) = (eigenvalues(&a, 1e-12).unwrap(), eigenvalues(&once, 1e-12).unwrap());
            assert!(eo[n - 1] >= ea[n - 1] - 1e-10);
            assert!(eo[0] <= ea[0] + 1e-10);
        }
    }
}

#[test]
fn transitive_averages_fix_the_constant_vector() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let a = random_symmetric(&mut rng, 7);
    let avg = symmetrize(&a, &[(0..7).map(|i| (i + 3) % 7).collect()], 100).unwrap();
    let rows = avg.row_sums();
    assert!(rows.iter().all(|r| (r - rows[0]).abs() < 1e-12));
    let c5 = adjacency_matrix(&Graph::cycle(5));
    assert_eq!(symmetrize(&c5, &[vec![1, 2, 3, 4, 0]], 100).unwrap(), c5);
}

#[test]
fn line_discretizations_converge_monotonically() {
    for radii in [vec![1.0, 2.0], vec![2.0, 3.0], vec![1.0, 2.5], vec![1.0, 3.0, 4.0]] {
        let rows = convergence_study(1, &radii, &[64, 128, 256]).unwrap();
        let target = rows[0].continuous_chi_lb;
        for w in rows.windows(2) {
            assert!(w[1].discrete_chi_lb <= w[0].discrete_chi_lb + 1e-12, "{radii:?}");
        }
        let last = rows.last().unwrap().discrete_chi_lb;
        assert!((last - target).abs() <= 0.02 * target, "{radii:?}: {last} vs {target}");
    }
}

#[test]
fn plane_and_space_unit_shells_end_within_two_percent() {
    let rows = convergence_study(2, &[1.0], &[64, 128, 256]).unwrap();
    let gaps: Vec<f64> = rows
        .iter()
        .map(|r| (r.discrete_chi_lb - r.continuous_chi_lb).abs() / r.continuous_chi_lb)
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{gaps:?}");
    assert!(gaps[2] <= 0.02);
    let rows = convergence_study(3, &[1.0], &[16, 32, 64]).unwrap();
    let last = rows.last().unwrap();
    assert!((last.discrete_chi_lb - last.continuous_chi_lb).abs() <= 0.02 * last.continuous_chi_lb);
}
