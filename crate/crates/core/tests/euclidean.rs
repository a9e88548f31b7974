use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectral_bounds::euclidean::{
    chromatic_bound_euclidean, density_bound, fourier_radial, global_extrema, optimize_radial_measure,
    steinhardt_measure, unit_distance_bound, RadialMeasure, POINTS_PER_PERIOD,
};
use spectral_bounds::special::{bessel_first_zero, omega};

fn random_measure(rng: &mut ChaCha8Rng, signed: bool) -> RadialMeasure {
    let n = rng.gen_range(2..=5);
    let k = rng.gen_range(1..=4);
    let mut radii: Vec<f64> = (0..k).map(|_| rng.gen_range(0.5..4.0)).collect();
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    radii.dedup();
    let atoms = radii
        .into_iter()
        .map(|d| {
            (
                d,
                if signed {
                    rng.gen_range(-1.0..1.0)
                } else {
                    rng.gen_range(0.05..1.0)
                },
            )
        })
        .collect();
    RadialMeasure::new(n, atoms).unwrap()
}

#[test]
fn shell_minimum_sits_at_the_first_bessel_zero() {
    for n in 2..=8 {
        let e = global_extrema(&RadialMeasure::shell(n, 1.0).unwrap(), 1e-9).unwrap();
        let z = bessel_first_zero(n as f64 / 2.0).unwrap();
        assert!((e.inf_value - omega(n, z).unwrap()).abs() < 1e-10, "n = {n}");
        assert!((e.inf_arg - z).abs() < 1e-5);
        assert_eq!(e.sup_value, 1.0);
    }
}

#[test]
fn extrema_match_a_fine_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..12 {
        let mu = random_measure(&mut rng, true);
        let e = global_extrema(&mu, 1e-9).unwrap();
        let d_max = mu.atoms().last().unwrap().0;
        let step = 2.0 * std::f64::consts::PI / (POINTS_PER_PERIOD * 10.0 * d_max);
        let pts = (e.cutoff / step) as usize;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..=pts {
            let v = fourier_radial(&mu, i as f64 * step);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert!(
            e.inf_value <= lo + 1e-12 && e.inf_value >= lo - 1e-5,
            "{} vs {lo}",
            e.inf_value
        );
        assert!(e.sup_value >= hi - 1e-12 && e.sup_value <= hi + 1e-5);
    }
}

#[test]
fn duality_product_for_nonnegative_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let mu = random_measure(&mut rng, false);
        let chi = chromatic_bound_euclidean(&mu).unwrap();
        let dens = density_bound(&mu).unwrap();
        assert!((chi.value * dens.value - 1.0).abs() < 1e-9);
    }
}

#[test]
fn scaling_radii_leaves_bounds_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let mu = random_measure(&mut rng, false);
        let c = rng.gen_range(0.2..5.0);
        let scaled = mu.scaled(c).unwrap();
        let (a, b) = (
            chromatic_bound_euclidean(&mu).unwrap(),
            chromatic_bound_euclidean(&scaled).unwrap(),
        );
        assert!((a.value - b.value).abs() < 1e-9, "{} vs {}", a.value, b.value);
        let (a, b) = (density_bound(&mu).unwrap(), density_bound(&scaled).unwrap());
        assert!((a.value - b.value).abs() < 1e-9);
    }
}

#[test]
fn signed_measures_are_accepted() {
    let mu = RadialMeasure::new(3, vec![(1.0, 1.0), (2.0, -0.3)]).unwrap();
    let r = chromatic_bound_euclidean(&mu).unwrap();
    assert!(r.big_m >= fourier_radial(&mu, 0.0));
    assert!((r.reproduce() - r.value).abs() < 1e-12);
}

#[test]
fn odd_distance_bounds_grow() {
    let small = chromatic_bound_euclidean(&steinhardt_measure(1.3, 20).unwrap()).unwrap();
    let large = chromatic_bound_euclidean(&steinhardt_measure(1.05, 200).unwrap()).unwrap();
    assert!(large.value > small.value, "{} <= {}", large.value, small.value);
}

#[test]
fn single_shell_optimum_is_the_unit_distance_bound() {
    let o = optimize_radial_measure(2, &[1.0], 20, 1e-9).unwrap();
    let u = unit_distance_bound(2).unwrap();
    assert!((o.report.value - u.chi_lb.value).abs() < 1e-6);
    assert_eq!(o.measure.atoms(), &[(1.0, 1.0)]);
    let two = optimize_radial_measure(2, &[1.0, 2.0], 30, 1e-9).unwrap();
    assert!(two.report.value >= u.chi_lb.value - 1e-9);
}

#[test]
fn cutting_planes_are_sound_on_a_finer_grid() {
    let tol = 1e-9;
    for (n, radii) in [(2, vec![1.0, 1.7, 2.9]), (3, vec![1.0, 2.0, 3.0, 5.0])] {
        let o = optimize_radial_measure(n, &radii, 60, tol).unwrap();
        assert!(o.converged);
        let cutoff = o.report.provenance.cutoff.unwrap();
        let step = 2.0 * std::f64::consts::PI / (POINTS_PER_PERIOD * 10.0 * radii[radii.len() - 1]);
        let pts = (cutoff / step) as usize;
        let fine_min = (0..=pts)
            .map(|i| fourier_radial(&o.measure, i as f64 * step))
            .fold(f64::INFINITY, f64::min);
        assert!(fine_min >= o.lp_value - 10.0 * tol, "{fine_min} < {}", o.lp_value);
        assert!((o.measure.total_mass() - 1.0).abs() < 1e-12);
        assert!(o.measure.is_nonnegative());
    }
}

#[test]
fn odd_distance_lp_beats_every_single_shell() {
    let radii: Vec<f64> = (0..21).map(|k| (2 * k + 1) as f64).collect();
    let o = optimize_radial_measure(2, &radii, 60, 1e-9).unwrap();
    let single = unit_distance_bound(2).unwrap().chi_lb.value;
    assert!(o.report.value > single + 1.0, "{}", o.report.value);
}

#[test]
fn measures_round_trip_through_json() {
    let mu = steinhardt_measure(1.5, 5).unwrap();
    let text = serde_json::to_string(&mu).unwrap();
    assert!(text.starts_with(r#"{"dim":2,"atoms":[[1.0,"#));
    let back: RadialMeasure = serde_json::from_str(&text).unwrap();
    assert_eq!(back, mu);
}

#[test]
fn extrema_are_deterministic() {
    let mu = steinhardt_measure(1.1, 60).unwrap();
    assert_eq!(global_extrema(&mu, 1e-9).unwrap(), global_extrema(&mu, 1e-9).unwrap());
}
