use proptest::prelude::*;
use vdw_core::action::{ks_statistic, sample_action, sample_paths, KernelTable, PathConfig, DEFAULT_DT};
use vdw_core::kernels::SmearingProfile;
use vdw_core::spectral::{build_dipole_spectrum, BasisConfig};

/// Two-sample Kolmogorov-Smirnov critical value at level 1%.
fn ks_critical_1pct(n: usize, m: usize) -> f64 {
    1.628 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

#[test]
fn reversed_paths_have_the_same_action_distribution() {
    let profile = SmearingProfile::default();
    let config = PathConfig::new(0.5, 0.4, DEFAULT_DT, 400, 31);
    let table = KernelTable::for_config(&profile, &config).unwrap();
    let forward: Vec<f64> = sample_paths(&config, &table, false).unwrap().iter().map(|s| s.action).collect();
    let backward: Vec<f64> = sample_paths(&config, &table, true).unwrap().iter().map(|s| s.action).collect();
    let d = ks_statistic(&forward, &backward);
    assert!(d < ks_critical_1pct(forward.len(), backward.len()), "KS statistic {d}");
}

#[test]
fn action_is_centred_and_uncorrelated_with_the_endpoint() {
    // Zero mean and zero covariance hold for every step size of the Ito sum.
    let s = sample_action(&PathConfig::new(1.0, 0.3, 1.0 / 64.0, 2000, 41), &SmearingProfile::default()).unwrap();
    assert!(s.mean.abs() <= 3.0 * s.mean_stderr, "{s:?}");
    for c in 0..3 {
        assert!(s.covariance[c].abs() <= 3.0 * s.covariance_stderr[c], "{s:?}");
    }
    assert!(s.variance > 0.0 && s.variance_stderr > 0.0);
}

#[test]
fn identical_seed_reproduces_statistics() {
    let p = SmearingProfile::default();
    let c = PathConfig::new(0.5, 0.4, DEFAULT_DT, 64, 5);
    assert_eq!(sample_action(&c, &p).unwrap(), sample_action(&c, &p).unwrap());
}

/// Halving Δt at the default configuration moves the variance by less than
/// its standard error. Ignored for runtime only (≈20 min on one core); run
/// with `--ignored`.
#[test]
#[ignore]
fn step_halving_at_default_configuration() {
    let p = SmearingProfile::default();
    let coarse = sample_action(&PathConfig::new(1.0, 0.2, DEFAULT_DT, 2000, 51), &p).unwrap();
    let fine = sample_action(&PathConfig::new(1.0, 0.2, DEFAULT_DT / 2.0, 2000, 52), &p).unwrap();
    let shift = (fine.variance - coarse.variance).abs();
    println!(
        "variance at dt: {} ± {}, at dt/2: {} ± {}",
        coarse.variance, coarse.variance_stderr, fine.variance, fine.variance_stderr
    );
    assert!(shift < coarse.variance_stderr, "shift {shift} vs stderr {}", coarse.variance_stderr);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_polarizability_decreases(u in 0.0f64..50.0, du in 1e-3f64..10.0) {
        let spec = build_dipole_spectrum(&BasisConfig::new(40, 1.0)).unwrap();
        let (a, b) = (spec.reduced_polarizability(u), spec.reduced_polarizability(u + du));
        prop_assert!(b < a);
        prop_assert!(b > 0.0);
        prop_assert!(a <= spec.static_polarizability() / 2.0 * (1.0 + 1e-14));
    }

    #[test]
    fn dipole_correlation_is_completely_monotone(t in 0.0f64..40.0, dt in 1e-3f64..5.0) {
        let spec = build_dipole_spectrum(&BasisConfig::new(40, 1.0)).unwrap();
        let (c0, c1) = (spec.dipole_correlation(t), spec.dipole_correlation(t + dt));
        prop_assert!(c1 < c0 && c1 > 0.0);
    }
}
