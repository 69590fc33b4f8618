use std::f64::consts::PI;

use num_complex::Complex64;

use formpreserve::numerics::{Grid1D, SampledWaveFunction};
use formpreserve::schrodinger::*;
use formpreserve::wavefields::*;

#[test]
fn eigenstate_residual_is_small() {
    let grid = Grid1D::symmetric(10.0, 2048).unwrap();
    let v = Potential1D::harmonic(1.0).unwrap();
    let r = residual(|x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0), &v, &grid, 0.3, 1.0, 1.0, DEFAULT_DT_PROBE).unwrap();
    assert!(r.max_abs < 1e-6, "{}", r.max_abs);
    assert!(r.l2 >= 0.0 && r.interior_fraction == 0.8 && r.times.len() == 5);
}

#[test]
fn wrong_potential_is_detected() {
    let grid = Grid1D::symmetric(10.0, 2048).unwrap();
    let r = residual(
        |x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0),
        &Potential1D::Free,
        &grid,
        0.0,
        1.0,
        1.0,
        DEFAULT_DT_PROBE,
    )
    .unwrap();
    assert!(r.max_abs > 0.1);
}

#[test]
fn non_finite_samples_are_rejected() {
    let grid = Grid1D::symmetric(1.0, 16).unwrap();
    let r = residual(|_, _| Ok(Complex64::new(f64::NAN, 0.0)), &Potential1D::Free, &grid, 0.0, 1.0, 1.0, 1e-4);
    assert!(r.is_err());
}

fn oscillator_period_error(n_steps: usize) -> f64 {
    let grid = Grid1D::symmetric(12.0, 2048).unwrap();
    let v = Potential1D::harmonic(1.0).unwrap();
    let psi0 = SampledWaveFunction::sample(grid, 0.0, 1.0, 1.0, |x, t| ho_eigenstate(1, x, t, 1.0, 1.0, 1.0).unwrap()).unwrap();
    let period = 2.0 * PI;
    let out = propagate(&psi0, &v, period, n_steps).unwrap();
    let phase = Complex64::from_polar(1.0, -1.5 * period);
    let want = SampledWaveFunction::new(psi0.grid.clone(), psi0.values.iter().map(|z| z * phase).collect(), period, 1.0, 1.0).unwrap();
    out.l2_distance(&want).unwrap()
}

#[test]
fn oscillator_returns_after_one_period() {
    let err = oscillator_period_error(4096);
    assert!(err < 1e-4, "{err}");
}

#[test]
fn time_error_is_second_order() {
    let coarse = oscillator_period_error(256);
    let fine = oscillator_period_error(512);
    let ratio = coarse / fine;
    assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn free_spreading_matches_closed_form() {
    let grid = Grid1D::symmetric(20.0, 2048).unwrap();
    let psi = |x: f64, t: f64| dispersing_free_state(0, x, t, 0.5, 0.2, 1.0, 1.0, 1.0).unwrap();
    let psi0 = SampledWaveFunction::sample(grid.clone(), 0.0, 1.0, 1.0, psi).unwrap();
    let out = propagate(&psi0, &Potential1D::Free, 1.0, 2000).unwrap();
    let want = SampledWaveFunction::sample(grid, 1.0, 1.0, 1.0, psi).unwrap();
    let err = out.l2_distance(&want).unwrap();
    assert!(err < 1e-4, "{err}");
}

#[test]
fn zero_steps_is_identity() {
    let grid = Grid1D::symmetric(5.0, 64).unwrap();
    let psi0 = SampledWaveFunction::sample(grid, 0.2, 1.0, 1.0, |x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0).unwrap()).unwrap();
    let out = propagate(&psi0, &Potential1D::Free, 3.0, 0).unwrap();
    assert_eq!(out, psi0);
}

#[test]
fn norm_drift_per_step_is_tiny() {
    let grid = Grid1D::symmetric(12.0, 1024).unwrap();
    let path = ClassicalPath::harmonic(2.0, 0.0, 1.0, (-10.0, 10.0));
    let state = SenitzkyState::new(2, path, 1.0, 1.0, 1.0).unwrap();
    let mut psi = SampledWaveFunction::sample(grid, 0.0, 1.0, 1.0, |x, t| state.eval(x, t).unwrap()).unwrap();
    let v = Potential1D::custom(|x, t| 0.5 * x * x + 0.1 * (x * t).sin());
    let mut prev = discrete_norm(&psi);
    for k in 0..50 {
        psi = propagate(&psi, &v, 0.01 * (k + 1) as f64, 1).unwrap();
        let now = discrete_norm(&psi);
        assert!((now - prev).abs() < 1e-10, "{}", now - prev);
        prev = now;
    }
}
