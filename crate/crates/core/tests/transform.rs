use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use formpreserve::numerics::{airy_ai, Grid1D};
use formpreserve::schrodinger::{residual, DEFAULT_DT_PROBE};
use formpreserve::transform::*;
use formpreserve::wavefields::*;
use formpreserve::Error;

fn constant_gamma(g: f64) -> TransformParams {
    TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(move |_| Jet::constant(g)),
        1.0,
        1.0,
        (-5.0, 5.0),
    )
    .unwrap()
}

fn cosine_by_quadrature(omega: f64) -> TransformParams {
    TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(move |t| {
            let th = omega * t;
            Jet::new(th.cos(), -omega * th.sin(), -omega * omega * th.cos())
        }),
        1.0,
        1.0,
        (-1.4 / omega, 1.4 / omega),
    )
    .unwrap()
}

#[test]
fn identity_maps_points_to_themselves() {
    let p = identity_params(1.0, 1.0).unwrap();
    for &(x, t) in &[(0.0, 0.0), (1.5, -2.0), (-3.2, 7.5)] {
        assert_eq!(p.map_coords(x, t).unwrap(), (x, t));
    }
}

#[test]
fn cosine_clock_is_tangent() {
    let omega = 1.3;
    let p = free_ho_params(0.0, 0.0, omega, 1.0, 1.0).unwrap();
    let q = cosine_by_quadrature(omega);
    for t in [-1.0, -0.3, 0.0, 0.4, 1.05] {
        let exact = (omega * t).tan() / omega;
        assert!((p.t_prime(t).unwrap() - exact).abs() < 1e-14);
        assert!((q.t_prime(t).unwrap() - exact).abs() < 1e-10);
    }
}

#[test]
fn constant_gamma_by_quadrature() {
    let p = constant_gamma(2.0);
    let (xp, tp) = p.map_coords(3.0, 2.0).unwrap();
    assert!((xp - 1.5).abs() < 1e-15);
    assert!((tp - 0.5).abs() < 1e-12);
    let (x, t) = p.unmap_coords(xp, tp).unwrap();
    assert!((x - 3.0).abs() < 1e-12 && (t - 2.0).abs() < 1e-11);
}

#[test]
fn vanishing_gamma_is_singular() {
    let p = TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|t| Jet::new(t, 1.0, 0.0)),
        1.0,
        1.0,
        (0.5, 2.0),
    )
    .unwrap()
    .with_time_origin(1.0, 0.0);
    assert!(p.t_prime(1.5).is_ok());
    let bad = TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|t| Jet::new(t, 1.0, 0.0)),
        1.0,
        1.0,
        (-1.0, 1.0),
    );
    assert!(matches!(bad, Err(Error::SingularMap(_))));
    let cos = free_ho_params(0.0, 0.0, 1.0, 1.0, 1.0).unwrap();
    assert!(matches!(cos.t_prime(1.6), Err(Error::Range(_))));
}

#[test]
fn inconsistent_derivatives_are_rejected() {
    let r = TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|t: f64| Jet::new(t * t, 2.0 * t, 1.0)),
        Arc::new(|_| Jet::constant(1.0)),
        1.0,
        1.0,
        (-1.0, 1.0),
    );
    assert!(matches!(r, Err(Error::Contract(_))));
}

#[test]
fn negative_gamma_has_no_branch() {
    let p = constant_gamma(-1.0);
    let r = p.transform_wavefunction(|_, _| Ok(Complex64::new(1.0, 0.0)), 0.3, 0.2);
    assert!(matches!(r, Err(Error::Domain(_))));
}

#[test]
fn identity_leaves_wave_and_potential_alone() {
    let p = identity_params(1.0, 1.0).unwrap();
    let v = Potential1D::harmonic(1.2).unwrap();
    for i in 0..20 {
        let x = -3.0 + 0.3 * i as f64;
        let psi = |x, t| ho_eigenstate(2, x, t, 1.2, 1.0, 1.0);
        let a = p.transform_wavefunction(psi, x, 0.7).unwrap();
        assert!((a - psi(x, 0.7).unwrap()).norm() < 1e-15);
        assert_eq!(p.transform_potential(&v, x, 0.7), v.value(x, 0.7, 1.0));
    }
}

#[test]
fn berry_balazs_derivatives_and_drift() {
    let (b, hbar, m) = (1.2f64, 0.9, 1.4);
    let p = berry_balazs_params(b, hbar, m).unwrap();
    let b3 = b.powi(3);
    for t in [0.0, 1.0, 2.0] {
        let (beta, alpha) = (p.beta(t), p.alpha(t));
        assert!((beta.d1 + b3 * t / (2.0 * m * m)).abs() < 1e-14);
        assert!((beta.d2 + b3 / (2.0 * m * m)).abs() < 1e-14);
        assert!((alpha.d1 + b3 * b3 * t * t / (4.0 * m.powi(3) * hbar)).abs() < 1e-13);
        let (xp, _) = p.map_coords(0.0, t).unwrap();
        assert!((xp + b3 * t * t / (4.0 * m * m)).abs() < 1e-14);
    }
}

#[test]
fn berry_balazs_exchanges_free_and_linear() {
    let (b, hbar, m) = (1.0, 1.0, 1.0);
    let p = berry_balazs_params(b, hbar, m).unwrap();
    let inv = p.inverse();
    let slope = Potential1D::Linear { slope: b * b * b / (2.0 * m) };
    for i in 0..25 {
        let x = -6.0 + 0.5 * i as f64;
        for t in [0.0, 0.6, 1.7] {
            assert!(inv.transform_potential(&slope, x, t).abs() < 1e-10);
            let (xp, _) = p.map_coords(x, t).unwrap();
            let vp = p.transform_potential(&Potential1D::Free, x, t);
            assert!((vp - slope.value(xp, 0.0, m)).abs() < 1e-10);
        }
    }
}

#[test]
fn berry_balazs_reproduces_the_beam() {
    let (b, hbar, m) = (1.0, 1.0, 1.0);
    let inv = berry_balazs_params(b, hbar, m).unwrap().inverse();
    let stationary = |x: f64, _t: f64| Ok(Complex64::new(airy_ai(b * x).unwrap().value, 0.0));
    for i in 0..30 {
        let x = -10.0 + 0.5 * i as f64;
        for t in [0.0, 0.5, 1.3] {
            let got = inv.transform_wavefunction(stationary, x, t).unwrap();
            let want = airy_beam(x, t, b, hbar, m).unwrap();
            assert!((got - want).norm() < 1e-8, "x = {x}, t = {t}");
        }
    }
    let grid = Grid1D::new(-15.0, 5.0, 2048).unwrap();
    let r = residual(
        |x, t| inv.transform_wavefunction(stationary, x, t),
        &Potential1D::Free,
        &grid,
        0.8,
        hbar,
        m,
        DEFAULT_DT_PROBE,
    )
    .unwrap();
    assert!(r.max_abs < 1e-5, "{}", r.max_abs);
}

#[test]
fn senitzky_reproduces_coherent_states() {
    let omega = 1.0;
    let p = senitzky_params(1.0, 0.0, omega, 1.0, 1.0).unwrap();
    let inv = p.inverse();
    let path = ClassicalPath::harmonic(1.0, 0.0, omega, (-50.0, 50.0));
    for n in [0, 2] {
        for i in 0..25 {
            let x = -5.0 + 0.4 * i as f64;
            for t in [0.0, 0.7, 2.9] {
                let got = inv
                    .transform_wavefunction(|x, t| ho_eigenstate(n, x, t, omega, 1.0, 1.0), x, t)
                    .unwrap();
                let want = senitzky_wf(n, x, t, &path, omega, 1.0, 1.0).unwrap();
                assert!((got - want).norm() < 1e-8, "n = {n}, x = {x}, t = {t}");
            }
        }
    }
}

#[test]
fn senitzky_keeps_the_oscillator_form() {
    let omega = 1.3;
    let p = senitzky_params(1.5, 0.4, omega, 1.0, 1.0).unwrap();
    let v = Potential1D::harmonic(omega).unwrap();
    for t in [0.0, 0.5, 2.0] {
        let q = p.beta(t);
        assert!((q.d2 + omega * omega * q.v).abs() < 1e-12);
        for i in 0..20 {
            let x = -4.0 + 0.4 * i as f64;
            let (xp, _) = p.map_coords(x, t).unwrap();
            let vp = p.transform_potential(&v, x, t);
            assert!((vp - v.value(xp, 0.0, 1.0)).abs() < 1e-10);
        }
    }
}

#[test]
fn free_ho_conditions() {
    let (v0, omega) = (0.5, 1.0);
    let p = free_ho_params(v0, 0.2, omega, 1.0, 1.0).unwrap();
    let v = Potential1D::harmonic(omega).unwrap();
    for t in [-1.2, -0.5, 0.0, 0.3, 1.1] {
        let (g, b) = (p.gamma(t), p.beta(t));
        assert!((g.d2 + omega * omega * g.v).abs() < 1e-12);
        assert!((g.v * g.v * b.d1 - v0).abs() < 1e-12);
        for i in 0..20 {
            let x = -4.0 + 0.4 * i as f64;
            assert!(p.transform_potential(&v, x, t).abs() < 1e-10);
        }
    }
}

#[test]
fn free_ho_disperses_eigenstates() {
    let (v0, x0, omega) = (0.5, 0.2, 1.0);
    let p = free_ho_params(v0, x0, omega, 1.0, 1.0).unwrap();
    for n in [0, 1, 3] {
        for i in 0..25 {
            let xp = -6.0 + 0.5 * i as f64;
            for tp in [0.0, 0.5, 2.0] {
                let got = p
                    .transform_wavefunction(|x, t| ho_eigenstate(n, x, t, omega, 1.0, 1.0), xp, tp)
                    .unwrap();
                let want = dispersing_free_state(n, xp, tp, v0, x0, omega, 1.0, 1.0).unwrap();
                assert!((got - want).norm() < 1e-8, "n = {n}, x' = {xp}, t' = {tp}");
            }
        }
    }
}

#[test]
fn inverse_undoes_the_map() {
    let cases = [
        free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0).unwrap(),
        senitzky_params(1.2, 0.3, 1.0, 1.0, 1.0).unwrap(),
        cosine_by_quadrature(0.8),
    ];
    for p in cases {
        let inv = p.inverse();
        let psi = |x, t| ho_eigenstate(1, x, t, 1.0, 1.0, 1.0);
        for i in 0..15 {
            let x = -3.0 + 0.4 * i as f64;
            for t in [-0.6, 0.2, 0.9] {
                let back = p
                    .inverse()
                    .transform_wavefunction(|xp, tp| p.transform_wavefunction(psi, xp, tp), x, t);
                let back = back.unwrap();
                assert!((back - psi(x, t).unwrap()).norm() < 1e-8, "{}: x = {x}, t = {t}", p.label());
                let (xp, tp) = p.map_coords(x, t).unwrap();
                let (xb, tb) = inv.map_coords(xp, tp).unwrap();
                assert!((xb - x).abs() < 1e-10 && (tb - t).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn constant_alpha_shift_is_a_global_phase() {
    let p = free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0).unwrap();
    let q = p.clone().with_alpha_offset(0.7);
    let v = Potential1D::harmonic(1.0).unwrap();
    let psi = |x, t| ho_eigenstate(2, x, t, 1.0, 1.0, 1.0);
    for i in 0..20 {
        let x = -3.0 + 0.3 * i as f64;
        let (ma, pa) = p.transform_wavefunction_polar(psi, x, 0.8).unwrap();
        let (mb, pb) = q.transform_wavefunction_polar(psi, x, 0.8).unwrap();
        assert_eq!(ma.to_bits(), mb.to_bits());
        assert!((pa - pb - 0.7).abs() < 1e-12);
        assert_eq!(
            p.transform_potential(&v, x, 0.5).to_bits(),
            q.transform_potential(&v, x, 0.5).to_bits()
        );
    }
}

proptest! {
    #[test]
    fn map_round_trips(x in -5.0f64..5.0, t in -1.2f64..1.2, v0 in -1.0f64..1.0, x0 in -1.0f64..1.0) {
        let p = free_ho_params(v0, x0, 1.0, 1.0, 1.0).unwrap();
        let (xp, tp) = p.map_coords(x, t).unwrap();
        let (xb, tb) = p.unmap_coords(xp, tp).unwrap();
        prop_assert!((xb - x).abs() < 1e-10 * (1.0 + xp.abs()));
        prop_assert!((tb - t).abs() < 1e-12);
    }

    #[test]
    fn quadrature_clock_is_monotone(t1 in -1.3f64..1.3, t2 in -1.3f64..1.3) {
        let p = cosine_by_quadrature(1.0);
        let (a, b) = (p.t_prime(t1).unwrap(), p.t_prime(t2).unwrap());
        prop_assert!((t1 < t2) == (a < b) || t1 == t2);
    }

    #[test]
    fn transformed_modulus_scales_by_root_gamma(x in -4.0f64..4.0, t in -1.0f64..1.0) {
        let p = free_ho_params(0.3, -0.1, 1.0, 1.0, 1.0).unwrap();
        let psi = |x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0);
        let (xp, tp) = p.map_coords(x, t).unwrap();
        let z = p.transform_wavefunction(psi, xp, tp).unwrap();
        let want = p.gamma(t).v.sqrt() * psi(x, t).unwrap().norm();
        prop_assert!((z.norm() - want).abs() < 1e-10);
    }
}
