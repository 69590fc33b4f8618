use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use formpreserve::fields3d::*;
use formpreserve::transform::{free_ho_params, Jet, TransformParams};
use formpreserve::wavefields::Potential1D;
use formpreserve::Error;

fn rot_z(w: f64) -> RotFn {
    Arc::new(move |t| axis_rotation(Vec3::z(), w * t))
}

fn frame(gamma: Jet, beta: Jet3, r: RotFn) -> Frame3D {
    Frame3D::new(Arc::new(move |_| gamma), Arc::new(move |_| beta), r, 1.0, 1.0, (-10.0, 10.0)).unwrap()
}

fn spinning(w: f64, m: f64) -> Frame3D {
    Frame3D::new(
        Arc::new(|_| Jet::constant(1.0)),
        Arc::new(|_| Jet3::zero()),
        rot_z(w),
        1.0,
        m,
        (-10.0, 10.0),
    )
    .unwrap()
}

fn general_frame() -> Frame3D {
    let spec = FrameSpec::from_json(
        r#"{
            "gamma": {"kind": "sine", "amplitude": 0.2, "omega": 0.7},
            "beta": [{"poly": [0, 0, 0.3]}, {"trig": [{"amplitude": 0.1, "omega": 1.0}]}, {}],
            "rotations": [{"axis": [0, 0, 1], "rate": 0.5}, {"axis": [1, 0, 0], "rate": 0.3}],
            "window": [-2, 2]
        }"#,
    )
    .unwrap();
    spec.build()
        .unwrap()
        .with_alpha(ScalarField::new(|x, t| 0.05 * x[0] * x[1] * t + 0.02 * x[2] * x[2]))
}

/// Spreading Gaussian solving the free equation with hbar = m = 1.
fn gaussian(x: Vec3, t: f64) -> Complex64 {
    let s2 = 0.8f64;
    let z = Complex64::new(1.0, t / (2.0 * s2));
    let norm = (2.0 * std::f64::consts::PI * s2).powf(-0.75);
    norm * z.powf(-1.5) * (-x.norm_squared() / (4.0 * s2 * z)).exp()
}

fn close3(a: Vec3, b: Vec3, tol: f64) -> bool {
    (a - b).amax() < tol
}

#[test]
fn identity_frame_maps_trivially() {
    let f = Frame3D::identity(1.0, 1.0).unwrap();
    let x = Vec3::new(0.3, -1.2, 2.0);
    let (xp, tp) = map_coords_3d(&f, x, 0.7).unwrap();
    assert_eq!(xp, x);
    assert!((tp - 0.7).abs() < 1e-14);
    let psi = transform_wavefunction_3d(&f, gaussian, 3, x, 0.7).unwrap();
    assert!((psi - gaussian(x, 0.7)).norm() < 1e-14);
}

#[test]
fn rotation_is_an_isometry() {
    let f = spinning(0.9, 1.0);
    for t in [-1.0, 0.3, 2.5] {
        let x = Vec3::new(0.4, -0.7, 1.1);
        let (xp, _) = map_coords_3d(&f, x, t).unwrap();
        assert!((xp.norm() - x.norm()).abs() < 1e-14);
        assert!(close3(f.unmap_point(xp, t), x, 1e-14));
    }
}

#[test]
fn cosine_gamma_reduces_to_one_dimensional_map() {
    let omega = 0.8;
    let params = free_ho_params(0.0, 0.0, omega, 1.0, 1.0).unwrap();
    let f = Frame3D::new(
        Arc::new(move |t| {
            let (s, c) = (omega * t).sin_cos();
            Jet::new(c, -omega * s, -omega * omega * c)
        }),
        Arc::new(|_| Jet3::zero()),
        Arc::new(|_| Mat3::identity()),
        1.0,
        1.0,
        params.window(),
    )
    .unwrap();
    for t in [-1.2, 0.4, 1.5] {
        let x = Vec3::new(0.5, -1.5, 2.5);
        let (xp, tp) = map_coords_3d(&f, x, t).unwrap();
        for k in 0..3 {
            let (a, b) = params.map_coords(x[k], t).unwrap();
            assert!((xp[k] - a).abs() < 1e-13);
            assert!((tp - b).abs() < 1e-10);
        }
    }
}

#[test]
fn angular_velocity_examples() {
    let w = extract_angular_velocity(&rot_z(1.7), None, 0.4).unwrap();
    assert_eq!(w.frame, AngularFrame::Body);
    assert!(close3(w.omega, Vec3::new(0.0, 0.0, 1.7), 1e-10));
    let fixed: RotFn = Arc::new(|_| axis_rotation(Vec3::new(1.0, 2.0, 3.0), 0.6));
    assert!(extract_angular_velocity(&fixed, None, 1.0).unwrap().omega.norm() < 1e-12);
    let (a, b) = (0.5, 1.3);
    let composed: RotFn = Arc::new(move |t| axis_rotation(Vec3::z(), a * t) * axis_rotation(Vec3::x(), b * t));
    let w = extract_angular_velocity(&composed, None, 0.0).unwrap();
    assert!(close3(w.omega, Vec3::new(b, 0.0, a), 1e-10));
}

#[test]
fn angular_velocity_satisfies_defining_relation() {
    let f = general_frame();
    for t in [-1.5, 0.0, 0.9] {
        let w = f.angular_velocity(t).unwrap();
        let r = f.rotation(t);
        let h = 1e-4;
        let rd = (f.rotation(t + h) - f.rotation(t - h)) / (2.0 * h);
        for k in 0..3 {
            let u = Vec3::ith(k, 1.0);
            assert!(close3(rd * u, r * w.omega.cross(&u), 1e-7));
        }
        let space = w.to_space(&r);
        assert!(close3(space.to_body(&r).omega, w.omega, 1e-14));
    }
}

#[test]
fn rejects_improper_or_singular_frames() {
    let reflect: RotFn = Arc::new(|_| Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0)));
    assert!(matches!(extract_angular_velocity(&reflect, None, 0.0), Err(Error::Contract(_))));
    let sheared: RotFn = Arc::new(|t| Mat3::new(1.0, t, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0));
    assert!(Frame3D::new(
        Arc::new(|_| Jet::constant(1.0)),
        Arc::new(|_| Jet3::zero()),
        sheared,
        1.0,
        1.0,
        (-1.0, 1.0)
    )
    .is_err());
    assert!(matches!(
        Frame3D::new(
            Arc::new(|t| Jet::new(t, 1.0, 0.0)),
            Arc::new(|_| Jet3::zero()),
            rot_z(0.0),
            1.0,
            1.0,
            (-1.0, 1.0)
        ),
        Err(Error::SingularMap(_))
    ));
    let bad_rate = spinning(1.0, 1.0).with_rotation_rate(Arc::new(|_| Mat3::zeros()));
    assert!(bad_rate.is_err());
}

#[test]
fn one_dimensional_cross_check() {
    let (v0, x0, omega) = (0.4, -0.3, 1.1);
    let params: TransformParams = free_ho_params(v0, x0, omega, 1.0, 1.0).unwrap();
    let p2 = params.clone();
    let p3 = params.clone();
    let f = Frame3D::new(
        Arc::new(move |t| params.gamma(t)),
        Arc::new(move |t| {
            let b = p2.beta(t);
            Jet3 {
                v: Vec3::new(b.v, 0.0, 0.0),
                d1: Vec3::new(b.d1, 0.0, 0.0),
                d2: Vec3::new(b.d2, 0.0, 0.0),
            }
        }),
        Arc::new(|_| Mat3::identity()),
        1.0,
        1.0,
        p3.window(),
    )
    .unwrap();
    let pa = p3.clone();
    let f = f.with_alpha(ScalarField::new(move |_, t| pa.alpha(t).v).with_dt(move |_, _| 0.0));
    let psi1 = |x: f64, t: f64| -> formpreserve::Result<Complex64> { Ok(gaussian(Vec3::new(x, 0.0, 0.0), t)) };
    for (x, t) in [(0.3, 0.2), (-1.1, -0.6), (0.9, 1.0)] {
        let (xp, tp) = p3.map_coords(x, t).unwrap();
        let one = p3.transform_wavefunction(psi1, xp, tp).unwrap();
        let three = transform_wavefunction_3d(&f, gaussian, 1, Vec3::new(xp, 0.0, 0.0), tp).unwrap();
        assert!((one - three).norm() < 1e-12, "{one} vs {three}");
    }
}

#[test]
fn transformed_density_stays_normalized() {
    let f = general_frame();
    let t = 0.8;
    let (n, half) = (48usize, 7.0);
    let h = 2.0 * half / (n - 1) as f64;
    let centre = f.map_point(Vec3::zeros(), t);
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let xp = centre + Vec3::new(i as f64, j as f64, k as f64) * h - Vec3::repeat(half);
                let x = f.unmap_point(xp, t);
                total += (f.wave_factor(3, x, t).unwrap() * gaussian(x, t)).norm_sqr();
            }
        }
    }
    assert!((total * h.powi(3) - 1.0).abs() < 1e-6, "{}", total * h.powi(3));
}

#[test]
fn vector_potential_examples() {
    let f = Frame3D::identity(1.0, 1.0).unwrap();
    let a = VectorField3::uniform_b(Vec3::new(0.2, -0.4, 1.0));
    let x = Vec3::new(0.3, 0.5, -0.8);
    assert!(close3(transform_vector_potential(&f, &a, x, 0.1).unwrap(), a.eval(x, 0.1), 1e-15));

    let (w, m) = (0.7, 1.5);
    let f = spinning(w, m);
    let zero = VectorField3::zero();
    for t in [0.0, 1.3] {
        let xp = f.map_point(x, t);
        let ap = transform_vector_potential(&f, &zero, x, t).unwrap();
        assert!(close3(ap, -m * Vec3::new(0.0, 0.0, w).cross(&xp), 1e-12));
        let curl = primed_vector_potential(&f, &zero, t).curl(xp, t);
        assert!(close3(curl, Vec3::new(0.0, 0.0, -2.0 * m * w), 1e-9));
    }
}

#[test]
fn gauge_shift_of_alpha_moves_vector_potential_by_gradient() {
    let base = general_frame();
    let lambda = |x: Vec3| 0.3 * x[0] * x[0] - 0.2 * x[1] * x[2] + 0.1 * x[2];
    let shifted = base.clone().with_alpha(ScalarField::new(move |x, t| {
        0.05 * x[0] * x[1] * t + 0.02 * x[2] * x[2] + lambda(x)
    }));
    let a = VectorField3::uniform_b(Vec3::new(0.0, 0.3, 0.6));
    let t = 0.6;
    for x in [Vec3::new(0.2, -0.4, 0.9), Vec3::new(-1.0, 0.5, 0.1)] {
        let d = transform_vector_potential(&shifted, &a, x, t).unwrap() - transform_vector_potential(&base, &a, x, t).unwrap();
        // gradient of lambda in primed coordinates
        let lp = ScalarField::new({
            let f = base.clone();
            move |xp, _| lambda(f.unmap_point(xp, t))
        });
        let grad_p = lp.grad(base.map_point(x, t), t);
        assert!(close3(d, -grad_p, 1e-9));
    }
}

#[test]
fn magnetic_field_matches_numerical_curl() {
    let b0 = Vec3::new(0.0, 0.0, 0.8);
    let a = VectorField3::uniform_b(b0);
    let uniform = VectorField3::new(move |_, _| b0);
    let x = Vec3::new(0.4, -0.3, 0.7);

    let id = Frame3D::identity(1.0, 1.0).unwrap();
    assert!(close3(transform_magnetic_field(&id, &uniform, x, 0.0).unwrap(), b0, 1e-15));

    let spin = spinning(0.6, 2.0);
    let none = VectorField3::zero();
    assert!(close3(
        transform_magnetic_field(&spin, &none, x, 0.3).unwrap(),
        Vec3::new(0.0, 0.0, -2.0 * 2.0 * 0.6),
        1e-10
    ));

    let scaled = frame(Jet::constant(2.0), Jet3::zero(), Arc::new(|_| Mat3::identity()));
    assert!(close3(transform_magnetic_field(&scaled, &uniform, x, 0.0).unwrap(), 4.0 * b0, 1e-15));

    let general = general_frame();
    let b = VectorField3::new(move |x: Vec3, _| b0 + 0.0 * x);
    for (f, t) in [(&scaled, 0.0), (&spin, 0.3), (&general, 0.7), (&general, -1.1)] {
        let closed = transform_magnetic_field(f, &b, x, t).unwrap();
        let curl = primed_vector_potential(f, &a, t).curl(f.map_point(x, t), t);
        assert!(close3(closed, curl, 1e-6), "{closed:?} vs {curl:?}");
    }
}

#[test]
fn scalar_potential_examples() {
    let (w, m) = (0.9, 1.3);
    let id = Frame3D::identity(1.0, m).unwrap();
    let v = ScalarField::new(move |x, _| 0.5 * m * w * w * x.norm_squared());
    let zero = VectorField3::zero();
    let x = Vec3::new(0.3, -0.6, 1.2);
    assert!((transform_scalar_potential(&id, &v, &zero, x, 0.5).unwrap() - v.value(x, 0.5)).abs() < 1e-14);

    let spin = spinning(0.7, m);
    let none = ScalarField::zero();
    let expected = -0.5 * m * Vec3::new(0.0, 0.0, 0.7).cross(&x).norm_squared();
    assert!((transform_scalar_potential(&spin, &none, &zero, x, 1.1).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn scalar_potential_reduces_to_one_dimensional_law() {
    let (omega, m) = (1.2, 0.9);
    let params = free_ho_params(0.5, 0.2, omega, 1.0, m).unwrap();
    let (pg, pb, pa) = (params.clone(), params.clone(), params.clone());
    let f = Frame3D::new(
        Arc::new(move |t| pg.gamma(t)),
        Arc::new(move |t| {
            let b = pb.beta(t);
            Jet3 {
                v: Vec3::new(b.v, 0.0, 0.0),
                d1: Vec3::new(b.d1, 0.0, 0.0),
                d2: Vec3::new(b.d2, 0.0, 0.0),
            }
        }),
        Arc::new(|_| Mat3::identity()),
        1.0,
        m,
        params.window(),
    )
    .unwrap()
    .with_alpha(ScalarField::new(move |_, t| pa.alpha(t).v));
    let v = ScalarField::new(move |x, _| 0.5 * m * omega * omega * x.norm_squared());
    let v1 = Potential1D::Harmonic { omega };
    for (x, t) in [(0.4, 0.3), (-1.2, -0.8), (2.0, 1.0)] {
        let three = transform_scalar_potential(&f, &v, &VectorField3::zero(), Vec3::new(x, 0.0, 0.0), t).unwrap();
        let one = params.transform_potential(&v1, x, t);
        assert!((three - one).abs() < 1e-8 * (1.0 + one.abs()), "{three} vs {one}");
    }
}

#[test]
fn u1_gauge_invariance() {
    let (hbar, m) = (1.0, 1.0);
    let v = ScalarField::new(|x, _| 0.3 * x.norm_squared());
    let a = VectorField3::uniform_b(Vec3::new(0.0, 0.0, 0.5));
    let events = sample_events(60, 2.0, (0.0, 1.0), 7);
    // not a solution, so the residual itself is non-trivial
    let psi = gaussian;
    let constant = ScalarField::new(|_, _| 1.3);
    assert!(check_u1_invariance(&v, &a, psi, &constant, &events, hbar, m).max_abs < 1e-12);
    let boost = ScalarField::new(|x, _| 0.8 * x[0]);
    assert!(check_u1_invariance(&v, &a, psi, &boost, &events, hbar, m).max_abs < 1e-6);
    let quad = ScalarField::new(|x, t| 0.2 * x[0] * x[1] * t + 0.1 * x[2] * x[2] - 0.3 * t * t);
    assert!(check_u1_invariance(&v, &a, psi, &quad, &events, hbar, m).max_abs < 1e-6);
    let r = u1_residual(&psi, &a, &v, hbar, m, Vec3::new(0.2, 0.1, 0.0), 0.4);
    assert!(r.norm() > 1e-3);
}

#[test]
fn combined_potential_is_a_gauge_transform() {
    let zero_v = ScalarField::zero();
    let id = Frame3D::identity(1.0, 1.0).unwrap();
    let a = VectorField3::uniform_b(Vec3::new(0.0, 0.0, 0.9));
    let events = sample_events(50, 2.0, (-1.0, 1.0), 3);
    assert!(combined_potential_gauge_check(&id, &zero_v, &a, &events).unwrap().max_abs < 1e-12);

    let (w, amp) = (1.3, 0.7);
    let senitzky = Frame3D::new(
        Arc::new(|_| Jet::constant(1.0)),
        Arc::new(move |t| {
            let (s, c) = (w * t).sin_cos();
            Jet3 {
                v: Vec3::new(-amp * c, 0.0, 0.0),
                d1: Vec3::new(amp * w * s, 0.0, 0.0),
                d2: Vec3::new(amp * w * w * c, 0.0, 0.0),
            }
        }),
        Arc::new(|_| Mat3::identity()),
        1.0,
        1.0,
        (-5.0, 5.0),
    )
    .unwrap();
    let v = ScalarField::new(move |x, _| 0.5 * w * w * x.norm_squared());
    let r = combined_potential_gauge_check(&senitzky, &v, &VectorField3::zero(), &events).unwrap();
    assert!(r.max_abs < 1e-10, "{}", r.max_abs);

    let r = combined_potential_gauge_check(&spinning(0.8, 1.0), &v, &a, &events).unwrap();
    assert!(r.max_abs < 1e-8, "{}", r.max_abs);
    let r = combined_potential_gauge_check(&general_frame(), &v, &a, &events).unwrap();
    assert!(r.max_abs < 1e-8, "{}", r.max_abs);
}

#[test]
fn divergence_bookkeeping() {
    let a = VectorField3::new(|x, t| Vec3::new(x[0] * x[1], t * x[2], x[0] - x[2] * x[2]));
    let events = sample_events(40, 1.5, (-1.0, 1.0), 11);
    let r = divergence_identity_check(&general_frame(), &a, &events);
    assert!(r.max_abs < 1e-5, "{}", r.max_abs);
}

#[test]
fn free_gaussian_stays_a_solution_in_a_rotating_frame() {
    let f = general_frame();
    let events = sample_events(DEFAULT_SAMPLES, 1.5, (-0.5, 1.0), 2024);
    let r = form_preservation_residual(&f, gaussian, &ScalarField::zero(), &VectorField3::zero(), &events).unwrap();
    assert_eq!(r.points, DEFAULT_SAMPLES);
    assert!(r.max_abs < 1e-4, "{}", r.max_abs);
}

#[test]
fn wrong_vector_potential_breaks_form_preservation() {
    // dropping the rotation term must leave a visible residual
    let f = spinning(0.8, 1.0);
    let events = sample_events(20, 1.5, (0.0, 1.0), 5);
    let good = form_preservation_residual(&f, gaussian, &ScalarField::zero(), &VectorField3::zero(), &events).unwrap();
    assert!(good.max_abs < 1e-4);
    let still = Frame3D::identity(1.0, 1.0).unwrap();
    let a = VectorField3::new(|x, _| -0.8 * Vec3::z().cross(&x));
    let bad = form_preservation_residual(&still, gaussian, &ScalarField::zero(), &a, &events).unwrap();
    assert!(bad.max_abs > 1e-3);
}

#[test]
fn frame_spec_parsing() {
    assert!(FrameSpec::from_json(r#"{"gamma": {"kind": "constant", "value": 1}, "window": [0, 1], "bogus": 1}"#).is_err());
    assert!(FrameSpec::from_json(r#"{"gamma": {"kind": "wobble"}, "window": [0, 1]}"#).is_err());
    let spec = FrameSpec::from_json(r#"{"gamma": {"kind": "cosine", "omega": 1}, "window": [-1, 1]}"#).unwrap();
    let f = spec.build().unwrap();
    assert!((f.gamma(0.5).v - 0.5f64.cos()).abs() < 1e-15);
    let bad_axis = FrameSpec::from_json(
        r#"{"gamma": {"kind": "constant", "value": 1}, "rotations": [{"axis": [0,0,0], "rate": 1}], "window": [0, 1]}"#,
    )
    .unwrap();
    assert!(matches!(bad_axis.build(), Err(Error::Config(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_generator_is_skew(t in -1.9f64..1.9) {
        let f = general_frame();
        let r = f.rotation(t);
        let h = 1e-4;
        let s = r.transpose() * (f.rotation(t + h) - f.rotation(t - h)) / (2.0 * h);
        prop_assert!((s + s.transpose()).amax() < 1e-8);
        let w = f.angular_velocity(t).unwrap();
        prop_assert!((w.omega - Vec3::new(s[(2, 1)], s[(0, 2)], s[(1, 0)])).amax() < 1e-7);
    }

    #[test]
    fn map_round_trip(x0 in -3.0f64..3.0, x1 in -3.0f64..3.0, x2 in -3.0f64..3.0, t in -1.9f64..1.9) {
        let f = general_frame();
        let x = Vec3::new(x0, x1, x2);
        prop_assert!((f.unmap_point(f.map_point(x, t), t) - x).amax() < 1e-12);
    }
}
