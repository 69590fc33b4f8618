use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use super::field::{d1, d2, unit, ScalarField, Vec3, VectorField3};
use super::frame::{
    basis, primed_vector_potential, transform_scalar_potential, transform_vector_potential,
    transform_wavefunction_3d, Frame3D,
};
use crate::error::{Error, Result};

/// Stencil step of [`u1_residual`]; coarse enough that rounding stays far
/// below the truncation error of smooth fields.
pub const RESIDUAL_STEP: f64 = 2e-2;

/// Default number of sample events.
pub const DEFAULT_SAMPLES: usize = 200;

/// A space-time point.
pub type Event = (Vec3, f64);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleReport {
    pub max_abs: f64,
    pub points: usize,
}

/// `n` events: the origin and points on the coordinate axes, then uniform
/// random points in the cube `[-half_width, half_width]^3` at times in `times`.
pub fn sample_events(n: usize, half_width: f64, times: (f64, f64), seed: u64) -> Vec<Event> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let tm = 0.5 * (times.0 + times.1);
    out.push((Vec3::zeros(), tm));
    for e in basis() {
        for s in [-0.5, 0.5] {
            out.push((e * s * half_width, tm));
        }
    }
    while out.len() < n {
        let x = Vec3::from_fn(|_, _| rng.random_range(-half_width..=half_width));
        let t = if times.0 < times.1 { rng.random_range(times.0..=times.1) } else { times.0 };
        out.push((x, t));
    }
    out.truncate(n);
    out
}

/// `i hbar psi_t - [(-i hbar grad - A)^2 / 2m + V] psi` by finite differences.
pub fn u1_residual<F>(psi: &F, a: &VectorField3, v: &ScalarField, hbar: f64, mass: f64, x: Vec3, t: f64) -> Complex64
where
    F: Fn(Vec3, f64) -> Complex64 + ?Sized,
{
    let i = Complex64::i();
    let h = RESIDUAL_STEP;
    let p0 = psi(x, t);
    let mut lap = Complex64::default();
    let mut grad = [Complex64::default(); 3];
    for k in 0..3 {
        let e = unit(k);
        grad[k] = d1(|s| psi(x + e * s, t), 0.0, h);
        lap += d2(|s| psi(x + e * s, t), 0.0, h);
    }
    let av = a.eval(x, t);
    let a_grad: Complex64 = (0..3).map(|k| grad[k] * av[k]).sum();
    let kinetic = -hbar * hbar * lap + i * hbar * a.divergence(x, t) * p0 + 2.0 * i * hbar * a_grad + av.norm_squared() * p0;
    let psi_t: Complex64 = d1(|s| psi(x, s), t, h);
    i * hbar * psi_t - (kinetic / (2.0 * mass) + v.value(x, t) * p0)
}

/// Applies `A -> A + grad L`, `V -> V - L_t`, `psi -> psi e^{i L/hbar}` and
/// reports `max |R_after - e^{i L/hbar} R_before|` over `events`.
pub fn check_u1_invariance<F>(
    v: &ScalarField,
    a: &VectorField3,
    psi: F,
    lambda: &ScalarField,
    events: &[Event],
    hbar: f64,
    mass: f64,
) -> SampleReport
where
    F: Fn(Vec3, f64) -> Complex64 + Sync,
{
    let (a2, v2) = {
        let (a, l) = (a.clone(), lambda.clone());
        let a2 = VectorField3::new(move |x, t| a.eval(x, t) + l.grad(x, t));
        let (v, l) = (v.clone(), lambda.clone());
        let v2 = ScalarField::new(move |x, t| v.value(x, t) - l.dt(x, t));
        (a2, v2)
    };
    let psi2 = |x: Vec3, t: f64| psi(x, t) * Complex64::from_polar(1.0, lambda.value(x, t) / hbar);
    let max_abs = events
        .par_iter()
        .map(|&(x, t)| {
            let before = u1_residual(&psi, a, v, hbar, mass, x, t);
            let after = u1_residual(&psi2, &a2, &v2, hbar, mass, x, t);
            (after - before * Complex64::from_polar(1.0, lambda.value(x, t) / hbar)).norm()
        })
        .reduce(|| 0.0, f64::max);
    SampleReport {
        max_abs,
        points: events.len(),
    }
}

/// `max |(V' + A'^2/2m)/gamma^2 - [V + phi_t + (A - grad phi)^2/2m]|` with
/// `phi = (m/2)((gamma'/gamma) x^2 - 2 gamma beta'.x) + alpha`.
pub fn combined_potential_gauge_check(
    frame: &Frame3D,
    v: &ScalarField,
    a: &VectorField3,
    events: &[Event],
) -> Result<SampleReport> {
    let m = frame.mass();
    let phi = {
        let f = frame.clone();
        ScalarField::new(move |x, t| {
            let (g, b) = (f.gamma(t), f.beta(t));
            0.5 * m * ((g.d1 / g.v) * x.norm_squared() - 2.0 * g.v * b.d1.dot(&x)) + f.alpha().value(x, t)
        })
    };
    let errs: Vec<f64> = events
        .par_iter()
        .map(|&(x, t)| -> Result<f64> {
            let g = frame.gamma(t).v;
            let vp = transform_scalar_potential(frame, v, a, x, t)?;
            let ap = transform_vector_potential(frame, a, x, t)?;
            let lhs = (vp + ap.norm_squared() / (2.0 * m)) / (g * g);
            let rhs = v.value(x, t) + phi.dt(x, t) + (a.eval(x, t) - phi.grad(x, t)).norm_squared() / (2.0 * m);
            Ok((lhs - rhs).abs())
        })
        .collect::<Result<_>>()?;
    Ok(SampleReport {
        max_abs: errs.into_iter().fold(0.0, f64::max),
        points: events.len(),
    })
}

/// `max |div' A' / gamma^2 - (div A - lap alpha)|`.
pub fn divergence_identity_check(frame: &Frame3D, a: &VectorField3, events: &[Event]) -> SampleReport {
    let max_abs = events
        .par_iter()
        .map(|&(x, t)| {
            let g = frame.gamma(t).v;
            let ap = primed_vector_potential(frame, a, t);
            let lhs = ap.divergence(frame.map_point(x, t), t) / (g * g);
            (lhs - (a.divergence(x, t) - frame.alpha().laplacian(x, t))).abs()
        })
        .reduce(|| 0.0, f64::max);
    SampleReport {
        max_abs,
        points: events.len(),
    }
}

/// Residual of the primed U(1) equation for the transform of `psi`, a
/// solution with fields `(a, v)`, at the images of `events`.
pub fn form_preservation_residual<F>(
    frame: &Frame3D,
    psi: F,
    v: &ScalarField,
    a: &VectorField3,
    events: &[Event],
) -> Result<SampleReport>
where
    F: Fn(Vec3, f64) -> Complex64 + Send + Sync + Clone + 'static,
{
    let psi_p = {
        let (f, psi) = (frame.clone(), psi.clone());
        move |xp: Vec3, tp: f64| transform_wavefunction_3d(&f, &psi, 3, xp, tp).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    };
    let a_p = {
        let (f, a) = (frame.clone(), a.clone());
        VectorField3::new(move |xp, tp| {
            f.time_inverse(tp)
                .and_then(|t| transform_vector_potential(&f, &a, f.unmap_point(xp, t), t))
                .unwrap_or_else(|_| Vec3::repeat(f64::NAN))
        })
    };
    let v_p = {
        let (f, v, a) = (frame.clone(), v.clone(), a.clone());
        ScalarField::new(move |xp, tp| {
            f.time_inverse(tp)
                .and_then(|t| transform_scalar_potential(&f, &v, &a, f.unmap_point(xp, t), t))
                .unwrap_or(f64::NAN)
        })
    };
    let res: Vec<f64> = events
        .par_iter()
        .map(|&(x, t)| -> Result<f64> {
            let (xp, tp) = (frame.map_point(x, t), frame.t_prime(t)?);
            let r = u1_residual(&psi_p, &a_p, &v_p, frame.hbar(), frame.mass(), xp, tp);
            if !r.is_finite() {
                return Err(Error::Range(format!("residual not finite at x = {x:?}, t = {t}")));
            }
            Ok(r.norm())
        })
        .collect::<Result<_>>()?;
    Ok(SampleReport {
        max_abs: res.into_iter().fold(0.0, f64::max),
        points: events.len(),
    })
}
