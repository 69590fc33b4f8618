use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{PhaseSpaceField, PhaseSpaceGrid};
use super::transform::{check_edges, check_sampling, wigner_transform, RowEngine};
use crate::error::{Error, Result};
use crate::numerics::{Interp, SampledWaveFunction};
use crate::transform::TransformParams;

/// The phase-space extension of a transformation, frozen at time `t`.
#[derive(Debug, Clone)]
pub struct CanonicalMap1D {
    pub params: TransformParams,
    pub t: f64,
}

impl CanonicalMap1D {
    pub fn new(params: TransformParams, t: f64) -> Result<Self> {
        params.t_prime(t)?;
        Ok(Self { params, t })
    }

    /// Coefficients of `x' = x/g + b`, `p' = g p + c - d x`.
    fn coeffs(&self) -> (f64, f64, f64, f64) {
        let m = self.params.mass();
        let (g, b) = (self.params.gamma(self.t), self.params.beta(self.t));
        (g.v, b.v, m * g.v * g.v * b.d1, m * g.d1)
    }

    pub fn forward(&self, x: f64, p: f64) -> (f64, f64) {
        let (g, b, c, d) = self.coeffs();
        (x / g + b, g * p + c - d * x)
    }

    pub fn backward(&self, xp: f64, pp: f64) -> (f64, f64) {
        let (g, b, c, d) = self.coeffs();
        let x = g * (xp - b);
        (x, (pp - c + d * x) / g)
    }

    /// Central-difference Jacobian determinant of [`Self::forward`].
    pub fn jacobian_det(&self, x: f64, p: f64, h: f64) -> f64 {
        let fx = |s: f64| self.forward(s, p);
        let fp = |s: f64| self.forward(x, s);
        let (a, b) = (fx(x + h), fx(x - h));
        let (c, d) = (fp(p + h), fp(p - h));
        let (xx, px) = ((a.0 - b.0) / (2.0 * h), (a.1 - b.1) / (2.0 * h));
        let (xp, pp) = ((c.0 - d.0) / (2.0 * h), (c.1 - d.1) / (2.0 * h));
        xx * pp - xp * px
    }
}

/// `(x', p')` for the point `(x, p)`.
pub fn map_phase_space(cmap: &CanonicalMap1D, x: f64, p: f64) -> (f64, f64) {
    cmap.forward(x, p)
}

#[derive(Debug, Clone, Serialize)]
pub struct WignerLawReport {
    pub max_abs: f64,
    /// Points compared.
    pub compared: usize,
    /// Points skipped because a stencil left the grid.
    pub clipped: usize,
}

/// `max |W'(map(x, p)) - W(x, p)|` over `grid`.
///
/// `psi` solves the unprimed equation. `W'` is computed from samples of the
/// transformed wave function on the image lattice `x'_i = x_i/gamma + beta`
/// and evaluated directly at the image momenta, so no interpolation enters.
#[allow(non_snake_case)]
pub fn check_wolW<F>(psi: F, params: &TransformParams, t: f64, grid: &PhaseSpaceGrid) -> Result<WignerLawReport>
where
    F: Fn(f64, f64) -> Result<Complex64> + Sync,
{
    let cmap = CanonicalMap1D::new(params.clone(), t)?;
    let (hbar, mass) = (params.hbar(), params.mass());
    let xs = grid.x_axis;
    let tp = params.t_prime(t)?;
    let samples: Vec<Complex64> = xs.points().map(|x| psi(x, t)).collect::<Result<_>>()?;
    let wf = SampledWaveFunction::new(xs, samples, t, hbar, mass)?;
    let w = wigner_transform(&wf, &grid.p_axis)?;

    let g = params.gamma(t).v;
    let primed: Vec<Complex64> = xs
        .points()
        .map(|x| {
            let (xp, _) = params.map_coords(x, t)?;
            params.transform_wavefunction(&psi, xp, tp)
        })
        .collect::<Result<_>>()?;
    check_sampling(&primed)?;
    check_edges(&primed);
    let dp = grid.p_axis.spacing();
    let engine = RowEngine::new(&primed, xs.spacing() / g.abs(), g * dp, grid.p_axis.n(), hbar);
    let rows: Vec<Vec<f64>> = (0..xs.n())
        .into_par_iter()
        .map(|i| {
            let (_, p0) = cmap.forward(xs.x(i), grid.p_axis.x_min());
            engine.row(i, p0)
        })
        .collect::<Result<_>>()?;
    let mut max_abs = 0.0f64;
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            max_abs = max_abs.max((v - w.at(i, j)).abs());
        }
    }
    Ok(WignerLawReport {
        max_abs,
        compared: grid.len(),
        clipped: 0,
    })
}

fn compare<F>(field: &PhaseSpaceField, f: F) -> WignerLawReport
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let (mut max_abs, mut compared, mut clipped) = (0.0f64, 0, 0);
    for (ix, x) in field.grid.x_axis.points().enumerate() {
        for (ip, p) in field.grid.p_axis.points().enumerate() {
            match f(x, p) {
                Some(v) => {
                    max_abs = max_abs.max((v - field.at(ix, ip)).abs());
                    compared += 1;
                }
                None => clipped += 1,
            }
        }
    }
    WignerLawReport {
        max_abs,
        compared,
        clipped,
    }
}

/// Compares `W(x, p; t)` with `W'(x + beta, p + m beta')` for a map with
/// `gamma = 1`, interpolating `W'`. Only the overlap is compared.
pub fn rigid_translation_check(
    w_prime: &PhaseSpaceField,
    w: &PhaseSpaceField,
    params: &TransformParams,
    t: f64,
) -> Result<WignerLawReport> {
    let g = params.gamma(t);
    if (g.v - 1.0).abs() > 1e-14 || g.d1.abs() > 1e-14 {
        return Err(Error::Contract(format!("rigid translation needs gamma = 1, got {}", g.v)));
    }
    let b = params.beta(t);
    let (dx, dp) = (b.v, params.mass() * b.d1);
    let interp = Interp::default();
    Ok(compare(w, |x, p| w_prime.sample(x + dx, p + dp, interp)))
}

/// Clockwise rotation of oscillator phase space by `angle`, the flow of
/// `dx/dt = p`, `dp/dt = -x` in units where both are dimensionless.
pub fn oscillator_flow(angle: f64, z: (f64, f64)) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    (c * z.0 + s * z.1, -s * z.0 + c * z.1)
}

/// Physical-to-dimensionless scales of an oscillator.
#[derive(Debug, Clone, Copy)]
pub struct OscillatorScales {
    pub omega: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl OscillatorScales {
    pub fn to_tilde(&self, x: f64, p: f64) -> (f64, f64) {
        (x * (self.mass * self.omega / self.hbar).sqrt(), p / (self.hbar * self.mass * self.omega).sqrt())
    }

    pub fn from_tilde(&self, xt: f64, pt: f64) -> (f64, f64) {
        (xt / (self.mass * self.omega / self.hbar).sqrt(), pt * (self.hbar * self.mass * self.omega).sqrt())
    }
}

/// Largest deviation of `w` from its own rotations about the origin.
pub fn circular_asymmetry(w: &PhaseSpaceField, scales: OscillatorScales) -> f64 {
    let interp = Interp::default();
    let mut worst = 0.0f64;
    for k in 1..8 {
        let angle = k as f64 * std::f64::consts::PI / 8.0;
        let r = compare(w, |x, p| {
            let (xt, pt) = scales.to_tilde(x, p);
            let (a, b) = oscillator_flow(angle, (xt, pt));
            let (x2, p2) = scales.from_tilde(a, b);
            w.sample(x2, p2, interp)
        });
        worst = worst.max(r.max_abs);
    }
    worst
}

/// Checks that rigidly translating a circularly symmetric `w` along the
/// classical orbit from `zeta0` equals rotating the translated field:
/// `w(zeta - R zeta0) = w(R^-1 zeta - zeta0)`, `R` the oscillator flow over
/// `t_tilde`. Both sides are interpolated from `w`.
pub fn turntable_check(
    w: &PhaseSpaceField,
    zeta0: (f64, f64),
    t_tilde: f64,
    scales: OscillatorScales,
) -> Result<WignerLawReport> {
    let asym = circular_asymmetry(w, scales);
    if asym > 1e-6 {
        return Err(Error::Contract(format!(
            "field is not circularly symmetric (deviation {asym:.3e})"
        )));
    }
    let interp = Interp::default();
    let centre = oscillator_flow(t_tilde, zeta0);
    let grid = w.grid;
    let mut report = WignerLawReport {
        max_abs: 0.0,
        compared: 0,
        clipped: 0,
    };
    for x in grid.x_axis.points() {
        for p in grid.p_axis.points() {
            let z = scales.to_tilde(x, p);
            let (a, b) = scales.from_tilde(z.0 - centre.0, z.1 - centre.1);
            let moved = w.sample(a, b, interp);
            let back = oscillator_flow(-t_tilde, z);
            let (c, d) = scales.from_tilde(back.0 - zeta0.0, back.1 - zeta0.1);
            let rotated = w.sample(c, d, interp);
            match (moved, rotated) {
                (Some(u), Some(v)) => {
                    report.max_abs = report.max_abs.max((u - v).abs());
                    report.compared += 1;
                }
                _ => report.clipped += 1,
            }
        }
    }
    Ok(report)
}

/// Compares `w_t(zeta)` with `w_0(R^-1 zeta)`: the Liouville flow of an
/// oscillator rotates phase space rigidly.
pub fn rotation_flow_check(
    w_t: &PhaseSpaceField,
    w_0: &PhaseSpaceField,
    t_tilde: f64,
    scales: OscillatorScales,
) -> WignerLawReport {
    let interp = Interp::default();
    compare(w_t, |x, p| {
        let z = scales.to_tilde(x, p);
        let back = oscillator_flow(-t_tilde, z);
        let (a, b) = scales.from_tilde(back.0, back.1);
        w_0.sample(a, b, interp)
    })
}
