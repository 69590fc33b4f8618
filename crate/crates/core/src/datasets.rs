//! Scenario builders behind the `generate` and `transform` commands: wave
//! samples, Wigner fields and the level-curve families of the three
//! phase-space pictures.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{airy_ai, Grid1D, SampledWaveFunction};
use crate::transform::{berry_balazs_params, free_ho_params, identity_params, senitzky_params, TransformParams};
use crate::wavefields::{airy_beam, dispersing_free_state, ho_eigenstate, ClassicalPath, Potential1D, SenitzkyState};
use crate::wigner::{
    clip_to_box, conic_error, extract_level_curves, fit_circle, fit_conic, hausdorff, ho_wigner, wigner_transform,
    CircleFit, LevelCurve, OscillatorScales, PhaseSpaceField, PhaseSpaceGrid,
};

/// One wave-function sample, with the potential when it is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveRow {
    pub x: f64,
    pub t: f64,
    pub psi: Complex64,
    pub v: Option<f64>,
}

/// `psi` on `grid` at each of `times`, time-major.
pub fn wave_table<F>(grid: &Grid1D, times: &[f64], psi: F) -> Result<Vec<WaveRow>>
where
    F: Fn(f64, f64) -> Result<Complex64> + Sync,
{
    let mut rows = Vec::with_capacity(grid.n() * times.len());
    for &t in times {
        let block: Vec<WaveRow> = (0..grid.n())
            .into_par_iter()
            .map(|i| {
                let x = grid.x(i);
                Ok(WaveRow { x, t, psi: psi(x, t)?, v: None })
            })
            .collect::<Result<_>>()?;
        rows.extend(block);
    }
    Ok(rows)
}

/// Input states accepted by [`transform_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPreset {
    /// Identity on the oscillator eigenstate.
    Identity,
    /// Still Airy eigenstate of the linear potential to the free beam.
    BerryBalazs,
    /// Oscillator eigenstate to the coherently displaced state.
    Senitzky,
    /// Oscillator eigenstate to the freely dispersing state.
    FreeHo,
}

impl TransformPreset {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "identity" => Self::Identity,
            "berry_balazs" => Self::BerryBalazs,
            "senitzky" => Self::Senitzky,
            "free_ho" => Self::FreeHo,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::BerryBalazs => "berry_balazs",
            Self::Senitzky => "senitzky",
            Self::FreeHo => "free_ho",
        }
    }
}

/// Physical inputs of [`transform_table`]; unused fields are ignored by a preset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformInputs {
    pub n: usize,
    pub omega: f64,
    pub b: f64,
    pub a: f64,
    pub phi0: f64,
    pub v0: f64,
    pub x0: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl Default for TransformInputs {
    fn default() -> Self {
        Self {
            n: 0,
            omega: 1.0,
            b: 1.0,
            a: 1.5,
            phi0: 0.0,
            v0: 0.0,
            x0: 0.0,
            hbar: 1.0,
            mass: 1.0,
        }
    }
}

/// The map applied by `preset` and the potential of its input state.
pub fn transform_setup(preset: TransformPreset, inp: &TransformInputs) -> Result<(TransformParams, Potential1D)> {
    let (h, m) = (inp.hbar, inp.mass);
    Ok(match preset {
        TransformPreset::Identity => (identity_params(h, m)?, Potential1D::harmonic(inp.omega)?),
        TransformPreset::BerryBalazs => (
            berry_balazs_params(inp.b, h, m)?.inverse(),
            Potential1D::Linear {
                slope: inp.b.powi(3) / (2.0 * m),
            },
        ),
        TransformPreset::Senitzky => (
            senitzky_params(inp.a, inp.phi0, inp.omega, h, m)?.inverse(),
            Potential1D::harmonic(inp.omega)?,
        ),
        TransformPreset::FreeHo => (
            free_ho_params(inp.v0, inp.x0, inp.omega, h, m)?,
            Potential1D::harmonic(inp.omega)?,
        ),
    })
}

/// Samples `(x', t', psi', V')` of the transformed input state on the primed
/// grid at the primed times.
pub fn transform_table(
    preset: TransformPreset,
    inp: &TransformInputs,
    grid: &Grid1D,
    times: &[f64],
) -> Result<Vec<WaveRow>> {
    let (params, v) = transform_setup(preset, inp)?;
    let (n, omega, b, h, m) = (inp.n, inp.omega, inp.b, inp.hbar, inp.mass);
    let input = move |x: f64, t: f64| -> Result<Complex64> {
        match preset {
            TransformPreset::BerryBalazs => Ok(Complex64::new(airy_ai(b * x)?.value, 0.0)),
            _ => ho_eigenstate(n, x, t, omega, h, m),
        }
    };
    let mut rows = Vec::with_capacity(grid.n() * times.len());
    for &tp in times {
        let t = params.time_inverse(tp)?;
        let block: Vec<WaveRow> = (0..grid.n())
            .into_par_iter()
            .map(|i| {
                let xp = grid.x(i);
                let x = params.gamma(t).v * (xp - params.beta(t).v);
                Ok(WaveRow {
                    x: xp,
                    t: tp,
                    psi: params.transform_wavefunction(input, xp, tp)?,
                    v: Some(params.transform_potential(&v, x, t)),
                })
            })
            .collect::<Result<_>>()?;
        rows.extend(block);
    }
    Ok(rows)
}

/// Wigner function of `psi(., t)` sampled on `grid`.
pub fn wigner_of<F>(grid: &PhaseSpaceGrid, t: f64, hbar: f64, mass: f64, psi: F) -> Result<PhaseSpaceField>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let values: Vec<Complex64> = grid.x_axis.points().map(&psi).collect::<Result<_>>()?;
    let wf = SampledWaveFunction::new(grid.x_axis, values, t, hbar, mass)?;
    wigner_transform(&wf, &grid.p_axis)
}

/// A level curve picked out at one time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSlice {
    pub t: f64,
    pub level: f64,
    pub curve: LevelCurve,
}

fn pick<K: Fn(&LevelCurve) -> f64>(curves: Vec<LevelCurve>, key: K, t: f64) -> Result<LevelCurve> {
    curves
        .into_iter()
        .filter(|c| c.points.len() >= 8)
        .map(|c| (key(&c), c))
        .filter(|(k, _)| k.is_finite())
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c)
        .ok_or_else(|| Error::Range(format!("no usable level curve at t = {t}")))
}

fn airy_taper(x: f64) -> f64 {
    0.5 * (1.0 + ((x + 10.0) / 1.5).tanh())
}

/// Accelerating Airy beam with a smooth left taper that travels with it.
/// Its Wigner function translates rigidly, so its level sets are a family of
/// nested parabolas displaced along the classical orbit.
#[derive(Debug, Clone)]
pub struct AiryScene {
    pub b: f64,
    pub hbar: f64,
    pub mass: f64,
    pub grid: PhaseSpaceGrid,
    /// Level as a fraction of the peak of the Wigner function.
    pub level_fraction: f64,
}

impl AiryScene {
    /// `2n` points on `x in [-24, 12]` and `n/2` on `p in [-5, 5]`.
    pub fn new(b: f64, hbar: f64, mass: f64, n: usize) -> Result<Self> {
        let grid = PhaseSpaceGrid::new(Grid1D::new(-24.0, 12.0, 2 * n)?, Grid1D::symmetric(5.0, n / 2)?);
        Ok(Self {
            b,
            hbar,
            mass,
            grid,
            level_fraction: 0.5,
        })
    }

    pub fn params(&self) -> Result<TransformParams> {
        berry_balazs_params(self.b, self.hbar, self.mass)
    }

    pub fn wigner(&self, t: f64) -> Result<PhaseSpaceField> {
        let beta = self.params()?.beta(t).v;
        let (b, h, m) = (self.b, self.hbar, self.mass);
        wigner_of(&self.grid, t, h, m, |x| Ok(airy_beam(x, t, b, h, m)? * airy_taper(x + beta)))
    }

    /// `(dx, dp)` carrying the curve at `t = 0` onto the curve at `t`.
    pub fn predicted_shift(&self, t: f64) -> Result<(f64, f64)> {
        let (b0, b) = (self.params()?.beta(0.0), self.params()?.beta(t));
        Ok((b0.v - b.v, self.mass * (b0.d1 - b.d1)))
    }

    /// The outermost parabola of the main lobe at each time.
    pub fn parabolas(&self, times: &[f64]) -> Result<Vec<CurveSlice>> {
        let level = self.level_fraction * self.wigner(0.0)?.min_max().1;
        times
            .iter()
            .map(|&t| {
                let curves = extract_level_curves(&self.wigner(t)?, level);
                let curve = pick(curves, |c| -c.points.iter().map(|q| q.0).fold(f64::MIN, f64::max), t)?;
                Ok(CurveSlice { t, level, curve })
            })
            .collect()
    }

    /// Largest Hausdorff distance, in grid cells, between the first slice
    /// and each later slice shifted back by its prediction, inside a box
    /// away from the taper and the momentum edges.
    pub fn rigidity_in_cells(&self, slices: &[CurveSlice]) -> Result<f64> {
        let (bx, bp) = ((-7.0, 3.0), (-2.0, 2.0));
        let cell = self.grid.x_axis.spacing().max(self.grid.p_axis.spacing());
        let first = clip_to_box(&slices[0].curve.points, bx, bp);
        let mut worst = 0.0f64;
        for s in &slices[1..] {
            let (dx, dp) = self.predicted_shift(s.t)?;
            let back: Vec<(f64, f64)> = s.curve.points.iter().map(|q| (q.0 - dx, q.1 - dp)).collect();
            let back = clip_to_box(&back, bx, bp);
            if first.is_empty() || back.is_empty() {
                return Err(Error::Range("parabola left the comparison box".into()));
            }
            worst = worst.max(hausdorff(&first, &back) / cell);
        }
        Ok(worst)
    }
}

/// Oscillator eigenstate displaced along the orbit `q = a cos(omega t + phi0)`.
/// Its Wigner level sets are circles of fixed radius riding on a circle.
#[derive(Debug, Clone)]
pub struct SenitzkyScene {
    pub n: usize,
    pub a: f64,
    pub phi0: f64,
    pub omega: f64,
    pub hbar: f64,
    pub mass: f64,
    pub grid: PhaseSpaceGrid,
}

/// Radii and centre distances of fitted circles, in oscillator units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleGeometry {
    pub fits: Vec<CircleFit>,
    /// `max |r_k - r_0| / r_0`.
    pub radius_spread: f64,
    /// `max ||c_k| - a| / a` in scaled units.
    pub centre_spread: f64,
}

impl SenitzkyScene {
    /// Grid of `n` points on `x` and `n/2` on `p`, each covering the orbit
    /// with eight oscillator lengths to spare.
    pub fn new(n_level: usize, a: f64, phi0: f64, omega: f64, hbar: f64, mass: f64, n: usize) -> Result<Self> {
        let ell = (hbar / (mass * omega)).sqrt();
        let reach = a.abs() / ell + 7.5;
        let grid = PhaseSpaceGrid::new(
            Grid1D::symmetric(reach * ell, n)?,
            Grid1D::symmetric(reach * hbar / ell, n / 2)?,
        );
        Ok(Self {
            n: n_level,
            a,
            phi0,
            omega,
            hbar,
            mass,
            grid,
        })
    }

    fn scales(&self) -> OscillatorScales {
        OscillatorScales {
            omega: self.omega,
            mass: self.mass,
            hbar: self.hbar,
        }
    }

    pub fn state(&self) -> Result<SenitzkyState> {
        let span = 100.0 / self.omega;
        let path = ClassicalPath::harmonic(self.a, self.phi0, self.omega, (-span, span));
        SenitzkyState::new(self.n, path, self.omega, self.hbar, self.mass)
    }

    pub fn wigner(&self, t: f64) -> Result<PhaseSpaceField> {
        let st = self.state()?;
        wigner_of(&self.grid, t, self.hbar, self.mass, |x| st.eval(x, t))
    }

    /// The level set through unit scaled radius, one circle per time.
    pub fn circles(&self, times: &[f64]) -> Result<Vec<CurveSlice>> {
        let ell = (self.hbar / (self.mass * self.omega)).sqrt();
        let level = ho_wigner(self.n, ell, 0.0, self.omega, self.hbar, self.mass)?;
        let sc = self.scales();
        times
            .iter()
            .map(|&t| {
                let curves = extract_level_curves(&self.wigner(t)?, level);
                let key = |c: &LevelCurve| {
                    if !c.closed {
                        return f64::INFINITY;
                    }
                    let pts: Vec<(f64, f64)> = c.points.iter().map(|q| sc.to_tilde(q.0, q.1)).collect();
                    fit_circle(&pts).map(|f| (f.r - 1.0).abs()).unwrap_or(f64::INFINITY)
                };
                let curve = pick(curves, key, t)?;
                Ok(CurveSlice { t, level, curve })
            })
            .collect()
    }

    pub fn geometry(&self, slices: &[CurveSlice]) -> Result<CircleGeometry> {
        let sc = self.scales();
        let a_tilde = sc.to_tilde(self.a, 0.0).0.abs();
        let fits: Vec<CircleFit> = slices
            .iter()
            .map(|s| {
                let pts: Vec<(f64, f64)> = s.curve.points.iter().map(|q| sc.to_tilde(q.0, q.1)).collect();
                fit_circle(&pts)
            })
            .collect::<Result<_>>()?;
        let r0 = fits[0].r;
        let radius_spread = fits.iter().map(|f| (f.r - r0).abs() / r0).fold(0.0, f64::max);
        let centre_spread = fits
            .iter()
            .map(|f| (f.cx.hypot(f.cy) - a_tilde).abs() / a_tilde.max(1.0))
            .fold(0.0, f64::max);
        Ok(CircleGeometry {
            fits,
            radius_spread,
            centre_spread,
        })
    }
}

/// Oscillator eigenstate released into free space: its Wigner level sets
/// shear into the ellipses `x^2 - 2 t x p + (1 + t^2) p^2 = 1` in scaled
/// variables, `t = omega t`.
#[derive(Debug, Clone)]
pub struct EllipseScene {
    pub n: usize,
    pub omega: f64,
    pub hbar: f64,
    pub mass: f64,
    pub grid: PhaseSpaceGrid,
}

/// Fitted and expected conic coefficients at one scaled time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConicFit {
    pub t_tilde: f64,
    pub fitted: [f64; 3],
    pub expected: [f64; 3],
    pub error: f64,
}

impl EllipseScene {
    /// `2n` points over fourteen spread lengths in `x`, `n` over four in `p`.
    pub fn new(n_level: usize, omega: f64, hbar: f64, mass: f64, n: usize) -> Result<Self> {
        let ell = (hbar / (mass * omega)).sqrt();
        let grid = PhaseSpaceGrid::new(
            Grid1D::symmetric(14.0 * ell, 2 * n)?,
            Grid1D::symmetric(4.0 * hbar / ell, n)?,
        );
        Ok(Self {
            n: n_level,
            omega,
            hbar,
            mass,
            grid,
        })
    }

    fn scales(&self) -> OscillatorScales {
        OscillatorScales {
            omega: self.omega,
            mass: self.mass,
            hbar: self.hbar,
        }
    }

    pub fn wigner(&self, t: f64) -> Result<PhaseSpaceField> {
        let (n, w, h, m) = (self.n, self.omega, self.hbar, self.mass);
        wigner_of(&self.grid, t, h, m, |x| dispersing_free_state(n, x, t, 0.0, 0.0, w, h, m))
    }

    pub fn expected(t_tilde: f64) -> [f64; 3] {
        [1.0, -2.0 * t_tilde, 1.0 + t_tilde * t_tilde]
    }

    /// One ellipse per scaled time, selected as the closed curve whose
    /// conic fit is closest to the prediction.
    pub fn ellipses(&self, t_tildes: &[f64]) -> Result<Vec<CurveSlice>> {
        let ell = (self.hbar / (self.mass * self.omega)).sqrt();
        let level = ho_wigner(self.n, ell, 0.0, self.omega, self.hbar, self.mass)?;
        let sc = self.scales();
        t_tildes
            .iter()
            .map(|&tt| {
                let t = tt / self.omega;
                let curves = extract_level_curves(&self.wigner(t)?, level);
                let key = |c: &LevelCurve| {
                    if !c.closed {
                        return f64::INFINITY;
                    }
                    let pts: Vec<(f64, f64)> = c.points.iter().map(|q| sc.to_tilde(q.0, q.1)).collect();
                    fit_conic(&pts)
                        .map(|f| conic_error(f, Self::expected(tt)))
                        .unwrap_or(f64::INFINITY)
                };
                let curve = pick(curves, key, t)?;
                Ok(CurveSlice { t, level, curve })
            })
            .collect()
    }

    pub fn fits(&self, slices: &[CurveSlice]) -> Result<Vec<ConicFit>> {
        let sc = self.scales();
        slices
            .iter()
            .map(|s| {
                let tt = self.omega * s.t;
                let pts: Vec<(f64, f64)> = s.curve.points.iter().map(|q| sc.to_tilde(q.0, q.1)).collect();
                let fitted = fit_conic(&pts)?;
                let expected = Self::expected(tt);
                Ok(ConicFit {
                    t_tilde: tt,
                    fitted,
                    expected,
                    error: conic_error(fitted, expected),
                })
            })
            .collect()
    }
}
