//! Residual of the time-dependent Schrödinger equation and an implicit
//! propagator used as an independent evolution oracle.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{fd_derivative, Grid1D, SampledWaveFunction};
use crate::wavefields::Potential1D;

pub const DEFAULT_DT_PROBE: f64 = 1e-4;
pub const DEFAULT_INTERIOR: f64 = 0.8;
/// Edge amplitude above which `propagate` warns about reflections.
pub const EDGE_WARN: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub l2: f64,
    pub interior_fraction: f64,
    pub grid: Grid1D,
    pub times: Vec<f64>,
}

fn sample_row<F>(psi: &F, grid: &Grid1D, t: f64) -> Result<Vec<Complex64>>
where
    F: Fn(f64, f64) -> Result<Complex64> + Sync,
{
    let row: Vec<Complex64> = (0..grid.n())
        .into_par_iter()
        .map(|i| psi(grid.x(i), t))
        .collect::<Result<_>>()?;
    if let Some(i) = row.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Input(format!("psi not finite at x = {}, t = {t}", grid.x(i))));
    }
    Ok(row)
}

/// `i hbar psi_t + (hbar^2/2m) psi_xx - V psi` on the inner 80% of the grid.
#[allow(clippy::too_many_arguments)]
pub fn residual<F>(
    psi: F,
    v: &Potential1D,
    grid: &Grid1D,
    t: f64,
    hbar: f64,
    mass: f64,
    dt_probe: f64,
) -> Result<ResidualReport>
where
    F: Fn(f64, f64) -> Result<Complex64> + Sync,
{
    residual_on(psi, v, grid, t, hbar, mass, dt_probe, DEFAULT_INTERIOR)
}

/// [`residual`] with an explicit interior fraction.
#[allow(clippy::too_many_arguments)]
pub fn residual_on<F>(
    psi: F,
    v: &Potential1D,
    grid: &Grid1D,
    t: f64,
    hbar: f64,
    mass: f64,
    dt_probe: f64,
    interior: f64,
) -> Result<ResidualReport>
where
    F: Fn(f64, f64) -> Result<Complex64> + Sync,
{
    if !(dt_probe > 0.0) || !(interior > 0.0 && interior <= 1.0) {
        return Err(Error::Input("dt_probe and interior fraction must be positive".into()));
    }
    let times: Vec<f64> = [-2.0, -1.0, 0.0, 1.0, 2.0]
        .iter()
        .map(|k| t + k * dt_probe)
        .collect();
    let rows: Vec<Vec<Complex64>> = times
        .iter()
        .map(|&s| sample_row(&psi, grid, s))
        .collect::<Result<_>>()?;
    let centre = &rows[2];
    let psi_xx = fd_derivative(centre, grid, 2)?;
    let dx = grid.spacing();
    let (mut max_abs, mut sum) = (0.0f64, 0.0f64);
    for i in grid.interior(interior) {
        let dt = (rows[0][i] - rows[1][i] * 8.0 + rows[3][i] * 8.0 - rows[4][i]) / (12.0 * dt_probe);
        let x = grid.x(i);
        let r = Complex64::i() * hbar * dt + psi_xx[i] * (hbar * hbar / (2.0 * mass))
            - centre[i] * v.value(x, t, mass);
        max_abs = max_abs.max(r.norm());
        sum += r.norm_sqr() * dx;
    }
    Ok(ResidualReport {
        max_abs,
        l2: sum.sqrt(),
        interior_fraction: interior,
        grid: grid.clone(),
        times,
    })
}

/// Solves a complex tridiagonal system in place (Thomas algorithm).
fn thomas(lower: &[Complex64], diag: &[Complex64], upper: &[Complex64], rhs: &mut [Complex64], work: &mut [Complex64]) {
    let n = diag.len();
    work[0] = upper[0] / diag[0];
    rhs[0] /= diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i] * work[i - 1];
        if i + 1 < n {
            work[i] = upper[i] / denom;
        }
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        rhs[i] = rhs[i] - work[i] * rhs[i + 1];
    }
}

/// Advances `psi0` to the absolute time `t_final` in `n_steps` implicit
/// midpoint steps, with a fourth-order compact (Numerov) Laplacian, the
/// potential sampled at each half step and zero Dirichlet boundaries.
///
/// The update is `(M + i tau (L + M V)) psi+ = (M - i tau (L + M V)) psi`,
/// `tau = dt/2 hbar`; since `M^-1 L + V` is real symmetric it is unitary.
pub fn propagate(
    psi0: &SampledWaveFunction,
    v: &Potential1D,
    t_final: f64,
    n_steps: usize,
) -> Result<SampledWaveFunction> {
    if n_steps == 0 {
        return Ok(psi0.clone());
    }
    if !t_final.is_finite() {
        return Err(Error::Input(format!("t_final = {t_final}")));
    }
    let grid = &psi0.grid;
    let (n, hbar, mass) = (grid.n(), psi0.hbar, psi0.mass);
    let dx = grid.spacing();
    let dt = (t_final - psi0.t) / n_steps as f64;
    let tau = Complex64::new(0.0, dt / (2.0 * hbar));
    let kin = hbar * hbar / (2.0 * mass * dx * dx);
    let (m_off, m_diag) = (1.0 / 12.0, 10.0 / 12.0);
    let xs = grid.to_vec();

    let mut psi = psi0.values.clone();
    let (mut lo, mut di, mut up) = (vec![Complex64::default(); n], vec![Complex64::default(); n], vec![Complex64::default(); n]);
    let mut rhs = vec![Complex64::default(); n];
    let mut work = vec![Complex64::default(); n];
    let mut vh = vec![0.0; n];

    for step in 0..n_steps {
        let th = psi0.t + (step as f64 + 0.5) * dt;
        for (vi, &x) in vh.iter_mut().zip(&xs) {
            *vi = v.value(x, th, mass);
        }
        // A = L + M V, with L = -kin * (1, -2, 1).
        for i in 0..n {
            let a_diag = 2.0 * kin + m_diag * vh[i];
            let a_lo = if i > 0 { -kin + m_off * vh[i - 1] } else { 0.0 };
            let a_up = if i + 1 < n { -kin + m_off * vh[i + 1] } else { 0.0 };
            di[i] = m_diag + tau * a_diag;
            lo[i] = m_off + tau * a_lo;
            up[i] = m_off + tau * a_up;
            let mut r = (m_diag - tau * a_diag) * psi[i];
            if i > 0 {
                r += (m_off - tau * a_lo) * psi[i - 1];
            }
            if i + 1 < n {
                r += (m_off - tau * a_up) * psi[i + 1];
            }
            rhs[i] = r;
        }
        thomas(&lo, &di, &up, &mut rhs, &mut work);
        std::mem::swap(&mut psi, &mut rhs);
    }
    let out = SampledWaveFunction::new(grid.clone(), psi, t_final, hbar, mass)?;
    let edge = out.edge_amplitude();
    if edge > EDGE_WARN {
        log::warn!("edge amplitude {edge:.3e} after propagation; boundary reflections likely");
    }
    Ok(out)
}

/// `sqrt(dx * sum |psi|^2)`, the norm preserved by [`propagate`].
pub fn discrete_norm(psi: &SampledWaveFunction) -> f64 {
    (psi.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * psi.grid.spacing()).sqrt()
}
