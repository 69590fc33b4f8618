use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::field::{PhaseSpaceField, PhaseSpaceGrid};
use crate::error::{Error, Result};
use crate::numerics::{laguerre_l, ChirpZ, Grid1D, SampledWaveFunction};

/// Largest tolerated imaginary part of a computed Wigner value.
pub const IMAG_TOL: f64 = 1e-8;
/// Edge amplitude above which truncation of the correlation integral is reported.
pub const EDGE_TOL: f64 = 1e-6;

/// Evaluates Wigner rows `W(x_i, p0 + j dp)` from samples with spacing `dx`.
///
/// The correlation sum `sum_k psi[i-k] psi*[i+k] e^{2 i p k dx / hbar}` is a
/// chirp-z transform in `j`, so arbitrary `(p0, dp)` cost one Bluestein pass.
pub(crate) struct RowEngine<'a> {
    psi: &'a [Complex64],
    dx: f64,
    dp: f64,
    hbar: f64,
    half: usize,
    czt: ChirpZ,
}

impl<'a> RowEngine<'a> {
    pub fn new(psi: &'a [Complex64], dx: f64, dp: f64, m: usize, hbar: f64) -> Self {
        let half = (psi.len() - 1) / 2;
        let phi = 2.0 * dp * dx / hbar;
        Self {
            psi,
            dx,
            dp,
            hbar,
            half,
            czt: ChirpZ::new(2 * half + 1, m, phi),
        }
    }

    pub fn row(&self, i: usize, p0: f64) -> Result<Vec<f64>> {
        let n = self.psi.len();
        let reach = i.min(n - 1 - i);
        let mut input = vec![Complex64::default(); 2 * self.half + 1];
        let w0 = 2.0 * p0 * self.dx / self.hbar;
        for k in -(reach as isize)..=reach as isize {
            let a = self.psi[(i as isize - k) as usize];
            let b = self.psi[(i as isize + k) as usize];
            input[(k + self.half as isize) as usize] = a * b.conj() * Complex64::from_polar(1.0, w0 * k as f64);
        }
        let y = self.czt.apply(&input);
        let phi = 2.0 * self.dp * self.dx / self.hbar;
        let scale = self.dx / (PI * self.hbar);
        let mut out = Vec::with_capacity(y.len());
        for (j, z) in y.iter().enumerate() {
            let w = z * Complex64::from_polar(scale, -phi * (j * self.half) as f64);
            if w.im.abs() > IMAG_TOL {
                return Err(Error::Contract(format!(
                    "Wigner value at row {i}, column {j} has imaginary part {:.3e}",
                    w.im
                )));
            }
            out.push(w.re);
        }
        Ok(out)
    }
}

/// Largest tolerated share of spectral power above half the Nyquist wavenumber.
pub const ALIAS_TOL: f64 = 1e-9;

/// Rejects sample sets with appreciable power above half the Nyquist
/// wavenumber: the Wigner kernel doubles every frequency.
pub(crate) fn check_sampling(psi: &[Complex64]) -> Result<()> {
    let n = psi.len();
    let mut buf = psi.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let (mut total, mut high) = (0.0, 0.0);
    for (j, z) in buf.iter().enumerate() {
        let k = j.min(n - j);
        let e = z.norm_sqr();
        total += e;
        if 4 * k > n {
            high += e;
        }
    }
    if total > 0.0 && high > ALIAS_TOL * total {
        return Err(Error::Aliasing(format!(
            "{:.3e} of the spectral power lies above half the Nyquist wavenumber",
            high / total
        )));
    }
    Ok(())
}

pub(crate) fn check_edges(psi: &[Complex64]) {
    let edge = psi[0].norm().max(psi[psi.len() - 1].norm());
    if edge > EDGE_TOL {
        log::warn!("wave function edge amplitude {edge:.3e}; Wigner correlation truncated");
    }
}

/// Wigner function of `psi` on `x = psi.grid` and the requested momenta.
pub fn wigner_transform(psi: &SampledWaveFunction, p_axis: &Grid1D) -> Result<PhaseSpaceField> {
    let dx = psi.grid.spacing();
    let p_lim = PI * psi.hbar / (2.0 * dx);
    if p_axis.x_min() < -p_lim || p_axis.x_max() > p_lim {
        return Err(Error::Aliasing(format!(
            "momentum axis [{}, {}] exceeds the resolvable band +-{p_lim:.4}",
            p_axis.x_min(),
            p_axis.x_max()
        )));
    }
    check_sampling(&psi.values)?;
    check_edges(&psi.values);
    let engine = RowEngine::new(&psi.values, dx, p_axis.spacing(), p_axis.n(), psi.hbar);
    let rows: Vec<Vec<f64>> = (0..psi.grid.n())
        .into_par_iter()
        .map(|i| engine.row(i, p_axis.x_min()))
        .collect::<Result<_>>()?;
    let grid = PhaseSpaceGrid::new(psi.grid, *p_axis);
    PhaseSpaceField::new(grid, rows.concat(), psi.t, psi.hbar)
}

fn dimensionless(x: f64, p: f64, omega: f64, hbar: f64, mass: f64) -> (f64, f64) {
    (x * (mass * omega / hbar).sqrt(), p / (hbar * mass * omega).sqrt())
}

fn laguerre_wigner(n: usize, s: f64, hbar: f64) -> Result<f64> {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / (PI * hbar) * laguerre_l(n, 2.0 * s)? * (-s).exp())
}

/// Wigner function of the n-th oscillator eigenstate.
pub fn ho_wigner(n: usize, x: f64, p: f64, omega: f64, hbar: f64, mass: f64) -> Result<f64> {
    let (xt, pt) = dimensionless(x, p, omega, hbar, mass);
    laguerre_wigner(n, xt * xt + pt * pt, hbar)
}

/// Wigner function of the n-th eigenstate released into free space at `t = 0`.
pub fn free_disperse_wigner(n: usize, x: f64, p: f64, t: f64, omega: f64, hbar: f64, mass: f64) -> Result<f64> {
    let (xt, pt) = dimensionless(x, p, omega, hbar, mass);
    let tt = omega * t;
    laguerre_wigner(n, xt * xt - 2.0 * tt * xt * pt + (1.0 + tt * tt) * pt * pt, hbar)
}
