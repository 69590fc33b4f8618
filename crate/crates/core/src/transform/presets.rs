use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use super::params::{Clock, Jet, TransformParams};
use crate::error::{Error, Result};

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Input(format!("{name} must be positive, got {v}")))
    }
}

/// `gamma = 1`, `beta = 0`, `alpha = 0`.
pub fn identity_params(hbar: f64, mass: f64) -> Result<TransformParams> {
    Ok(TransformParams::new(
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(0.0)),
        Arc::new(|_| Jet::constant(1.0)),
        hbar,
        mass,
        (-1e3, 1e3),
    )?
    .with_clock(Clock::Constant(1.0))
    .with_label("identity"))
}

/// Uniformly accelerated frame removing a linear potential of slope `B^3/2m`.
pub fn berry_balazs_params(b: f64, hbar: f64, mass: f64) -> Result<TransformParams> {
    positive("B", b)?;
    let b3 = b.powi(3);
    let m = mass;
    let beta = move |t: f64| {
        let k = -b3 / (4.0 * m * m);
        Jet::new(k * t * t, 2.0 * k * t, 2.0 * k)
    };
    let alpha = move |t: f64| {
        let k = -b3 * b3 / (12.0 * m.powi(3) * hbar);
        Jet::new(k * t.powi(3), 3.0 * k * t * t, 6.0 * k * t)
    };
    Ok(TransformParams::new(
        Arc::new(alpha),
        Arc::new(beta),
        Arc::new(|_| Jet::constant(1.0)),
        hbar,
        mass,
        (-100.0, 100.0),
    )?
    .with_clock(Clock::Constant(1.0))
    .with_label("berry-balazs"))
}

/// Frame co-moving with the classical orbit `q = a cos(omega t + phi0)`.
pub fn senitzky_params(a: f64, phi0: f64, omega: f64, hbar: f64, mass: f64) -> Result<TransformParams> {
    positive("omega", omega)?;
    let m = mass;
    let beta = move |t: f64| {
        let th = omega * t + phi0;
        Jet::new(
            -a * th.cos(),
            a * omega * th.sin(),
            a * omega * omega * th.cos(),
        )
    };
    let alpha = move |t: f64| {
        let k = m * a * a * omega / (4.0 * hbar);
        let th2 = 2.0 * (omega * t + phi0);
        Jet::new(
            k * (th2.sin() - (2.0 * phi0).sin()),
            2.0 * omega * k * th2.cos(),
            -4.0 * omega * omega * k * th2.sin(),
        )
    };
    Ok(TransformParams::new(
        Arc::new(alpha),
        Arc::new(beta),
        Arc::new(|_| Jet::constant(1.0)),
        hbar,
        mass,
        (-100.0 / omega, 100.0 / omega),
    )?
    .with_clock(Clock::Constant(1.0))
    .with_label("senitzky"))
}

/// Half-width of the free/oscillator window in units of `pi/2`.
pub const FREE_HO_WINDOW: f64 = 0.98;

/// Map from the oscillator with frequency `omega` to free motion, with the
/// image drifting at `v0` from `x0`. Defined for `|omega t| < pi/2`.
pub fn free_ho_params(v0: f64, x0: f64, omega: f64, hbar: f64, mass: f64) -> Result<TransformParams> {
    positive("omega", omega)?;
    let m = mass;
    let gamma = move |t: f64| {
        let th = omega * t;
        Jet::new(th.cos(), -omega * th.sin(), -omega * omega * th.cos())
    };
    let beta = move |t: f64| {
        let (s, c) = (omega * t).sin_cos();
        Jet::new(
            v0 * s / (c * omega) + x0,
            v0 / (c * c),
            2.0 * v0 * omega * s / (c * c * c),
        )
    };
    let alpha = move |t: f64| {
        let (s, c) = (omega * t).sin_cos();
        let k = -m * v0 * v0 / (2.0 * hbar);
        Jet::new(k * s / (c * omega), k / (c * c), 2.0 * k * omega * s / (c * c * c))
    };
    let half = FREE_HO_WINDOW * FRAC_PI_2 / omega;
    Ok(TransformParams::new(
        Arc::new(alpha),
        Arc::new(beta),
        Arc::new(gamma),
        hbar,
        mass,
        (-half, half),
    )?
    .with_clock(Clock::Cosine { omega })
    .with_label("free-ho"))
}
