//! Airy, Hermite and Laguerre functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::dd::Dd;
use crate::error::{Error, Result};

/// A value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialFnResult {
    pub value: f64,
    pub est_abs_error: f64,
}

/// Highest polynomial order accepted by the recurrences.
pub const MAX_ORDER: usize = 200;

/// |z| below which the Maclaurin series is summed; asymptotic expansions beyond.
pub const AIRY_SWITCH: f64 = 8.0;

/// Most negative argument for which the oscillatory phase is still reduced reliably.
pub const AIRY_MIN_ARG: f64 = -1e8;

// Ai(0) and -Ai'(0) split into leading and trailing doubles.
const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const AIP0: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);
const TWO_PI: Dd = Dd::new(6.283185307179586, 2.4492935982947064e-16);

/// Airy function of the first kind.
///
/// Double-double Maclaurin series for `|z| < 8`, asymptotic expansions beyond.
pub fn airy_ai(z: f64) -> Result<SpecialFnResult> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("Ai({z})")));
    }
    if z < AIRY_MIN_ARG {
        return Err(Error::Domain(format!(
            "Ai({z}): phase reduction unreliable below {AIRY_MIN_ARG}"
        )));
    }
    Ok(if z.abs() < AIRY_SWITCH {
        airy_series(z)
    } else if z > 0.0 {
        airy_decaying(z)
    } else {
        airy_oscillating(-z)
    })
}

fn airy_series(z: f64) -> SpecialFnResult {
    let z = Dd::from_f64(z);
    let z3 = z * z * z;
    let mut f_term = Dd::ONE;
    let mut g_term = z;
    let mut f = f_term;
    let mut g = g_term;
    let mut largest = f_term.hi.abs().max(g_term.hi.abs());
    let mut k = 1.0f64;
    loop {
        f_term = (f_term * z3).div_f64((3.0 * k - 1.0) * (3.0 * k));
        g_term = (g_term * z3).div_f64((3.0 * k) * (3.0 * k + 1.0));
        f = f + f_term;
        g = g + g_term;
        let t = f_term.hi.abs().max(g_term.hi.abs());
        largest = largest.max(t);
        if t < 1e-34 * largest || k > 200.0 {
            break;
        }
        k += 1.0;
    }
    let value = AI0 * f - AIP0 * g;
    SpecialFnResult {
        value: value.to_f64(),
        est_abs_error: 1e-31 * largest + f64::EPSILON * value.hi.abs(),
    }
}

fn u_coefficients(zeta: f64) -> Vec<f64> {
    // Terms u_k / zeta^k; stop once they stop shrinking.
    let mut out: Vec<f64> = vec![1.0];
    let mut u = 1.0f64;
    let mut k = 1.0f64;
    loop {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        let term = u / zeta.powi(k as i32);
        let prev = *out.last().unwrap();
        if !term.is_finite() || term.abs() >= prev.abs() || term.abs() < 1e-18 * out[0] {
            out.push(term);
            break;
        }
        out.push(term);
        k += 1.0;
    }
    out
}

fn airy_decaying(z: f64) -> SpecialFnResult {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let terms = u_coefficients(zeta);
    let (last, body) = terms.split_last().unwrap();
    let sum: f64 = body
        .iter()
        .enumerate()
        .map(|(k, t)| if k % 2 == 0 { *t } else { -*t })
        .sum();
    let pre = (-zeta).exp() / (2.0 * PI.sqrt() * z.powf(0.25));
    SpecialFnResult {
        value: pre * sum,
        est_abs_error: pre * (last.abs() + 4.0 * f64::EPSILON),
    }
}

fn airy_oscillating(x: f64) -> SpecialFnResult {
    let s0 = x.sqrt();
    let r = (x - s0 * s0) - s0.mul_add(s0, -(s0 * s0));
    let s = Dd::from_f64(s0) + Dd::from_f64(r / (2.0 * s0));
    let zeta_dd = (s.mul_f64(x)).mul_f64(2.0).div_f64(3.0);
    let zeta = zeta_dd.to_f64();
    let turns = (zeta_dd.hi / TWO_PI.hi).round();
    let theta = (zeta_dd - TWO_PI.mul_f64(turns)).to_f64() + PI / 4.0;

    let terms = u_coefficients(zeta);
    let (last, body) = terms.split_last().unwrap();
    let (mut p, mut q) = (0.0, 0.0);
    for (k, t) in body.iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    let pre = 1.0 / (PI.sqrt() * x.powf(0.25));
    let phase_err = 1e-30 * zeta;
    SpecialFnResult {
        value: pre * (theta.sin() * p - theta.cos() * q),
        est_abs_error: pre * (last.abs() + 4.0 * f64::EPSILON + phase_err),
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderTooLarge {
            order: n,
            limit: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

/// Physicists' Hermite polynomial `H_n(u)`.
pub fn hermite_h(n: usize, u: f64) -> Result<f64> {
    check_order(n)?;
    let (mut prev, mut cur) = (1.0, 2.0 * u);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * u * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Laguerre polynomial `L_n(u)`.
pub fn laguerre_l(n: usize, u: f64) -> Result<f64> {
    check_order(n)?;
    let (mut prev, mut cur) = (1.0, 1.0 - u);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - u) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite function `H_n(u) exp(-u^2/2) / sqrt(2^n n! sqrt(pi))`.
///
/// Computed by its own recurrence so large `n` and `|u|` stay finite.
pub fn hermite_function(n: usize, u: f64) -> Result<f64> {
    check_order(n)?;
    let mut prev = PI.powf(-0.25) * (-0.5 * u * u).exp();
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = std::f64::consts::SQRT_2 * u * prev;
    for k in 1..n {
        let k = k as f64;
        let next = (2.0 / (k + 1.0)).sqrt() * u * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
