use super::brackets::{moyal_bracket, poisson_bracket};
use super::poly::{Coeff, PolySymbol};
use crate::error::{Error, Result};
use crate::numerics::fd_derivative;
use crate::transform::TransformParams;
use crate::wavefields::Potential1D;
use crate::wigner::{ho_wigner, PhaseSpaceGrid};

/// `[[p^2/2m, W]]`, checked against `-(p/m) dW/dx`.
pub fn kinetic_moyal_reduction<C: Coeff>(w: &PolySymbol<C>, mass: &C) -> Result<PolySymbol<C>> {
    let two_m = mass.clone() * C::from_ratio(2, 1);
    if two_m.is_zero() {
        return Err(Error::Domain("mass must be non-zero".into()));
    }
    let kinetic = PolySymbol::monomial(C::one(), 0, 2);
    let bracket = moyal_bracket(&kinetic, w)?;
    let rhs = PolySymbol::p().try_mul(&w.dx())?.scale(&C::from_ratio(-2, 1));
    if bracket != rhs {
        return Err(Error::Convention(format!(
            "kinetic Moyal bracket {bracket} does not reduce to -(p/m) dW/dx"
        )));
    }
    Ok(bracket.scale(&(C::one() / two_m)))
}

/// Transformed potential from the phase-space route, as a polynomial in `x'`
/// with zero constant term.
///
/// Writing `W'(x', p', t') = W(x, p, t)` under the linear canonical map and
/// substituting the Liouville form of the Moyal equation (exact for the
/// quadratic part, covariant for the rest) gives
/// `dV'/dx' = gamma^2 [gamma V_x - m d(gamma^2 beta')/dt + m gamma'' x]`,
/// `x = gamma (x' - beta)`. Momentum terms must cancel; this is checked.
pub fn moyal_potential_law(params: &TransformParams, v: &PolySymbol<f64>, t: f64) -> Result<PolySymbol<f64>> {
    if v.terms().any(|(m, _)| m.1 != 0 || m.2 != 0) {
        return Err(Error::Input("potential must be a polynomial in x alone".into()));
    }
    let (g, b) = (params.gamma(t), params.beta(t));
    let m = params.mass();
    // x and p as functions of the primed variables
    let x_of = (PolySymbol::x() - PolySymbol::constant(b.v)).scale(&g.v);
    let p_of = (PolySymbol::p() - PolySymbol::constant(m * g.v * g.v * b.d1) + x_of.scale(&(m * g.d1))).scale(&(1.0 / g.v));
    let vx = v.dx().substitute(&x_of, &PolySymbol::zero())?;
    let dt_c = m * (2.0 * g.v * g.d1 * b.d1 + g.v * g.v * b.d2);
    // coefficient of dW'/dp', including the momentum terms that must cancel
    let coef = p_of.scale(&g.d1)
        + vx.scale(&g.v)
        + p_of.scale(&(-g.d1))
        + PolySymbol::constant(-dt_c)
        + x_of.scale(&(m * g.d2));
    let scale = coef.terms().map(|(_, c)| c.abs()).fold(1.0, f64::max);
    for (&(i, j, _), c) in coef.terms() {
        if j != 0 && c.abs() > 1e-12 * scale {
            return Err(Error::Contract(format!("momentum term x^{i} p^{j} survives with {c:.3e}")));
        }
    }
    let mut out = PolySymbol::zero();
    for (&(i, j, _), c) in coef.terms() {
        if j == 0 {
            out = out + PolySymbol::monomial(g.v * g.v * c / (i + 1) as f64, i + 1, 0);
        }
    }
    Ok(out)
}

/// Largest disagreement of the `x'^2` and `x'` coefficients between the
/// phase-space law and the wave-function potential map, both evaluated at `t`.
pub fn potential_law_agreement(
    params: &TransformParams,
    v_symbol: &PolySymbol<f64>,
    v: &Potential1D,
    t: f64,
) -> Result<f64> {
    let law = moyal_potential_law(params, v_symbol, t)?;
    let direct = |xp: f64| -> Result<f64> {
        let (x, _) = params.unmap_coords(xp, params.t_prime(t)?)?;
        Ok(params.transform_potential(v, x, t))
    };
    let (a, z, c) = (direct(-1.0)?, direct(0.0)?, direct(1.0)?);
    let c2 = 0.5 * (a + c) - z;
    let c1 = 0.5 * (c - a);
    Ok((law.coeff(2, 0, 0) - c2).abs().max((law.coeff(1, 0, 0) - c1).abs()))
}

/// `max |{H, W_n}|` over `grid` for the oscillator Hamiltonian, derivatives of
/// `W_n` by fourth-order finite differences.
pub fn stationary_flow_residual(n: usize, omega: f64, hbar: f64, mass: f64, grid: &PhaseSpaceGrid) -> Result<f64> {
    let (nx, np) = (grid.x_axis.n(), grid.p_axis.n());
    let mut w = vec![0.0; nx * np];
    for (ix, x) in grid.x_axis.points().enumerate() {
        for (ip, p) in grid.p_axis.points().enumerate() {
            w[ix * np + ip] = ho_wigner(n, x, p, omega, hbar, mass)?;
        }
    }
    let mut wx = vec![0.0; nx * np];
    let mut wp = vec![0.0; nx * np];
    for ix in 0..nx {
        let d = fd_derivative(&w[ix * np..(ix + 1) * np], &grid.p_axis, 1)?;
        wp[ix * np..(ix + 1) * np].copy_from_slice(&d);
    }
    for ip in 0..np {
        let col: Vec<f64> = (0..nx).map(|ix| w[ix * np + ip]).collect();
        for (ix, d) in fd_derivative(&col, &grid.x_axis, 1)?.into_iter().enumerate() {
            wx[ix * np + ip] = d;
        }
    }
    let mut worst = 0.0f64;
    for (ix, x) in grid.x_axis.points().enumerate() {
        for (ip, p) in grid.p_axis.points().enumerate() {
            let k = ix * np + ip;
            let pb = mass * omega * omega * x * wp[k] - p / mass * wx[k];
            worst = worst.max(pb.abs());
        }
    }
    Ok(worst)
}

/// `{H, W}` and `[[H, W]]` coincide for quadratic `H`.
pub fn quadratic_collapse<C: Coeff>(f: &PolySymbol<C>, g: &PolySymbol<C>) -> Result<bool> {
    if f.degree() > 2 {
        return Err(Error::Input(format!("degree {} exceeds 2", f.degree())));
    }
    Ok(moyal_bracket(f, g)? == poisson_bracket(f, g)?)
}
