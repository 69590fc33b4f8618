//! The Wigner function of a transformed state is the original one composed
//! with the phase-space map.

use std::f64::consts::PI;

use formpreserve::numerics::Grid1D;
use formpreserve::transform::{free_ho_params, senitzky_params};
use formpreserve::wavefields::{ho_eigenstate, ClassicalPath, SenitzkyState};
use formpreserve::wigner::{check_wolW, CanonicalMap1D, PhaseSpaceGrid};

fn main() -> formpreserve::Result<()> {
    let grid = PhaseSpaceGrid::new(Grid1D::symmetric(9.0, 512)?, Grid1D::symmetric(6.0, 512)?);

    let sen = senitzky_params(1.0, 0.0, 1.0, 1.0, 1.0)?;
    let state = SenitzkyState::new(1, ClassicalPath::harmonic(1.0, 0.0, 1.0, (-50.0, 50.0)), 1.0, 1.0, 1.0)?;
    let r = check_wolW(|x, t| state.eval(x, t), &sen, PI / 4.0, &grid)?;
    println!("senitzky: max |W' o map - W| = {:.2e} over {} nodes", r.max_abs, r.compared);

    let fho = free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0)?;
    let r = check_wolW(|x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0), &fho, 0.5, &grid)?;
    println!("free/oscillator: max |W' o map - W| = {:.2e}", r.max_abs);

    let map = CanonicalMap1D::new(fho, 0.5)?;
    println!("phase-space Jacobian at (1, 1): {:.12}", map.jacobian_det(1.0, 1.0, 1e-4));
    Ok(())
}
