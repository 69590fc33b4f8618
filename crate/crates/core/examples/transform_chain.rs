//! Maps the oscillator ground state to a freely dispersing packet and checks
//! the result against implicit time stepping of the free equation.

use formpreserve::numerics::{Grid1D, SampledWaveFunction};
use formpreserve::schrodinger::propagate;
use formpreserve::transform::free_ho_params;
use formpreserve::wavefields::{ho_eigenstate, Potential1D};

fn main() -> formpreserve::Result<()> {
    let params = free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0)?;
    let grid = Grid1D::symmetric(20.0, 2048)?;
    let ground = |x: f64, t: f64| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0);
    let at = |tp: f64| -> formpreserve::Result<SampledWaveFunction> {
        let values = grid
            .points()
            .map(|xp| params.transform_wavefunction(ground, xp, tp))
            .collect::<formpreserve::Result<Vec<_>>>()?;
        SampledWaveFunction::new(grid, values, tp, 1.0, 1.0)
    };
    let start = at(0.0)?;
    for tp in [0.25, 0.5, 1.0] {
        let numeric = propagate(&start, &Potential1D::Free, tp, (2000.0 * tp) as usize)?;
        let (_, t) = params.unmap_coords(0.0, tp)?;
        println!(
            "t' = {tp:.2} (oscillator time {t:.4}): L2 distance {:.3e}, V' at x' = 1: {:.2e}",
            numeric.l2_distance(&at(tp)?)?,
            params.transform_potential(&Potential1D::harmonic(1.0)?, params.gamma(t).v * (1.0 - params.beta(t).v), t)
        );
    }
    Ok(())
}
