//! Samples the accelerating Airy beam and follows its main peak.

use formpreserve::numerics::Grid1D;
use formpreserve::schrodinger::{residual, DEFAULT_DT_PROBE};
use formpreserve::wavefields::{airy_beam, Potential1D};

fn main() -> formpreserve::Result<()> {
    let (b, hbar, m) = (1.0, 1.0, 1.0);
    let grid = Grid1D::new(-15.0, 5.0, 2048)?;
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "peak x", "expected", "residual");
    for t in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let peak = grid
            .points()
            .map(|x| (x, airy_beam(x, t, b, hbar, m).unwrap().norm_sqr()))
            .fold((0.0, f64::MIN), |a, c| if c.1 > a.1 { c } else { a })
            .0;
        // the first maximum of Ai sits at -1.0188, then drifts by b^3 t^2 / 4m^2
        let expected = -1.018_792_971_6 / b + b.powi(3) * t * t / (4.0 * m * m);
        let r = residual(|x, t| airy_beam(x, t, b, hbar, m), &Potential1D::Free, &grid, t, hbar, m, DEFAULT_DT_PROBE)?;
        println!("{t:>6.2} {peak:>12.5} {expected:>12.5} {:>12.3e}", r.max_abs);
    }
    Ok(())
}
