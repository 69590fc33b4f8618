//! Oscillator eigenstates released into free space: the position width
//! grows as sqrt(1 + (omega t)^2) while the momentum width stays fixed.

use formpreserve::numerics::Grid1D;
use formpreserve::wavefields::dispersing_free_state;

fn main() -> formpreserve::Result<()> {
    let grid = Grid1D::symmetric(40.0, 8192)?;
    let dx = grid.spacing();
    for n in [0usize, 1, 2] {
        for wt in [0.0, 1.0, 2.0, 4.0] {
            let dens: Vec<f64> = grid
                .points()
                .map(|x| dispersing_free_state(n, x, wt, 0.0, 0.0, 1.0, 1.0, 1.0).map(|z| z.norm_sqr()))
                .collect::<formpreserve::Result<_>>()?;
            let var: f64 = grid.points().zip(&dens).map(|(x, d)| x * x * d).sum::<f64>() * dx;
            let want = (n as f64 + 0.5) * (1.0 + wt * wt);
            println!("n = {n}, omega t = {wt}: <x^2> = {var:.8} (closed form {want:.8})");
        }
    }
    Ok(())
}
