//! Displaced oscillator eigenstates: the modulus rides rigidly on the classical orbit.

use formpreserve::numerics::Grid1D;
use formpreserve::schrodinger::{residual, DEFAULT_DT_PROBE};
use formpreserve::wavefields::{ClassicalPath, Potential1D, SenitzkyState};

fn main() -> formpreserve::Result<()> {
    let (a, omega) = (1.5, 1.0);
    let path = ClassicalPath::harmonic(a, 0.0, omega, (-50.0, 50.0));
    let grid = Grid1D::symmetric(12.0, 2048)?;
    let v = Potential1D::harmonic(omega)?;
    for n in [0, 1, 3] {
        let st = SenitzkyState::new(n, path.clone(), omega, 1.0, 1.0)?;
        let mut rigid = 0.0f64;
        for t in [0.4, 1.7, 3.0] {
            for x in grid.points().step_by(16) {
                let shifted = st.eval(x - path.q(t) + path.q(0.0), 0.0)?.norm_sqr();
                rigid = rigid.max((st.eval(x, t)?.norm_sqr() - shifted).abs());
            }
        }
        let r = residual(|x, t| st.eval(x, t), &v, &grid, 0.9, 1.0, 1.0, DEFAULT_DT_PROBE)?;
        println!("n = {n}: modulus deviation {rigid:.2e}, equation residual {:.2e}", r.max_abs);
    }
    Ok(())
}
