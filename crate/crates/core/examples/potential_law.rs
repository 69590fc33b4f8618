//! The transformed potential obtained in phase space against the
//! wave-function formula.

use formpreserve::moyal::{moyal_potential_law, potential_law_agreement, PolySymbol};
use formpreserve::transform::{free_ho_params, senitzky_params};
use formpreserve::wavefields::Potential1D;

fn main() -> formpreserve::Result<()> {
    let (omega, m) = (1.3, 0.8);
    let v = Potential1D::Harmonic { omega };
    let vs = PolySymbol::monomial(0.5 * m * omega * omega, 2, 0);
    for (name, params) in [
        ("senitzky", senitzky_params(1.5, 0.2, omega, 1.0, m)?),
        ("free_ho", free_ho_params(0.4, -0.3, omega, 1.0, m)?),
    ] {
        for t in [0.0, 0.5, 1.0] {
            let law = moyal_potential_law(&params, &vs, t)?;
            println!(
                "{name:>9} t = {t}: V' = {law}, disagreement {:.1e}",
                potential_law_agreement(&params, &vs, &v, t)?
            );
        }
    }
    Ok(())
}
