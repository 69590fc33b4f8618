//! Exact phase-space symbol calculus: Poisson, star and Moyal brackets.
//!
//! Symbols are polynomials in `x`, `p` with coefficients polynomial in
//! `hbar`. A star product is returned as two real symbols, `re + i im`; odd
//! orders of `hbar` land in `im`, and the Moyal bracket divides their
//! antisymmetric part by `hbar` after checking the real parts cancel.

mod bidiff;
mod brackets;
mod law;
mod poly;

pub use bidiff::{nonlinear_ct_example, BiDiffOperator, NonlinearReport, TwoMono, TwoPoint};
pub use brackets::{moyal_bracket, poisson_bracket, poisson_power, star_product, StarProduct};
pub use law::{
    kinetic_moyal_reduction, moyal_potential_law, potential_law_agreement, quadratic_collapse,
    stationary_flow_residual,
};
pub use poly::{q, Coeff, Mono, PolySymbol, RationalSymbol, DEGREE_GUARD};
