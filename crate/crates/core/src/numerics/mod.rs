//! Grids, special functions, quadrature and finite differences shared by the
//! other modules.

mod czt;
mod dd;
mod diff;
mod grid;
mod interp;
mod quad;
mod roots;
mod special;

pub use czt::ChirpZ;
pub use diff::{central_diff, fd_derivative, fornberg_weights};
pub use grid::{Grid1D, SampledWaveFunction};
pub use interp::Interp;
pub use quad::{integrate, QuadResult};
pub use roots::solve_bracketed;
pub use special::{
    airy_ai, hermite_function, hermite_h, laguerre_l, SpecialFnResult, AIRY_MIN_ARG, AIRY_SWITCH,
    MAX_ORDER,
};
