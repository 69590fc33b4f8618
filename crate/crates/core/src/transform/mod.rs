//! The general one-dimensional form-preserving map and its named instances.

mod params;
mod presets;

pub(crate) use params::check_jet;
pub use params::{Clock, CoordMap1D, Jet, JetFn, TransformParams, CLOCK_TOL, INVERSION_TOL};
pub use presets::{berry_balazs_params, free_ho_params, identity_params, senitzky_params, FREE_HO_WINDOW};
