//! Wigner functions, the phase-space form of the transformation law, and
//! level-curve geometry.

mod curves;
mod field;
mod law;
mod transform;

pub use curves::{
    clip_to_box, conic_error, extract_level_curves, fit_circle, fit_conic, hausdorff, CircleFit, LevelCurve,
};
pub use field::{PhaseSpaceField, PhaseSpaceGrid};
#[allow(non_snake_case)]
pub use law::check_wolW;
pub use law::{
    circular_asymmetry, map_phase_space, oscillator_flow, rigid_translation_check, rotation_flow_check,
    turntable_check, CanonicalMap1D, OscillatorScales, WignerLawReport,
};
pub use transform::{free_disperse_wigner, ho_wigner, wigner_transform, ALIAS_TOL, EDGE_TOL, IMAG_TOL};
