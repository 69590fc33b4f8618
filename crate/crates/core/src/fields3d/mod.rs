//! Three-dimensional transformations with rotations and a vector potential.

mod checks;
mod field;
mod frame;
mod spec;

pub use checks::{
    check_u1_invariance, combined_potential_gauge_check, divergence_identity_check, form_preservation_residual,
    sample_events, u1_residual, Event, SampleReport, DEFAULT_SAMPLES, RESIDUAL_STEP,
};
pub use field::{Mat3, ScalarField, ScalarFn, Vec3, VectorField3, VectorFn, FD_STEP};
pub use frame::{
    axis_rotation, extract_angular_velocity, map_coords_3d, primed_vector_potential, transform_magnetic_field,
    transform_scalar_potential, transform_vector_potential, transform_wavefunction_3d, AngularFrame,
    AngularVelocity, Frame3D, Jet3, Jet3Fn, RotFn, ORTHO_TOL, SKEW_TOL,
};
pub use spec::{ComponentSpec, FrameSpec, GammaSpec, RotationSpec, TrigTerm};
