//! A breathing, drifting, rotating frame in three dimensions: the induced
//! magnetic field, the centrifugal potential and the residual of a free
//! Gaussian seen from the frame.

use formpreserve::checks::{gaussian_3d, rotating_frame};
use formpreserve::fields3d::*;

fn main() -> formpreserve::Result<()> {
    let frame = rotating_frame()?;
    let none = VectorField3::zero();
    for t in [0.0, 0.5, 1.0] {
        let w = frame.angular_velocity(t)?;
        let b = transform_magnetic_field(&frame, &none, Vec3::zeros(), t)?;
        let curl = primed_vector_potential(&frame, &none, t).curl(Vec3::new(0.3, 0.1, -0.2), t);
        println!("t = {t}: omega (body) = {:.4?}, B' = {:.4?}, curl A' = {:.4?}", w.omega.as_slice(), b.as_slice(), curl.as_slice());
    }

    let x = Vec3::new(1.0, 0.5, 0.0);
    let spin = FrameSpec::from_json(r#"{"gamma": {"kind": "constant", "value": 1}, "rotations": [{"axis": [0, 0, 1], "rate": 0.7}], "window": [-10, 10]}"#)?.build()?;
    let v = transform_scalar_potential(&spin, &ScalarField::zero(), &none, x, 0.3)?;
    println!("centrifugal V' at {:?}: {v:.6} (expected {:.6})", x.as_slice(), -0.5 * 0.49 * (x[0] * x[0] + x[1] * x[1]));

    let events = sample_events(DEFAULT_SAMPLES, 1.5, (-0.5, 1.0), 2024);
    let r = form_preservation_residual(&frame, gaussian_3d, &ScalarField::zero(), &none, &events)?;
    println!("free Gaussian in the moving frame: max residual {:.2e} over {} events", r.max_abs, r.points);
    Ok(())
}
