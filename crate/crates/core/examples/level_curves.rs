//! Level sets of three Wigner families: translated parabolas, circles on a
//! circle, and shearing ellipses.

use formpreserve::datasets::{AiryScene, EllipseScene, SenitzkyScene};

fn main() -> formpreserve::Result<()> {
    let airy = AiryScene::new(1.0, 1.0, 1.0, 512)?;
    let parabolas = airy.parabolas(&[0.0, 1.0, 2.0])?;
    for s in &parabolas {
        let (dx, dp) = airy.predicted_shift(s.t)?;
        println!("parabola t = {}: {} vertices, predicted shift ({dx:.3}, {dp:.3})", s.t, s.curve.points.len());
    }
    println!("rigidity: {:.3} cells", airy.rigidity_in_cells(&parabolas)?);

    let sen = SenitzkyScene::new(0, 1.5, 0.0, 1.0, 1.0, 1.0, 512)?;
    let geom = sen.geometry(&sen.circles(&[0.0, 1.0, 2.0])?)?;
    for f in &geom.fits {
        println!("circle centre ({:+.4}, {:+.4}) |c| = {:.4}, radius {:.5}", f.cx, f.cy, f.cx.hypot(f.cy), f.r);
    }

    let ell = EllipseScene::new(0, 1.0, 1.0, 1.0, 512)?;
    for f in ell.fits(&ell.ellipses(&[0.0, 1.0, 2.0])?)? {
        println!("ellipse t = {}: fitted {:.4?}, expected {:?}", f.t_tilde, f.fitted, f.expected);
    }
    Ok(())
}
