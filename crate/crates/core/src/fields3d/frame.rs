use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::field::{d1, unit, Mat3, ScalarField, Vec3, VectorField3};
use crate::error::{Error, Result};
use crate::numerics::{integrate, solve_bracketed};
use crate::transform::{check_jet, Jet, JetFn, CLOCK_TOL, INVERSION_TOL};

/// Vector-valued time function with two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub v: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
}

impl Jet3 {
    pub fn zero() -> Self {
        Self {
            v: Vec3::zeros(),
            d1: Vec3::zeros(),
            d2: Vec3::zeros(),
        }
    }
}

pub type Jet3Fn = Arc<dyn Fn(f64) -> Jet3 + Send + Sync>;
pub type RotFn = Arc<dyn Fn(f64) -> Mat3 + Send + Sync>;

/// Tolerance on `R^T R = I` and `det R = 1`.
pub const ORTHO_TOL: f64 = 1e-10;
/// Tolerance on the skew symmetry of `R^T dR/dt`.
pub const SKEW_TOL: f64 = 1e-8;
const CHECK_POINTS: usize = 33;
const TIME_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngularFrame {
    /// Components along the unrotated axes: `dR/dt u = R (omega x u)`.
    Body,
    /// `R omega`.
    Space,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularVelocity {
    pub omega: Vec3,
    pub frame: AngularFrame,
}

impl AngularVelocity {
    pub fn to_space(self, r: &Mat3) -> Self {
        match self.frame {
            AngularFrame::Body => Self {
                omega: r * self.omega,
                frame: AngularFrame::Space,
            },
            AngularFrame::Space => self,
        }
    }

    pub fn to_body(self, r: &Mat3) -> Self {
        match self.frame {
            AngularFrame::Space => Self {
                omega: r.transpose() * self.omega,
                frame: AngularFrame::Body,
            },
            AngularFrame::Body => self,
        }
    }
}

fn check_rotation(r: &Mat3, t: f64) -> Result<()> {
    let dev = (r.transpose() * r - Mat3::identity()).abs().max();
    let det = r.determinant();
    if dev > ORTHO_TOL || (det - 1.0).abs() > ORTHO_TOL || !dev.is_finite() {
        return Err(Error::Contract(format!(
            "R({t}) is not a proper rotation: |R^T R - I| = {dev:.3e}, det = {det}"
        )));
    }
    Ok(())
}

/// Angular velocity from `R^T dR/dt`, body components. `rate` defaults to
/// fourth-order differences of `r`.
pub fn extract_angular_velocity(r: &RotFn, rate: Option<&RotFn>, t: f64) -> Result<AngularVelocity> {
    let rt = r(t);
    check_rotation(&rt, t)?;
    let rd = match rate {
        Some(f) => f(t),
        None => d1(|s| r(s), t, TIME_STEP),
    };
    let s = rt.transpose() * rd;
    let skew = (s + s.transpose()).abs().max();
    if skew > SKEW_TOL {
        return Err(Error::Contract(format!("R^T dR/dt not skew at t = {t}: {skew:.3e}")));
    }
    Ok(AngularVelocity {
        omega: Vec3::new(s[(2, 1)], s[(0, 2)], s[(1, 0)]),
        frame: AngularFrame::Body,
    })
}

/// Rotation by `angle` about `axis` (normalized internally).
pub fn axis_rotation(axis: Vec3, angle: f64) -> Mat3 {
    let n = axis.normalize();
    let k = n.cross_matrix();
    Mat3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

/// Transformation `x' = R (x/gamma + beta)`, `t' = int dt/gamma^2` in three
/// dimensions, with a scalar gauge field `alpha(x, t)` of dimension action.
#[derive(Clone)]
pub struct Frame3D {
    gamma: JetFn,
    beta: Jet3Fn,
    rotation: RotFn,
    rotation_rate: Option<RotFn>,
    alpha: ScalarField,
    t_ref: f64,
    t_prime_ref: f64,
    window: (f64, f64),
    hbar: f64,
    mass: f64,
}

impl fmt::Debug for Frame3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame3D")
            .field("window", &self.window)
            .field("t_ref", &self.t_ref)
            .field("hbar", &self.hbar)
            .field("mass", &self.mass)
            .finish()
    }
}

impl Frame3D {
    /// Validates `gamma`, `beta` and `R` on the window.
    pub fn new(gamma: JetFn, beta: Jet3Fn, rotation: RotFn, hbar: f64, mass: f64, window: (f64, f64)) -> Result<Self> {
        if !(hbar > 0.0 && mass > 0.0) {
            return Err(Error::Input("hbar and mass must be positive".into()));
        }
        let (a, b) = window;
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(Error::Input(format!("bad window {window:?}")));
        }
        let margin = 2.5e-3;
        for k in 0..CHECK_POINTS {
            let t = a + margin + (b - a - 2.0 * margin) * k as f64 / (CHECK_POINTS - 1) as f64;
            let g = gamma(t).v;
            if g == 0.0 || !g.is_finite() {
                return Err(Error::SingularMap(format!("gamma({t}) = {g}")));
            }
            check_jet("gamma", &gamma, t, true)?;
            for c in 0..3 {
                let bf = beta.clone();
                let comp: JetFn = Arc::new(move |s| {
                    let j = bf(s);
                    Jet::new(j.v[c], j.d1[c], j.d2[c])
                });
                check_jet(&format!("beta[{c}]"), &comp, t, true)?;
            }
            extract_angular_velocity(&rotation, None, t)?;
        }
        Ok(Self {
            gamma,
            beta,
            rotation,
            rotation_rate: None,
            alpha: ScalarField::zero(),
            t_ref: 0.0_f64.clamp(a, b),
            t_prime_ref: 0.0,
            window,
            hbar,
            mass,
        })
    }

    pub fn identity(hbar: f64, mass: f64) -> Result<Self> {
        Self::new(
            Arc::new(|_| Jet::constant(1.0)),
            Arc::new(|_| Jet3::zero()),
            Arc::new(|_| Mat3::identity()),
            hbar,
            mass,
            (-1e3, 1e3),
        )
    }

    pub fn with_alpha(mut self, alpha: ScalarField) -> Self {
        self.alpha = alpha;
        self
    }

    /// Supplies `dR/dt`; checked against differences of `R`.
    pub fn with_rotation_rate(mut self, rate: RotFn) -> Result<Self> {
        let (a, b) = self.window;
        for k in 0..CHECK_POINTS {
            let t = a + 0.01 * (b - a) + 0.98 * (b - a) * k as f64 / (CHECK_POINTS - 1) as f64;
            let fd: Mat3 = d1(|s| (self.rotation)(s), t, TIME_STEP);
            let dev = (fd - rate(t)).abs().max();
            if dev > 1e-6 * (1.0 + fd.abs().max()) {
                return Err(Error::Contract(format!("dR/dt inconsistent at t = {t}: {dev:.3e}")));
            }
        }
        self.rotation_rate = Some(rate);
        Ok(self)
    }

    pub fn with_time_origin(mut self, t_ref: f64, t_prime_ref: f64) -> Self {
        self.t_ref = t_ref;
        self.t_prime_ref = t_prime_ref;
        self
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn gamma(&self, t: f64) -> Jet {
        (self.gamma)(t)
    }

    pub fn beta(&self, t: f64) -> Jet3 {
        (self.beta)(t)
    }

    pub fn rotation(&self, t: f64) -> Mat3 {
        (self.rotation)(t)
    }

    pub fn alpha(&self) -> &ScalarField {
        &self.alpha
    }

    pub fn angular_velocity(&self, t: f64) -> Result<AngularVelocity> {
        extract_angular_velocity(&self.rotation, self.rotation_rate.as_ref(), t)
    }

    fn in_window(&self, t: f64) -> Result<()> {
        if t < self.window.0 || t > self.window.1 {
            return Err(Error::Range(format!("t = {t} outside {:?}", self.window)));
        }
        Ok(())
    }

    pub fn t_prime(&self, t: f64) -> Result<f64> {
        self.in_window(t)?;
        let g = self.gamma.clone();
        let q = integrate(move |s| g(s).v.powi(-2), self.t_ref, t, CLOCK_TOL)?;
        Ok(self.t_prime_ref + q.value)
    }

    pub fn time_inverse(&self, tp: f64) -> Result<f64> {
        let (a, b) = self.window;
        solve_bracketed(
            |t| Ok(self.t_prime(t)? - tp),
            |t| self.gamma(t).v.powi(-2),
            a,
            b,
            INVERSION_TOL,
        )
    }

    /// `x' = R (x/gamma + beta)`.
    pub fn map_point(&self, x: Vec3, t: f64) -> Vec3 {
        self.rotation(t) * (x / self.gamma(t).v + self.beta(t).v)
    }

    /// `x = gamma (R^T x' - beta)`.
    pub fn unmap_point(&self, xp: Vec3, t: f64) -> Vec3 {
        self.gamma(t).v * (self.rotation(t).transpose() * xp - self.beta(t).v)
    }

    /// Prefactor `gamma^{D/2} exp[-(i m/2 hbar)((gamma'/gamma) x^2 - 2 gamma beta'.x) - i alpha/hbar]`
    /// at the unprimed point.
    pub fn wave_factor(&self, d: u32, x: Vec3, t: f64) -> Result<Complex64> {
        let g = self.gamma(t);
        if g.v <= 0.0 {
            return Err(Error::Domain(format!("gamma({t}) = {} is not positive", g.v)));
        }
        let b = self.beta(t);
        let phase = -(self.mass / (2.0 * self.hbar)) * ((g.d1 / g.v) * x.norm_squared() - 2.0 * g.v * b.d1.dot(&x))
            - self.alpha.value(x, t) / self.hbar;
        Ok(Complex64::from_polar(g.v.powf(0.5 * d as f64), phase))
    }
}

/// `(x', t')` for the unprimed event `(x, t)`.
pub fn map_coords_3d(frame: &Frame3D, x: Vec3, t: f64) -> Result<(Vec3, f64)> {
    Ok((frame.map_point(x, t), frame.t_prime(t)?))
}

/// `psi'(x', t')` in `d` dimensions from a solution `psi(x, t)`.
pub fn transform_wavefunction_3d<F>(frame: &Frame3D, psi: F, d: u32, xp: Vec3, tp: f64) -> Result<Complex64>
where
    F: Fn(Vec3, f64) -> Complex64,
{
    if !(1..=3).contains(&d) {
        return Err(Error::Input(format!("dimension {d} not in 1..=3")));
    }
    let t = frame.time_inverse(tp)?;
    let x = frame.unmap_point(xp, t);
    Ok(frame.wave_factor(d, x, t)? * psi(x, t))
}

/// `A'` at the image of `x`: `gamma R (A - grad alpha) - m gamma^2 (R omega) x x'`.
pub fn transform_vector_potential(frame: &Frame3D, a: &VectorField3, x: Vec3, t: f64) -> Result<Vec3> {
    let (g, r) = (frame.gamma(t).v, frame.rotation(t));
    let w = frame.angular_velocity(t)?.to_space(&r).omega;
    let xp = frame.map_point(x, t);
    Ok(g * r * (a.eval(x, t) - frame.alpha.grad(x, t)) - frame.mass * g * g * w.cross(&xp))
}

/// `B' = gamma^2 R (B - 2 m omega)`, `omega` in body components.
pub fn transform_magnetic_field(frame: &Frame3D, b: &VectorField3, x: Vec3, t: f64) -> Result<Vec3> {
    let (g, r) = (frame.gamma(t).v, frame.rotation(t));
    let w = frame.angular_velocity(t)?.omega;
    Ok(g * g * r * (b.eval(x, t) - 2.0 * frame.mass * w))
}

/// `V'` at the image of `x`.
pub fn transform_scalar_potential(
    frame: &Frame3D,
    v: &ScalarField,
    a: &VectorField3,
    x: Vec3,
    t: f64,
) -> Result<f64> {
    let m = frame.mass;
    let (g, b) = (frame.gamma(t), frame.beta(t));
    let w = frame.angular_velocity(t)?.omega;
    let u = w.cross(&(x + g.v * b.v));
    let drift = (g.d1 / g.v) * x - g.v * b.d1 - u;
    let inner = v.value(x, t) + frame.alpha.dt(x, t) + m * g.d2 / (2.0 * g.v) * x.norm_squared()
        - m * x.dot(&(2.0 * g.d1 * b.d1 + g.v * b.d2))
        + 0.5 * m * (g.v * b.d1).norm_squared()
        - 0.5 * m * u.norm_squared()
        - (a.eval(x, t) - frame.alpha.grad(x, t)).dot(&drift);
    Ok(g.v * g.v * inner)
}

/// `A'` as a field of the primed position, frozen at unprimed time `t`.
pub fn primed_vector_potential(frame: &Frame3D, a: &VectorField3, t: f64) -> VectorField3 {
    let (frame, a) = (frame.clone(), a.clone());
    VectorField3::new(move |xp, _| {
        let x = frame.unmap_point(xp, t);
        transform_vector_potential(&frame, &a, x, t).unwrap_or_else(|_| Vec3::repeat(f64::NAN))
    })
}

pub(crate) fn basis() -> [Vec3; 3] {
    [unit(0), unit(1), unit(2)]
}
