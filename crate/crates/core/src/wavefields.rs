//! Closed-form wave functions: the Airy beam, Senitzky coherent excited
//! states, oscillator eigenstates and freely dispersing oscillator states.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{airy_ai, central_diff, fd_derivative, hermite_function, Grid1D};

pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Scalar potential `V(x, t)`.
#[derive(Clone)]
pub enum Potential1D {
    Free,
    /// `V = slope * x`.
    Linear { slope: f64 },
    /// `V = m * omega^2 * x^2 / 2`.
    Harmonic { omega: f64 },
    Custom(SpaceTimeFn),
}

impl fmt::Debug for Potential1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential1D::Free => write!(f, "Free"),
            Potential1D::Linear { slope } => write!(f, "Linear {{ slope: {slope} }}"),
            Potential1D::Harmonic { omega } => write!(f, "Harmonic {{ omega: {omega} }}"),
            Potential1D::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl Potential1D {
    pub fn harmonic(omega: f64) -> Result<Self> {
        if omega > 0.0 && omega.is_finite() {
            Ok(Potential1D::Harmonic { omega })
        } else {
            Err(Error::Input(format!("harmonic frequency {omega} must be positive")))
        }
    }

    pub fn custom<F: Fn(f64, f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Potential1D::Custom(Arc::new(f))
    }

    pub fn value(&self, x: f64, t: f64, mass: f64) -> f64 {
        match self {
            Potential1D::Free => 0.0,
            Potential1D::Linear { slope } => slope * x,
            Potential1D::Harmonic { omega } => 0.5 * mass * omega * omega * x * x,
            Potential1D::Custom(f) => f(x, t),
        }
    }
}

/// Classical trajectory `q(t)` with its first two derivatives.
#[derive(Clone)]
pub struct ClassicalPath {
    q: TimeFn,
    q_dot: TimeFn,
    q_ddot: TimeFn,
    window: (f64, f64),
}

impl fmt::Debug for ClassicalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassicalPath")
            .field("window", &self.window)
            .field("q(window.0)", &(self.q)(self.window.0))
            .finish()
    }
}

const CHECK_POINTS: usize = 33;
const DERIV_TOL: f64 = 1e-6;

fn window_samples(window: (f64, f64)) -> impl Iterator<Item = f64> {
    let (a, b) = window;
    (0..CHECK_POINTS).map(move |k| a + (b - a) * k as f64 / (CHECK_POINTS - 1) as f64)
}

impl ClassicalPath {
    /// Builds a path and cross-checks the supplied derivatives by central
    /// differences over `window`.
    pub fn new(q: TimeFn, q_dot: TimeFn, q_ddot: TimeFn, window: (f64, f64)) -> Result<Self> {
        if !(window.0 < window.1) {
            return Err(Error::Input(format!("empty window {window:?}")));
        }
        let h = 1e-3;
        for t in window_samples(window) {
            let d1 = central_diff(|s| q(s), t, h, 1);
            let d2 = central_diff(|s| q_dot(s), t, h, 1);
            let (e1, e2) = ((d1 - q_dot(t)).abs(), (d2 - q_ddot(t)).abs());
            if e1 > DERIV_TOL * (1.0 + d1.abs()) || e2 > DERIV_TOL * (1.0 + d2.abs()) {
                return Err(Error::Contract(format!(
                    "path derivatives inconsistent at t = {t} (errors {e1:.2e}, {e2:.2e})"
                )));
            }
        }
        Ok(Self {
            q,
            q_dot,
            q_ddot,
            window,
        })
    }

    /// `q = a cos(omega t + phi0)`.
    pub fn harmonic(a: f64, phi0: f64, omega: f64, window: (f64, f64)) -> Self {
        Self {
            q: Arc::new(move |t| a * (omega * t + phi0).cos()),
            q_dot: Arc::new(move |t| -a * omega * (omega * t + phi0).sin()),
            q_ddot: Arc::new(move |t| -a * omega * omega * (omega * t + phi0).cos()),
            window,
        }
    }

    /// Uniform acceleration `q = q0 + v0 t + accel t^2 / 2`.
    pub fn accelerating(q0: f64, v0: f64, accel: f64, window: (f64, f64)) -> Self {
        Self {
            q: Arc::new(move |t| q0 + v0 * t + 0.5 * accel * t * t),
            q_dot: Arc::new(move |t| v0 + accel * t),
            q_ddot: Arc::new(move |_| accel),
            window,
        }
    }

    pub fn at_rest(window: (f64, f64)) -> Self {
        Self::accelerating(0.0, 0.0, 0.0, window)
    }

    pub fn q(&self, t: f64) -> f64 {
        (self.q)(t)
    }

    pub fn q_dot(&self, t: f64) -> f64 {
        (self.q_dot)(t)
    }

    pub fn q_ddot(&self, t: f64) -> f64 {
        (self.q_ddot)(t)
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    /// Confirms `q'' + omega^2 q = 0` across the window.
    pub fn check_harmonic(&self, omega: f64) -> Result<()> {
        for t in window_samples(self.window) {
            let r = self.q_ddot(t) + omega * omega * self.q(t);
            let scale = 1.0 + self.q_ddot(t).abs();
            if r.abs() > DERIV_TOL * scale {
                return Err(Error::Contract(format!(
                    "path is not harmonic at t = {t}: residual {r:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Accumulated action `S(t)`, fixed by `S(0) = 0`.
#[derive(Clone)]
pub struct PhaseAccumulator {
    s: TimeFn,
}

impl PhaseAccumulator {
    pub fn new(s: TimeFn) -> Self {
        Self { s }
    }

    /// `S(t) = int_0^t (m q'^2/2 - m omega^2 q^2/2) ds` for harmonic `q`.
    pub fn harmonic_action(path: &ClassicalPath, omega: f64, mass: f64) -> Self {
        let a = path.q(0.0);
        let b = path.q_dot(0.0) / omega;
        Self {
            s: Arc::new(move |t| {
                let (s2, c2) = (2.0 * omega * t).sin_cos();
                0.5 * mass * omega * (0.5 * (b * b - a * a) * s2 + a * b * (c2 - 1.0))
            }),
        }
    }

    pub fn s(&self, t: f64) -> f64 {
        (self.s)(t)
    }
}

/// Berry-Balazs accelerating Airy beam (unnormalized).
pub fn airy_beam(x: f64, t: f64, b: f64, hbar: f64, mass: f64) -> Result<Complex64> {
    if !(b > 0.0) {
        return Err(Error::Input(format!("beam constant B = {b} must be positive")));
    }
    let b3 = b * b * b;
    let arg = b / hbar.powf(2.0 / 3.0) * (x - b3 * t * t / (4.0 * mass * mass));
    let amp = airy_ai(arg)?.value;
    let phase = b3 * t / (2.0 * mass * hbar) * (x - b3 * t * t / (6.0 * mass * mass));
    Ok(Complex64::from_polar(amp, phase))
}

/// Harmonic-oscillator energy eigenstate with its stationary phase.
pub fn ho_eigenstate(n: usize, x: f64, t: f64, omega: f64, hbar: f64, mass: f64) -> Result<Complex64> {
    let k = (mass * omega / hbar).sqrt();
    let amp = k.sqrt() * hermite_function(n, k * x)?;
    Ok(Complex64::from_polar(amp, -(n as f64 + 0.5) * omega * t))
}

/// Senitzky coherent excited state riding a harmonic path.
#[derive(Clone)]
pub struct SenitzkyState {
    n: usize,
    path: ClassicalPath,
    action: PhaseAccumulator,
    omega: f64,
    hbar: f64,
    mass: f64,
}

impl SenitzkyState {
    pub fn new(n: usize, path: ClassicalPath, omega: f64, hbar: f64, mass: f64) -> Result<Self> {
        path.check_harmonic(omega)?;
        let action = PhaseAccumulator::harmonic_action(&path, omega, mass);
        Ok(Self {
            n,
            path,
            action,
            omega,
            hbar,
            mass,
        })
    }

    pub fn path(&self) -> &ClassicalPath {
        &self.path
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<Complex64> {
        let (m, w, h) = (self.mass, self.omega, self.hbar);
        let k = (m * w / h).sqrt();
        let amp = k.sqrt() * hermite_function(self.n, k * (x - self.path.q(t)))?;
        let energy = (self.n as f64 + 0.5) * h * w;
        let phase = -(energy * t - m * self.path.q_dot(t) * x + self.action.s(t)) / h;
        Ok(Complex64::from_polar(amp, phase))
    }
}

pub fn senitzky_wf(
    n: usize,
    x: f64,
    t: f64,
    path: &ClassicalPath,
    omega: f64,
    hbar: f64,
    mass: f64,
) -> Result<Complex64> {
    SenitzkyState::new(n, path.clone(), omega, hbar, mass)?.eval(x, t)
}

/// Oscillator eigenstate released into free space at `t' = 0`, translated by
/// `beta = v0 t' + x0`.
#[allow(clippy::too_many_arguments)]
pub fn dispersing_free_state(
    n: usize,
    x: f64,
    t: f64,
    v0: f64,
    x0: f64,
    omega: f64,
    hbar: f64,
    mass: f64,
) -> Result<Complex64> {
    let tau = omega * t;
    let spread = 1.0 + tau * tau;
    let ell = (hbar / (mass * omega)).sqrt();
    let xi = x - (v0 * t + x0);
    let u = xi / (ell * spread.sqrt());
    let amp = hermite_function(n, u)? / (ell * spread.sqrt()).sqrt();
    let phase = -(n as f64 + 0.5) * tau.atan()
        + mass / hbar * (0.5 * omega * omega * t * xi * xi / spread + v0 * xi + 0.5 * v0 * v0 * t);
    Ok(Complex64::from_polar(amp, phase))
}

/// Max-norm residual of the real-part amplitude equation
/// `-(hbar^2/2m) R'' + [V + m q'^2/2 + m q'' x + S'] R` over the inner 80%.
#[allow(clippy::too_many_arguments)]
pub fn check_reduced_equation(
    r: &[f64],
    grid: &Grid1D,
    potential: &Potential1D,
    path: &ClassicalPath,
    t: f64,
    s_dot: f64,
    hbar: f64,
    mass: f64,
) -> Result<f64> {
    let r2 = fd_derivative(r, grid, 2)?;
    let (qd, qdd) = (path.q_dot(t), path.q_ddot(t));
    let mut worst = 0.0f64;
    for i in grid.interior(0.8) {
        let x = grid.x(i);
        let coeff = potential.value(x, t, mass) + 0.5 * mass * qd * qd + mass * qdd * x + s_dot;
        let res = -hbar * hbar / (2.0 * mass) * r2[i] + coeff * r[i];
        worst = worst.max(res.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_needs_positive_frequency() {
        assert!(Potential1D::harmonic(0.0).is_err());
        assert!(Potential1D::harmonic(1.0).is_ok());
    }

    #[test]
    fn path_derivatives_are_checked() {
        let bad = ClassicalPath::new(
            Arc::new(|t: f64| t.sin()),
            Arc::new(|t: f64| t.cos()),
            Arc::new(|t: f64| t.sin()),
            (0.0, 1.0),
        );
        assert!(bad.is_err());
        let good = ClassicalPath::new(
            Arc::new(|t: f64| t.sin()),
            Arc::new(|t: f64| t.cos()),
            Arc::new(|t: f64| -t.sin()),
            (0.0, 1.0),
        );
        assert!(good.is_ok());
    }

    #[test]
    fn non_harmonic_path_is_refused() {
        let path = ClassicalPath::accelerating(0.0, 0.0, 1.0, (0.0, 2.0));
        assert!(SenitzkyState::new(0, path, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn action_vanishes_at_origin() {
        let path = ClassicalPath::harmonic(1.3, 0.4, 2.0, (-1.0, 1.0));
        let s = PhaseAccumulator::harmonic_action(&path, 2.0, 1.5);
        assert!(s.s(0.0).abs() < 1e-15);
    }
}
