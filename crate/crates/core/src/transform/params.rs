use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{central_diff, integrate, solve_bracketed};
use crate::wavefields::Potential1D;

/// Value of a time function with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }
}

pub type JetFn = Arc<dyn Fn(f64) -> Jet + Send + Sync>;

/// How `t' = t'_ref + int_{t_ref}^t ds / gamma(s)^2` is evaluated.
#[derive(Clone)]
pub enum Clock {
    /// `gamma` is this constant.
    Constant(f64),
    /// `gamma = cos(omega t)`.
    Cosine { omega: f64 },
    /// Adaptive quadrature of `1/gamma^2`.
    Quadrature,
    /// Inverse of another transformation: its `t'` is our `t` and vice versa.
    Inverse(Box<TransformParams>),
}

impl fmt::Debug for Clock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clock::Constant(g) => write!(f, "Constant({g})"),
            Clock::Cosine { omega } => write!(f, "Cosine {{ omega: {omega} }}"),
            Clock::Quadrature => write!(f, "Quadrature"),
            Clock::Inverse(p) => write!(f, "Inverse({})", p.label),
        }
    }
}

/// Quadrature tolerance for the clock integral.
pub const CLOCK_TOL: f64 = 1e-10;
/// Tolerance of the time inversion.
pub const INVERSION_TOL: f64 = 1e-12;
const DERIV_TOL: f64 = 1e-6;
const CHECK_POINTS: usize = 33;

/// Parameters `(alpha, beta, gamma)` of the map
/// `x' = x/gamma + beta`, `t' = int dt/gamma^2`,
/// `psi' = sqrt(gamma) psi exp{-(i m/2 hbar)[(gamma'/gamma) x^2 - 2 gamma beta' x] - i alpha}`.
///
/// `alpha` is dimensionless; only its value and first derivative are used.
#[derive(Clone)]
pub struct TransformParams {
    alpha: JetFn,
    beta: JetFn,
    gamma: JetFn,
    clock: Clock,
    t_ref: f64,
    t_prime_ref: f64,
    window: (f64, f64),
    hbar: f64,
    mass: f64,
    label: String,
}

impl fmt::Debug for TransformParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformParams")
            .field("label", &self.label)
            .field("clock", &self.clock)
            .field("t_ref", &self.t_ref)
            .field("t_prime_ref", &self.t_prime_ref)
            .field("window", &self.window)
            .field("hbar", &self.hbar)
            .field("mass", &self.mass)
            .finish()
    }
}

fn close(f: impl Fn(f64) -> f64, t: f64, want: f64) -> Option<f64> {
    // step halving rescues steep but smooth functions near a window edge
    let mut got = f64::NAN;
    for k in 0..3 {
        got = central_diff(&f, t, 1e-3 / (1 << k) as f64, 1);
        if (got - want).abs() <= DERIV_TOL * (1.0 + want.abs()) {
            return None;
        }
    }
    Some(got)
}

pub(crate) fn check_jet(name: &str, f: &JetFn, t: f64, second: bool) -> Result<()> {
    let j = f(t);
    if !(j.v.is_finite() && j.d1.is_finite() && j.d2.is_finite()) {
        return Err(Error::Contract(format!("{name} not finite at t = {t}")));
    }
    if let Some(d1) = close(|s| f(s).v, t, j.d1) {
        return Err(Error::Contract(format!(
            "{name} first derivative inconsistent at t = {t}: supplied {}, differenced {d1}",
            j.d1
        )));
    }
    if second {
        if let Some(d2) = close(|s| f(s).d1, t, j.d2) {
            return Err(Error::Contract(format!(
                "{name} second derivative inconsistent at t = {t}: supplied {}, differenced {d2}",
                j.d2
            )));
        }
    }
    Ok(())
}

impl TransformParams {
    /// Builds a parameter set and cross-checks the supplied derivatives on the
    /// working window. The clock defaults to quadrature.
    pub fn new(
        alpha: JetFn,
        beta: JetFn,
        gamma: JetFn,
        hbar: f64,
        mass: f64,
        window: (f64, f64),
    ) -> Result<Self> {
        if !(hbar > 0.0 && mass > 0.0) {
            return Err(Error::Input("hbar and mass must be positive".into()));
        }
        if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
            return Err(Error::Input(format!("bad window {window:?}")));
        }
        let (a, b) = window;
        let margin = 2.5e-3;
        for k in 0..CHECK_POINTS {
            let t = a + margin + (b - a - 2.0 * margin) * k as f64 / (CHECK_POINTS - 1) as f64;
            let g = gamma(t).v;
            if g == 0.0 || !g.is_finite() {
                return Err(Error::SingularMap(format!("gamma({t}) = {g}")));
            }
            check_jet("gamma", &gamma, t, true)?;
            check_jet("beta", &beta, t, true)?;
            check_jet("alpha", &alpha, t, false)?;
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            clock: Clock::Quadrature,
            t_ref: 0.0_f64.clamp(a, b),
            t_prime_ref: 0.0,
            window,
            hbar,
            mass,
            label: "custom".into(),
        })
    }

    pub fn with_clock(mut self, clock: Clock) -> Self {
        self.clock = clock;
        self
    }

    /// Lower limit of the `t'` integral and the value `t'` takes there.
    pub fn with_time_origin(mut self, t_ref: f64, t_prime_ref: f64) -> Self {
        self.t_ref = t_ref;
        self.t_prime_ref = t_prime_ref;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Same map with `alpha` shifted by a constant.
    pub fn with_alpha_offset(mut self, c: f64) -> Self {
        let alpha = self.alpha.clone();
        self.alpha = Arc::new(move |t| {
            let j = alpha(t);
            Jet::new(j.v + c, j.d1, j.d2)
        });
        self
    }

    pub fn label(&self) -> &str {
        &self.label
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

    pub fn t_ref(&self) -> f64 {
        self.t_ref
    }

    pub fn clock(&self) -> &Clock {
        &self.clock
    }

    pub fn alpha(&self, t: f64) -> Jet {
        (self.alpha)(t)
    }

    pub fn beta(&self, t: f64) -> Jet {
        (self.beta)(t)
    }

    pub fn gamma(&self, t: f64) -> Jet {
        (self.gamma)(t)
    }

    fn in_window(&self, t: f64) -> Result<()> {
        let (a, b) = self.window;
        let slack = 1e-12 * (1.0 + a.abs().max(b.abs()));
        if t.is_finite() && t >= a - slack && t <= b + slack {
            Ok(())
        } else {
            Err(Error::Range(format!("t = {t} outside window [{a}, {b}]")))
        }
    }

    fn check_no_zero(&self, lo: f64, hi: f64) -> Result<()> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let n = 64;
        let g0 = self.gamma(lo).v;
        for k in 0..=n {
            let t = lo + (hi - lo) * k as f64 / n as f64;
            let g = self.gamma(t).v;
            if g == 0.0 || g.signum() != g0.signum() || !g.is_finite() {
                return Err(Error::SingularMap(format!("gamma vanishes near t = {t}")));
            }
        }
        Ok(())
    }

    /// `t'(t)`.
    pub fn t_prime(&self, t: f64) -> Result<f64> {
        self.in_window(t)?;
        match &self.clock {
            Clock::Constant(g) => Ok(self.t_prime_ref + (t - self.t_ref) / (g * g)),
            Clock::Cosine { omega } => {
                for s in [t, self.t_ref] {
                    if (omega * s).abs() >= FRAC_PI_2 {
                        return Err(Error::SingularMap(format!("cos({omega} * {s}) vanishes")));
                    }
                }
                Ok(self.t_prime_ref + ((omega * t).tan() - (omega * self.t_ref).tan()) / omega)
            }
            Clock::Quadrature => {
                self.check_no_zero(self.t_ref, t)?;
                let g = &self.gamma;
                let r = integrate(|s| g(s).v.powi(-2), self.t_ref, t, CLOCK_TOL)?;
                Ok(self.t_prime_ref + r.value)
            }
            Clock::Inverse(fwd) => fwd.time_inverse(t),
        }
    }

    /// `t(t')`, the inverse of [`Self::t_prime`].
    pub fn time_inverse(&self, tp: f64) -> Result<f64> {
        if !tp.is_finite() {
            return Err(Error::Range(format!("t' = {tp}")));
        }
        let t = match &self.clock {
            Clock::Constant(g) => self.t_ref + (tp - self.t_prime_ref) * g * g,
            Clock::Cosine { omega } => {
                let base = (omega * self.t_ref).tan();
                (omega * (tp - self.t_prime_ref) + base).atan() / omega
            }
            Clock::Quadrature => {
                let (a, b) = self.window;
                let (ta, tb) = (self.t_prime(a)?, self.t_prime(b)?);
                if tp < ta.min(tb) || tp > ta.max(tb) {
                    return Err(Error::Range(format!("t' = {tp} outside image [{ta}, {tb}]")));
                }
                let g = &self.gamma;
                solve_bracketed(
                    |t| Ok(self.t_prime(t)? - tp),
                    |t| g(t).v.powi(-2),
                    a,
                    b,
                    INVERSION_TOL,
                )?
            }
            Clock::Inverse(fwd) => return fwd.t_prime(tp),
        };
        self.in_window(t)?;
        Ok(t)
    }

    /// Image of the working window under `t -> t'`.
    pub fn prime_window(&self) -> Result<(f64, f64)> {
        let (a, b) = self.window;
        Ok((self.t_prime(a)?, self.t_prime(b)?))
    }

    /// `(x', t')` for the point `(x, t)`.
    pub fn map_coords(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        let tp = self.t_prime(t)?;
        Ok((x / self.gamma(t).v + self.beta(t).v, tp))
    }

    /// `(x, t)` for the image point `(x', t')`.
    pub fn unmap_coords(&self, xp: f64, tp: f64) -> Result<(f64, f64)> {
        let t = self.time_inverse(tp)?;
        Ok((self.gamma(t).v * (xp - self.beta(t).v), t))
    }

    /// Multiplier taking `psi(x, t)` to `psi'(x', t')`.
    pub fn wave_factor(&self, x: f64, t: f64) -> Result<Complex64> {
        let (g, b, a) = (self.gamma(t), self.beta(t), self.alpha(t));
        if g.v <= 0.0 {
            return Err(Error::Domain(format!(
                "gamma({t}) = {} is not positive; the sqrt(gamma) branch is undefined",
                g.v
            )));
        }
        let quad = g.d1 / g.v * x * x - 2.0 * g.v * b.d1 * x;
        let phase = -self.mass / (2.0 * self.hbar) * quad - a.v;
        Ok(Complex64::from_polar(g.v.sqrt(), phase))
    }

    /// `psi'(x', t')` from a solution `psi(x, t)` of the original equation.
    pub fn transform_wavefunction<F>(&self, psi: F, xp: f64, tp: f64) -> Result<Complex64>
    where
        F: Fn(f64, f64) -> Result<Complex64>,
    {
        let (x, t) = self.unmap_coords(xp, tp)?;
        Ok(psi(x, t)? * self.wave_factor(x, t)?)
    }

    /// Modulus and phase of `psi'(x', t')`, kept apart so that the modulus
    /// does not depend on `alpha` at all.
    pub fn transform_wavefunction_polar<F>(&self, psi: F, xp: f64, tp: f64) -> Result<(f64, f64)>
    where
        F: Fn(f64, f64) -> Result<Complex64>,
    {
        let (x, t) = self.unmap_coords(xp, tp)?;
        let z = psi(x, t)?;
        let w = self.wave_factor(x, t)?;
        Ok((z.norm() * self.gamma(t).v.sqrt(), z.arg() + w.arg()))
    }

    /// `V'` at the image of `(x, t)`.
    pub fn transform_potential(&self, v: &Potential1D, x: f64, t: f64) -> f64 {
        let (g, b, a) = (self.gamma(t), self.beta(t), self.alpha(t));
        let m = self.mass;
        let inner = v.value(x, t, m) + m * g.d2 / (2.0 * g.v) * x * x
            - m * (2.0 * g.d1 * b.d1 + g.v * b.d2) * x
            + 0.5 * m * g.v * g.v * b.d1 * b.d1
            + self.hbar * a.d1;
        g.v * g.v * inner
    }

    /// Exact inverse map, parametrized by the primed time.
    pub fn inverse(&self) -> TransformParams {
        let fwd = self.clone();
        let (m, hbar) = (self.mass, self.hbar);
        let locate = {
            let fwd = fwd.clone();
            move |s: f64| fwd.time_inverse(s).unwrap_or(f64::NAN)
        };
        let gamma: JetFn = {
            let (fwd, locate) = (fwd.clone(), locate.clone());
            Arc::new(move |s| {
                let g = fwd.gamma(locate(s));
                Jet::new(1.0 / g.v, -g.d1, -g.v * g.v * g.d2)
            })
        };
        let beta: JetFn = {
            let (fwd, locate) = (fwd.clone(), locate.clone());
            Arc::new(move |s| {
                let t = locate(s);
                let (g, b) = (fwd.gamma(t), fwd.beta(t));
                let lin = g.d1 * b.v + g.v * b.d1;
                let lin_dot = g.d2 * b.v + 2.0 * g.d1 * b.d1 + g.v * b.d2;
                Jet::new(
                    -g.v * b.v,
                    -g.v * g.v * lin,
                    -g.v * g.v * (2.0 * g.v * g.d1 * lin + g.v * g.v * lin_dot),
                )
            })
        };
        let alpha: JetFn = {
            let (fwd, locate) = (fwd.clone(), locate);
            Arc::new(move |s| {
                let t = locate(s);
                let (g, b, a) = (fwd.gamma(t), fwd.beta(t), fwd.alpha(t));
                let k = m / (2.0 * hbar);
                let v = -a.v - k * (g.v * g.d1 * b.v * b.v + 2.0 * g.v * g.v * b.v * b.d1);
                let inner = g.d1 * g.d1 * b.v * b.v
                    + g.v * g.d2 * b.v * b.v
                    + 6.0 * g.v * g.d1 * b.v * b.d1
                    + 2.0 * g.v * g.v * b.d1 * b.d1
                    + 2.0 * g.v * g.v * b.v * b.d2;
                Jet::new(v, g.v * g.v * (-a.d1 - k * inner), 0.0)
            })
        };
        let window = self
            .prime_window()
            .unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
        TransformParams {
            alpha,
            beta,
            gamma,
            clock: Clock::Inverse(Box::new(fwd)),
            t_ref: self.t_prime_ref,
            t_prime_ref: self.t_ref,
            window,
            hbar,
            mass: m,
            label: format!("inverse({})", self.label),
        }
    }
}

/// The coordinate part of a transformation.
#[derive(Debug, Clone)]
pub struct CoordMap1D {
    pub params: TransformParams,
}

impl CoordMap1D {
    pub fn new(params: TransformParams) -> Self {
        Self { params }
    }

    pub fn forward(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        self.params.map_coords(x, t)
    }

    pub fn backward(&self, xp: f64, tp: f64) -> Result<(f64, f64)> {
        self.params.unmap_coords(xp, tp)
    }
}
