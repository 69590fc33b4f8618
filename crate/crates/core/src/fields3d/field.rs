use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

pub type ScalarFn = Arc<dyn Fn(Vec3, f64) -> f64 + Send + Sync>;
pub type VectorFn = Arc<dyn Fn(Vec3, f64) -> Vec3 + Send + Sync>;

/// Spatial step of the finite-difference fallbacks.
pub const FD_STEP: f64 = 1e-3;

/// Fourth-order central difference of `f` at `s`.
pub(crate) fn d1<T, F>(f: F, s: f64, h: f64) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    (f(s - 2.0 * h) - f(s + 2.0 * h) + (f(s + h) - f(s - h)) * 8.0) * (1.0 / (12.0 * h))
}

/// Fourth-order central second difference of `f` at `s`.
pub(crate) fn d2<T, F>(f: F, s: f64, h: f64) -> T
where
    T: std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let c = f(s);
    ((f(s + h) + f(s - h)) * 16.0 - (f(s + 2.0 * h) + f(s - 2.0 * h)) - c * 30.0) * (1.0 / (12.0 * h * h))
}

pub(crate) fn unit(k: usize) -> Vec3 {
    let mut e = Vec3::zeros();
    e[k] = 1.0;
    e
}

/// Real scalar field `f(x, t)`, optionally with analytic gradient and time derivative.
#[derive(Clone)]
pub struct ScalarField {
    value: ScalarFn,
    grad: Option<VectorFn>,
    dt: Option<ScalarFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("analytic_grad", &self.grad.is_some())
            .field("analytic_dt", &self.dt.is_some())
            .finish()
    }
}

impl ScalarField {
    pub fn new<F: Fn(Vec3, f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        Self {
            value: Arc::new(f),
            grad: None,
            dt: None,
        }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| 0.0)
    }

    pub fn with_grad<F: Fn(Vec3, f64) -> Vec3 + Send + Sync + 'static>(mut self, g: F) -> Self {
        self.grad = Some(Arc::new(g));
        self
    }

    pub fn with_dt<F: Fn(Vec3, f64) -> f64 + Send + Sync + 'static>(mut self, g: F) -> Self {
        self.dt = Some(Arc::new(g));
        self
    }

    pub fn value(&self, x: Vec3, t: f64) -> f64 {
        (self.value)(x, t)
    }

    pub fn grad(&self, x: Vec3, t: f64) -> Vec3 {
        match &self.grad {
            Some(g) => g(x, t),
            None => Vec3::from_fn(|k, _| d1(|s| self.value(x + unit(k) * s, t), 0.0, FD_STEP)),
        }
    }

    pub fn dt(&self, x: Vec3, t: f64) -> f64 {
        match &self.dt {
            Some(g) => g(x, t),
            None => d1(|s| self.value(x, s), t, FD_STEP),
        }
    }

    /// Finite-difference Laplacian.
    pub fn laplacian(&self, x: Vec3, t: f64) -> f64 {
        (0..3).map(|k| d2(|s| self.value(x + unit(k) * s, t), 0.0, FD_STEP)).sum()
    }
}

/// Vector field `A(x, t)`.
#[derive(Clone)]
pub struct VectorField3 {
    f: VectorFn,
}

impl fmt::Debug for VectorField3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("VectorField3")
    }
}

impl VectorField3 {
    pub fn new<F: Fn(Vec3, f64) -> Vec3 + Send + Sync + 'static>(f: F) -> Self {
        Self { f: Arc::new(f) }
    }

    pub fn zero() -> Self {
        Self::new(|_, _| Vec3::zeros())
    }

    /// `A = B x r / 2`, the symmetric gauge of a uniform field.
    pub fn uniform_b(b: Vec3) -> Self {
        Self::new(move |x, _| 0.5 * b.cross(&x))
    }

    pub fn eval(&self, x: Vec3, t: f64) -> Vec3 {
        (self.f)(x, t)
    }

    /// Jacobian `J[i][k] = dA_i/dx_k` by finite differences.
    pub fn jacobian(&self, x: Vec3, t: f64) -> Mat3 {
        let mut j = Mat3::zeros();
        for k in 0..3 {
            let col: Vec3 = d1(|s| self.eval(x + unit(k) * s, t), 0.0, FD_STEP);
            j.set_column(k, &col);
        }
        j
    }

    pub fn curl(&self, x: Vec3, t: f64) -> Vec3 {
        let j = self.jacobian(x, t);
        Vec3::new(j[(2, 1)] - j[(1, 2)], j[(0, 2)] - j[(2, 0)], j[(1, 0)] - j[(0, 1)])
    }

    pub fn divergence(&self, x: Vec3, t: f64) -> f64 {
        self.jacobian(x, t).trace()
    }
}
