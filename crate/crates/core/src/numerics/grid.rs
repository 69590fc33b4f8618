use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform 1-D lattice `x_i = x_min + i * dx`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl Grid1D {
    pub const MIN_POINTS: usize = 8;

    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid("non-finite bounds".into()));
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid(format!("x_min {x_min} >= x_max {x_max}")));
        }
        if n < Self::MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "n = {n}, need at least {}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { x_min, x_max, n })
    }

    /// Grid centred on zero.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }

    /// Index range of the innermost `fraction` of the grid.
    pub fn interior(&self, fraction: f64) -> std::ops::Range<usize> {
        let f = fraction.clamp(0.0, 1.0);
        let drop = ((1.0 - f) * self.n as f64 / 2.0 + 1e-9).floor() as usize;
        drop..self.n - drop
    }

    /// Fractional index of `x`; may fall outside `[0, n-1]`.
    pub fn locate(&self, x: f64) -> f64 {
        (x - self.x_min) / self.spacing()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }

    /// Trapezoid rule over the whole grid.
    pub fn trapezoid(&self, f: &[f64]) -> f64 {
        assert_eq!(f.len(), self.n);
        let inner: f64 = f[1..self.n - 1].iter().sum();
        self.spacing() * (inner + 0.5 * (f[0] + f[self.n - 1]))
    }
}

/// Complex samples of a wave function at a single time.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWaveFunction {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
    pub t: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl SampledWaveFunction {
    pub fn new(grid: Grid1D, values: Vec<Complex64>, t: f64, hbar: f64, mass: f64) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Input(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.n()
            )));
        }
        if !(hbar > 0.0 && mass > 0.0) {
            return Err(Error::Input("hbar and mass must be positive".into()));
        }
        if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Input("non-finite sample".into()));
        }
        Ok(Self {
            grid,
            values,
            t,
            hbar,
            mass,
        })
    }

    /// Samples `psi(x, t)` on every grid point.
    pub fn sample<F>(grid: Grid1D, t: f64, hbar: f64, mass: f64, psi: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let values = grid.points().map(|x| psi(x, t)).collect();
        Self::new(grid, values, t, hbar, mass)
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.grid.trapezoid(&self.density())
    }

    /// `sqrt(dx * sum |a - b|^2)`.
    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Input("grids differ".into()));
        }
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * self.grid.spacing()).sqrt())
    }

    pub fn edge_amplitude(&self) -> f64 {
        let n = self.values.len();
        self.values[0].norm().max(self.values[n - 1].norm())
    }
}
