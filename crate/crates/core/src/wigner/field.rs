use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, Interp};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseSpaceGrid {
    pub x_axis: Grid1D,
    pub p_axis: Grid1D,
}

impl PhaseSpaceGrid {
    pub fn new(x_axis: Grid1D, p_axis: Grid1D) -> Self {
        Self { x_axis, p_axis }
    }

    pub fn len(&self) -> usize {
        self.x_axis.n() * self.p_axis.n()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Samples `f(x, p)` on every node.
    pub fn tabulate<F: Fn(f64, f64) -> f64>(&self, f: F) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for x in self.x_axis.points() {
            for p in self.p_axis.points() {
                out.push(f(x, p));
            }
        }
        out
    }
}

/// Real field on a phase-space grid, stored row-major as `values[ix * np + ip]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseSpaceField {
    pub grid: PhaseSpaceGrid,
    pub values: Vec<f64>,
    pub t: f64,
    pub hbar: f64,
}

impl PhaseSpaceField {
    pub fn new(grid: PhaseSpaceGrid, values: Vec<f64>, t: f64, hbar: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Input(format!(
                "{} values for a {}x{} grid",
                values.len(),
                grid.x_axis.n(),
                grid.p_axis.n()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Input(format!("non-finite field value {v}")));
        }
        if !(hbar > 0.0) {
            return Err(Error::Input("hbar must be positive".into()));
        }
        Ok(Self {
            grid,
            values,
            t,
            hbar,
        })
    }

    pub fn from_fn<F: Fn(f64, f64) -> f64>(grid: PhaseSpaceGrid, t: f64, hbar: f64, f: F) -> Result<Self> {
        let values = grid.tabulate(f);
        Self::new(grid, values, t, hbar)
    }

    pub fn nx(&self) -> usize {
        self.grid.x_axis.n()
    }

    pub fn np(&self) -> usize {
        self.grid.p_axis.n()
    }

    pub fn at(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.np() + ip]
    }

    /// Interpolated value at `(x, p)`, `None` outside the usable region.
    pub fn sample(&self, x: f64, p: f64, interp: Interp) -> Option<f64> {
        let fx = self.grid.x_axis.locate(x);
        let fp = self.grid.p_axis.locate(p);
        interp.sample2(&self.values, self.nx(), self.np(), fx, fp)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    /// `int dp W` for each x node.
    pub fn marginal_x(&self) -> Vec<f64> {
        let np = self.np();
        (0..self.nx())
            .map(|ix| self.grid.p_axis.trapezoid(&self.values[ix * np..(ix + 1) * np]))
            .collect()
    }

    /// `int dx W` for each p node.
    pub fn marginal_p(&self) -> Vec<f64> {
        let (nx, np) = (self.nx(), self.np());
        (0..np)
            .map(|ip| {
                let col: Vec<f64> = (0..nx).map(|ix| self.values[ix * np + ip]).collect();
                self.grid.x_axis.trapezoid(&col)
            })
            .collect()
    }

    pub fn integral(&self) -> f64 {
        self.grid.x_axis.trapezoid(&self.marginal_x())
    }
}
