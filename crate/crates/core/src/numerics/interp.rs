use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Interpolation kernels for uniformly sampled 2-D fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Interp {
    /// Keys cubic convolution (a = -1/2).
    Cubic,
    /// Lanczos-windowed sinc with `a` lobes.
    Lanczos(usize),
    /// Local Lagrange polynomial through `2a` nodes.
    Lagrange(usize),
}

impl Default for Interp {
    fn default() -> Self {
        Interp::Lagrange(4)
    }
}

fn keys(t: f64) -> f64 {
    let t = t.abs();
    if t < 1.0 {
        1.5 * t * t * t - 2.5 * t * t + 1.0
    } else if t < 2.0 {
        -0.5 * t * t * t + 2.5 * t * t - 4.0 * t + 2.0
    } else {
        0.0
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

fn lagrange_weights(f: f64, start: isize, end: isize) -> Vec<f64> {
    (start..=end)
        .map(|k| {
            (start..=end)
                .filter(|&j| j != k)
                .map(|j| (f - j as f64) / (k - j) as f64)
                .product()
        })
        .collect()
}

impl Interp {
    fn half_width(self) -> isize {
        match self {
            Interp::Cubic => 2,
            Interp::Lanczos(a) | Interp::Lagrange(a) => a as isize,
        }
    }

    fn weight(self, t: f64) -> f64 {
        match self {
            Interp::Cubic => keys(t),
            Interp::Lanczos(a) => {
                let a = a as f64;
                if t.abs() >= a {
                    0.0
                } else {
                    sinc(t) * sinc(t / a)
                }
            }
            Interp::Lagrange(_) => unreachable!("Lagrange weights are built per stencil"),
        }
    }

    /// Base index and normalized weights along one axis, or `None` when the
    /// stencil would leave `0..n`.
    fn taps(self, f: f64, n: usize) -> Option<(usize, Vec<f64>)> {
        if !f.is_finite() || f < -1e-9 || f > (n - 1) as f64 + 1e-9 {
            return None;
        }
        let r = f.round();
        if (f - r).abs() < 1e-12 {
            return Some((r as usize, vec![1.0]));
        }
        let a = self.half_width();
        let i0 = f.floor() as isize;
        let start = i0 - a + 1;
        let end = i0 + a;
        if start < 0 || end >= n as isize {
            return None;
        }
        let w = match self {
            Interp::Cubic => (start..=end).map(|k| self.weight(f - k as f64)).collect(),
            Interp::Lanczos(_) => {
                let mut w: Vec<f64> = (start..=end).map(|k| self.weight(f - k as f64)).collect();
                let s: f64 = w.iter().sum();
                w.iter_mut().for_each(|v| *v /= s);
                w
            }
            Interp::Lagrange(_) => lagrange_weights(f, start, end),
        };
        Some((start as usize, w))
    }

    /// Interpolates row-major `values[ix * ny + iy]` at fractional indices.
    pub fn sample2(self, values: &[f64], nx: usize, ny: usize, fx: f64, fy: f64) -> Option<f64> {
        let (bx, wx) = self.taps(fx, nx)?;
        let (by, wy) = self.taps(fy, ny)?;
        let mut acc = 0.0;
        for (i, a) in wx.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            let row = &values[(bx + i) * ny + by..(bx + i) * ny + by + wy.len()];
            let r: f64 = row.iter().zip(&wy).map(|(v, b)| v * b).sum();
            acc += a * r;
        }
        Some(acc)
    }

    /// Interpolates 1-D samples at a fractional index.
    pub fn sample1(self, values: &[f64], f: f64) -> Option<f64> {
        let (b, w) = self.taps(f, values.len())?;
        Some(values[b..b + w.len()].iter().zip(&w).map(|(v, c)| v * c).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_reproduces_nodes_and_lines() {
        let v: Vec<f64> = (0..10).map(|i| 2.0 * i as f64 - 1.0).collect();
        assert_eq!(Interp::Cubic.sample1(&v, 4.0).unwrap(), 7.0);
        assert!((Interp::Cubic.sample1(&v, 4.3).unwrap() - 7.6).abs() < 1e-12);
    }

    #[test]
    fn kernels_track_smooth_signal() {
        let h = 0.05;
        let v: Vec<f64> = (0..200).map(|i| (-(i as f64 * h - 5.0).powi(2)).exp()).collect();
        let f = 101.37;
        let exact = (-(f * h - 5.0f64).powi(2)).exp();
        let got = Interp::Lanczos(6).sample1(&v, f).unwrap();
        assert!((got - exact).abs() < 1e-4);
        let got = Interp::Lagrange(4).sample1(&v, f).unwrap();
        assert!((got - exact).abs() < 1e-8);
    }

    #[test]
    fn refuses_stencils_off_the_grid() {
        let v = vec![1.0; 10];
        assert!(Interp::Lanczos(4).sample1(&v, 1.5).is_none());
        assert!(Interp::Cubic.sample1(&v, -0.5).is_none());
        assert_eq!(Interp::Lanczos(4).sample1(&v, 0.0), Some(1.0));
    }
}
