use std::ops::{Add, Mul};

use num_traits::Zero;

use super::grid::Grid1D;
use crate::error::{Error, Result};

/// Finite-difference weights for the `m`-th derivative at `x0` on nodes `xs`
/// (Fornberg's algorithm). Returns weights for derivatives `0..=m`.
pub fn fornberg_weights(x0: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// One stencil: sample offsets relative to the target index and their weights.
#[derive(Debug, Clone)]
struct Stencil {
    offsets: Vec<isize>,
    weights: Vec<f64>,
}

fn stencil(target: isize, nodes: std::ops::Range<isize>, order: usize, h: f64) -> Stencil {
    let xs: Vec<f64> = nodes.clone().map(|k| k as f64).collect();
    let w = fornberg_weights(target as f64, &xs, order);
    let scale = h.powi(order as i32);
    Stencil {
        offsets: nodes.map(|k| k - target).collect(),
        weights: w[order].iter().map(|v| v / scale).collect(),
    }
}

/// Fourth-order finite-difference derivative of sampled values.
///
/// Central five-point stencils in the interior; six-point one-sided stencils
/// on the two outermost points at each end.
pub fn fd_derivative<T>(values: &[T], grid: &Grid1D, order: usize) -> Result<Vec<T>>
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = grid.n();
    if values.len() != n {
        return Err(Error::Input(format!(
            "{} values for a grid of {n} points",
            values.len()
        )));
    }
    if n < 6 {
        return Err(Error::InvalidGrid("need at least 6 points".into()));
    }
    if order != 1 && order != 2 {
        return Err(Error::Input(format!("derivative order {order} not supported")));
    }
    let h = grid.spacing();
    let width: isize = 6;
    let central = stencil(2, 0..5, order, h);
    let left: Vec<Stencil> = (0..2).map(|t| stencil(t, 0..width, order, h)).collect();
    let right: Vec<Stencil> = (0..2)
        .map(|t| stencil(width - 1 - t, 0..width, order, h))
        .collect();

    let apply = |i: usize, s: &Stencil| -> T {
        s.offsets
            .iter()
            .zip(&s.weights)
            .fold(T::zero(), |acc, (&o, &w)| {
                acc + values[(i as isize + o) as usize] * w
            })
    };

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let v = if i < 2 {
            apply(i, &left[i])
        } else if i + 2 >= n {
            apply(i, &right[n - 1 - i])
        } else {
            apply(i, &central)
        };
        out.push(v);
    }
    Ok(out)
}

/// Fourth-order central difference of a scalar function at a point.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, order: usize) -> f64 {
    let (a, b, c, d) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
    match order {
        1 => (a - 8.0 * b + 8.0 * c - d) / (12.0 * h),
        2 => (-a + 16.0 * b - 30.0 * f(x) + 16.0 * c - d) / (12.0 * h * h),
        _ => panic!("central_diff supports orders 1 and 2"),
    }
}
