use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::field::PhaseSpaceField;
use crate::error::{Error, Result};

/// A contour polyline in `(x, p)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCurve {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    /// Between nodes `(ix, ip)` and `(ix + 1, ip)`.
    AlongX(usize, usize),
    /// Between nodes `(ix, ip)` and `(ix, ip + 1)`.
    AlongP(usize, usize),
}

/// Marching-squares contours of `field` at `level`, linked into polylines.
/// Saddle cells are resolved by the cell-centre average.
pub fn extract_level_curves(field: &PhaseSpaceField, level: f64) -> Vec<LevelCurve> {
    let (nx, np) = (field.nx(), field.np());
    let xs = field.grid.x_axis;
    let ps = field.grid.p_axis;
    let above = |ix: usize, ip: usize| field.at(ix, ip) > level;
    let crossing = |key: EdgeKey| -> (f64, f64) {
        let ((i0, j0), (i1, j1)) = match key {
            EdgeKey::AlongX(i, j) => ((i, j), (i + 1, j)),
            EdgeKey::AlongP(i, j) => ((i, j), (i, j + 1)),
        };
        let (a, b) = (field.at(i0, j0), field.at(i1, j1));
        let s = if a == b { 0.5 } else { (level - a) / (b - a) };
        let x = xs.x(i0) + s * (xs.x(i1) - xs.x(i0));
        let p = ps.x(j0) + s * (ps.x(j1) - ps.x(j0));
        (x, p)
    };

    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for ix in 0..nx - 1 {
        for ip in 0..np - 1 {
            let c = [
                above(ix, ip),
                above(ix + 1, ip),
                above(ix + 1, ip + 1),
                above(ix, ip + 1),
            ];
            let e = [
                EdgeKey::AlongX(ix, ip),
                EdgeKey::AlongP(ix + 1, ip),
                EdgeKey::AlongX(ix, ip + 1),
                EdgeKey::AlongP(ix, ip),
            ];
            // edge k joins corners k and k+1
            let cut: Vec<usize> = (0..4).filter(|&k| c[k] != c[(k + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((e[cut[0]], e[cut[1]])),
                4 => {
                    let centre = 0.25
                        * (field.at(ix, ip)
                            + field.at(ix + 1, ip)
                            + field.at(ix + 1, ip + 1)
                            + field.at(ix, ip + 1));
                    if (centre > level) == c[0] {
                        segments.push((e[0], e[1]));
                        segments.push((e[2], e[3]));
                    } else {
                        segments.push((e[3], e[0]));
                        segments.push((e[1], e[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut touching: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (s, &(a, b)) in segments.iter().enumerate() {
        touching.entry(a).or_default().push(s);
        touching.entry(b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut curves = Vec::new();

    let walk = |start: EdgeKey, used: &mut [bool]| -> Option<LevelCurve> {
        let mut keys = vec![start];
        let mut here = start;
        loop {
            let next = touching[&here].iter().copied().find(|&s| !used[s]);
            let Some(s) = next else { break };
            used[s] = true;
            let (a, b) = segments[s];
            here = if a == here { b } else { a };
            keys.push(here);
            if here == start {
                break;
            }
        }
        if keys.len() < 2 {
            return None;
        }
        let closed = keys.len() > 2 && keys.first() == keys.last();
        if closed {
            keys.pop();
        }
        Some(LevelCurve {
            points: keys.into_iter().map(crossing).collect(),
            closed,
        })
    };

    // open curves start at edges touched once
    let mut ends: Vec<EdgeKey> = touching
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(k, _)| *k)
        .collect();
    ends.sort_by_key(|k| match *k {
        EdgeKey::AlongX(i, j) => (0, i, j),
        EdgeKey::AlongP(i, j) => (1, i, j),
    });
    for k in ends {
        if touching[&k].iter().all(|&s| used[s]) {
            continue;
        }
        if let Some(c) = walk(k, &mut used) {
            curves.push(c);
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            if let Some(c) = walk(segments[s].0, &mut used) {
                curves.push(c);
            }
        }
    }
    curves
}

/// Symmetric Hausdorff distance between two vertex sets.
pub fn hausdorff(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let one_way = |u: &[(f64, f64)], v: &[(f64, f64)]| {
        u.iter()
            .map(|p| {
                v.iter()
                    .map(|q| (p.0 - q.0).hypot(p.1 - q.1))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Points inside `[x0, x1] x [p0, p1]`.
pub fn clip_to_box(points: &[(f64, f64)], x: (f64, f64), p: (f64, f64)) -> Vec<(f64, f64)> {
    points
        .iter()
        .copied()
        .filter(|q| q.0 >= x.0 && q.0 <= x.1 && q.1 >= p.0 && q.1 <= p.1)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleFit {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    /// RMS of `|dist - r|` over the points.
    pub rms: f64,
}

fn least_squares(a: DMatrix<f64>, b: DVector<f64>) -> Result<DVector<f64>> {
    a.svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Input(format!("least squares failed: {e}")))
}

/// Algebraic (Kasa) circle fit.
pub fn fit_circle(points: &[(f64, f64)]) -> Result<CircleFit> {
    if points.len() < 3 {
        return Err(Error::Input("circle fit needs three points".into()));
    }
    let n = points.len();
    let a = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => points[i].0,
        1 => points[i].1,
        _ => 1.0,
    });
    let b = DVector::from_fn(n, |i, _| -(points[i].0.powi(2) + points[i].1.powi(2)));
    let s = least_squares(a, b)?;
    let (cx, cy) = (-0.5 * s[0], -0.5 * s[1]);
    let r = (cx * cx + cy * cy - s[2]).sqrt();
    let rms = (points
        .iter()
        .map(|q| ((q.0 - cx).hypot(q.1 - cy) - r).powi(2))
        .sum::<f64>()
        / n as f64)
        .sqrt();
    Ok(CircleFit { cx, cy, r, rms })
}

/// Least-squares coefficients `(a, b, c)` of the centred conic
/// `a x^2 + b x y + c y^2 = 1`.
pub fn fit_conic(points: &[(f64, f64)]) -> Result<[f64; 3]> {
    if points.len() < 3 {
        return Err(Error::Input("conic fit needs three points".into()));
    }
    let n = points.len();
    let a = DMatrix::from_fn(n, 3, |i, j| {
        let (x, y) = points[i];
        match j {
            0 => x * x,
            1 => x * y,
            _ => y * y,
        }
    });
    let s = least_squares(a, DVector::from_element(n, 1.0))?;
    Ok([s[0], s[1], s[2]])
}

/// Largest coefficient error relative to the largest expected coefficient.
pub fn conic_error(fit: [f64; 3], expected: [f64; 3]) -> f64 {
    let scale = expected.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    fit.iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / scale
}
