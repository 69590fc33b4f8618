//! CSV and JSON writers for the dataset schemas.

use std::io::Write;

use serde_json::{json, Value};

use crate::datasets::{CurveSlice, WaveRow};
use crate::error::Result;
use crate::wigner::PhaseSpaceField;

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Seventeen significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_wave(out: &mut dyn Write, rows: &[WaveRow], format: Format) -> Result<()> {
    let with_v = rows.iter().any(|r| r.v.is_some());
    match format {
        Format::Csv => {
            out.write_all(if with_v { b"x,t,re,im,abs2,v\n" } else { b"x,t,re,im,abs2\n" })?;
            for r in rows {
                let mut line = [r.x, r.t, r.psi.re, r.psi.im, r.psi.norm_sqr()].map(num).join(",");
                if with_v {
                    line.push(',');
                    line.push_str(&num(r.v.unwrap_or(f64::NAN)));
                }
                line.push('\n');
                out.write_all(line.as_bytes())?;
            }
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut o = json!({"x": r.x, "t": r.t, "re": r.psi.re, "im": r.psi.im, "abs2": r.psi.norm_sqr()});
                    if with_v {
                        o["v"] = json!(r.v);
                    }
                    o
                })
                .collect();
            write_json(out, &Value::Array(items))?;
        }
    }
    Ok(())
}

pub fn write_wigner(out: &mut dyn Write, w: &PhaseSpaceField, format: Format) -> Result<()> {
    let (xs, ps) = (w.grid.x_axis, w.grid.p_axis);
    match format {
        Format::Csv => {
            out.write_all(b"x,p,w\n")?;
            for (i, x) in xs.points().enumerate() {
                for (j, p) in ps.points().enumerate() {
                    writeln!(out, "{},{},{}", num(x), num(p), num(w.at(i, j)))?;
                }
            }
        }
        Format::Json => {
            let rows: Vec<Vec<f64>> = (0..w.nx()).map(|i| (0..w.np()).map(|j| w.at(i, j)).collect()).collect();
            let v = json!({"t": w.t, "x": xs.to_vec(), "p": ps.to_vec(), "w": rows});
            write_json(out, &v)?;
        }
    }
    Ok(())
}

pub fn write_curves(out: &mut dyn Write, slices: &[CurveSlice], format: Format) -> Result<()> {
    match format {
        Format::Csv => {
            out.write_all(b"curve_id,vertex_id,x,p\n")?;
            for (id, s) in slices.iter().enumerate() {
                for (k, &(x, p)) in s.curve.points.iter().enumerate() {
                    writeln!(out, "{id},{k},{},{}", num(x), num(p))?;
                }
            }
        }
        Format::Json => {
            let items: Vec<Value> = slices
                .iter()
                .enumerate()
                .map(|(id, s)| {
                    json!({"curve_id": id, "t": s.t, "level": s.level, "closed": s.curve.closed, "points": s.curve.points})
                })
                .collect();
            write_json(out, &Value::Array(items))?;
        }
    }
    Ok(())
}
