//! JSON run configurations. Every struct rejects unknown keys; missing keys
//! take the documented defaults.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Reads `path` (or `{}` when absent) into `T`.
pub fn load<T: DeserializeOwned>(path: Option<&Path>) -> Result<T> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?,
        None => "{}".to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite, got {v}")))
    }
}

fn times(name: &str, ts: &[f64]) -> Result<()> {
    if ts.is_empty() {
        return Err(Error::Config(format!("{name} must not be empty")));
    }
    ts.iter().try_for_each(|&t| finite(name, t))
}

fn range(x_min: f64, x_max: f64, points: usize) -> Result<()> {
    finite("x_min", x_min)?;
    finite("x_max", x_max)?;
    if x_min >= x_max {
        return Err(Error::Config(format!("x_min {x_min} must be below x_max {x_max}")));
    }
    if points < 8 {
        return Err(Error::Config(format!("points must be at least 8, got {points}")));
    }
    Ok(())
}

fn resolution(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::Config(format!("grid_n must be at least 16, got {n}")));
    }
    Ok(())
}

macro_rules! defaults {
    ($($f:ident: $t:ty = $v:expr;)*) => {
        $(fn $f() -> $t { $v })*
    };
}

defaults! {
    one: f64 = 1.0;
    amp: f64 = 1.5;
    half: f64 = 0.5;
    wave_times: Vec<f64> = vec![0.0, 0.5, 1.0];
    orbit_times: Vec<f64> = vec![0.0, 1.0, 2.0];
    minus15: f64 = -15.0;
    plus5: f64 = 5.0;
    minus10: f64 = -10.0;
    plus10: f64 = 10.0;
    pts2048: usize = 2048;
    pts1024: usize = 1024;
    pts512: usize = 512;
    grid256: usize = 256;
    grid512: usize = 512;
    seed: u64 = 2024;
}

/// `generate airy_beam`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AiryBeamConfig {
    #[serde(default = "one")]
    pub b: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "minus15")]
    pub x_min: f64,
    #[serde(default = "plus5")]
    pub x_max: f64,
    #[serde(default = "pts2048")]
    pub points: usize,
    #[serde(default = "wave_times")]
    pub times: Vec<f64>,
}

impl AiryBeamConfig {
    pub fn validate(&self) -> Result<()> {
        positive("b", self.b)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        range(self.x_min, self.x_max, self.points)?;
        times("times", &self.times)
    }
}

/// `generate senitzky`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SenitzkyConfig {
    #[serde(default)]
    pub n: usize,
    #[serde(default = "amp")]
    pub a: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "minus10")]
    pub x_min: f64,
    #[serde(default = "plus10")]
    pub x_max: f64,
    #[serde(default = "pts1024")]
    pub points: usize,
    #[serde(default = "orbit_times")]
    pub times: Vec<f64>,
}

impl SenitzkyConfig {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("phi0", self.phi0)?;
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        range(self.x_min, self.x_max, self.points)?;
        times("times", &self.times)
    }
}

/// `generate dispersing`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersingConfig {
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub v0: f64,
    #[serde(default)]
    pub x0: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "minus10")]
    pub x_min: f64,
    #[serde(default = "plus10")]
    pub x_max: f64,
    #[serde(default = "pts1024")]
    pub points: usize,
    #[serde(default = "orbit_times")]
    pub times: Vec<f64>,
}

impl DispersingConfig {
    pub fn validate(&self) -> Result<()> {
        finite("v0", self.v0)?;
        finite("x0", self.x0)?;
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        range(self.x_min, self.x_max, self.points)?;
        times("times", &self.times)
    }
}

/// `generate wigner_field`; the state is chosen by `--preset`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerFieldConfig {
    #[serde(default)]
    pub n: usize,
    #[serde(default = "amp")]
    pub a: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default = "one")]
    pub b: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default)]
    pub t: f64,
    #[serde(default = "grid256")]
    pub grid_n: usize,
}

impl WignerFieldConfig {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("phi0", self.phi0)?;
        finite("t", self.t)?;
        positive("b", self.b)?;
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        resolution(self.grid_n)
    }
}

/// `generate level_curves`; `--preset berry_balazs` or `senitzky`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelCurvesConfig {
    #[serde(default = "one")]
    pub b: f64,
    #[serde(default)]
    pub n: usize,
    #[serde(default = "amp")]
    pub a: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "orbit_times")]
    pub times: Vec<f64>,
    /// Airy level as a fraction of the Wigner peak.
    #[serde(default = "half")]
    pub level_fraction: f64,
    #[serde(default = "grid512")]
    pub grid_n: usize,
}

impl LevelCurvesConfig {
    pub fn validate(&self) -> Result<()> {
        positive("b", self.b)?;
        finite("a", self.a)?;
        finite("phi0", self.phi0)?;
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        times("times", &self.times)?;
        if !(self.level_fraction > 0.0 && self.level_fraction < 1.0) {
            return Err(Error::Config(format!(
                "level_fraction must lie in (0, 1), got {}",
                self.level_fraction
            )));
        }
        resolution(self.grid_n)
    }
}

/// `generate ellipse_family`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseConfig {
    #[serde(default)]
    pub n: usize,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    /// Times in units of `1/omega`.
    #[serde(default = "orbit_times")]
    pub t_tilde: Vec<f64>,
    #[serde(default = "grid512")]
    pub grid_n: usize,
}

impl EllipseConfig {
    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        times("t_tilde", &self.t_tilde)?;
        resolution(self.grid_n)
    }
}

/// `transform`; the map is chosen by `--preset`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    #[serde(default)]
    pub n: usize,
    #[serde(default = "one")]
    pub omega: f64,
    #[serde(default = "one")]
    pub b: f64,
    #[serde(default = "amp")]
    pub a: f64,
    #[serde(default)]
    pub phi0: f64,
    #[serde(default)]
    pub v0: f64,
    #[serde(default)]
    pub x0: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "minus10")]
    pub x_min: f64,
    #[serde(default = "plus10")]
    pub x_max: f64,
    #[serde(default = "pts512")]
    pub points: usize,
    /// Primed times.
    #[serde(default = "wave_times")]
    pub times: Vec<f64>,
}

impl TransformConfig {
    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        positive("b", self.b)?;
        positive("hbar", self.hbar)?;
        positive("mass", self.mass)?;
        for (k, v) in [("a", self.a), ("phi0", self.phi0), ("v0", self.v0), ("x0", self.x0)] {
            finite(k, v)?;
        }
        range(self.x_min, self.x_max, self.points)?;
        times("times", &self.times)
    }
}

/// `verify`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    #[serde(default = "seed")]
    pub seed: u64,
    #[serde(default = "grid512")]
    pub grid_n: usize,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        resolution(self.grid_n)
    }
}
