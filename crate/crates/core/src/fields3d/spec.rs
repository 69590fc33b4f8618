use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{Mat3, Vec3};
use super::frame::{axis_rotation, Frame3D, Jet3};
use crate::error::{Error, Result};
use crate::transform::Jet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GammaSpec {
    Constant { value: f64 },
    /// `cos(omega t)`.
    Cosine { omega: f64 },
    /// `1 + amplitude sin(omega t)`.
    Sine { amplitude: f64, omega: f64 },
}

impl GammaSpec {
    pub fn jet(&self, t: f64) -> Jet {
        match *self {
            GammaSpec::Constant { value } => Jet::constant(value),
            GammaSpec::Cosine { omega } => {
                let (s, c) = (omega * t).sin_cos();
                Jet::new(c, -omega * s, -omega * omega * c)
            }
            GammaSpec::Sine { amplitude, omega } => {
                let (s, c) = (omega * t).sin_cos();
                Jet::new(1.0 + amplitude * s, amplitude * omega * c, -amplitude * omega * omega * s)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTerm {
    pub amplitude: f64,
    pub omega: f64,
    #[serde(default)]
    pub phase: f64,
}

/// `sum_k poly[k] t^k + sum amplitude sin(omega t + phase)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    #[serde(default)]
    pub poly: Vec<f64>,
    #[serde(default)]
    pub trig: Vec<TrigTerm>,
}

impl ComponentSpec {
    pub fn jet(&self, t: f64) -> Jet {
        let mut j = Jet::default();
        for (k, &c) in self.poly.iter().enumerate() {
            let k = k as i32;
            j.v += c * t.powi(k);
            if k >= 1 {
                j.d1 += c * k as f64 * t.powi(k - 1);
            }
            if k >= 2 {
                j.d2 += c * (k * (k - 1)) as f64 * t.powi(k - 2);
            }
        }
        for term in &self.trig {
            let (s, c) = (term.omega * t + term.phase).sin_cos();
            j.v += term.amplitude * s;
            j.d1 += term.amplitude * term.omega * c;
            j.d2 -= term.amplitude * term.omega * term.omega * s;
        }
        j
    }
}

/// Rotation by `rate t + angle` about `axis`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationSpec {
    pub axis: [f64; 3],
    pub rate: f64,
    #[serde(default)]
    pub angle: f64,
}

/// JSON description of a [`Frame3D`]; rotations compose left to right.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSpec {
    pub gamma: GammaSpec,
    #[serde(default)]
    pub beta: [ComponentSpec; 3],
    #[serde(default)]
    pub rotations: Vec<RotationSpec>,
    pub window: (f64, f64),
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
}

fn one() -> f64 {
    1.0
}

impl FrameSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("frame spec: {e}")))
    }

    pub fn build(&self) -> Result<Frame3D> {
        for r in &self.rotations {
            if Vec3::from(r.axis).norm() == 0.0 {
                return Err(Error::Config("rotation axis must be non-zero".into()));
            }
        }
        let gamma = self.gamma.clone();
        let beta = self.beta.clone();
        let rots = self.rotations.clone();
        let rots2 = self.rotations.clone();
        let frame = Frame3D::new(
            Arc::new(move |t| gamma.jet(t)),
            Arc::new(move |t| {
                let js: Vec<Jet> = beta.iter().map(|c| c.jet(t)).collect();
                Jet3 {
                    v: Vec3::new(js[0].v, js[1].v, js[2].v),
                    d1: Vec3::new(js[0].d1, js[1].d1, js[2].d1),
                    d2: Vec3::new(js[0].d2, js[1].d2, js[2].d2),
                }
            }),
            Arc::new(move |t| {
                rots.iter()
                    .fold(Mat3::identity(), |acc, r| acc * axis_rotation(r.axis.into(), r.rate * t + r.angle))
            }),
            self.hbar,
            self.mass,
            self.window,
        )?;
        // product rule over the factors, d/dt R_k = rate K R_k
        frame.with_rotation_rate(Arc::new(move |t| {
            let factors: Vec<Mat3> = rots2
                .iter()
                .map(|r| axis_rotation(r.axis.into(), r.rate * t + r.angle))
                .collect();
            let mut total = Mat3::zeros();
            for (k, r) in rots2.iter().enumerate() {
                let gen = Vec3::from(r.axis).normalize().cross_matrix() * r.rate;
                let mut prod = Mat3::identity();
                for (j, f) in factors.iter().enumerate() {
                    prod *= if j == k { gen * f } else { *f };
                }
                total += prod;
            }
            total
        }))
    }
}
