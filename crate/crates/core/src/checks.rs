//! Named verification checks. Each returns a scalar metric compared against
//! a tolerance by its caller, plus free-form metadata.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rustfft::FftPlanner;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::datasets::{AiryScene, EllipseScene, SenitzkyScene};
use crate::error::{Error, Result};
use crate::fields3d::{
    axis_rotation, check_u1_invariance, form_preservation_residual, primed_vector_potential, sample_events,
    transform_magnetic_field, transform_scalar_potential, Frame3D, FrameSpec, Jet3, ScalarField, Vec3, VectorField3,
    DEFAULT_SAMPLES,
};
use crate::moyal::{
    moyal_bracket, nonlinear_ct_example, potential_law_agreement, q, quadratic_collapse, star_product,
    stationary_flow_residual, PolySymbol, RationalSymbol,
};
use crate::numerics::{Grid1D, SampledWaveFunction};
use crate::schrodinger::{propagate, residual, DEFAULT_DT_PROBE};
use crate::transform::{berry_balazs_params, free_ho_params, senitzky_params, Jet, TransformParams};
use crate::wavefields::{airy_beam, dispersing_free_state, ho_eigenstate, ClassicalPath, Potential1D, SenitzkyState};
use crate::wigner::{check_wolW, PhaseSpaceGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Transforms,
    Wigner,
    Moyal,
    Fields3d,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Transforms, Suite::Wigner, Suite::Moyal, Suite::Fields3d];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Transforms => "transforms",
            Suite::Wigner => "wigner",
            Suite::Moyal => "moyal",
            Suite::Fields3d => "fields3d",
        }
    }
}

/// Knobs shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    /// Phase-space resolution of the Wigner checks.
    pub grid_n: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Self { grid_n: 512, seed: 2024 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub metric: f64,
    pub metadata: Map<String, Value>,
}

impl Measurement {
    fn new(metric: f64) -> Self {
        Self {
            metric,
            metadata: Map::new(),
        }
    }

    fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.metadata.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
        self
    }
}

pub type CheckFn = fn(&Settings) -> Result<Measurement>;

/// A check with its default tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub tolerance: f64,
    pub run: CheckFn,
}

/// Every check, in suite order.
pub fn catalogue() -> Vec<Check> {
    use Suite::*;
    let c = |name, suite, tolerance, run: CheckFn| Check {
        name,
        suite,
        tolerance,
        run,
    };
    vec![
        c("airy_beam_residual", Transforms, 1e-5, airy_beam_residual),
        c("senitzky_residual", Transforms, 1e-5, senitzky_residual),
        c("senitzky_modulus_rigidity", Transforms, 1e-10, senitzky_modulus_rigidity),
        c("chain_berry_balazs", Transforms, 1e-4, chain_berry_balazs),
        c("chain_senitzky", Transforms, 1e-4, chain_senitzky),
        c("chain_free_ho", Transforms, 1e-4, chain_free_ho),
        c("free_dispersion_widths", Transforms, 1e-4, free_dispersion_widths),
        c("wigner_law_senitzky", Wigner, 1e-4, wigner_law_senitzky),
        c("wigner_law_free_ho", Wigner, 1e-4, wigner_law_free_ho),
        c("parabola_rigidity_cells", Wigner, 2.0, parabola_rigidity_cells),
        c("circle_radius_spread", Wigner, 1e-3, circle_radius_spread),
        c("circle_centre_spread", Wigner, 1e-3, circle_centre_spread),
        c("ellipse_coefficients", Wigner, 1e-2, ellipse_coefficients),
        c("canonical_commutator", Moyal, 0.0, canonical_commutator),
        c("quadratic_collapse", Moyal, 0.0, quadratic_collapse_suite),
        c("nonlinear_ct_example", Moyal, 0.0, nonlinear_ct),
        c("potential_law_senitzky", Moyal, 1e-12, potential_law_senitzky),
        c("potential_law_free_ho", Moyal, 1e-12, potential_law_free_ho),
        c("stationary_moyal_flow", Moyal, 1e-5, stationary_moyal_flow),
        c("magnetic_field_curl", Fields3d, 1e-6, magnetic_field_curl),
        c("centrifugal_potential", Fields3d, 1e-12, centrifugal_potential),
        c("u1_gauge_invariance", Fields3d, 1e-6, u1_gauge_invariance),
        c("form_preservation_3d", Fields3d, 1e-4, form_preservation_3d),
    ]
}

/// Looks a check up by name.
pub fn find(name: &str) -> Option<Check> {
    catalogue().into_iter().find(|c| c.name == name)
}

pub fn airy_beam_residual(_: &Settings) -> Result<Measurement> {
    let grid = Grid1D::new(-15.0, 5.0, 2048)?;
    let mut per_t = Vec::new();
    for t in [0.0, 0.5, 1.0] {
        let r = residual(
            |x, t| airy_beam(x, t, 1.0, 1.0, 1.0),
            &Potential1D::Free,
            &grid,
            t,
            1.0,
            1.0,
            DEFAULT_DT_PROBE,
        )?;
        per_t.push(r.max_abs);
    }
    Ok(Measurement::new(per_t.iter().copied().fold(0.0, f64::max)).with("per_time", per_t))
}

fn senitzky_state(n: usize) -> Result<SenitzkyState> {
    SenitzkyState::new(n, ClassicalPath::harmonic(1.5, 0.0, 1.0, (-50.0, 50.0)), 1.0, 1.0, 1.0)
}

pub fn senitzky_residual(_: &Settings) -> Result<Measurement> {
    let grid = Grid1D::new(-12.0, 12.0, 2048)?;
    let v = Potential1D::harmonic(1.0)?;
    let mut worst = 0.0f64;
    for n in [0, 1, 3] {
        let st = senitzky_state(n)?;
        for t in [0.0, 0.9, 2.2] {
            let r = residual(|x, t| st.eval(x, t), &v, &grid, t, 1.0, 1.0, DEFAULT_DT_PROBE)?;
            worst = worst.max(r.max_abs);
        }
    }
    Ok(Measurement::new(worst).with("levels", [0, 1, 3]).with("amplitude", 1.5))
}

pub fn senitzky_modulus_rigidity(_: &Settings) -> Result<Measurement> {
    let grid = Grid1D::symmetric(8.0, 801)?;
    let mut worst = 0.0f64;
    for n in [0, 1, 3] {
        let st = senitzky_state(n)?;
        let path = st.path().clone();
        for t in [0.7, 2.3, 5.0] {
            for x in grid.points() {
                let moved = st.eval(x, t)?.norm_sqr();
                let still = st.eval(x - path.q(t) + path.q(0.0), 0.0)?.norm_sqr();
                worst = worst.max((moved - still).abs());
            }
        }
    }
    Ok(Measurement::new(worst))
}

/// L2 distance after propagating the transformed initial state numerically
/// from `tp0` to `tp1` against the transformed state at `tp1`.
fn chain<F>(
    params: &TransformParams,
    psi: F,
    v_prime: &Potential1D,
    grid: Grid1D,
    tp: (f64, f64),
    steps: usize,
) -> Result<Measurement>
where
    F: Fn(f64, f64) -> Result<Complex64> + Copy,
{
    let (h, m) = (params.hbar(), params.mass());
    let at = |tp: f64| -> Result<SampledWaveFunction> {
        let values = grid
            .points()
            .map(|xp| params.transform_wavefunction(psi, xp, tp))
            .collect::<Result<Vec<_>>>()?;
        SampledWaveFunction::new(grid, values, tp, h, m)
    };
    let start = at(tp.0)?;
    let numeric = propagate(&start, v_prime, tp.1, steps)?;
    let exact = at(tp.1)?;
    Ok(Measurement::new(numeric.l2_distance(&exact)?)
        .with("t_prime", [tp.0, tp.1])
        .with("steps", steps)
        .with("edge_amplitude", exact.edge_amplitude()))
}

/// Free Gaussian of initial variance `s2`.
fn free_gaussian(x: f64, t: f64, s2: f64, hbar: f64, mass: f64) -> Complex64 {
    let z = Complex64::new(1.0, hbar * t / (2.0 * mass * s2));
    (2.0 * PI * s2).powf(-0.25) * z.powf(-0.5) * (-x * x / (4.0 * s2 * z)).exp()
}

pub fn chain_berry_balazs(_: &Settings) -> Result<Measurement> {
    let params = berry_balazs_params(1.0, 1.0, 1.0)?;
    let v = Potential1D::Linear { slope: 0.5 };
    let psi = |x: f64, t: f64| Ok(free_gaussian(x, t, 1.0, 1.0, 1.0));
    chain(&params, psi, &v, Grid1D::symmetric(16.0, 2048)?, (0.0, 2.0), 2000)
}

pub fn chain_senitzky(_: &Settings) -> Result<Measurement> {
    let params = senitzky_params(1.5, 0.0, 1.0, 1.0, 1.0)?.inverse();
    let v = Potential1D::harmonic(1.0)?;
    let psi = |x: f64, t: f64| ho_eigenstate(1, x, t, 1.0, 1.0, 1.0);
    chain(&params, psi, &v, Grid1D::symmetric(12.0, 2048)?, (0.0, 2.0 * PI), 8192)
}

pub fn chain_free_ho(_: &Settings) -> Result<Measurement> {
    let params = free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0)?;
    let psi = |x: f64, t: f64| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0);
    chain(&params, psi, &Potential1D::Free, Grid1D::symmetric(20.0, 2048)?, (0.0, 1.0), 2000)
}

fn position_variance(grid: &Grid1D, psi: &[Complex64]) -> f64 {
    let dens: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
    let norm = grid.trapezoid(&dens);
    let moment = |k: i32| grid.trapezoid(&grid.points().zip(&dens).map(|(x, d)| d * x.powi(k)).collect::<Vec<_>>()) / norm;
    moment(2) - moment(1).powi(2)
}

fn momentum_variance(grid: &Grid1D, psi: &[Complex64], hbar: f64) -> f64 {
    let n = psi.len();
    let mut buf = psi.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let dk = 2.0 * PI / (n as f64 * grid.spacing());
    let (mut w, mut m1, mut m2) = (0.0, 0.0, 0.0);
    for (j, z) in buf.iter().enumerate() {
        let k = if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk;
        let d = z.norm_sqr();
        w += d;
        m1 += d * hbar * k;
        m2 += d * (hbar * k).powi(2);
    }
    m2 / w - (m1 / w).powi(2)
}

pub fn free_dispersion_widths(_: &Settings) -> Result<Measurement> {
    let (omega, hbar, m) = (1.0, 1.0, 1.0);
    let grid = Grid1D::symmetric(40.0, 8192)?;
    let mut worst = 0.0f64;
    for n in [0usize, 1] {
        for wt in [0.0, 1.0, 2.0] {
            let psi: Vec<Complex64> = grid
                .points()
                .map(|x| dispersing_free_state(n, x, wt / omega, 0.5, 0.2, omega, hbar, m))
                .collect::<Result<_>>()?;
            let nh = n as f64 + 0.5;
            let dx2 = hbar / (m * omega) * nh * (1.0 + wt * wt);
            let dp2 = hbar * m * omega * nh;
            worst = worst
                .max((position_variance(&grid, &psi) / dx2 - 1.0).abs())
                .max((momentum_variance(&grid, &psi, hbar) / dp2 - 1.0).abs());
        }
    }
    Ok(Measurement::new(worst))
}

fn law_grid(s: &Settings) -> Result<PhaseSpaceGrid> {
    Ok(PhaseSpaceGrid::new(Grid1D::symmetric(9.0, s.grid_n)?, Grid1D::symmetric(6.0, s.grid_n)?))
}

pub fn wigner_law_senitzky(s: &Settings) -> Result<Measurement> {
    let params = senitzky_params(1.0, 0.0, 1.0, 1.0, 1.0)?;
    let st = SenitzkyState::new(1, ClassicalPath::harmonic(1.0, 0.0, 1.0, (-50.0, 50.0)), 1.0, 1.0, 1.0)?;
    let r = check_wolW(|x, t| st.eval(x, t), &params, PI / 4.0, &law_grid(s)?)?;
    Ok(Measurement::new(r.max_abs).with("compared", r.compared).with("grid_n", s.grid_n))
}

pub fn wigner_law_free_ho(s: &Settings) -> Result<Measurement> {
    let params = free_ho_params(0.5, 0.2, 1.0, 1.0, 1.0)?;
    let r = check_wolW(|x, t| ho_eigenstate(0, x, t, 1.0, 1.0, 1.0), &params, 0.5, &law_grid(s)?)?;
    Ok(Measurement::new(r.max_abs).with("compared", r.compared).with("grid_n", s.grid_n))
}

pub fn parabola_rigidity_cells(s: &Settings) -> Result<Measurement> {
    let scene = AiryScene::new(1.0, 1.0, 1.0, s.grid_n)?;
    let times = [0.0, 1.0, 2.0];
    let slices = scene.parabolas(&times)?;
    Ok(Measurement::new(scene.rigidity_in_cells(&slices)?).with("times", times))
}

fn circles(s: &Settings) -> Result<crate::datasets::CircleGeometry> {
    let scene = SenitzkyScene::new(0, 1.5, 0.0, 1.0, 1.0, 1.0, s.grid_n)?;
    scene.geometry(&scene.circles(&[0.0, 1.0, 2.0])?)
}

pub fn circle_radius_spread(s: &Settings) -> Result<Measurement> {
    let g = circles(s)?;
    let radii: Vec<f64> = g.fits.iter().map(|f| f.r).collect();
    Ok(Measurement::new(g.radius_spread).with("radii", radii))
}

pub fn circle_centre_spread(s: &Settings) -> Result<Measurement> {
    let g = circles(s)?;
    let centres: Vec<[f64; 2]> = g.fits.iter().map(|f| [f.cx, f.cy]).collect();
    Ok(Measurement::new(g.centre_spread).with("centres", centres))
}

pub fn ellipse_coefficients(s: &Settings) -> Result<Measurement> {
    let scene = EllipseScene::new(0, 1.0, 1.0, 1.0, s.grid_n)?;
    let fits = scene.fits(&scene.ellipses(&[0.0, 1.0, 2.0])?)?;
    let worst = fits.iter().map(|f| f.error).fold(0.0, f64::max);
    Ok(Measurement::new(worst).with("fits", fits))
}

fn indicator(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

pub fn canonical_commutator(_: &Settings) -> Result<Measurement> {
    let (x, p) = (RationalSymbol::x(), RationalSymbol::p());
    let a = star_product(&x, &p)?;
    let b = star_product(&p, &x)?;
    let re = a.re - b.re;
    let im = a.im - b.im;
    let ok = re.is_zero() && im == RationalSymbol::hbar();
    Ok(Measurement::new(indicator(ok))
        .with("re", re.to_json())
        .with("im", im.to_json())
        .with("bracket", moyal_bracket(&x, &p)?.to_json()))
}

fn random_symbol(rng: &mut StdRng, max_deg: u32, terms: usize) -> RationalSymbol {
    let mut s = RationalSymbol::zero();
    for _ in 0..terms {
        let d = rng.random_range(0..=max_deg);
        let i = rng.random_range(0..=d);
        let c = q(rng.random_range(-9..=9), rng.random_range(1..=6));
        s = s + RationalSymbol::monomial(c, i, d - i);
    }
    s
}

pub fn quadratic_collapse_suite(s: &Settings) -> Result<Measurement> {
    let mut rng = StdRng::seed_from_u64(s.seed);
    let mut failures = 0usize;
    for _ in 0..100 {
        let f = random_symbol(&mut rng, 2, 4);
        let g = random_symbol(&mut rng, 6, 5);
        if !quadratic_collapse(&f, &g)? {
            failures += 1;
        }
    }
    Ok(Measurement::new(failures as f64).with("pairs", 100).with("seed", s.seed))
}

pub fn nonlinear_ct(_: &Settings) -> Result<Measurement> {
    let r = nonlinear_ct_example()?;
    let ok = !r.p12_equal && r.identified_p_equal && !r.identified_m_equal;
    let mut m = Measurement::new(indicator(ok));
    if let Value::Object(map) = serde_json::to_value(&r)? {
        m.metadata = map;
    }
    Ok(m)
}

fn potential_law(params: &TransformParams, omega: f64, mass: f64) -> Result<Measurement> {
    let v = Potential1D::Harmonic { omega };
    let vs = PolySymbol::monomial(0.5 * mass * omega * omega, 2, 0);
    let times = [-0.7, 0.0, 0.3, 0.9];
    let mut worst = 0.0f64;
    for t in times {
        worst = worst.max(potential_law_agreement(params, &vs, &v, t)?);
    }
    Ok(Measurement::new(worst).with("times", times))
}

pub fn potential_law_senitzky(_: &Settings) -> Result<Measurement> {
    let (omega, m) = (1.3, 0.8);
    potential_law(&senitzky_params(1.5, 0.2, omega, 1.0, m)?, omega, m)
}

pub fn potential_law_free_ho(_: &Settings) -> Result<Measurement> {
    let (omega, m) = (1.3, 0.8);
    potential_law(&free_ho_params(0.4, -0.3, omega, 1.0, m)?, omega, m)
}

pub fn stationary_moyal_flow(_: &Settings) -> Result<Measurement> {
    let axis = Grid1D::symmetric(6.0, 601)?;
    let grid = PhaseSpaceGrid::new(axis, axis);
    let per_n: Vec<f64> = (0..=3)
        .map(|n| stationary_flow_residual(n, 1.0, 1.0, 1.0, &grid))
        .collect::<Result<_>>()?;
    Ok(Measurement::new(per_n.iter().copied().fold(0.0, f64::max)).with("per_level", per_n))
}

/// Breathing, drifting frame turning about two axes, with a gauge phase.
pub fn rotating_frame() -> Result<Frame3D> {
    let spec = FrameSpec::from_json(
        r#"{
            "gamma": {"kind": "sine", "amplitude": 0.2, "omega": 0.7},
            "beta": [{"poly": [0, 0, 0.3]}, {"trig": [{"amplitude": 0.1, "omega": 1.0}]}, {}],
            "rotations": [{"axis": [0, 0, 1], "rate": 0.5}, {"axis": [1, 0, 0], "rate": 0.3}],
            "window": [-2, 2]
        }"#,
    )?;
    Ok(spec
        .build()?
        .with_alpha(ScalarField::new(|x, t| 0.05 * x[0] * x[1] * t + 0.02 * x[2] * x[2])))
}

/// Spreading Gaussian solving the free equation with `hbar = m = 1`.
pub fn gaussian_3d(x: Vec3, t: f64) -> Complex64 {
    let s2 = 0.8f64;
    let z = Complex64::new(1.0, t / (2.0 * s2));
    (2.0 * PI * s2).powf(-0.75) * z.powf(-1.5) * (-x.norm_squared() / (4.0 * s2 * z)).exp()
}

pub fn magnetic_field_curl(s: &Settings) -> Result<Measurement> {
    let frame = rotating_frame()?;
    let b0 = Vec3::new(0.0, 0.0, 0.8);
    let a = VectorField3::uniform_b(b0);
    let b = VectorField3::new(move |_, _| b0);
    let mut worst = 0.0f64;
    for (x, t) in sample_events(20, 1.5, (-1.0, 1.0), s.seed) {
        let closed = transform_magnetic_field(&frame, &b, x, t)?;
        let curl = primed_vector_potential(&frame, &a, t).curl(frame.map_point(x, t), t);
        worst = worst.max((closed - curl).amax());
    }
    Ok(Measurement::new(worst))
}

pub fn centrifugal_potential(s: &Settings) -> Result<Measurement> {
    let (w, m) = (0.7, 1.3);
    let spin = Frame3D::new(
        Arc::new(|_| Jet::constant(1.0)),
        Arc::new(|_| Jet3::zero()),
        Arc::new(move |t| axis_rotation(Vec3::z(), w * t)),
        1.0,
        m,
        (-10.0, 10.0),
    )?;
    let mut worst = 0.0f64;
    for (x, t) in sample_events(50, 2.0, (-1.0, 1.0), s.seed) {
        let vp = transform_scalar_potential(&spin, &ScalarField::zero(), &VectorField3::zero(), x, t)?;
        let expected = -0.5 * m * Vec3::new(0.0, 0.0, w).cross(&x).norm_squared();
        worst = worst.max((vp - expected).abs() / (1.0 + expected.abs()));
    }
    Ok(Measurement::new(worst))
}

pub fn u1_gauge_invariance(s: &Settings) -> Result<Measurement> {
    let v = ScalarField::new(|x, _| 0.3 * x.norm_squared());
    let a = VectorField3::uniform_b(Vec3::new(0.0, 0.0, 0.5));
    let events = sample_events(60, 2.0, (0.0, 1.0), s.seed);
    let lambdas = [
        ScalarField::new(|_, _| 1.3),
        ScalarField::new(|x, _| 0.8 * x[0]),
        ScalarField::new(|x, t| 0.2 * x[0] * x[1] * t + 0.1 * x[2] * x[2] - 0.3 * t * t),
    ];
    let per: Vec<f64> = lambdas
        .iter()
        .map(|l| check_u1_invariance(&v, &a, gaussian_3d, l, &events, 1.0, 1.0).max_abs)
        .collect();
    Ok(Measurement::new(per.iter().copied().fold(0.0, f64::max)).with("per_gauge", per))
}

pub fn form_preservation_3d(s: &Settings) -> Result<Measurement> {
    let events = sample_events(DEFAULT_SAMPLES, 1.5, (-0.5, 1.0), s.seed);
    let r = form_preservation_residual(
        &rotating_frame()?,
        gaussian_3d,
        &ScalarField::zero(),
        &VectorField3::zero(),
        &events,
    )?;
    Ok(Measurement::new(r.max_abs).with("points", r.points))
}

/// Runs `check`, mapping a failure to run into an error string.
pub fn run_check(check: &Check, settings: &Settings) -> std::result::Result<Measurement, String> {
    (check.run)(settings).map_err(|e: Error| e.to_string())
}
