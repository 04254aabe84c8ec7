//! Parameter sweeps over the `(y_m, γ)` plane.

use crate::error::{Error, Result};
use crate::format_number;
use crate::gate::{cat_diagnostics, cat_from_state, exact_output, stationary_output, GateParams};
use crate::numerics::GridSpec;
use crate::states::{fidelity, fock_half_span, make_fock, FockSpec, WaveFunction};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt::Write as _;

/// Quantity tabulated per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `1 − F(exact, stationary-phase)`.
    InfidelitySt,
    /// `1 − F(exact, perfect cat)`.
    InfidelityCat,
    Theta,
    Lambda,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::InfidelitySt => "infidelity_st",
            Metric::InfidelityCat => "infidelity_cat",
            Metric::Theta => "theta",
            Metric::Lambda => "lambda",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "infidelity_st" => Ok(Metric::InfidelitySt),
            "infidelity_cat" => Ok(Metric::InfidelityCat),
            "theta" => Ok(Metric::Theta),
            "lambda" => Ok(Metric::Lambda),
            other => Err(Error::Parse(format!(
                "unknown metric `{other}` (expected infidelity_st, infidelity_cat, theta or lambda)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub y_m_axis: GridSpec,
    pub gamma_axis: GridSpec,
    pub input: FockSpec,
    pub metric: Metric,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.y_m_axis.validate()?;
        self.gamma_axis.validate()?;
        if self.gamma_axis.x_min <= 0.0 {
            return Err(Error::Precondition(format!(
                "gamma axis must start above 0, got {}",
                self.gamma_axis.x_min
            )));
        }
        Ok(())
    }

    pub fn cells(&self) -> usize {
        self.y_m_axis.n_points * self.gamma_axis.n_points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    DegenerateOutcome,
    Domain,
    Other,
}

impl FailureKind {
    fn of(e: &Error) -> Self {
        match e {
            Error::DegenerateOutcome(_) => FailureKind::DegenerateOutcome,
            Error::Domain(_) => FailureKind::Domain,
            _ => FailureKind::Other,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FailureKind::DegenerateOutcome => "degenerate_outcome",
            FailureKind::Domain => "domain",
            FailureKind::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub y_m_index: usize,
    pub gamma_index: usize,
    pub kind: FailureKind,
    pub message: String,
}

/// `(y_m, γ, value)` of a single cell.
pub type CellValue = (f64, f64, f64);

/// Tabulated metric; `values[iy * gamma_axis.n_points + ig]` is the cell at
/// `(y_m_axis[iy], gamma_axis[ig])`. Failed cells hold NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Coordinate grid shared by every cell.
    pub grid: GridSpec,
    #[serde(with = "nan_as_null")]
    pub values: Vec<f64>,
    pub failures: Vec<CellFailure>,
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let opt: Vec<Option<f64>> = v.iter().map(|x| x.is_finite().then_some(*x)).collect();
        opt.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let opt: Vec<Option<f64>> = Vec::deserialize(d)?;
        Ok(opt.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
    }
}

/// Coordinate grid used for every cell of `spec`.
///
/// The span covers the Fock input with margin (at least `[-12, 12]`); the
/// spacing (at most 0.01) resolves both the largest local Airy wavenumber
/// `√((y_m,max + L)/3γ_min)` with 20 points per wavelength and the largest
/// copy displacement `p⁺` below Nyquist.
pub fn sweep_grid(spec: &SweepSpec) -> GridSpec {
    let half = fock_half_span(spec.input).max(12.0).ceil();
    let y_max = spec.y_m_axis.x_max.max(spec.y_m_axis.x_min);
    let gamma_min = spec.gamma_axis.x_min;
    let k_max = ((y_max + half).max(0.0) / (3.0 * gamma_min)).sqrt();
    let p_need = (y_max.max(0.0) / (3.0 * gamma_min)).sqrt() + spec.input.extent() + 6.0;
    let mut dx = 0.01f64;
    if k_max > 0.0 {
        dx = dx.min(2.0 * PI / k_max / 20.0);
    }
    dx = dx.min(PI / p_need);
    let mut intervals = (2.0 * half / dx).ceil() as usize;
    if intervals % 2 == 1 {
        intervals += 1;
    }
    GridSpec { x_min: -half, x_max: half, n_points: intervals + 1 }
}

fn evaluate_cell(metric: Metric, input: &WaveFunction, params: &GateParams) -> Result<f64> {
    match metric {
        Metric::Theta => Ok(cat_diagnostics(params)?.theta),
        Metric::Lambda => Ok(cat_diagnostics(params)?.lambda_shear),
        Metric::InfidelityCat => {
            let cat = cat_from_state(input, params)?;
            let out = exact_output(input, params)?;
            Ok(1.0 - fidelity(&out, &cat)?)
        }
        Metric::InfidelitySt => {
            let out = exact_output(input, params)?;
            let st = stationary_output(input, params)?;
            Ok(1.0 - fidelity(&out, &st)?)
        }
    }
}

/// Evaluate every cell on the current rayon pool.
///
/// Cells are independent and each is computed sequentially, so the values are
/// bit-identical for any thread count.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grid = sweep_grid(spec);
    let input = make_fock(spec.input, grid)?;
    let ng = spec.gamma_axis.n_points;
    let outcomes: Vec<Result<f64>> = (0..spec.cells())
        .into_par_iter()
        .map(|idx| {
            let params = GateParams {
                y_m: spec.y_m_axis.point(idx / ng),
                gamma: spec.gamma_axis.point(idx % ng),
            };
            params.validate()?;
            evaluate_cell(spec.metric, &input, &params)
        })
        .collect();
    let mut values = Vec::with_capacity(outcomes.len());
    let mut failures = Vec::new();
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(v) => values.push(v),
            Err(e) => {
                values.push(f64::NAN);
                failures.push(CellFailure {
                    y_m_index: idx / ng,
                    gamma_index: idx % ng,
                    kind: FailureKind::of(&e),
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(SweepResult { spec: *spec, grid, values, failures })
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot build thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}

impl SweepResult {
    #[inline]
    pub fn value(&self, iy: usize, ig: usize) -> f64 {
        self.values[iy * self.spec.gamma_axis.n_points + ig]
    }

    fn status(&self, iy: usize, ig: usize) -> &'static str {
        self.failures
            .iter()
            .find(|f| f.y_m_index == iy && f.gamma_index == ig)
            .map_or("ok", |f| f.kind.name())
    }

    /// Finite cell with the smallest and largest value, as `(y_m, γ, value)`.
    pub fn extremes(&self) -> Option<(CellValue, CellValue)> {
        let ng = self.spec.gamma_axis.n_points;
        let cell = |idx: usize| {
            (self.spec.y_m_axis.point(idx / ng), self.spec.gamma_axis.point(idx % ng), self.values[idx])
        };
        let finite = || self.values.iter().enumerate().filter(|(_, v)| v.is_finite());
        let min = finite().min_by(|a, b| a.1.total_cmp(b.1))?.0;
        let max = finite().max_by(|a, b| a.1.total_cmp(b.1))?.0;
        Some((cell(min), cell(max)))
    }

    /// Long-format CSV `y_m,gamma,value,status`, `y_m` outer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("y_m,gamma,value,status\n");
        for iy in 0..self.spec.y_m_axis.n_points {
            let y = self.spec.y_m_axis.point(iy);
            for ig in 0..self.spec.gamma_axis.n_points {
                let g = self.spec.gamma_axis.point(ig);
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    format_number(y),
                    format_number(g),
                    format_number(self.value(iy, ig)),
                    self.status(iy, ig)
                );
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A sampled curve in the `(y_m, γ)` plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuideCurve {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Reference curves drawn over sweep maps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Guides {
    /// `γ·y_m = 1`, sampled on the `y_m` axis.
    pub hyperbola: GuideCurve,
    /// `y_m = √(2n+1)`: left of it the stationary-phase picture breaks down.
    pub fock_extent: f64,
    /// Contours `θ = −kπ/2` inside the swept rectangle; even `k` are even cats.
    pub parity_contours: Vec<GuideCurve>,
}

/// `γ` on the contour `θ(y_m, γ) = θ_target` (requires `θ_target < π/4`).
pub fn gamma_on_theta_contour(y_m: f64, theta_target: f64) -> f64 {
    let c = FRAC_PI_4 - theta_target;
    4.0 * y_m.powi(3) / (27.0 * c * c)
}

pub fn overlay_guides(spec: &SweepSpec) -> Guides {
    let ys: Vec<f64> = spec.y_m_axis.points().filter(|&y| y > 0.0).collect();
    let hyperbola = GuideCurve {
        name: "gamma_ym_1".into(),
        points: ys.iter().map(|&y| (y, 1.0 / y)).collect(),
    };
    let (g_lo, g_hi) = (spec.gamma_axis.x_min, spec.gamma_axis.x_max);
    let mut parity_contours = Vec::new();
    if let Some(&y_max) = ys.last() {
        // γ on the contour falls with k; stop once it is below the axis everywhere.
        for k in 0usize.. {
            let theta = -(k as f64) * FRAC_PI_2;
            if gamma_on_theta_contour(y_max, theta) < g_lo {
                break;
            }
            let points: Vec<(f64, f64)> = ys
                .iter()
                .map(|&y| (y, gamma_on_theta_contour(y, theta)))
                .filter(|&(_, g)| g >= g_lo && g <= g_hi)
                .collect();
            if !points.is_empty() {
                let parity = if k % 2 == 0 { "even" } else { "odd" };
                parity_contours.push(GuideCurve { name: format!("theta_{parity}_k{k}"), points });
            }
        }
    }
    Guides { hyperbola, fock_extent: spec.input.extent(), parity_contours }
}

impl Guides {
    /// CSV `curve,y_m,gamma`; the vertical line is emitted at both ends of the γ axis.
    pub fn to_csv(&self, spec: &SweepSpec) -> String {
        let mut out = String::from("curve,y_m,gamma\n");
        for (y, g) in &self.hyperbola.points {
            let _ = writeln!(out, "{},{},{}", self.hyperbola.name, format_number(*y), format_number(*g));
        }
        for g in [spec.gamma_axis.x_min, spec.gamma_axis.x_max] {
            let _ = writeln!(out, "fock_extent,{},{}", format_number(self.fock_extent), format_number(g));
        }
        for c in &self.parity_contours {
            for (y, g) in &c.points {
                let _ = writeln!(out, "{},{},{}", c.name, format_number(*y), format_number(*g));
            }
        }
        out
    }
}
