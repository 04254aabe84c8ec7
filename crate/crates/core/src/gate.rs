//! The cubic-phase cat gate.
//!
//! A target state `ψ(x)` is coupled by `C_Z = exp(i q₁q₂)` to the ancilla
//! `e^{iγq₂³}|0⟩_p`; measuring the ancilla momentum with outcome `y_m` leaves
//! the target in `ψ(x)·φ(x − y_m)` with the Airy factor
//! `φ(u) = √(2π)/(3γ)^{1/3} · Ai(u/(3γ)^{1/3})`.
//!
//! For `y_m − x > 0` the factor has two stationary points and splits into two
//! momentum-shifted branches, which is what produces the cat. Linearising
//! their phase around `x = 0` gives the "perfect" cat `cos(θ + p⁺x)·ψ(x)`.

use crate::error::{Error, Result};
use crate::numerics::{airy_ai_unchecked, GridSpec};
use crate::states::{make_fock, FockSpec, WaveFunction, NORM_TOLERANCE, SUPPORT_MARGIN};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

/// Outputs whose unnormalized norm falls below this are degenerate.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Rounded shear coefficient quoted alongside the exact `1/(4√3)`.
pub const ROUNDED_SHEAR_COEFFICIENT: f64 = 0.14;

/// Cubic-phase strength `γ` and homodyne outcome `y_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateParams {
    pub gamma: f64,
    pub y_m: f64,
}

impl GateParams {
    pub fn new(gamma: f64, y_m: f64) -> Result<Self> {
        let p = Self { gamma, y_m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_finite() || !self.y_m.is_finite() {
            return Err(Error::Domain(format!(
                "gate parameters must be finite (gamma={}, y_m={})",
                self.gamma, self.y_m
            )));
        }
        if self.gamma <= 0.0 {
            return Err(Error::Domain(format!("gamma must be > 0, got {}", self.gamma)));
        }
        Ok(())
    }

    /// `(3γ)^{1/3}`, the length scale of the Airy factor.
    pub fn airy_scale(&self) -> f64 {
        (3.0 * self.gamma).cbrt()
    }

    /// Copy displacement `p⁺ = √(y_m/3γ)`; zero for `y_m ≤ 0`.
    pub fn p_plus(&self) -> f64 {
        (self.y_m.max(0.0) / (3.0 * self.gamma)).sqrt()
    }

    /// Relative phase `θ = π/4 − (2/(3√(3γ))) y_m^{3/2}`.
    pub fn theta(&self) -> f64 {
        let y = self.y_m.max(0.0);
        FRAC_PI_4 - 2.0 / (3.0 * (3.0 * self.gamma).sqrt()) * y * y.sqrt()
    }
}

/// Scalar characteristics of the cat produced at one `(y_m, γ)` point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatDiagnostics {
    pub theta: f64,
    pub p_plus: f64,
    pub alpha: Complex64,
    /// `1/(4√(3γ y_m))`.
    pub lambda_shear: f64,
    /// `0.14/√(γ y_m)`, the rounded-coefficient form.
    pub lambda_rounded: f64,
    /// `θ` reduced to `[0, π)`.
    pub parity_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    Intermediate,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Intermediate => "intermediate",
        })
    }
}

/// A point `(q, p)` of phase space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub const fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }
}

/// The exact gate factor `φ(x − y_m)`.
pub fn airy_factor(x: f64, params: &GateParams) -> f64 {
    let scale = params.airy_scale();
    (2.0 * PI).sqrt() / scale * airy_ai_unchecked((x - params.y_m) / scale)
}

fn require_normalized(psi: &WaveFunction, what: &str) -> Result<()> {
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Contract(format!("{what} requires a normalized input, norm is {norm}")));
    }
    Ok(())
}

fn renormalize(out: WaveFunction, params: &GateParams) -> Result<WaveFunction> {
    let norm = out.norm_sqr();
    if norm.is_nan() || norm < DEGENERATE_NORM {
        return Err(Error::DegenerateOutcome(format!(
            "output norm {norm:.3e} for y_m={}, gamma={}: outcome incompatible with the input support",
            params.y_m, params.gamma
        )));
    }
    Ok(out.scale(1.0 / norm.sqrt()))
}

/// `ψ(x)·φ(x − y_m)` without renormalization; linear in `ψ`.
pub fn apply_exact_factor(input: &WaveFunction, params: &GateParams) -> Result<WaveFunction> {
    params.validate()?;
    Ok(input.multiply(|x| Complex64::new(airy_factor(x, params), 0.0)))
}

/// Exact conditional output state, renormalized on the grid.
pub fn exact_output(input: &WaveFunction, params: &GateParams) -> Result<WaveFunction> {
    params.validate()?;
    require_normalized(input, "exact_output")?;
    renormalize(apply_exact_factor(input, params)?, params)
}

/// Stationary points `±√((y_m − x)/3γ)` of the factor's phase; `None` unless `y_m > x`.
pub fn stationary_points(x: f64, params: &GateParams) -> Option<[f64; 2]> {
    let d = params.y_m - x;
    if d > 0.0 {
        let s = (d / (3.0 * params.gamma)).sqrt();
        Some([s, -s])
    } else {
        None
    }
}

/// Stationary-phase factor `2 Re φ⁺(x − y_m)` on a grid of spacing `dx`.
///
/// Zero for `y_m − x ≤ dx/2`; the diverging amplitude `[12γ(y_m − x)]^{−1/4}`
/// is capped at its value one grid step from the turning point.
pub fn stationary_factor(x: f64, params: &GateParams, dx: f64) -> f64 {
    let d = params.y_m - x;
    if d <= 0.5 * dx {
        return 0.0;
    }
    let amplitude = (12.0 * params.gamma * d.max(dx)).powf(-0.25);
    let phase = FRAC_PI_4 - 2.0 / (3.0 * (3.0 * params.gamma).sqrt()) * d * d.sqrt();
    2.0 * amplitude * phase.cos()
}

/// Output state in the stationary-phase approximation, renormalized on the grid.
pub fn stationary_output(input: &WaveFunction, params: &GateParams) -> Result<WaveFunction> {
    params.validate()?;
    require_normalized(input, "stationary_output")?;
    let grid = *input.grid();
    let two_branch = grid.points().filter(|&x| params.y_m - x > 0.0).count();
    if two_branch < 2 {
        return Err(Error::DegenerateOutcome(format!(
            "y_m={} leaves {two_branch} grid point(s) with two stationary points",
            params.y_m
        )));
    }
    let dx = grid.dx();
    let out = input.multiply(|x| Complex64::new(stationary_factor(x, params, dx), 0.0));
    renormalize(out, params)
}

/// θ, p⁺, α, λ for `y_m > 0`.
pub fn cat_diagnostics(params: &GateParams) -> Result<CatDiagnostics> {
    params.validate()?;
    if params.y_m <= 0.0 {
        return Err(Error::Domain(format!(
            "cat diagnostics need y_m > 0 (two-branch regime), got {}",
            params.y_m
        )));
    }
    let theta = params.theta();
    let p_plus = params.p_plus();
    let gy = params.gamma * params.y_m;
    Ok(CatDiagnostics {
        theta,
        p_plus,
        alpha: Complex64::new(0.0, (params.y_m / (6.0 * params.gamma)).sqrt()),
        lambda_shear: 1.0 / (4.0 * (3.0 * gy).sqrt()),
        lambda_rounded: ROUNDED_SHEAR_COEFFICIENT / gy.sqrt(),
        parity_angle: theta.rem_euclid(PI),
    })
}

/// Even if `θ ≡ 0`, odd if `θ ≡ π/2` (mod π) within `tolerance` radians.
pub fn classify_parity(diag: &CatDiagnostics, tolerance: f64) -> Result<Parity> {
    if !(tolerance > 0.0 && tolerance < FRAC_PI_4) {
        return Err(Error::Precondition(format!(
            "parity tolerance must lie in (0, π/4), got {tolerance}"
        )));
    }
    let a = diag.theta.rem_euclid(PI);
    Ok(if a.min(PI - a) <= tolerance {
        Parity::Even
    } else if (a - FRAC_PI_2).abs() <= tolerance {
        Parity::Odd
    } else {
        Parity::Intermediate
    })
}

/// `cos(θ + p⁺x)·ψ(x)`, normalized: two undistorted copies of `ψ` shifted by
/// `±p⁺` in momentum with phases `e^{±iθ}`.
pub fn cat_with_phase(input: &WaveFunction, theta: f64, p_plus: f64) -> Result<WaveFunction> {
    input
        .multiply(|x| Complex64::new((theta + p_plus * x).cos(), 0.0))
        .normalize()
}

/// Perfect-cat reference built from an arbitrary input state.
pub fn cat_from_state(input: &WaveFunction, params: &GateParams) -> Result<WaveFunction> {
    let diag = cat_diagnostics(params)?;
    check_momentum_room(input.grid(), diag.p_plus, 0.0)?;
    cat_with_phase(input, diag.theta, diag.p_plus)
}

/// Perfect cat `√N cos(θ + √(y_m/3γ) x) H_n(x) e^{−x²/2}` for a Fock input.
pub fn perfect_cat(spec: FockSpec, params: &GateParams, grid: GridSpec) -> Result<WaveFunction> {
    let diag = cat_diagnostics(params)?;
    check_momentum_room(&grid, diag.p_plus, spec.extent())?;
    let fock = make_fock(spec, grid)?;
    cat_with_phase(&fock, diag.theta, diag.p_plus)
}

fn check_momentum_room(grid: &GridSpec, p_plus: f64, extent: f64) -> Result<()> {
    let needed = p_plus + extent + SUPPORT_MARGIN;
    if needed > grid.nyquist() {
        return Err(Error::Precondition(format!(
            "copy displacement {p_plus:.4} needs momentum range {needed:.4}, grid resolves only {:.4}",
            grid.nyquist()
        )));
    }
    Ok(())
}

/// Measurement-induced output amplitudes `(q, p ± √((y_m − q)/3γ))`.
///
/// The ancilla's initial momentum is zero and drops out. `None` when the
/// radicand is not positive, i.e. the two branches have merged.
pub fn semiclassical_momenta(initial: PhasePoint, params: &GateParams) -> Result<Option<[PhasePoint; 2]>> {
    params.validate()?;
    let radicand = params.y_m - initial.q;
    if radicand <= 0.0 {
        return Ok(None);
    }
    let shift = (radicand / (3.0 * params.gamma)).sqrt();
    Ok(Some([
        PhasePoint::new(initial.q, initial.p + shift),
        PhasePoint::new(initial.q, initial.p - shift),
    ]))
}
