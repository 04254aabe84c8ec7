//! Wigner quasi-probability distribution of grid wavefunctions.
//!
//! Convention: `W(x,p) = (1/π) ∫ dy ψ*(x+y) ψ(x−y) e^{2ipy}`, so that
//! `∫∫W dx dp = 1`, `W_vac(0,0) = 1/π` and pure states satisfy `2π∫∫W² = 1`.

use crate::error::{Error, Result};
use crate::format_number;
use crate::numerics::{integrate_uniform, quadrature_weight, GridSpec};
use crate::states::{WaveFunction, NORM_TOLERANCE};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Largest imaginary part of the transform tolerated before it is discarded.
pub const IMAG_RESIDUE_LIMIT: f64 = 1e-10;

/// `W(x, p)` sampled on `x_axis × p_axis`.
///
/// `values` is row-major with `x` as the slow index:
/// `values[i * p_axis.n_points + j] = W(x_i, p_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerGrid {
    pub x_axis: GridSpec,
    pub p_axis: GridSpec,
    pub values: Vec<f64>,
    /// Largest `|Im W|` seen before the imaginary part was dropped.
    #[serde(skip)]
    pub max_imag_residue: f64,
}

/// `[-10, 10]` with 801 points.
pub fn default_p_axis() -> GridSpec {
    GridSpec { x_min: -10.0, x_max: 10.0, n_points: 801 }
}

/// Wigner transform of a normalized state by direct quadrature over `y`.
///
/// At each `x_i` the `y` integral runs over the largest symmetric interval
/// that keeps `x_i ± y` on the grid. Rows are computed in parallel.
pub fn transform(psi: &WaveFunction, p_axis: GridSpec) -> Result<WignerGrid> {
    p_axis.validate()?;
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Contract(format!("Wigner transform needs a normalized state, norm is {norm}")));
    }
    let grid = *psi.grid();
    let p_max = p_axis.x_min.abs().max(p_axis.x_max.abs());
    if p_max > grid.nyquist() {
        return Err(Error::Precondition(format!(
            "momentum axis reaches |p| = {p_max}, beyond the Nyquist limit π/dx = {:.4}",
            grid.nyquist()
        )));
    }

    let amps = psi.amplitudes();
    let n = grid.n_points;
    let dx = grid.dx();
    let ps: Vec<f64> = p_axis.points().collect();
    // e^{2 i p dx}: advances the kernel by one y step.
    let step: Vec<(f64, f64)> = ps.iter().map(|p| ((2.0 * p * dx).cos(), (2.0 * p * dx).sin())).collect();

    let rows: Vec<(Vec<f64>, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let half = i.min(n - 1 - i);
            let m = ps.len();
            let mut re = vec![0.0; m];
            let mut im = vec![0.0; m];
            if half > 0 {
                let count = 2 * half + 1;
                let w0 = quadrature_weight(half, count);
                let centre = amps[i].norm_sqr();
                re.iter_mut().for_each(|r| *r = w0 * centre);
                let mut cos_k = vec![1.0; m];
                let mut sin_k = vec![0.0; m];
                for k in 1..=half {
                    let w = quadrature_weight(half + k, count);
                    let fwd = amps[i + k].conj() * amps[i - k];
                    let bwd = amps[i - k].conj() * amps[i + k];
                    // fwd·e^{iφ} + bwd·e^{−iφ}, φ = 2 p k dx
                    let s1 = w * (fwd.re + bwd.re);
                    let s2 = w * (bwd.im - fwd.im);
                    let s3 = w * (fwd.re - bwd.re);
                    let s4 = w * (fwd.im + bwd.im);
                    for j in 0..m {
                        let (c, s) = (cos_k[j], sin_k[j]);
                        let (sc, ss) = step[j];
                        let c2 = c * sc - s * ss;
                        let s2j = c * ss + s * sc;
                        cos_k[j] = c2;
                        sin_k[j] = s2j;
                        re[j] += c2 * s1 + s2j * s2;
                        im[j] += s2j * s3 + c2 * s4;
                    }
                }
            }
            let scale = dx / PI;
            let residue = im.iter().fold(0.0f64, |acc, v| acc.max((v * scale).abs()));
            re.iter_mut().for_each(|r| *r *= scale);
            (re, residue)
        })
        .collect();

    let mut values = Vec::with_capacity(n * ps.len());
    let mut max_imag_residue = 0.0f64;
    for (row, residue) in rows {
        values.extend_from_slice(&row);
        max_imag_residue = max_imag_residue.max(residue);
    }
    if max_imag_residue.is_nan() || max_imag_residue >= IMAG_RESIDUE_LIMIT {
        return Err(Error::Contract(format!(
            "Wigner transform produced imaginary residue {max_imag_residue:e}"
        )));
    }
    Ok(WignerGrid { x_axis: grid, p_axis, values, max_imag_residue })
}

impl WignerGrid {
    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.p_axis.n_points + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.p_axis.n_points;
        &self.values[i * m..(i + 1) * m]
    }

    fn integrate_map(&self, f: impl Fn(f64) -> f64) -> f64 {
        let dp = self.p_axis.dx();
        let inner: Vec<f64> = (0..self.x_axis.n_points)
            .map(|i| {
                let mapped: Vec<f64> = self.row(i).iter().map(|&w| f(w)).collect();
                integrate_uniform(&mapped, dp)
            })
            .collect();
        integrate_uniform(&inner, self.x_axis.dx())
    }

    /// `∫∫ W dx dp`.
    pub fn total(&self) -> f64 {
        self.integrate_map(|w| w)
    }

    /// `2π ∫∫ W² dx dp`; equals 1 for pure states.
    pub fn purity(&self) -> f64 {
        2.0 * PI * self.integrate_map(|w| w * w)
    }

    /// `∫ W(x, p) dp` per `x` row.
    pub fn marginal_x(&self) -> Vec<f64> {
        let dp = self.p_axis.dx();
        (0..self.x_axis.n_points).map(|i| integrate_uniform(self.row(i), dp)).collect()
    }

    /// `∫ W(x, p) dx` per `p` column.
    pub fn marginal_p(&self) -> Vec<f64> {
        let m = self.p_axis.n_points;
        let dx = self.x_axis.dx();
        (0..m)
            .map(|j| {
                let col: Vec<f64> = (0..self.x_axis.n_points).map(|i| self.value(i, j)).collect();
                integrate_uniform(&col, dx)
            })
            .collect()
    }

    /// `∫∫ max(0, −W) dx dp`.
    pub fn negativity_volume(&self) -> f64 {
        self.integrate_map(|w| (-w).max(0.0))
    }

    /// Long-format CSV `x,p,w`, `x` outer and `p` inner (same order as `values`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,p,w\n");
        let ps: Vec<f64> = self.p_axis.points().collect();
        for (i, x) in self.x_axis.points().enumerate() {
            for (p, w) in ps.iter().zip(self.row(i)) {
                let _ = writeln!(out, "{},{},{}", format_number(x), format_number(*p), format_number(*w));
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// JSON `{x_axis, p_axis, values}` with `values` row-major as documented on the type.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let grid: WignerGrid = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        grid.x_axis.validate()?;
        grid.p_axis.validate()?;
        if grid.values.len() != grid.x_axis.n_points * grid.p_axis.n_points {
            return Err(Error::Parse(format!(
                "expected {}×{} values, got {}",
                grid.x_axis.n_points,
                grid.p_axis.n_points,
                grid.values.len()
            )));
        }
        Ok(grid)
    }
}

/// `∫∫ max(0, −W)` of a grid (free-function form).
pub fn negativity_volume(w: &WignerGrid) -> f64 {
    w.negativity_volume()
}

/// `∫ W dp` per `x` (free-function form).
pub fn marginal_x(w: &WignerGrid) -> Vec<f64> {
    w.marginal_x()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::cat_with_phase;
    use crate::states::{make_fock, FockSpec};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_2;

    fn small_grid() -> GridSpec {
        GridSpec::new(-8.0, 8.0, 801).unwrap()
    }

    fn small_p() -> GridSpec {
        GridSpec::new(-6.0, 6.0, 241).unwrap()
    }

    #[test]
    fn vacuum_peak_and_positivity() {
        let psi = make_fock(FockSpec::new(0), small_grid()).unwrap();
        let w = transform(&psi, small_p()).unwrap();
        assert!((w.value(400, 120) - 1.0 / PI).abs() < 1e-4);
        assert!(w.negativity_volume() < 1e-6);
        assert!(w.max_imag_residue < IMAG_RESIDUE_LIMIT);
        let m = w.marginal_x();
        assert!((m[400] - PI.powf(-0.5)).abs() < 1e-3);
        assert!((integrate_uniform(&m, 0.02) - 1.0).abs() < 2e-3);
    }

    #[test]
    fn nyquist_violation_rejected() {
        let psi = make_fock(FockSpec::new(0), small_grid()).unwrap();
        // π/dx = π/0.02 ≈ 157
        let p = GridSpec::new(-200.0, 200.0, 11).unwrap();
        assert!(matches!(transform(&psi, p), Err(Error::Precondition(_))));
    }

    #[test]
    fn unnormalized_rejected() {
        let psi = make_fock(FockSpec::new(0), small_grid()).unwrap().scale(0.5);
        assert!(matches!(transform(&psi, small_p()), Err(Error::Contract(_))));
    }

    #[test]
    fn real_even_state_is_symmetric() {
        let grid = GridSpec::new(-9.0, 9.0, 901).unwrap();
        let psi = make_fock(FockSpec::new(2), grid).unwrap();
        let w = transform(&psi, small_p()).unwrap();
        let (n, m) = (901, 241);
        for i in (0..n).step_by(37) {
            for j in (0..m).step_by(13) {
                let v = w.value(i, j);
                assert!((v - w.value(i, m - 1 - j)).abs() < 1e-8);
                assert!((v - w.value(n - 1 - i, j)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn momentum_kick_shifts_along_p() {
        let base = make_fock(FockSpec::new(1), small_grid()).unwrap();
        // p0 = 40 momentum steps of 0.05
        let p0 = 2.0;
        let kicked = base.multiply(|x| Complex64::from_polar(1.0, p0 * x));
        let w0 = transform(&base, small_p()).unwrap();
        let w1 = transform(&kicked, small_p()).unwrap();
        for i in (0..801).step_by(23) {
            for j in 40..241 {
                assert!((w1.value(i, j) - w0.value(i, j - 40)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn odd_cat_has_fringes_between_copies() {
        let p_plus = 10f64.sqrt();
        let psi = make_fock(FockSpec::new(0), small_grid()).unwrap();
        let cat = cat_with_phase(&psi, FRAC_PI_2, p_plus).unwrap();
        let w = transform(&cat, small_p()).unwrap();
        assert!(w.negativity_volume() > 0.05);
        // Between the copies (p = 0) the interference term goes as
        // −cos(2p⁺x): negative at the origin, alternating in x with period π/p⁺.
        assert!(w.value(400, 120) < -0.2);
        let between: Vec<f64> = (0..801)
            .filter(|&i| small_grid().point(i).abs() < 1.5)
            .map(|i| w.value(i, 120))
            .collect();
        let sign_changes = between.windows(2).filter(|s| s[0].signum() != s[1].signum()).count();
        let period = PI / p_plus;
        assert!(sign_changes as f64 >= (3.0 / period).floor(), "{sign_changes} fringes");
        // the copies themselves sit at ±p⁺ and are positive
        let j_copy = ((p_plus + 6.0) / 0.05).round() as usize;
        assert!(w.value(400, j_copy) > 0.1);
    }

    #[test]
    fn json_round_trip() {
        let psi = make_fock(FockSpec::new(0), GridSpec::new(-7.0, 7.0, 141).unwrap()).unwrap();
        let w = transform(&psi, GridSpec::new(-3.0, 3.0, 31).unwrap()).unwrap();
        let back = WignerGrid::from_json(&w.to_json()).unwrap();
        assert_eq!(back.values, w.values);
        assert_eq!(back.x_axis, w.x_axis);
        let csv = w.to_csv();
        assert_eq!(csv.lines().count(), 1 + 141 * 31);
        assert!(csv.starts_with("x,p,w\n-7,-3,"));
    }
}
