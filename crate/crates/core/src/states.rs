//! Grid wavefunctions and the canonical input states.

use crate::error::{Error, Result};
use crate::format_number;
use crate::numerics::{integrate, GridSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Tolerance on `∫|ψ|² = 1` accepted by [`fidelity`].
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Margin (in x units) required around the support of a constructed state.
pub const SUPPORT_MARGIN: f64 = 6.0;

/// Complex amplitudes sampled on a uniform coordinate grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: GridSpec,
    amplitudes: Vec<Complex64>,
}

/// Photon number of a Fock state `|n⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockSpec {
    pub n: usize,
}

impl FockSpec {
    pub const fn new(n: usize) -> Self {
        Self { n }
    }

    /// Coordinate half-extent `√(2n+1)` of the state.
    pub fn extent(&self) -> f64 {
        (2.0 * self.n as f64 + 1.0).sqrt()
    }
}

impl WaveFunction {
    pub fn new(grid: GridSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        grid.validate()?;
        if amplitudes.len() != grid.n_points {
            return Err(Error::Contract(format!(
                "{} amplitudes on a grid of {} points",
                amplitudes.len(),
                grid.n_points
            )));
        }
        Ok(Self { grid, amplitudes })
    }

    /// Sample `f` at every grid point.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        grid.validate()?;
        let amplitudes = grid.points().map(f).collect();
        Ok(Self { grid, amplitudes })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// `∫|ψ|² dx`.
    pub fn norm_sqr(&self) -> f64 {
        let density: Vec<f64> = self.amplitudes.iter().map(Complex64::norm_sqr).collect();
        integrate(&density, &self.grid).expect("amplitudes match grid")
    }

    /// `|ψ(x)|²` at every grid point.
    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(Complex64::norm_sqr).collect()
    }

    /// Rescale to unit grid norm. Fails on a (numerically) zero state.
    pub fn normalize(self) -> Result<Self> {
        let norm = self.norm_sqr();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::DegenerateOutcome(format!("cannot normalize a state with norm {norm}")));
        }
        Ok(self.scale(1.0 / norm.sqrt()))
    }

    pub fn scale(mut self, factor: f64) -> Self {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
        self
    }

    /// Multiply by a global phase `e^{iφ}`.
    pub fn with_global_phase(mut self, phi: f64) -> Self {
        let ph = Complex64::from_polar(1.0, phi);
        for a in &mut self.amplitudes {
            *a *= ph;
        }
        self
    }

    /// Pointwise product `ψ(x)·f(x)`.
    pub fn multiply(&self, f: impl Fn(f64) -> Complex64) -> Self {
        let amplitudes = self
            .grid
            .points()
            .zip(&self.amplitudes)
            .map(|(x, &a)| a * f(x))
            .collect();
        Self { grid: self.grid, amplitudes }
    }

    /// CSV with header `x,re,im`, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im\n");
        for (x, a) in self.grid.points().zip(&self.amplitudes) {
            let _ = writeln!(out, "{},{},{}", format_number(x), format_number(a.re), format_number(a.im));
        }
        out
    }

    /// Inverse of [`WaveFunction::to_csv`]; `#` comment lines are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut xs = Vec::new();
        let mut amplitudes = Vec::new();
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some(h) if h.replace(' ', "") == "x,re,im" => {}
            other => return Err(Error::Parse(format!("expected header `x,re,im`, got {other:?}"))),
        }
        for line in lines {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad row `{line}`: {e}")))?;
            if cols.len() != 3 {
                return Err(Error::Parse(format!("expected 3 columns in `{line}`")));
            }
            xs.push(cols[0]);
            amplitudes.push(Complex64::new(cols[1], cols[2]));
        }
        let (first, last) = match (xs.first(), xs.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err(Error::Parse("no data rows".into())),
        };
        Self::new(GridSpec::new(first, last, xs.len())?, amplitudes)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(WaveFunctionJson::from(self)).expect("serializable")
    }

    /// JSON object `{grid: {x_min, x_max, n_points}, re: [...], im: [...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&WaveFunctionJson::from(self)).expect("serializable")
    }

    /// Parse the JSON schema of [`WaveFunction::to_json`]; extra keys are ignored.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: WaveFunctionJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct WaveFunctionJson {
    grid: GridSpec,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl From<&WaveFunction> for WaveFunctionJson {
    fn from(psi: &WaveFunction) -> Self {
        Self {
            grid: psi.grid,
            re: psi.amplitudes.iter().map(|a| a.re).collect(),
            im: psi.amplitudes.iter().map(|a| a.im).collect(),
        }
    }
}

impl TryFrom<WaveFunctionJson> for WaveFunction {
    type Error = Error;
    fn try_from(raw: WaveFunctionJson) -> Result<Self> {
        if raw.re.len() != raw.im.len() {
            return Err(Error::Parse("re and im arrays differ in length".into()));
        }
        let amplitudes = raw.re.into_iter().zip(raw.im).map(|(r, i)| Complex64::new(r, i)).collect();
        WaveFunction::new(raw.grid, amplitudes)
    }
}

/// Required symmetric span for a Fock state on a grid.
pub fn fock_half_span(spec: FockSpec) -> f64 {
    spec.extent() + SUPPORT_MARGIN
}

/// Fock state `ψ_n(x) = π^{-1/4}(2ⁿn!)^{-1/2} H_n(x) e^{-x²/2}`, normalized on the grid.
pub fn make_fock(spec: FockSpec, grid: GridSpec) -> Result<WaveFunction> {
    grid.validate()?;
    let half = fock_half_span(spec);
    if !grid.covers(-half, half) {
        return Err(Error::Precondition(format!(
            "Fock state n={} needs a grid spanning at least [{:.4}, {:.4}], got [{}, {}]",
            spec.n, -half, half, grid.x_min, grid.x_max
        )));
    }
    WaveFunction::from_fn(grid, |x| Complex64::new(hermite_function(spec.n, x), 0.0))?.normalize()
}

/// Normalized Hermite function, computed with the orthonormal recurrence
/// `ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}` so large `n` does not overflow.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n == 0 {
        return prev;
    }
    let mut cur = std::f64::consts::SQRT_2 * x * prev;
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Glauber state `|α⟩` in the coordinate representation:
/// `π^{-1/4} exp[−(x − x̄)²/2 + i p̄ x − i x̄ p̄/2]`, `x̄ = √2 Re α`, `p̄ = √2 Im α`.
pub fn make_coherent(alpha: Complex64, grid: GridSpec) -> Result<WaveFunction> {
    grid.validate()?;
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::Domain(format!("coherent amplitude must be finite, got {alpha}")));
    }
    let x0 = std::f64::consts::SQRT_2 * alpha.re;
    let p0 = std::f64::consts::SQRT_2 * alpha.im;
    if !grid.covers(x0 - SUPPORT_MARGIN, x0 + SUPPORT_MARGIN) {
        return Err(Error::Precondition(format!(
            "coherent state centred at x={x0:.4} needs a grid spanning [{:.4}, {:.4}], got [{}, {}]",
            x0 - SUPPORT_MARGIN,
            x0 + SUPPORT_MARGIN,
            grid.x_min,
            grid.x_max
        )));
    }
    if p0.abs() + SUPPORT_MARGIN > grid.nyquist() {
        return Err(Error::Precondition(format!(
            "coherent momentum {p0:.4} plus margin exceeds the grid Nyquist limit {:.4}",
            grid.nyquist()
        )));
    }
    let norm = PI.powf(-0.25);
    WaveFunction::from_fn(grid, |x| {
        let d = x - x0;
        Complex64::from_polar(norm * (-0.5 * d * d).exp(), p0 * x - 0.5 * x0 * p0)
    })?
    .normalize()
}

/// `∫ a*(x) b(x) dx`.
pub fn overlap(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    if a.grid != b.grid {
        return Err(Error::Contract(format!(
            "overlap between states on different grids: {:?} vs {:?}",
            a.grid, b.grid
        )));
    }
    let product: Vec<Complex64> =
        a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).collect();
    integrate(&product, &a.grid)
}

/// Pure-state fidelity `|⟨a|b⟩|²` of two normalized states.
pub fn fidelity(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    for (name, psi) in [("first", a), ("second", b)] {
        let norm = psi.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Contract(format!(
                "fidelity requires normalized states; {name} argument has norm {norm}"
            )));
        }
    }
    let f = overlap(a, b)?.norm_sqr();
    Ok(if f > 1.0 && f - 1.0 < 1e-9 { 1.0 } else { f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid() -> GridSpec {
        GridSpec::default_coordinate()
    }

    #[test]
    fn vacuum_peak() {
        let psi = make_fock(FockSpec::new(0), grid()).unwrap();
        let v = psi.amplitudes()[1200];
        assert!((v.re - PI.powf(-0.25)).abs() < 1e-10);
        assert!((v.re - 0.7511).abs() < 1e-4);
    }

    #[test]
    fn single_photon_vanishes_at_origin() {
        let psi = make_fock(FockSpec::new(1), grid()).unwrap();
        assert!(psi.amplitudes()[1200].norm() < 1e-12);
    }

    #[test]
    fn fock_states_are_normalized_and_orthogonal() {
        let states: Vec<_> = (0..=4).map(|n| make_fock(FockSpec::new(n), grid()).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            assert!((a.norm_sqr() - 1.0).abs() < 1e-8);
            for b in &states[i + 1..] {
                assert!(overlap(a, b).unwrap().norm() < 1e-8);
            }
        }
    }

    #[test]
    fn fock_matches_hermite_polynomial_form() {
        use crate::numerics::hermite;
        for n in 0..=4usize {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let c = PI.powf(-0.25) / (2f64.powi(n as i32) * fact).sqrt();
            for x in [-2.3, -0.4, 0.0, 1.1, 3.7] {
                let direct = c * hermite(n, x) * (-0.5 * x * x).exp();
                assert!((hermite_function(n, x) - direct).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn fock_on_narrow_grid_names_required_span() {
        let g = GridSpec::new(-5.0, 5.0, 1001).unwrap();
        match make_fock(FockSpec::new(2), g) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("8.2361"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn coherent_zero_is_vacuum() {
        let a = make_coherent(Complex64::new(0.0, 0.0), grid()).unwrap();
        let v = make_fock(FockSpec::new(0), grid()).unwrap();
        for (x, y) in a.amplitudes().iter().zip(v.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn momentum_displaced_coherent_keeps_vacuum_density() {
        let alpha = Complex64::new(0.0, (15.0f64 / (6.0 * 0.5)).sqrt());
        let a = make_coherent(alpha, grid()).unwrap();
        assert!((overlap(&a, &a).unwrap().norm_sqr() - 1.0).abs() < 1e-8);
        let v = make_fock(FockSpec::new(0), grid()).unwrap();
        for (x, y) in a.density().iter().zip(v.density()) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn coherent_overlap_with_vacuum() {
        // |⟨0|α⟩|² = e^{−|α|²}
        let v = make_fock(FockSpec::new(0), grid()).unwrap();
        let a = make_coherent(Complex64::new(1.0, 0.0), grid()).unwrap();
        assert!((fidelity(&v, &a).unwrap() - (-1.0f64).exp()).abs() < 1e-6);
        let b = make_coherent(Complex64::new(0.6, -0.8), grid()).unwrap();
        assert!((fidelity(&v, &b).unwrap() - (-1.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn coherent_precondition() {
        let g = GridSpec::new(-8.0, 8.0, 801).unwrap();
        assert!(matches!(make_coherent(Complex64::new(2.0, 0.0), g), Err(Error::Precondition(_))));
        let coarse = GridSpec::new(-12.0, 12.0, 25).unwrap();
        assert!(matches!(make_coherent(Complex64::new(0.0, 1.0), coarse), Err(Error::Precondition(_))));
    }

    #[test]
    fn fidelity_edge_cases() {
        let f0 = make_fock(FockSpec::new(0), grid()).unwrap();
        let f1 = make_fock(FockSpec::new(1), grid()).unwrap();
        assert!((fidelity(&f0, &f0).unwrap() - 1.0).abs() < 1e-9);
        assert!(fidelity(&f0, &f1).unwrap() < 1e-10);
        let unnormalized = f0.clone().scale(1.1);
        assert!(matches!(fidelity(&unnormalized, &f0), Err(Error::Contract(_))));
        let other_grid = make_fock(FockSpec::new(0), GridSpec::new(-12.0, 12.0, 2001).unwrap()).unwrap();
        assert!(matches!(fidelity(&f0, &other_grid), Err(Error::Contract(_))));
    }

    #[test]
    fn normalize_rejects_zero_state() {
        let z = WaveFunction::new(grid(), vec![Complex64::default(); 2401]).unwrap();
        assert!(matches!(z.normalize(), Err(Error::DegenerateOutcome(_))));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let psi = make_coherent(Complex64::new(0.3, 1.2), GridSpec::new(-9.0, 9.0, 181).unwrap()).unwrap();
        let back = WaveFunction::from_json(&psi.to_json()).unwrap();
        assert_eq!(back, psi);
        let csv = psi.to_csv();
        assert!(csv.starts_with("x,re,im\n"));
        let back = WaveFunction::from_csv(&csv).unwrap();
        assert_eq!(back.amplitudes(), psi.amplitudes());
        assert_eq!(back.grid().n_points, 181);
        assert!(WaveFunction::from_json(r#"{"grid":{"x_min":0,"x_max":1,"n_points":3},"re":[1,2],"im":[0,0]}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn fidelity_symmetric_and_phase_invariant(
            re in -1.5f64..1.5, im in -1.5f64..1.5, n in 0usize..4, phi in -6.0f64..6.0,
        ) {
            let g = GridSpec::new(-12.0, 12.0, 1201).unwrap();
            let a = make_coherent(Complex64::new(re, im), g).unwrap();
            let b = make_fock(FockSpec::new(n), g).unwrap();
            let ab = fidelity(&a, &b).unwrap();
            prop_assert!((ab - fidelity(&b, &a).unwrap()).abs() < 1e-14);
            let rotated = a.clone().with_global_phase(phi);
            prop_assert!((ab - fidelity(&rotated, &b).unwrap()).abs() < 1e-13);
        }
    }
}
