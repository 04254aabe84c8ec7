//! Special functions and quadrature on uniform grids.

mod airy;
mod dd;

pub use airy::{airy_ai, airy_ai_asymptotic, airy_ai_series, SERIES_LIMIT};
pub(crate) use airy::airy_ai_unchecked;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul};

/// Uniform 1D grid `x_k = x_min + k·dx`, `k = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let grid = Self { x_min, x_max, n_points };
        grid.validate()?;
        Ok(grid)
    }

    /// Grid over `[x_min, x_max]` whose spacing is as close as possible to `dx`.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64) -> Result<Self> {
        if !(dx.is_finite() && dx > 0.0) {
            return Err(Error::Precondition(format!("grid spacing must be positive, got {dx}")));
        }
        let intervals = ((x_max - x_min) / dx).round();
        if intervals.is_nan() || intervals < 1.0 {
            return Err(Error::Precondition(format!(
                "grid [{x_min}, {x_max}] with dx={dx} has no interval"
            )));
        }
        Self::new(x_min, x_max, intervals as usize + 1)
    }

    /// `[-12, 12]` with `dx = 0.01`.
    pub fn default_coordinate() -> Self {
        Self { x_min: -12.0, x_max: 12.0, n_points: 2401 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite()) {
            return Err(Error::Precondition("grid bounds must be finite".into()));
        }
        if self.x_min >= self.x_max {
            return Err(Error::Precondition(format!(
                "grid requires x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.n_points < 2 {
            return Err(Error::Precondition(format!(
                "grid requires at least 2 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    #[inline]
    pub fn point(&self, k: usize) -> f64 {
        self.x_min + k as f64 * self.dx()
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        let dx = self.dx();
        (0..self.n_points).map(move |k| self.x_min + k as f64 * dx)
    }

    /// True when `[lo, hi]` lies inside the grid.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.x_min <= lo && self.x_max >= hi
    }

    /// Largest momentum representable without aliasing, `π/dx`.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI / self.dx()
    }
}

/// Physicists' Hermite polynomial `H_n(x)` via `H_{k+1} = 2x H_k − 2k H_{k−1}`.
pub fn hermite(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Quadrature weight (in units of `dx`) of sample `i` out of `n`.
///
/// Composite Simpson for an even interval count. With an odd interval count
/// the last three intervals use Simpson's 3/8 rule, so the error stays
/// `O(dx⁴)`; two points fall back to the trapezoid.
#[inline]
pub fn quadrature_weight(i: usize, n: usize) -> f64 {
    debug_assert!(i < n && n >= 2);
    if n == 2 {
        return 0.5;
    }
    let intervals = n - 1;
    let simpson_end = if intervals.is_multiple_of(2) { intervals } else { intervals - 3 };
    let mut w = 0.0;
    if i <= simpson_end && simpson_end > 0 {
        w += if i == 0 || i == simpson_end {
            1.0 / 3.0
        } else if i % 2 == 1 {
            4.0 / 3.0
        } else {
            2.0 / 3.0
        };
    }
    if intervals % 2 == 1 && i >= simpson_end {
        w += if i == simpson_end || i == intervals { 3.0 / 8.0 } else { 9.0 / 8.0 };
    }
    w
}

/// Quadrature weights for `n` samples with spacing `dx`.
pub fn quadrature_weights(n: usize, dx: f64) -> Vec<f64> {
    (0..n).map(|i| quadrature_weight(i, n) * dx).collect()
}

/// Integrate uniformly spaced samples with step `dx`.
pub fn integrate_uniform<T>(samples: &[T], dx: f64) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = samples.len();
    match n {
        0 | 1 => T::default(),
        _ => {
            let sum = samples
                .iter()
                .enumerate()
                .fold(T::default(), |acc, (i, &s)| acc + s * quadrature_weight(i, n));
            sum * dx
        }
    }
}

/// Integrate samples living on `grid`.
pub fn integrate<T>(samples: &[T], grid: &GridSpec) -> Result<T>
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    if samples.len() != grid.n_points {
        return Err(Error::Contract(format!(
            "integrate: {} samples on a grid of {} points",
            samples.len(),
            grid.n_points
        )));
    }
    Ok(integrate_uniform(samples, grid.dx()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn grid_points_are_reproducible() {
        let g = GridSpec::default_coordinate();
        assert_eq!(g.dx(), 0.01);
        assert_eq!(g.point(0), -12.0);
        assert!((g.point(2400) - 12.0).abs() < 1e-12);
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts[1234], g.point(1234));
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 1.0, 10).is_err());
        assert!(GridSpec::new(2.0, 1.0, 10).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(f64::NAN, 1.0, 10).is_err());
        assert_eq!(GridSpec::with_spacing(-12.0, 12.0, 0.01).unwrap().n_points, 2401);
    }

    #[test]
    fn hermite_low_orders() {
        for x in [-2.5, 0.0, 0.3, 7.0] {
            assert_eq!(hermite(0, x), 1.0);
        }
        assert_eq!(hermite(1, 3.0), 6.0);
        assert_eq!(hermite(2, 1.0), 2.0);
    }

    #[test]
    fn weights_sum_to_length() {
        for n in 2..40 {
            let total: f64 = (0..n).map(|i| quadrature_weight(i, n)).sum();
            assert!((total - (n - 1) as f64).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn integrate_constant() {
        let g = GridSpec::new(0.0, 1.0, 101).unwrap();
        let v = integrate(&vec![Complex64::new(1.0, 0.0); 101], &g).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im == 0.0);
    }

    #[test]
    fn integrate_normalized_gaussian() {
        let g = GridSpec::with_spacing(-10.0, 10.0, 0.01).unwrap();
        let s: Vec<f64> = g.points().map(|x| (-x * x).exp() / PI.sqrt()).collect();
        assert!((integrate(&s, &g).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn integrate_sine_matches_antiderivative() {
        // ∫₀^π sin = [−cos]₀^π = 2
        let g = GridSpec::new(0.0, PI, 1001).unwrap();
        let s: Vec<f64> = g.points().map(f64::sin).collect();
        assert!((integrate(&s, &g).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn odd_interval_count_is_still_fourth_order() {
        let g = GridSpec::new(0.0, PI, 1000).unwrap();
        let s: Vec<f64> = g.points().map(f64::sin).collect();
        assert!((integrate(&s, &g).unwrap() - 2.0).abs() < 1e-10);
        let g2 = GridSpec::new(0.0, 1.0, 2).unwrap();
        assert_eq!(integrate(&[1.0, 3.0], &g2).unwrap(), 2.0);
    }

    #[test]
    fn length_mismatch_is_contract_violation() {
        let g = GridSpec::new(0.0, 1.0, 11).unwrap();
        assert!(matches!(integrate(&[1.0; 10], &g), Err(Error::Contract(_))));
    }

    proptest! {
        #[test]
        fn hermite_matches_explicit_polynomials(x in -5.0f64..5.0) {
            let explicit = [
                1.0,
                2.0 * x,
                4.0 * x * x - 2.0,
                8.0 * x.powi(3) - 12.0 * x,
                16.0 * x.powi(4) - 48.0 * x * x + 12.0,
            ];
            for (n, e) in explicit.iter().enumerate() {
                let h = hermite(n, x);
                prop_assert!((h - e).abs() <= 1e-10 * e.abs().max(1.0));
            }
        }

        #[test]
        fn integrate_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, n in 2usize..300) {
            let g = GridSpec::new(-1.0, 2.0, n).unwrap();
            let f: Vec<f64> = g.points().map(|x| (x * 1.7).cos()).collect();
            let h: Vec<f64> = g.points().map(|x| x * x - 0.3).collect();
            let combo: Vec<f64> = f.iter().zip(&h).map(|(p, q)| a * p + b * q).collect();
            let lhs = integrate(&combo, &g).unwrap();
            let rhs = a * integrate(&f, &g).unwrap() + b * integrate(&h, &g).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }
    }
}
