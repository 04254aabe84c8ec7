//! Airy function `Ai(z)` on the real line.
//!
//! Three branches:
//! * `|z| ≤ 9`: Maclaurin series `Ai(z) = c₁ f(z) − c₂ g(z)` accumulated in
//!   double-double arithmetic. The two series grow like `e^{(2/3)|z|^{3/2}}`
//!   while `Ai` decays like its inverse, so plain `f64` would lose every digit
//!   near `z = 9`.
//! * `z > 9`: exponentially decaying asymptotic expansion.
//! * `z < −9`: oscillatory asymptotic expansion.
//!
//! All asymptotic sums are truncated at their smallest term; at `ζ = 18` that
//! term is below `1e-15` relative.

use super::dd::DoubleDouble;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

/// Branch switch between the series and the asymptotic expansions.
pub const SERIES_LIMIT: f64 = 9.0;

/// `Ai(0) = 3^{-2/3} / Γ(2/3)` in double-double.
const AI0: DoubleDouble = DoubleDouble::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
/// `−Ai'(0) = 3^{-1/3} / Γ(1/3)` in double-double.
const MINUS_AIP0: DoubleDouble =
    DoubleDouble::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

/// Evaluate `Ai(z)` for finite real `z`.
pub fn airy_ai(z: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("airy_ai requires a finite argument, got {z}")));
    }
    Ok(airy_ai_unchecked(z))
}

/// Same as [`airy_ai`] without the finiteness check; NaN propagates.
pub(crate) fn airy_ai_unchecked(z: f64) -> f64 {
    if z.abs() > SERIES_LIMIT {
        airy_ai_asymptotic(z)
    } else {
        airy_ai_series(z)
    }
}

/// Maclaurin branch, valid (and accurate to ~1e-15 relative) for `|z| ≤ 9`.
///
/// Exposed so the branch seams can be checked against each other.
pub fn airy_ai_series(z: f64) -> f64 {
    let zd = DoubleDouble::from_f64(z);
    let z3 = zd * zd * zd;
    let mut f_term = DoubleDouble::from_f64(1.0);
    let mut f_sum = f_term;
    let mut g_term = zd;
    let mut g_sum = g_term;
    // Terms stop growing once 9k² > |z|³.
    let k_peak = (z.abs().powf(1.5) / 3.0).ceil() as usize + 1;
    for k in 1..200usize {
        let k3 = 3.0 * k as f64;
        f_term = f_term * z3 / (k3 * (k3 - 1.0));
        g_term = g_term * z3 / ((k3 + 1.0) * k3);
        f_sum = f_sum + f_term;
        g_sum = g_sum + g_term;
        if k > k_peak
            && f_term.abs().hi <= 1e-34 * f_sum.abs().hi.max(1e-300)
            && g_term.abs().hi <= 1e-34 * g_sum.abs().hi.max(1e-300)
        {
            break;
        }
    }
    (AI0 * f_sum - MINUS_AIP0 * g_sum).to_f64()
}

/// Coefficients `u_k` of the Airy asymptotic expansions, up to `n` terms.
fn asymptotic_coefficients(n: usize) -> impl Iterator<Item = f64> {
    let mut u = 1.0_f64;
    (0..n).map(move |k| {
        if k > 0 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        }
        u
    })
}

/// Asymptotic branch for `|z|` large: decaying for `z > 0`, oscillatory for `z < 0`.
///
/// Exposed so the branch seams can be checked against each other.
pub fn airy_ai_asymptotic(z: f64) -> f64 {
    let x = z.abs();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let prefactor = 1.0 / (PI.sqrt() * x.sqrt().sqrt());
    if z >= 0.0 {
        // Σ (−1)^k u_k ζ^{−k}, truncated at the smallest term.
        let mut sum = 0.0f64;
        let mut last = f64::INFINITY;
        let mut zeta_pow = 1.0;
        for (k, u) in asymptotic_coefficients(80).enumerate() {
            let term = u / zeta_pow;
            if term > last || term < 1e-17 * sum.abs() {
                break;
            }
            sum += if k % 2 == 0 { term } else { -term };
            last = term;
            zeta_pow *= zeta;
        }
        0.5 * prefactor * (-zeta).exp() * sum
    } else {
        // Even-index terms feed the cosine, odd-index terms the sine.
        let mut p = 0.0f64;
        let mut q = 0.0f64;
        let mut last = f64::INFINITY;
        let mut zeta_pow = 1.0;
        for (k, u) in asymptotic_coefficients(80).enumerate() {
            let term = u / zeta_pow;
            if term > last || term < 1e-17 * (p.abs() + q.abs()) {
                break;
            }
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q += sign * term;
            }
            last = term;
            zeta_pow *= zeta;
        }
        let phase = zeta - FRAC_PI_4;
        prefactor * (phase.cos() * p + phase.sin() * q)
    }
}
