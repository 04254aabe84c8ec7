//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn composite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> Complex64 {
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in rule {
            sum += f(mid + 0.5 * h * x) * (0.5 * h * w);
        }
    }
    sum
}

/// `Ai(z) = (1/π) ∫₀^∞ cos(t³/3 + zt) dt`.
///
/// The real segment `[0, T]` (past the last stationary point) is integrated
/// directly; the tail is moved onto the ray `T + u·e^{iπ/6}`, along which
/// every term of the phase gains a positive imaginary part and the integrand
/// decays like `exp(−u³/3)`.
pub fn airy_oracle(z: f64) -> f64 {
    let rule = gauss_legendre(20);
    let phase = |t: Complex64| t * t * t / 3.0 + t * z;
    let i = Complex64::new(0.0, 1.0);
    let t_split = if z < 0.0 { (-z).sqrt() + 2.0 } else { 0.0 };
    let mut total = Complex64::new(0.0, 0.0);
    if t_split > 0.0 {
        let panels = (t_split / 0.05).ceil() as usize;
        total += composite(|t| (i * phase(Complex64::new(t, 0.0))).exp(), 0.0, t_split, panels, &rule);
    }
    let ray = Complex64::from_polar(1.0, PI / 6.0);
    let u_max = 7.0;
    total += ray * composite(|u| (i * phase(t_split + ray * u)).exp(), 0.0, u_max, 400, &rule);
    total.re / PI
}

/// Laguerre polynomial `L_n(u)`.
pub fn laguerre(n: usize, u: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - u);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - u) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed-form Fock-state Wigner function `((−1)ⁿ/π) L_n(2r²) e^{−r²}`.
pub fn fock_wigner(n: usize, x: f64, p: f64) -> f64 {
    let r2 = x * x + p * p;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / PI * laguerre(n, 2.0 * r2) * (-r2).exp()
}

/// `∫∫ max(0, −W_n)` by midpoint brute force on a fine polar grid.
pub fn fock_negativity_brute_force(n: usize) -> f64 {
    let (nr, r_max) = (200_000usize, 10.0);
    let dr = r_max / nr as f64;
    // radial symmetry: ∫∫ f = 2π ∫ f(r) r dr
    (0..nr)
        .map(|k| {
            let r = (k as f64 + 0.5) * dr;
            (-fock_wigner(n, r, 0.0)).max(0.0) * 2.0 * PI * r * dr
        })
        .sum()
}
