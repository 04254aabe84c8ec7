//! Simulation of the measurement-induced continuous-variable gate that turns an
//! arbitrary input state into a Schrödinger-cat superposition by means of a
//! cubic-phase ancilla, a C_Z coupling and a homodyne measurement of the ancilla
//! momentum.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] – Airy function, Hermite polynomials, Simpson quadrature.
//! * [`states`] – grid wavefunctions, Fock and coherent states, fidelity.
//! * [`gate`] – exact and stationary-phase gate outputs, perfect-cat references
//!   and the scalar cat diagnostics.
//! * [`wigner`] – Wigner transform and phase-space diagnostics.
//! * [`sweeps`] – parallel parameter sweeps over the `(y_m, γ)` plane.
//!
//! Units: dimensionless quadratures with `ψ₀(x) = π^{-1/4} e^{-x²/2}` and a
//! coherent amplitude `α` centred at `x̄ = √2 Re α`, `p̄ = √2 Im α`.

pub mod error;
pub mod gate;
pub mod numerics;
pub mod states;
pub mod sweeps;
pub mod wigner;

pub use error::{Error, Result};
pub use gate::{CatDiagnostics, GateParams, Parity, PhasePoint};
pub use numerics::GridSpec;
pub use states::{FockSpec, WaveFunction};
pub use sweeps::{Metric, SweepResult, SweepSpec};
pub use wigner::WignerGrid;

/// Shortest round-trip text for `x`, in exponent form outside `[1e-4, 1e16)`.
///
/// Used by every CSV writer so output is lossless and byte-stable.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
