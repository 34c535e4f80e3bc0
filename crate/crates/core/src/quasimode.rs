//! Quasimode view of the driven qubit.
//!
//! In the dressed frame the qubit couples to a single discrete memory mode of
//! the Lorentzian reservoir, detuned from it by
//! `Δ_eff = |√(Δ² + 4Ω²) − Δ + δ|`. Larger `Δ_eff` slows the exchange of
//! excitation between qubit and memory, which is what protects the QFI.

use serde::{Deserialize, Serialize};

use crate::model::{ModelParams, GAMMA0};

/// Dynamical regime of the qubit–reservoir coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Markovian,
    NonMarkovian,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Markovian => "markovian",
            Regime::NonMarkovian => "non-markovian",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningProfile {
    pub delta_eff: f64,
    pub sudden_change_delta: f64,
    pub regime: Regime,
}

pub fn effective_detuning(omega_rabi: f64, delta_drive: f64, delta_cavity: f64) -> f64 {
    (delta_drive.hypot(2.0 * omega_rabi) - delta_drive + delta_cavity).abs()
}

/// The cavity detuning `δ* = −(√(Δ² + 4Ω²) − Δ) ≤ 0` at which `Δ_eff` vanishes.
pub fn sudden_change_point(omega_rabi: f64, delta_drive: f64) -> f64 {
    -(delta_drive.hypot(2.0 * omega_rabi) - delta_drive)
}

/// Non-Markovian exactly when `γ₀ > λ/2`; the boundary itself is Markovian.
pub fn classify_regime(gamma0: f64, lambda: f64) -> Regime {
    if gamma0 > lambda / 2.0 {
        Regime::NonMarkovian
    } else {
        Regime::Markovian
    }
}

pub fn detuning_profile(params: &ModelParams) -> DetuningProfile {
    DetuningProfile {
        delta_eff: effective_detuning(params.omega_rabi(), params.delta_drive(), params.delta_cavity()),
        sudden_change_delta: sudden_change_point(params.omega_rabi(), params.delta_drive()),
        regime: classify_regime(GAMMA0, params.lambda()),
    }
}
