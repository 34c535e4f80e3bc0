//! Model parameters, dressed-state geometry and initial dressed amplitudes.
//!
//! Basis convention: `|0⟩` is the qubit ground state `|g⟩` and `|1⟩` the
//! excited state `|e⟩`. Vectors are stored in the `(|0⟩, |1⟩)` order.
//!
//! The drive and detuning part of the rotating-frame Hamiltonian,
//! `(Δ/2)σ_z + Ωσ_x`, is diagonal in the dressed basis
//!
//! ```text
//! |E⟩ =  cos(η/2)|e⟩ + sin(η/2)|g⟩
//! |G⟩ = −sin(η/2)|e⟩ + cos(η/2)|g⟩
//! ```
//!
//! with mixing angle `η = atan2(2Ω, Δ)` and dressed splitting
//! `ω_D = √(Δ² + 4Ω²)`.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// The reservoir decay rate. Every other rate is a multiple of it.
pub const GAMMA0: f64 = 1.0;

/// Physical parameters, in units of `γ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    lambda: f64,
    omega_rabi: f64,
    delta_drive: f64,
    delta_cavity: f64,
}

impl ModelParams {
    /// * `lambda`: spectral width `λ > 0`.
    /// * `omega_rabi`: Rabi frequency `Ω ≥ 0`.
    /// * `delta_drive`: drive detuning `Δ = |ω₀ − ω_L| ≥ 0`.
    /// * `delta_cavity`: qubit–reservoir detuning `δ = ω₀ − ω_c`, any sign.
    pub fn new(lambda: f64, omega_rabi: f64, delta_drive: f64, delta_cavity: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::param("lambda", format!("lambda must be > 0 (got {lambda})")));
        }
        if !(omega_rabi.is_finite() && omega_rabi >= 0.0) {
            return Err(Error::param("omega", format!("omega must be >= 0 (got {omega_rabi})")));
        }
        if !(delta_drive.is_finite() && delta_drive >= 0.0) {
            return Err(Error::param("delta_drive", format!("delta_drive must be >= 0 (got {delta_drive})")));
        }
        if !delta_cavity.is_finite() {
            return Err(Error::param("delta_cavity", format!("delta_cavity must be finite (got {delta_cavity})")));
        }
        Ok(Self { lambda, omega_rabi, delta_drive, delta_cavity })
    }

    /// Undriven, resonant parameters with the given spectral width.
    pub fn undriven(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0, 0.0, 0.0)
    }

    pub fn gamma0(&self) -> f64 {
        GAMMA0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn omega_rabi(&self) -> f64 {
        self.omega_rabi
    }

    pub fn delta_drive(&self) -> f64 {
        self.delta_drive
    }

    pub fn delta_cavity(&self) -> f64 {
        self.delta_cavity
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(lambda, self.omega_rabi, self.delta_drive, self.delta_cavity)
    }

    pub fn with_omega_rabi(self, omega_rabi: f64) -> Result<Self> {
        Self::new(self.lambda, omega_rabi, self.delta_drive, self.delta_cavity)
    }

    pub fn with_delta_drive(self, delta_drive: f64) -> Result<Self> {
        Self::new(self.lambda, self.omega_rabi, delta_drive, self.delta_cavity)
    }

    pub fn with_delta_cavity(self, delta_cavity: f64) -> Result<Self> {
        Self::new(self.lambda, self.omega_rabi, self.delta_drive, delta_cavity)
    }

    pub fn dressed_frame(&self) -> DressedFrame {
        dressed_frame(self)
    }
}

/// Initial pure qubit state `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
///
/// `φ` is the phase being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeState {
    theta: f64,
    phi: f64,
}

impl ProbeState {
    /// Requires `θ ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(Error::param("theta", format!("theta must lie in [0, pi] (got {theta})")));
        }
        if !(phi.is_finite() && (0.0..TAU).contains(&phi)) {
            return Err(Error::param("phi", format!("phi must lie in [0, 2pi) (got {phi})")));
        }
        Ok(Self { theta, phi })
    }

    /// Like [`ProbeState::new`], but reduces any finite `φ` modulo `2π`.
    pub fn with_wrapped_phase(theta: f64, phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::param("phi", format!("phi must be finite (got {phi})")));
        }
        let wrapped = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        Self::new(theta, if wrapped >= TAU { 0.0 } else { wrapped })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// State vector in the `(|0⟩, |1⟩)` basis.
    pub fn state_vector(&self) -> Vector2<C64> {
        let (s, c) = (self.theta / 2.0).sin_cos();
        Vector2::new(C64::new(c, 0.0), C64::from_polar(s, self.phi))
    }

    /// `∂φ` of [`ProbeState::state_vector`].
    pub fn state_vector_phi_derivative(&self) -> Vector2<C64> {
        let s = (self.theta / 2.0).sin();
        Vector2::new(C64::new(0.0, 0.0), C64::i() * C64::from_polar(s, self.phi))
    }
}

/// Dressed-basis mixing angle and splitting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedFrame {
    /// Mixing angle `η ∈ [0, π/2]`.
    pub eta: f64,
    /// Dressed frequency `ω_D ≥ 0`.
    pub omega_d: f64,
}

impl DressedFrame {
    /// `|G⟩` in the `(|0⟩, |1⟩)` basis.
    pub fn ground_vector(&self) -> Vector2<C64> {
        let (s, c) = (self.eta / 2.0).sin_cos();
        Vector2::new(C64::new(c, 0.0), C64::new(-s, 0.0))
    }

    /// `|E⟩` in the `(|0⟩, |1⟩)` basis.
    pub fn excited_vector(&self) -> Vector2<C64> {
        let (s, c) = (self.eta / 2.0).sin_cos();
        Vector2::new(C64::new(s, 0.0), C64::new(c, 0.0))
    }

    /// `cos⁴(η/2)`, the weight of the reservoir coupling in the dressed frame.
    pub fn coupling_weight(&self) -> f64 {
        (self.eta / 2.0).cos().powi(4)
    }
}

/// Amplitudes of the initial probe state on `|G⟩` (`c0`) and `|E⟩` (`c1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedCoeffs {
    pub c0: C64,
    pub c1: C64,
}

impl DressedCoeffs {
    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }
}

pub fn dressed_frame(params: &ModelParams) -> DressedFrame {
    let two_omega = 2.0 * params.omega_rabi;
    DressedFrame { eta: two_omega.atan2(params.delta_drive), omega_d: params.delta_drive.hypot(two_omega) }
}

/// `c0 = ⟨G|ψ⟩`, `c1 = ⟨E|ψ⟩`.
pub fn initial_dressed_coeffs(probe: &ProbeState, frame: &DressedFrame) -> DressedCoeffs {
    let (st, ct) = (probe.theta / 2.0).sin_cos();
    let (se, ce) = (frame.eta / 2.0).sin_cos();
    let phase = C64::from_polar(1.0, probe.phi);
    DressedCoeffs { c0: ct * ce - phase * (st * se), c1: ct * se + phase * (st * ce) }
}

/// Analytic `(∂φ c0, ∂φ c1)`.
pub fn initial_coeffs_phi_derivative(probe: &ProbeState, frame: &DressedFrame) -> DressedCoeffs {
    let st = (probe.theta / 2.0).sin();
    let (se, ce) = (frame.eta / 2.0).sin_cos();
    let i_phase = C64::i() * C64::from_polar(1.0, probe.phi);
    DressedCoeffs { c0: -i_phase * (st * se), c1: i_phase * (st * ce) }
}
