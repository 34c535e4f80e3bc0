//! Quantum Fisher information of the phase `φ`.
//!
//! Three independent routes are implemented:
//!
//! - [`qfi_bloch`]: the single-qubit Bloch-vector formula
//!   `F = |∂W|² + (W·∂W)²/(1 − |W|²)` (pure states: `F = |∂W|²`).
//! - [`qfi_spectral`]: the eigen-decomposition sum over the nonzero
//!   eigenvalues `λₙ` of `ρ`,
//!   `F = Σ (∂λₙ)²/λₙ + Σ λₙ Fₙ − Σ_{n≠m} 8λₙλₘ/(λₙ+λₘ) |⟨ψₙ|∂ψₘ⟩|²`,
//!   where `Fₙ` is the pure-state QFI of the `n`-th eigenvector.
//! - [`qfi_pure`]: `F = 4[⟨∂ψ|∂ψ⟩ − |⟨ψ|∂ψ⟩|²]`.
//!
//! [`classical_fisher`] gives the Fisher information of a fixed measurement,
//! which never exceeds the QFI.

use nalgebra::{Matrix2, Vector2, Vector3};
use rayon::prelude::*;

use crate::amplitude::Backend;
use crate::dynamics::{reduced_state, QubitState};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{ModelParams, ProbeState};
use crate::C64;

/// `1 − |W|²` at or below which the state is treated as pure.
pub const PURE_THRESHOLD: f64 = 1e-9;
/// Eigenvalues at or below this are treated as zero.
pub const EIGENVALUE_CUTOFF: f64 = 1e-12;
/// Eigenvalue gap below which first-order perturbation is abandoned.
pub const DEGENERACY_GAP: f64 = 1e-10;
/// Probabilities at or below this are skipped by [`classical_fisher`].
pub const PROBABILITY_CUTOFF: f64 = 1e-15;

const BLOCH_SLACK: f64 = 1e-10;
const NORMALIZATION_TOL: f64 = 1e-10;

/// Which branch of the Bloch formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlochBranch {
    Mixed,
    Pure,
}

impl BlochBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlochBranch::Mixed => "mixed",
            BlochBranch::Pure => "pure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochQfi {
    pub value: f64,
    pub branch: BlochBranch,
}

pub fn qfi_bloch(w: &Vector3<f64>, dw: &Vector3<f64>) -> Result<BlochQfi> {
    let norm = w.norm();
    if norm.is_nan() || norm > 1.0 + BLOCH_SLACK {
        return Err(Error::InvalidBlochVector(norm));
    }
    let mixedness = 1.0 - w.norm_squared();
    if mixedness > PURE_THRESHOLD {
        let proj = w.dot(dw);
        Ok(BlochQfi { value: dw.norm_squared() + proj * proj / mixedness, branch: BlochBranch::Mixed })
    } else {
        Ok(BlochQfi { value: dw.norm_squared(), branch: BlochBranch::Pure })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralQfi {
    pub value: f64,
    /// Set when two retained eigenvalues were closer than [`DEGENERACY_GAP`]
    /// and the value came from the finite-difference path.
    pub degenerate: bool,
}

pub fn qfi_spectral(rho: &Matrix2<C64>, drho: &Matrix2<C64>) -> Result<SpectralQfi> {
    match spectral_terms(rho, drho)? {
        Some(value) => Ok(SpectralQfi { value, degenerate: false }),
        None => Ok(SpectralQfi { value: degenerate_fallback(rho, drho)?, degenerate: true }),
    }
}

/// The eigen-sum, or `None` when two retained eigenvalues are degenerate.
fn spectral_terms(rho: &Matrix2<C64>, drho: &Matrix2<C64>) -> Result<Option<f64>> {
    let eig = rho.symmetric_eigen();
    let values = eig.eigenvalues;
    let vectors = eig.eigenvectors;
    let dim = values.len();

    let kept: Vec<usize> = (0..dim).filter(|&n| values[n] > EIGENVALUE_CUTOFF).collect();
    for (i, &n) in kept.iter().enumerate() {
        for &m in &kept[i + 1..] {
            if (values[n] - values[m]).abs() < DEGENERACY_GAP {
                return Ok(None);
            }
        }
    }

    let psi: Vec<Vector2<C64>> = (0..dim).map(|n| vectors.column(n).into_owned()).collect();
    // ⟨ψₘ|∂ρ|ψₙ⟩
    let element = |m: usize, n: usize| (psi[m].adjoint() * drho * psi[n])[(0, 0)];
    // first-order eigenvector derivative in the gauge ⟨ψₙ|∂ψₙ⟩ = 0
    let dpsi: Vec<Vector2<C64>> = (0..dim)
        .map(|n| {
            let mut d = Vector2::zeros();
            if kept.contains(&n) {
                for m in (0..dim).filter(|&m| m != n) {
                    d += psi[m] * (element(m, n) / (values[n] - values[m]));
                }
            }
            d
        })
        .collect();

    let mut total = 0.0;
    for &n in &kept {
        let dlambda = element(n, n).re;
        total += dlambda * dlambda / values[n];
        total += values[n] * pure_qfi_unchecked(&psi[n], &dpsi[n]);
    }
    for &n in &kept {
        for &m in kept.iter().filter(|&&m| m != n) {
            let overlap = (psi[n].adjoint() * dpsi[m])[(0, 0)].norm_sqr();
            total -= 8.0 * values[n] * values[m] / (values[n] + values[m]) * overlap;
        }
    }
    Ok(Some(total))
}

/// Average of the eigen-sum at `ρ ± s∂ρ`, where the perturbation splits the
/// degenerate eigenvalues.
fn degenerate_fallback(rho: &Matrix2<C64>, drho: &Matrix2<C64>) -> Result<f64> {
    let scale = drho.norm();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s = 1e-4 / scale;
    let plus = spectral_terms(&(rho + drho * C64::new(s, 0.0)), drho)?;
    let minus = spectral_terms(&(rho - drho * C64::new(s, 0.0)), drho)?;
    match (plus, minus) {
        (Some(a), Some(b)) => Ok(0.5 * (a + b)),
        _ => Err(Error::Accuracy {
            what: "degenerate spectral QFI",
            estimate: scale,
            tolerance: DEGENERACY_GAP,
            suggested_step: None,
        }),
    }
}

fn pure_qfi_unchecked(psi: &Vector2<C64>, dpsi: &Vector2<C64>) -> f64 {
    let dd = dpsi.norm_squared();
    let overlap = (psi.adjoint() * dpsi)[(0, 0)].norm_sqr();
    4.0 * (dd - overlap)
}

pub fn qfi_pure(psi: &Vector2<C64>, dpsi: &Vector2<C64>) -> Result<f64> {
    let norm = psi.norm_squared();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(pure_qfi_unchecked(psi, dpsi))
}

/// `Σ (∂pᵢ)²/pᵢ` over outcomes with `pᵢ > 1e-15`.
pub fn classical_fisher(probs: &[f64], dprobs: &[f64]) -> Result<f64> {
    if probs.len() != dprobs.len() {
        return Err(Error::InconsistentDistribution(format!(
            "{} probabilities but {} derivatives",
            probs.len(),
            dprobs.len()
        )));
    }
    if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= -NORMALIZATION_TOL)) {
        return Err(Error::InconsistentDistribution(format!("invalid probability {p}")));
    }
    if let Some(d) = dprobs.iter().find(|d| !d.is_finite()) {
        return Err(Error::InconsistentDistribution(format!("invalid derivative {d}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InconsistentDistribution(format!("probabilities sum to {total}")));
    }
    let dtotal: f64 = dprobs.iter().sum();
    if dtotal.abs() > NORMALIZATION_TOL {
        return Err(Error::InconsistentDistribution(format!("derivatives sum to {dtotal}")));
    }
    Ok(probs.iter().zip(dprobs).filter(|(p, _)| **p > PROBABILITY_CUTOFF).map(|(p, d)| d * d / p).sum())
}

/// One sample of a [`QfiSeries`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiPoint {
    pub t: f64,
    pub f_phi: f64,
    pub xi: C64,
    pub state: QubitState,
    pub branch: BlochBranch,
}

impl QfiPoint {
    pub fn abs_xi(&self) -> f64 {
        self.xi.norm()
    }

    pub fn bloch_norm(&self) -> f64 {
        self.state.bloch_norm()
    }

    pub fn purity(&self) -> f64 {
        self.state.purity()
    }
}

/// QFI along a time grid with per-point diagnostics.
#[derive(Debug, Clone)]
pub struct QfiSeries {
    pub grid: TimeGrid,
    pub backend: Backend,
    pub points: Vec<QfiPoint>,
}

impl QfiSeries {
    pub fn f_phi(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.f_phi).collect()
    }
}

/// QFI and diagnostics for the state reached when the amplitude is `xi`.
pub fn qfi_point(params: &ModelParams, probe: &ProbeState, t: f64, xi: C64) -> Result<QfiPoint> {
    let state = reduced_state(params, probe, xi)?;
    let q = qfi_bloch(&state.w, &state.dw_dphi)?;
    Ok(QfiPoint { t, f_phi: q.value, xi, state, branch: q.branch })
}

pub fn qfi_timeseries(
    params: &ModelParams,
    probe: &ProbeState,
    grid: &TimeGrid,
    backend: Backend,
) -> Result<QfiSeries> {
    let trace = backend.trace(params, grid)?;
    let points = grid
        .times()
        .par_iter()
        .zip(trace.values.par_iter())
        .map(|(&t, &xi)| qfi_point(params, probe, t, xi))
        .collect::<Result<Vec<_>>>()?;
    Ok(QfiSeries { grid: grid.clone(), backend, points })
}
