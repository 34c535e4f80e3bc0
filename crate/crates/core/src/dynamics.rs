//! Reduced qubit state after the dissipative evolution.
//!
//! In the dressed basis the single-excitation evolution maps
//! `|G,0⟩ → |G,0⟩` and `|E,0⟩ → ξ|E,0⟩ + √(1−|ξ|²)|G,1⟩`, so the probe
//! `c0|G⟩ + c1|E⟩` becomes
//!
//! ```text
//! c0|G,0⟩ + c1 ξ|E,0⟩ + c1 √(1−|ξ|²)|G,1⟩.
//! ```
//!
//! Tracing out the reservoir gives `ρ = |a⟩⟨a| + |c1|²(1−|ξ|²)|G⟩⟨G|`
//! with `|a⟩ = c0|G⟩ + c1 ξ|E⟩`, which is then expressed in `{|0⟩, |1⟩}`.

use nalgebra::{Matrix2, Vector2, Vector3};

use crate::error::{Error, Result};
use crate::model::{dressed_frame, initial_coeffs_phi_derivative, initial_dressed_coeffs, ModelParams, ProbeState};
use crate::C64;

/// Largest tolerated `|ξ|` above one (rounding in the solvers).
pub const AMPLITUDE_SLACK: f64 = 1e-9;

/// Qubit density matrix, its `φ`-derivative and the matching Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    /// `ρ` in the `(|0⟩, |1⟩)` basis.
    pub rho: Matrix2<C64>,
    /// `∂φρ`.
    pub drho_dphi: Matrix2<C64>,
    /// Bloch vector `W`, with `ρ = (1 + W·σ)/2`.
    pub w: Vector3<f64>,
    /// `∂φW`.
    pub dw_dphi: Vector3<f64>,
}

impl QubitState {
    /// A pure state and its derivative.
    pub fn pure(psi: &Vector2<C64>, dpsi: &Vector2<C64>) -> Self {
        let rho = psi * psi.adjoint();
        let drho = dpsi * psi.adjoint() + psi * dpsi.adjoint();
        Self::from_matrices(rho, drho)
    }

    pub fn from_matrices(rho: Matrix2<C64>, drho_dphi: Matrix2<C64>) -> Self {
        Self { rho, drho_dphi, w: bloch_vector(&rho), dw_dphi: bloch_vector(&drho_dphi) }
    }

    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }

    pub fn bloch_norm(&self) -> f64 {
        self.w.norm()
    }

    pub fn trace_error(&self) -> f64 {
        (self.rho.trace() - C64::new(1.0, 0.0)).norm()
    }

    /// Largest entry of `ρ − ρ†`.
    pub fn hermiticity_error(&self) -> f64 {
        (self.rho - self.rho.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of `ρ`, ascending.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let ev = self.rho.symmetric_eigenvalues();
        let (a, b) = (ev[0], ev[1]);
        if a <= b {
            [a, b]
        } else {
            [b, a]
        }
    }
}

/// Bloch components `(ρ01 + ρ10, i(ρ01 − ρ10), ρ00 − ρ11)` of any 2×2 matrix.
///
/// For a density matrix `W_z = 2ρ00 − 1`; for a traceless derivative the same
/// linear map gives `∂φW`.
pub fn bloch_vector(m: &Matrix2<C64>) -> Vector3<f64> {
    let (m01, m10) = (m[(0, 1)], m[(1, 0)]);
    Vector3::new((m01 + m10).re, (C64::i() * (m01 - m10)).re, (m[(0, 0)] - m[(1, 1)]).re)
}

/// Reduced state of the probe when the excited dressed amplitude has become `xi`.
pub fn reduced_state(params: &ModelParams, probe: &ProbeState, xi: C64) -> Result<QubitState> {
    let xi_norm = xi.norm();
    if xi_norm.is_nan() || xi_norm > 1.0 + AMPLITUDE_SLACK {
        return Err(Error::InvalidAmplitude(xi_norm));
    }
    let frame = dressed_frame(params);
    let c = initial_dressed_coeffs(probe, &frame);
    let dc = initial_coeffs_phi_derivative(probe, &frame);
    let ground = frame.ground_vector();
    let excited = frame.excited_vector();

    let lost = 1.0 - xi.norm_sqr();
    let a = ground * c.c0 + excited * (c.c1 * xi);
    let da = ground * dc.c0 + excited * (dc.c1 * xi);
    let leaked = c.c1.norm_sqr() * lost;
    let dleaked = 2.0 * (c.c1.conj() * dc.c1).re * lost;
    let gg = ground * ground.adjoint();

    let rho = a * a.adjoint() + gg * C64::new(leaked, 0.0);
    let drho = da * a.adjoint() + a * da.adjoint() + gg * C64::new(dleaked, 0.0);
    Ok(QubitState::from_matrices(rho, drho))
}

/// Central difference `(W(φ+h) − W(φ−h)) / 2h`.
pub fn bloch_phi_derivative_fd(params: &ModelParams, probe: &ProbeState, xi: C64, h: f64) -> Result<Vector3<f64>> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::param("h", format!("step must be > 0 (got {h})")));
    }
    let at = |phi: f64| -> Result<Vector3<f64>> {
        let shifted = ProbeState::with_wrapped_phase(probe.theta(), phi)?;
        Ok(reduced_state(params, &shifted, xi)?.w)
    };
    Ok((at(probe.phi() + h)? - at(probe.phi() - h)?) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn unit_amplitude_is_identity() {
        let p = ModelParams::new(0.3, 2.0, 1.0, 0.5).unwrap();
        let probe = ProbeState::new(1.1, 2.3).unwrap();
        let st = reduced_state(&p, &probe, C64::new(1.0, 0.0)).unwrap();
        let psi = probe.state_vector();
        let expected = psi * psi.adjoint();
        assert!((st.rho - expected).norm() < 1e-12);
        assert!((st.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn undriven_is_amplitude_damping() {
        let p = ModelParams::undriven(0.7).unwrap();
        let probe = ProbeState::new(1.2, 0.4).unwrap();
        let xi = C64::new(0.3, -0.5);
        let st = reduced_state(&p, &probe, xi).unwrap();
        let c = initial_dressed_coeffs(&probe, &p.dressed_frame());
        assert!((st.rho[(0, 0)].re - (1.0 - (c.c1 * xi).norm_sqr())).abs() < 1e-12);
        assert!((st.rho[(1, 0)] - c.c0.conj() * c.c1 * xi).norm() < 1e-12);
    }

    #[test]
    fn full_decay_reaches_ground() {
        let p = ModelParams::undriven(0.7).unwrap();
        let st = reduced_state(&p, &ProbeState::new(FRAC_PI_2, 1.0).unwrap(), C64::new(0.0, 0.0)).unwrap();
        let ground = Matrix2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        assert!((st.rho - ground).norm() < 1e-12);
    }

    #[test]
    fn rejects_growing_amplitude() {
        let p = ModelParams::undriven(0.7).unwrap();
        let probe = ProbeState::new(1.0, 0.0).unwrap();
        assert!(matches!(reduced_state(&p, &probe, C64::new(1.0 + 1e-6, 0.0)), Err(Error::InvalidAmplitude(_))));
        assert!(reduced_state(&p, &probe, C64::new(1.0 + 1e-10, 0.0)).is_ok());
    }

    #[test]
    fn fd_examples() {
        let p = ModelParams::undriven(0.7).unwrap();
        let d = bloch_phi_derivative_fd(&p, &ProbeState::new(0.0, 1.0).unwrap(), C64::new(0.4, 0.1), 1e-5).unwrap();
        assert!(d.norm() < 1e-12);

        // transverse component rotates rigidly: |∂φW| = |ξ|
        for xi in [0.9, 0.5, 0.1] {
            let d = bloch_phi_derivative_fd(&p, &ProbeState::new(FRAC_PI_2, 0.3).unwrap(), C64::new(xi, 0.0), 1e-5)
                .unwrap();
            assert!((d.norm() - xi).abs() < 1e-8);
        }
        assert!(bloch_phi_derivative_fd(&p, &ProbeState::new(1.0, 0.0).unwrap(), C64::new(0.5, 0.0), 0.0).is_err());
    }

    #[test]
    fn fd_straddles_phase_origin() {
        let p = ModelParams::new(0.2, 1.0, 0.5, 0.0).unwrap();
        let probe = ProbeState::new(PI / 3.0, 0.0).unwrap();
        let xi = C64::new(0.6, 0.2);
        let analytic = reduced_state(&p, &probe, xi).unwrap().dw_dphi;
        let fd = bloch_phi_derivative_fd(&p, &probe, xi, 1e-5).unwrap();
        assert!((analytic - fd).norm() < 1e-8);
    }
}
