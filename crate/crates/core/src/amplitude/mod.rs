//! Survival amplitude `ξ(t)` of the excited dressed state.
//!
//! The excited dressed amplitude obeys the memory-kernel equation
//!
//! ```text
//! ċ₁(t) = −cos⁴(η/2) ∫₀ᵗ f(t − s) c₁(s) ds,    c₁(t) = c₁(0) ξ(t)
//! ```
//!
//! For a Lorentzian reservoir the kernel is `f(τ) = (γ₀λ/2) e^{−Mτ}` with
//! `M = λ + iΔ − iδ − iω_D`, and the equation has the closed-form solution
//!
//! ```text
//! ξ(t) = e^{−Mt/2} [cosh(Kt/4) + (2M/K) sinh(Kt/4)],
//! K = √(4M² − 2γ₀λ(1 + cos η)²).
//! ```
//!
//! Three evaluation routes are provided: the closed form ([`xi_analytic`],
//! [`xi_trace`]), an exact ODE embedding of the exponential kernel integrated
//! with RK4 ([`xi_volterra`]), and a generic solver for an arbitrary spectral
//! density that builds the kernel by quadrature and convolves the history
//! ([`xi_generic_volterra`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::grid::TimeGrid;
use crate::model::{dressed_frame, DressedFrame, ModelParams};
use crate::C64;

mod generic;
mod volterra;

pub use generic::{
    lorentzian_density, memory_kernel, xi_generic_volterra, xi_generic_volterra_with, GenericOptions, SpectralDensity,
};
pub use volterra::{xi_volterra, xi_volterra_with, VolterraOptions};

/// Below this `|Kt/4|` the closed form is evaluated through `sinh(z)/z`
/// instead of two separate exponentials.
const SMALL_ARGUMENT: f64 = 1.0;

/// Constants of the exponential Lorentzian kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    /// `M = λ + iΔ − iδ − iω_D`.
    pub m: C64,
    /// `K = √(4M² − 2γ₀λ(1 + cos η)²)`, principal branch.
    pub k: C64,
    /// `cos⁴(η/2)`.
    pub coupling_weight: f64,
}

pub fn kernel_params(params: &ModelParams, frame: &DressedFrame) -> KernelParams {
    let m = C64::new(params.lambda(), params.delta_drive() - params.delta_cavity() - frame.omega_d);
    let one_plus_cos = 1.0 + frame.eta.cos();
    let k = (4.0 * m * m - 2.0 * params.gamma0() * params.lambda() * one_plus_cos * one_plus_cos).sqrt();
    KernelParams { m, k, coupling_weight: frame.coupling_weight() }
}

/// How an [`AmplitudeTrace`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmplitudeMethod {
    Analytic,
    VolterraOde,
    VolterraGeneric,
}

impl AmplitudeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            AmplitudeMethod::Analytic => "analytic",
            AmplitudeMethod::VolterraOde => "volterra-ode",
            AmplitudeMethod::VolterraGeneric => "volterra-generic",
        }
    }
}

/// `ξ` sampled on a time grid.
#[derive(Debug, Clone)]
pub struct AmplitudeTrace {
    pub grid: TimeGrid,
    pub values: Vec<C64>,
    pub method: AmplitudeMethod,
}

impl AmplitudeTrace {
    /// Largest `|ξ|` over the trace.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sup-norm distance to another trace sampled on the same grid.
    pub fn sup_distance(&self, other: &AmplitudeTrace) -> f64 {
        assert_eq!(self.values.len(), other.values.len(), "traces on different grids");
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Closed-form `ξ(t)` for `t ≥ 0`.
pub fn xi_analytic(params: &ModelParams, t: f64) -> C64 {
    let kp = kernel_params(params, &dressed_frame(params));
    closed_form(kp.m, kp.k, t)
}

/// `e^{−Mt/2}[cosh(Kt/4) + (2M/K) sinh(Kt/4)]`, invariant under `K ↦ −K`.
pub(crate) fn closed_form(m: C64, k: C64, t: f64) -> C64 {
    if t == 0.0 {
        return C64::new(1.0, 0.0);
    }
    let z = k * (t / 4.0);
    if z.norm() < SMALL_ARGUMENT {
        // (2M/K) sinh(Kt/4) = (Mt/2) sinh(z)/z, regular at K = 0
        (-m * (t / 2.0)).exp() * (z.cosh() + m * (t / 2.0) * sinhc(z))
    } else {
        let r = 2.0 * m / k;
        0.5 * (1.0 + r) * ((k / 2.0 - m) * (t / 2.0)).exp() + 0.5 * (1.0 - r) * (-(k / 2.0 + m) * (t / 2.0)).exp()
    }
}

/// `sinh(z)/z` with the removable singularity at 0 filled in.
fn sinhc(z: C64) -> C64 {
    if z.norm() < 1e-3 {
        let z2 = z * z;
        1.0 + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Closed-form `ξ` on every grid point.
pub fn xi_trace(params: &ModelParams, grid: &TimeGrid) -> AmplitudeTrace {
    let kp = kernel_params(params, &dressed_frame(params));
    let values = grid.times().par_iter().map(|&t| closed_form(kp.m, kp.k, t)).collect();
    AmplitudeTrace { grid: grid.clone(), values, method: AmplitudeMethod::Analytic }
}

/// Which solver backs a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    Analytic,
    Volterra,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::Analytic => "analytic",
            Backend::Volterra => "volterra",
        }
    }

    /// `ξ` on the grid using this backend.
    pub fn trace(&self, params: &ModelParams, grid: &TimeGrid) -> crate::Result<AmplitudeTrace> {
        match self {
            Backend::Analytic => Ok(xi_trace(params, grid)),
            Backend::Volterra => xi_volterra(params, grid),
        }
    }

    /// `ξ(t)` at a single time. The ODE backend integrates on a uniform grid
    /// of `points` samples over `[0, t]`.
    pub fn at(&self, params: &ModelParams, t: f64, points: usize) -> crate::Result<C64> {
        match self {
            Backend::Analytic => Ok(xi_analytic(params, t)),
            Backend::Volterra if t == 0.0 => Ok(C64::new(1.0, 0.0)),
            Backend::Volterra => {
                let trace = xi_volterra(params, &TimeGrid::uniform(t, points.max(2))?)?;
                Ok(*trace.values.last().expect("non-empty trace"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undriven(lambda: f64) -> ModelParams {
        ModelParams::undriven(lambda).unwrap()
    }

    #[test]
    fn kernel_constants_examples() {
        let p = undriven(1.0);
        let kp = kernel_params(&p, &p.dressed_frame());
        assert!((kp.m - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((kp.k - C64::new(0.0, 2.0)).norm() < 1e-14);

        let p = undriven(0.05);
        let kp = kernel_params(&p, &p.dressed_frame());
        assert!((kp.m - C64::new(0.05, 0.0)).norm() < 1e-14);
        assert!((kp.k - C64::new(0.0, 0.39f64.sqrt())).norm() < 1e-14);
        assert!((kp.k.im - 0.62450).abs() < 1e-5);
    }

    #[test]
    fn xi_is_one_at_origin() {
        for p in [undriven(0.05), ModelParams::new(3.0, 2.0, 1.0, -1.0).unwrap()] {
            assert_eq!(xi_analytic(&p, 0.0), C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn undriven_narrow_reservoir_oscillates() {
        // λ = 0.05: ξ(t) = e^{-0.025t}[cos(ωt) + 0.160128 sin(ωt)], ω = √0.39/4
        let p = undriven(0.05);
        let omega = 0.39f64.sqrt() / 4.0;
        assert!((omega - 0.156125).abs() < 1e-6);
        let ratio = 0.1 / 0.39f64.sqrt();
        assert!((ratio - 0.160128).abs() < 1e-6);
        for i in 0..=100 {
            let t = 0.5 * i as f64;
            let expected = (-0.025 * t).exp() * ((omega * t).cos() + ratio * (omega * t).sin());
            let xi = xi_analytic(&p, t);
            assert!((xi - C64::new(expected, 0.0)).norm() < 1e-12, "t = {t}");
        }
        // first zero from cot(ωt) = -ratio
        let t_zero = (std::f64::consts::PI - (1.0 / ratio).atan()) / omega;
        assert!((t_zero - 11.08).abs() < 0.01);
        assert!(xi_analytic(&p, t_zero).norm() < 1e-12);
        assert!(xi_analytic(&p, t_zero - 0.1).re > 0.0);
        assert!(xi_analytic(&p, t_zero + 0.1).re < 0.0);
    }

    #[test]
    fn markovian_limit_tracks_exponential_decay() {
        // The finite-width correction at λ = 10 is visible: the deviation from
        // e^{-t} peaks at 0.0728 on [0, 5]; it shrinks as λ grows.
        let deviation = |lambda: f64| {
            let p = undriven(lambda);
            (0..=500)
                .map(|i| {
                    let t = 0.01 * i as f64;
                    (xi_analytic(&p, t).norm_sqr() - (-t).exp()).abs()
                })
                .fold(0.0, f64::max)
        };
        let d10 = deviation(10.0);
        assert!(d10 < 0.075, "{d10}");
        let d100 = deviation(100.0);
        assert!(d100 < 0.05 && d100 < d10, "{d100}");
        assert!(deviation(1000.0) < d100);
    }

    #[test]
    fn strong_drive_preserves_amplitude() {
        let p = ModelParams::new(0.05, 10.0, 0.0, 0.0).unwrap();
        let grid = TimeGrid::uniform(50.0, 2001).unwrap();
        let min = xi_trace(&p, &grid).values.iter().map(|z| z.norm()).fold(f64::MAX, f64::min);
        // closed form minimum is 0.99994
        assert!(min >= 0.95, "{min}");
        assert!(min > 0.9999);
    }

    #[test]
    fn driving_slows_decay() {
        let mut last = 0.0;
        for omega in [0.0, 1.0, 5.0, 10.0] {
            let p = ModelParams::new(0.05, omega, 0.0, 0.0).unwrap();
            let pop = xi_analytic(&p, 50.0).norm_sqr();
            assert!(pop >= last, "omega = {omega}");
            last = pop;
        }
    }

    #[test]
    fn branch_of_k_is_irrelevant() {
        for (lambda, omega, dd, dc) in [(0.05, 0.0, 0.0, 0.0), (0.5, 1.0, 1.0, 2.0), (10.0, 5.0, 3.0, -2.0)] {
            let p = ModelParams::new(lambda, omega, dd, dc).unwrap();
            let kp = kernel_params(&p, &p.dressed_frame());
            for t in [0.1, 1.0, 7.5, 50.0] {
                let a = closed_form(kp.m, kp.k, t);
                let b = closed_form(kp.m, -kp.k, t);
                assert!((a - b).norm() < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn degenerate_root_is_regular() {
        // K = 0 exactly when 4M² = 2λ(1+cos η)²; undriven: λ = 2γ₀
        let p = undriven(2.0);
        let kp = kernel_params(&p, &p.dressed_frame());
        assert!(kp.k.norm() < 1e-7);
        for t in [1e-3f64, 0.5, 3.0, 40.0] {
            let expected = (-t).exp() * (1.0 + t);
            assert!((xi_analytic(&p, t) - C64::new(expected, 0.0)).norm() < 1e-12);
        }
        // just off the critical point the two evaluation regions agree
        let m = C64::new(1e-3, 0.0);
        for k in [C64::new(3.99e-3, 0.0), C64::new(4.01e-3, 0.0), C64::new(0.0, 4.01e-3)] {
            let t = 1000.0;
            let near = closed_form(m, k, t);
            let z = k * (t / 4.0);
            let direct = (-m * (t / 2.0)).exp() * (z.cosh() + m * (t / 2.0) * z.sinh() / z);
            assert!((near - direct).norm() < 1e-12, "{near} vs {direct}");
        }
    }

    #[test]
    fn trace_of_single_point_grid() {
        let grid = TimeGrid::from_points(vec![0.0]).unwrap();
        let tr = xi_trace(&undriven(0.3), &grid);
        assert_eq!(tr.values, vec![C64::new(1.0, 0.0)]);
        assert_eq!(tr.method, AmplitudeMethod::Analytic);
    }
}
