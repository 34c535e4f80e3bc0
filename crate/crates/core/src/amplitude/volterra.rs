//! RK4 solution of the memory-kernel equation for the exponential kernel.
//!
//! With `y(t) = ∫₀ᵗ f(t − s) c(s) ds` and `f(τ) = (γ₀λ/2) e^{−Mτ}` the
//! integro-differential equation becomes the linear system
//!
//! ```text
//! ċ = −cos⁴(η/2) y,    ẏ = (γ₀λ/2) c − M y,    c(0) = 1, y(0) = 0.
//! ```

use super::{kernel_params, AmplitudeMethod, AmplitudeTrace};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{dressed_frame, ModelParams};
use crate::C64;

/// Step control for [`xi_volterra_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolterraOptions {
    /// RK4 substeps per grid interval; `None` picks them from the spectral
    /// radius of the system.
    pub substeps: Option<usize>,
    /// Largest tolerated difference between the run and its halved-step rerun.
    pub tolerance: f64,
}

impl Default for VolterraOptions {
    fn default() -> Self {
        Self { substeps: None, tolerance: 1e-6 }
    }
}

/// Target `ρh` for the automatic substep choice.
const AUTO_STEP_SCALE: f64 = 0.01;

#[derive(Clone, Copy)]
struct System {
    weight: f64,
    rate: f64,
    m: C64,
}

impl System {
    fn rhs(&self, c: C64, y: C64) -> (C64, C64) {
        (-self.weight * y, self.rate * c - self.m * y)
    }

    fn rk4(&self, c: C64, y: C64, h: f64) -> (C64, C64) {
        let (k1c, k1y) = self.rhs(c, y);
        let (k2c, k2y) = self.rhs(c + 0.5 * h * k1c, y + 0.5 * h * k1y);
        let (k3c, k3y) = self.rhs(c + 0.5 * h * k2c, y + 0.5 * h * k2y);
        let (k4c, k4y) = self.rhs(c + h * k3c, y + h * k3y);
        (c + h / 6.0 * (k1c + 2.0 * k2c + 2.0 * k3c + k4c), y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y))
    }

    /// Largest `|s|` over the eigenvalues `s² + Ms + weight·rate = 0`.
    fn spectral_radius(&self) -> f64 {
        let disc = (self.m * self.m - 4.0 * self.weight * self.rate).sqrt();
        let a = (-self.m + disc) / 2.0;
        let b = (-self.m - disc) / 2.0;
        a.norm().max(b.norm())
    }

    fn integrate(&self, points: usize, h: f64, substeps: usize) -> Vec<C64> {
        let dt = h / substeps as f64;
        let mut out = Vec::with_capacity(points);
        let (mut c, mut y) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        out.push(c);
        for _ in 1..points {
            for _ in 0..substeps {
                (c, y) = self.rk4(c, y, dt);
            }
            out.push(c);
        }
        out
    }
}

/// `ξ` on a uniform grid from the exponential-kernel ODE embedding.
pub fn xi_volterra(params: &ModelParams, grid: &TimeGrid) -> Result<AmplitudeTrace> {
    xi_volterra_with(params, grid, &VolterraOptions::default())
}

pub fn xi_volterra_with(params: &ModelParams, grid: &TimeGrid, options: &VolterraOptions) -> Result<AmplitudeTrace> {
    let trace = |values| AmplitudeTrace { grid: grid.clone(), values, method: AmplitudeMethod::VolterraOde };
    if grid.len() == 1 {
        return Ok(trace(vec![C64::new(1.0, 0.0)]));
    }
    let h = grid.uniform_step().ok_or_else(|| Error::InvalidGrid("the ODE solver needs a uniform grid".into()))?;

    let frame = dressed_frame(params);
    let kp = kernel_params(params, &frame);
    let system = System { weight: kp.coupling_weight, rate: params.gamma0() * params.lambda() / 2.0, m: kp.m };
    let substeps = match options.substeps {
        Some(0) => return Err(Error::param("substeps", "must be at least 1")),
        Some(n) => n,
        None => ((h * system.spectral_radius() / AUTO_STEP_SCALE).ceil() as usize).max(1),
    };

    let coarse = system.integrate(grid.len(), h, substeps);
    let fine = system.integrate(grid.len(), h, 2 * substeps);
    let estimate = coarse.iter().zip(&fine).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if estimate > options.tolerance {
        // RK4 error scales as h⁴
        let dt = h / (2 * substeps) as f64;
        let shrink = (options.tolerance / estimate).powf(0.25);
        return Err(Error::Accuracy {
            what: "memory-kernel ODE",
            estimate,
            tolerance: options.tolerance,
            suggested_step: Some(0.5 * dt * shrink),
        });
    }
    Ok(trace(fine))
}
