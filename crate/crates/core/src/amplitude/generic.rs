//! Memory-kernel solver for an arbitrary spectral density.
//!
//! Frequencies are measured from the bare qubit frequency, `ν = ω − ω₀`, and
//! the drive sits at `ω_L = ω₀ − Δ`. The kernel then reads
//!
//! ```text
//! f(τ) = ∫ dν J(ν) exp[i(ω_D − Δ − ν)τ]
//! ```
//!
//! and is evaluated by composite Gauss–Legendre quadrature over a finite
//! window around the density's centre. The integro-differential equation is
//! advanced with the trapezoidal rule on both the history integral and the
//! time derivative, which needs `O(N²)` work on an `N`-point grid.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::{AmplitudeMethod, AmplitudeTrace};
use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{dressed_frame, ModelParams};
use crate::C64;

/// 8-point Gauss–Legendre nodes and weights on `[-1, 1]`.
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Nodes per parallel work unit in the kernel sum.
const CHUNK: usize = 4096;

/// Reservoir spectral density `J(ν) ≥ 0`, `ν = ω − ω₀`, with hints for where
/// its weight lives.
#[derive(Clone)]
pub struct SpectralDensity {
    evaluator: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Frequency around which the quadrature window is centred.
    pub center: f64,
    /// Characteristic width; the window spans a multiple of it.
    pub width: f64,
}

impl fmt::Debug for SpectralDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralDensity")
            .field("center", &self.center)
            .field("width", &self.width)
            .finish_non_exhaustive()
    }
}

impl SpectralDensity {
    pub fn new<F>(evaluator: F, center: f64, width: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !center.is_finite() {
            return Err(Error::param("center", format!("must be finite (got {center})")));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::param("width", format!("must be > 0 (got {width})")));
        }
        Ok(Self { evaluator: Arc::new(evaluator), center, width })
    }

    /// No reservoir coupling at all.
    pub fn zero() -> Self {
        Self { evaluator: Arc::new(|_| 0.0), center: 0.0, width: 1.0 }
    }

    pub fn eval(&self, nu: f64) -> f64 {
        (self.evaluator)(nu)
    }
}

/// The Lorentzian density of a lossy cavity mode detuned by `δ` from the qubit:
/// `J(ν) = γ₀λ² / (2π[(ν + δ)² + λ²])`.
pub fn lorentzian_density(params: &ModelParams) -> SpectralDensity {
    let (gamma0, lambda, delta) = (params.gamma0(), params.lambda(), params.delta_cavity());
    SpectralDensity {
        evaluator: Arc::new(move |nu: f64| {
            let x = nu + delta;
            gamma0 * lambda * lambda / (2.0 * PI * (x * x + lambda * lambda))
        }),
        center: -delta,
        width: lambda,
    }
}

/// Quadrature and accuracy controls for [`xi_generic_volterra_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericOptions {
    /// Half-width of the quadrature window, in units of the density width.
    pub span: f64,
    /// Largest tolerated kernel difference between two panel refinements.
    pub tolerance: f64,
    /// Panel width override; `None` derives it from the density width and the
    /// longest lag.
    pub panel_width: Option<f64>,
}

impl Default for GenericOptions {
    fn default() -> Self {
        Self { span: 200.0, tolerance: 1e-4, panel_width: None }
    }
}

struct Quadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Quadrature {
    fn panels(lo: f64, hi: f64, panels: usize) -> Self {
        let width = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(8 * panels);
        let mut weights = Vec::with_capacity(8 * panels);
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * width;
            for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
                nodes.push(mid + 0.5 * width * x);
                weights.push(0.5 * width * w);
            }
        }
        Self { nodes, weights }
    }
}

/// `f(kh)` for `k = 0..lags` with the given number of panels.
fn kernel_on_lags(
    density: &SpectralDensity,
    shift: f64,
    lo: f64,
    hi: f64,
    panels: usize,
    h: f64,
    lags: usize,
) -> Result<Vec<C64>> {
    let quad = Quadrature::panels(lo, hi, panels);
    let mut jw = Vec::with_capacity(quad.nodes.len());
    for (&nu, &w) in quad.nodes.iter().zip(&quad.weights) {
        let j = density.eval(nu);
        if !(j.is_finite() && j >= 0.0) {
            return Err(Error::param("spectral density", format!("J({nu}) = {j} is not a finite non-negative value")));
        }
        jw.push(j * w);
    }

    // Partial sums per chunk, reduced in a fixed order.
    let partials: Vec<Vec<C64>> = quad
        .nodes
        .par_chunks(CHUNK)
        .zip(jw.par_chunks(CHUNK))
        .map(|(nodes, jw)| {
            let mut acc = vec![C64::new(0.0, 0.0); lags];
            let mut phase: Vec<C64> = jw.iter().map(|&a| C64::new(a, 0.0)).collect();
            let step: Vec<C64> = nodes.iter().map(|&nu| C64::from_polar(1.0, (shift - nu) * h)).collect();
            for slot in acc.iter_mut() {
                let mut sum = C64::new(0.0, 0.0);
                for (z, r) in phase.iter_mut().zip(&step) {
                    sum += *z;
                    *z *= r;
                }
                *slot = sum;
            }
            acc
        })
        .collect();
    let mut kernel = vec![C64::new(0.0, 0.0); lags];
    for part in partials {
        for (k, v) in kernel.iter_mut().zip(part) {
            *k += v;
        }
    }
    Ok(kernel)
}

/// Memory kernel `f(kh)`, `k = 0..lags`, checked against a refined quadrature.
pub fn memory_kernel(
    density: &SpectralDensity,
    params: &ModelParams,
    h: f64,
    lags: usize,
    options: &GenericOptions,
) -> Result<Vec<C64>> {
    let frame = dressed_frame(params);
    let shift = frame.omega_d - params.delta_drive();
    let half = options.span * density.width;
    let (lo, hi) = (density.center - half, density.center + half);
    let tau_max = h * lags.saturating_sub(1) as f64;
    let panel_width = options
        .panel_width
        .unwrap_or_else(|| (density.width / 2.0).min(if tau_max > 0.0 { 2.0 / tau_max } else { f64::INFINITY }));
    let panels = ((hi - lo) / panel_width).ceil().max(1.0) as usize;

    let coarse = kernel_on_lags(density, shift, lo, hi, panels, h, lags)?;
    let fine = kernel_on_lags(density, shift, lo, hi, 2 * panels, h, lags)?;
    let estimate = coarse.iter().zip(&fine).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    if estimate > options.tolerance {
        return Err(Error::Accuracy {
            what: "spectral-density quadrature",
            estimate,
            tolerance: options.tolerance,
            suggested_step: None,
        });
    }
    Ok(fine)
}

/// `ξ` on a uniform grid for an arbitrary spectral density.
pub fn xi_generic_volterra(density: &SpectralDensity, params: &ModelParams, grid: &TimeGrid) -> Result<AmplitudeTrace> {
    xi_generic_volterra_with(density, params, grid, &GenericOptions::default())
}

pub fn xi_generic_volterra_with(
    density: &SpectralDensity,
    params: &ModelParams,
    grid: &TimeGrid,
    options: &GenericOptions,
) -> Result<AmplitudeTrace> {
    let n = grid.len();
    let trace = |values| AmplitudeTrace { grid: grid.clone(), values, method: AmplitudeMethod::VolterraGeneric };
    if n == 1 {
        return Ok(trace(vec![C64::new(1.0, 0.0)]));
    }
    let h =
        grid.uniform_step().ok_or_else(|| Error::InvalidGrid("the convolution solver needs a uniform grid".into()))?;
    let kernel = memory_kernel(density, params, h, n, options)?;
    let weight = dressed_frame(params).coupling_weight();

    // c' = g, g(t) = -w ∫₀ᵗ f(t-s) c(s) ds; trapezoid on both
    let mut c = vec![C64::new(0.0, 0.0); n];
    c[0] = C64::new(1.0, 0.0);
    let mut g_prev = C64::new(0.0, 0.0);
    let implicit = 1.0 + 0.25 * h * h * weight * kernel[0];
    for m in 1..n {
        let history: C64 = 0.5 * kernel[m] * c[0] + (1..m).map(|j| kernel[m - j] * c[j]).sum::<C64>();
        let explicit = c[m - 1] + 0.5 * h * g_prev - 0.5 * h * weight * h * history;
        c[m] = explicit / implicit;
        g_prev = -weight * h * (history + 0.5 * kernel[0] * c[m]);
    }
    Ok(trace(c))
}
