//! # dqfi
//!
//! Exact single-excitation dynamics and phase-estimation quantum Fisher
//! information (QFI) of a classically driven qubit coupled to a zero-temperature
//! bosonic reservoir with a Lorentzian spectral density.
//!
//! All rates, detunings and frequencies are expressed in units of the
//! reservoir decay rate `γ₀` (which is identically 1), and all times in units
//! of `1/γ₀`.
//!
//! ## Layout
//!
//! - [`model`]: parameters, dressed-state geometry and initial dressed amplitudes.
//! - [`amplitude`]: the excited-dressed-state survival amplitude `ξ(t)`, in closed
//!   form and from two independent memory-kernel solvers.
//! - [`dynamics`]: reduced qubit state, Bloch vector and its phase derivative.
//! - [`qfi`]: quantum (and classical) Fisher information by several routes.
//! - [`quasimode`]: effective qubit–quasimode detuning and regime classification.
//! - [`sweep`]: run configuration, figure presets and CSV/JSON datasets used by
//!   the `dqfi` binary.

#![forbid(unsafe_code)]

pub mod amplitude;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod model;
pub mod qfi;
pub mod quasimode;
pub mod sweep;

pub use error::{Error, Result};
pub use grid::TimeGrid;
pub use model::{ModelParams, ProbeState, GAMMA0};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
