//! Figure presets.
//!
//! Each preset expands to a list of labelled runs; all use `θ = π/2` and
//! `φ = π/4`. The curve sets inside a figure (which `Ω`, `Δ` or `δ` values
//! get their own curve) are choices of this tool and are echoed in the
//! `figure`/`curve` metadata of every block.

use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::model::ModelParams;

use super::config::{RunConfig, SweepAxis, SweepSpec};
use super::dataset::Dataset;
use super::run::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3,
    Fig4,
    Fig5b,
}

pub const FIG1_OMEGAS: [f64; 4] = [0.0, 0.3, 0.5, 1.0];
pub const FIG2_LAMBDAS: [f64; 4] = [0.05, 0.1, 0.5, 5.0];
pub const SNAPSHOT_TIME: f64 = 50.0;

impl FigurePreset {
    pub const ALL: [FigurePreset; 6] = [
        FigurePreset::Fig1a,
        FigurePreset::Fig1b,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5b,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5b => "fig5b",
        }
    }

    /// The `(curve label, config)` pairs this figure consists of.
    pub fn expand(&self) -> Vec<(String, RunConfig)> {
        let base = RunConfig::default();
        let with = |lambda: f64, omega: f64, delta_drive: f64, delta_cavity: f64| RunConfig {
            params: ModelParams::new(lambda, omega, delta_drive, delta_cavity).expect("preset parameters are valid"),
            ..base.clone()
        };
        let sweep = |axis, from, to, points, at_time| Some(SweepSpec { axis, from, to, points, at_time });
        match self {
            FigurePreset::Fig1a | FigurePreset::Fig1b => {
                let lambda = if *self == FigurePreset::Fig1a { 10.0 } else { 0.05 };
                FIG1_OMEGAS.iter().map(|&omega| (format!("omega={omega}"), with(lambda, omega, 0.0, 0.0))).collect()
            }
            FigurePreset::Fig2 => FIG2_LAMBDAS
                .iter()
                .map(|&lambda| {
                    let cfg = RunConfig {
                        sweep: sweep(SweepAxis::Omega, 0.0, 10.0, 101, Some(SNAPSHOT_TIME)),
                        ..with(lambda, 0.0, 0.0, 0.0)
                    };
                    (format!("lambda={lambda}"), cfg)
                })
                .collect(),
            FigurePreset::Fig3 => (0..=20)
                .map(|i| {
                    let omega = 0.5 * i as f64;
                    let cfg = RunConfig {
                        sweep: sweep(SweepAxis::DeltaDrive, 0.0, 10.0, 41, Some(SNAPSHOT_TIME)),
                        ..with(0.1, omega, 0.0, 0.0)
                    };
                    (format!("omega={omega}"), cfg)
                })
                .collect(),
            FigurePreset::Fig4 => (0..=40)
                .map(|i| {
                    let delta = -5.0 + 0.25 * i as f64;
                    let cfg = RunConfig { points: 501, ..with(0.1, 1.0, 1.0, delta) };
                    (format!("delta_cavity={delta}"), cfg)
                })
                .collect(),
            FigurePreset::Fig5b => vec![
                (
                    "omega".to_string(),
                    RunConfig { sweep: sweep(SweepAxis::Omega, 0.0, 10.0, 101, None), ..with(0.1, 0.0, 0.0, 0.0) },
                ),
                (
                    "delta_drive".to_string(),
                    RunConfig { sweep: sweep(SweepAxis::DeltaDrive, 0.0, 10.0, 101, None), ..with(0.1, 1.0, 0.0, 0.0) },
                ),
                (
                    "delta_cavity".to_string(),
                    RunConfig {
                        sweep: sweep(SweepAxis::DeltaCavity, -5.0, 5.0, 101, None),
                        ..with(0.1, 1.0, 1.0, 0.0)
                    },
                ),
            ],
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FigurePreset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (expected fig1a, fig1b, fig2, fig3, fig4 or fig5b)"))
    }
}

/// Run every curve of a figure, in order.
pub fn run_figure(preset: FigurePreset) -> Result<Vec<Dataset>> {
    preset
        .expand()
        .into_iter()
        .map(|(curve, cfg)| {
            let mut ds = run(&cfg)?;
            ds.metadata.insert(0, ("curve".into(), curve));
            ds.metadata.insert(0, ("figure".into(), preset.id().into()));
            Ok(ds)
        })
        .collect()
}
