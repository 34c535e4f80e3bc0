//! Trace and sweep runs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qfi::{qfi_point, qfi_timeseries};
use crate::quasimode::effective_detuning;

use super::config::{RunConfig, SweepAxis};
use super::dataset::{Cell, Dataset};

pub const TRACE_COLUMNS: [&str; 7] = ["t", "F_phi", "abs_xi", "W_x", "W_y", "W_z", "purity"];
pub const SWEEP_COLUMNS: [&str; 5] = ["axis", "axis_value", "F_phi", "delta_eff", "abs_xi"];

/// QFI and Bloch vector along the configured time grid.
pub fn run_trace(cfg: &RunConfig) -> Result<Dataset> {
    if cfg.is_sweep() {
        return Err(Error::config("sweep", "trace runs take no [sweep] table"));
    }
    let series = qfi_timeseries(&cfg.params, &cfg.probe, &cfg.grid()?, cfg.backend)?;
    let mut ds = Dataset::new(&TRACE_COLUMNS);
    ds.metadata = cfg.metadata();
    ds.rows = series
        .points
        .iter()
        .map(|p| {
            let w = p.state.w;
            [p.t, p.f_phi, p.abs_xi(), w.x, w.y, w.z, p.purity()].into_iter().map(Cell::Num).collect()
        })
        .collect();
    Ok(ds)
}

/// One row per axis value. Without `at_time` only `delta_eff` is filled,
/// except on the time axis, where each value is itself the evaluation time.
pub fn run_sweep(cfg: &RunConfig) -> Result<Dataset> {
    let spec = cfg.sweep.ok_or_else(|| Error::config("sweep", "sweep runs need a [sweep] table"))?;
    let values = spec.values();
    let rows = values
        .par_iter()
        .map(|&v| -> Result<Vec<Cell>> {
            let (params, at) = match spec.axis {
                SweepAxis::Time => (cfg.params, Some(v)),
                axis => (axis.apply(&cfg.params, v)?, spec.at_time),
            };
            let delta_eff = effective_detuning(params.omega_rabi(), params.delta_drive(), params.delta_cavity());
            let (f, abs_xi) = match at {
                Some(t) => {
                    let xi = cfg.backend.at(&params, t, cfg.points)?;
                    let p = qfi_point(&params, &cfg.probe, t, xi)?;
                    (Cell::Num(p.f_phi), Cell::Num(p.abs_xi()))
                }
                None => (Cell::Empty, Cell::Empty),
            };
            Ok(vec![Cell::Text(spec.axis.as_str().into()), Cell::Num(v), f, Cell::Num(delta_eff), abs_xi])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ds = Dataset::new(&SWEEP_COLUMNS);
    ds.metadata = cfg.metadata();
    ds.rows = rows;
    Ok(ds)
}

/// Dispatch on the presence of a sweep table.
pub fn run(cfg: &RunConfig) -> Result<Dataset> {
    if cfg.is_sweep() {
        run_sweep(cfg)
    } else {
        run_trace(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::config::SweepSpec;

    #[test]
    fn default_trace_starts_at_full_information() {
        let ds = run_trace(&RunConfig::default()).unwrap();
        assert_eq!(ds.rows.len(), 2001);
        assert_eq!(ds.rows[0][0], Cell::Num(0.0));
        assert!((ds.rows[0][1].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(ds.meta("lambda"), Some("0.05"));
    }

    #[test]
    fn sweep_without_time_fills_detuning_only() {
        let cfg = RunConfig {
            sweep: Some(SweepSpec { axis: SweepAxis::Omega, from: 0.0, to: 2.0, points: 5, at_time: None }),
            ..RunConfig::default()
        };
        let ds = run_sweep(&cfg).unwrap();
        for row in &ds.rows {
            assert_eq!(row[2], Cell::Empty);
            assert!((row[3].as_f64().unwrap() - 2.0 * row[1].as_f64().unwrap()).abs() < 1e-12);
        }
        assert!(run_trace(&cfg).is_err());
    }

    #[test]
    fn time_axis_matches_trace() {
        let mut cfg = RunConfig { t_max: 10.0, points: 11, ..RunConfig::default() };
        let trace = run_trace(&cfg).unwrap();
        cfg.sweep = Some(SweepSpec { axis: SweepAxis::Time, from: 0.0, to: 10.0, points: 11, at_time: None });
        let sweep = run_sweep(&cfg).unwrap();
        for (a, b) in trace.column("F_phi").iter().zip(sweep.column("F_phi")) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
