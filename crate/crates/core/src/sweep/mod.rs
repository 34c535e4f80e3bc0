//! Config-driven runs: time traces, parameter sweeps and figure presets.

pub mod config;
pub mod dataset;
pub mod preset;
pub mod run;

use std::io::Write;

pub use config::{parse_config, OutputFormat, OutputSpec, RunConfig, SweepAxis, SweepSpec};
pub use dataset::{Cell, Dataset};
pub use preset::{run_figure, FigurePreset};
pub use run::{run, run_sweep, run_trace};

use crate::error::Result;

/// Encode datasets in the requested format.
pub fn render(datasets: &[Dataset], figure: Option<&str>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => dataset::to_csv(datasets),
        OutputFormat::Json => dataset::to_json(datasets, figure),
    }
}

/// Write rendered output to the configured path, or to standard output.
pub fn emit(datasets: &[Dataset], figure: Option<&str>, output: &OutputSpec) -> Result<()> {
    let text = render(datasets, figure, output.format);
    match &output.path {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
