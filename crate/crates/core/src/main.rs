use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toml::{Table, Value};

use dqfi::sweep::{self, FigurePreset, OutputFormat, OutputSpec, RunConfig};
use dqfi::{Error, Result};

/// Phase QFI of a driven qubit in a Lorentzian reservoir.
#[derive(Parser, Debug)]
#[command(name = "dqfi", version)]
struct Cli {
    /// Key-value config file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// QFI, |xi| and Bloch vector along a time grid.
    Trace {
        /// Time-grid points.
        #[arg(long)]
        points: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// QFI and effective detuning along one parameter axis.
    Sweep {
        /// omega | lambda | delta_drive | delta_cavity | time
        #[arg(long)]
        axis: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        /// Number of axis values.
        #[arg(long, value_name = "N")]
        points: Option<i64>,
        /// Time-grid points for the ODE backend.
        #[arg(long, value_name = "N")]
        grid_points: Option<i64>,
        /// Evaluation time; omit for a detuning-only sweep.
        #[arg(long)]
        at_time: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate the data behind one figure.
    Figure {
        /// fig1a | fig1b | fig2 | fig3 | fig4 | fig5b
        id: FigurePreset,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<OutputFormat>,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    delta_drive: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta_cavity: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    /// analytic | volterra
    #[arg(long)]
    method: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
}

fn load_table(path: Option<&PathBuf>) -> Result<Table> {
    let Some(path) = path else {
        return Ok(Table::new());
    };
    let text = std::fs::read_to_string(path)?;
    text.parse::<Table>().map_err(|e| Error::Config { key: "<document>".into(), message: e.message().to_string() })
}

fn set(table: &mut Table, key: &str, value: Option<Value>) {
    if let Some(v) = value {
        table.insert(key.to_string(), v);
    }
}

fn subtable<'a>(table: &'a mut Table, key: &str) -> Result<&'a mut Table> {
    match table.entry(key.to_string()).or_insert_with(|| Value::Table(Table::new())) {
        Value::Table(t) => Ok(t),
        _ => Err(Error::Config { key: key.into(), message: "must be a table".into() }),
    }
}

fn apply_common(table: &mut Table, c: Common) -> Result<()> {
    set(table, "lambda", c.lambda.map(Value::Float));
    set(table, "omega", c.omega.map(Value::Float));
    set(table, "delta_drive", c.delta_drive.map(Value::Float));
    set(table, "delta_cavity", c.delta_cavity.map(Value::Float));
    set(table, "theta", c.theta.map(Value::Float));
    set(table, "phi", c.phi.map(Value::Float));
    set(table, "t_max", c.t_max.map(Value::Float));
    set(table, "method", c.method.map(Value::String));
    if c.out.is_some() || c.format.is_some() {
        let out = subtable(table, "output")?;
        set(out, "path", c.out.map(|p| Value::String(p.to_string_lossy().into_owned())));
        set(out, "format", c.format.map(|f| Value::String(f.as_str().into())));
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<()> {
    let mut table = load_table(cli.config.as_ref())?;
    match cli.command {
        Command::Trace { points, common } => {
            apply_common(&mut table, common)?;
            set(&mut table, "points", points.map(Value::Integer));
            let cfg = RunConfig::from_table(&table)?;
            let ds = sweep::run_trace(&cfg)?;
            sweep::emit(&[ds], None, &cfg.output)
        }
        Command::Sweep { axis, from, to, points, grid_points, at_time, common } => {
            apply_common(&mut table, common)?;
            set(&mut table, "points", grid_points.map(Value::Integer));
            let st = subtable(&mut table, "sweep")?;
            set(st, "axis", axis.map(Value::String));
            set(st, "from", from.map(Value::Float));
            set(st, "to", to.map(Value::Float));
            set(st, "points", points.map(Value::Integer));
            set(st, "at_time", at_time.map(Value::Float));
            let cfg = RunConfig::from_table(&table)?;
            let ds = sweep::run_sweep(&cfg)?;
            sweep::emit(&[ds], None, &cfg.output)
        }
        Command::Figure { id, out, format } => {
            let file_output = match table.get("output") {
                Some(Value::Table(_)) => {
                    let only_output: Table = table.into_iter().filter(|(k, _)| k == "output").collect();
                    RunConfig::from_table(&only_output)?.output
                }
                _ => OutputSpec::default(),
            };
            let output = OutputSpec { path: out.or(file_output.path), format: format.unwrap_or(file_output.format) };
            let blocks = sweep::run_figure(id)?;
            sweep::emit(&blocks, Some(id.id()), &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dqfi: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
