//! Command-line front end for the erasure model: single runs, Bloch-sphere
//! sweeps, the optical realization, unit conversion and a self-check.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub mod erase;
pub mod error;
pub mod number;
pub mod optics;
pub mod sweep;
pub mod units;
pub mod verify;

pub use error::{exit, CliError, CliResult};

use erase::{run_erase, RunConfig, ThermalInput, Units};
use sweep::{sweep, write_csv, SweepConfig};
use units::{convert, EnergyUnit};
use verify::{run_verify, Status, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "erasure",
    version,
    about = "Ancilla-assisted erasure of a qubit memory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one erasure run.
    Erase(EraseArgs),
    /// Tabulate a fixed-radius Bloch sphere as CSV.
    Sweep(SweepArgs),
    /// Run the optical circuit on a polarization state.
    Optics(OpticsArgs),
    /// Run the built-in consistency checks.
    Verify(VerifyArgs),
    /// Convert an energy between J, eV, cm-1, K and Hz.
    ConvertUnits(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z but got {} components", parts.len()));
    }
    let mut out = [0.0; 3];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not a number"))?;
    }
    Ok(out)
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("thermal").required(true).args(["beta", "temperature"])))]
pub struct EraseArgs {
    /// Memory Bloch vector as x,y,z.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub bloch: [f64; 3],
    /// Inverse temperature of the reservoir (1/energy).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Reservoir temperature; 0 gives the zero-temperature limit.
    #[arg(long, allow_negative_numbers = true)]
    pub temperature: Option<f64>,
    /// Level spacing in natural units.
    #[arg(long, conflicts_with = "delta_si", allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Level spacing in joules; requires `--units SI`.
    #[arg(long, allow_negative_numbers = true)]
    pub delta_si: Option<f64>,
    #[arg(long, value_enum, default_value = "natural")]
    pub units: Units,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub memory_ground: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub reservoir_ground: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl EraseArgs {
    pub fn config(&self) -> CliResult<RunConfig> {
        let delta = match (self.units, self.delta, self.delta_si) {
            (Units::Natural, _, Some(_)) => {
                return Err(CliError::Input("--delta-si requires --units SI".into()))
            }
            (Units::Natural, d, None) => d.unwrap_or(1.0),
            (Units::Si, _, Some(d)) => d,
            (Units::Si, _, None) => {
                return Err(CliError::Input(
                    "--units SI needs the gap in joules via --delta-si".into(),
                ))
            }
        };
        let thermal = match (self.beta, self.temperature) {
            (Some(b), None) => ThermalInput::Beta(b),
            (None, Some(t)) => ThermalInput::Temperature(t),
            _ => {
                return Err(CliError::Input(
                    "give exactly one of --beta and --temperature".into(),
                ))
            }
        };
        Ok(RunConfig {
            bloch: self.bloch,
            thermal,
            delta,
            units: self.units,
            memory_ground: self.memory_ground,
            reservoir_ground: self.reservoir_ground,
        })
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Bloch radius shared by every grid point.
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = 64)]
    pub n_theta: usize,
    #[arg(long, default_value_t = 64)]
    pub n_phi: usize,
    /// Inverse temperature for the Q_R column, in units of 1/delta.
    #[arg(long, default_value_t = f64::INFINITY, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OpticsArgs {
    /// Polarization Bloch vector as x,y,z, with +z = H.
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub pol: [f64; 3],
    /// Probability of the photon entering on path 1.
    #[arg(long, allow_negative_numbers = true)]
    pub p1: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Gap for the commutator check; 0 skips it.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(allow_negative_numbers = true)]
    pub value: f64,
    #[arg(long, value_enum)]
    pub from: EnergyUnit,
    #[arg(long, value_enum)]
    pub to: EnergyUnit,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn emit(output: &Option<PathBuf>, stdout: &mut dyn Write, content: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => Ok(stdout.write_all(content.as_bytes())?),
    }
}

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Input(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn key_value_text(fields: &[(&str, String)]) -> String {
    let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    fields
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn csv_table(fields: &[(&str, String)]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields.iter().map(|(k, _)| *k))?;
    w.write_record(fields.iter().map(|(_, v)| v.as_str()))?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Executes a parsed command, writing results to `stdout` or `--output`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Erase(args) => {
            let report = run_erase(&args.config()?)?;
            let text = match args.out.format {
                Format::Json => json(&report)?,
                Format::Csv => csv_table(&report.fields())?,
                Format::Text => key_value_text(&report.fields()),
            };
            emit(&args.out.output, stdout, &text)
        }
        Command::Sweep(args) => {
            let cfg = SweepConfig {
                r: args.r,
                n_theta: args.n_theta,
                n_phi: args.n_phi,
                beta: args.beta,
                delta: args.delta,
            };
            let rows = sweep(&cfg)?;
            match &args.output {
                Some(path) => {
                    let file = File::create(path)
                        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    write_csv(&rows, BufWriter::new(file))
                }
                None => write_csv(&rows, stdout),
            }
        }
        Command::Optics(args) => {
            let report = optics::run_optics(args.pol, args.p1)?;
            let text = match args.out.format {
                Format::Json => json(&report)?,
                Format::Text => report.to_text(),
                Format::Csv => return Err(unsupported(Format::Csv, "optics")),
            };
            emit(&args.out.output, stdout, &text)
        }
        Command::Verify(args) => {
            if !(args.delta >= 0.0 && args.delta.is_finite()) {
                return Err(CliError::Input(format!(
                    "gap {} must be finite and >= 0",
                    args.delta
                )));
            }
            let summary = run_verify(&VerifyConfig {
                draws: args.draws,
                seed: args.seed,
                delta: args.delta,
                ..VerifyConfig::default()
            });
            let text = match args.out.format {
                Format::Json => json(&summary)?,
                Format::Text => summary
                    .checks
                    .iter()
                    .map(|c| {
                        let tag = match c.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Skipped => "SKIP",
                        };
                        format!("{tag} {}: {}\n", c.name, c.detail)
                    })
                    .collect(),
                Format::Csv => return Err(unsupported(Format::Csv, "verify")),
            };
            emit(&args.out.output, stdout, &text)?;
            if summary.passed {
                Ok(())
            } else {
                Err(CliError::Verify(summary.failures))
            }
        }
        Command::ConvertUnits(args) => {
            let result = convert(args.value, args.from, args.to);
            let fields = [
                ("value", number::format(args.value)),
                ("from", args.from.symbol().to_string()),
                ("to", args.to.symbol().to_string()),
                ("result", number::format(result)),
            ];
            let text = match args.out.format {
                Format::Json => json(&serde_json::json!({
                    "schema_version": erase::SCHEMA_VERSION,
                    "value": number::round_sig(args.value),
                    "from": args.from.symbol(),
                    "to": args.to.symbol(),
                    "result": number::round_sig(result),
                }))?,
                Format::Csv => csv_table(&fields)?,
                Format::Text => format!("{} {}\n", fields[3].1, args.to.symbol()),
            };
            emit(&args.out.output, stdout, &text)
        }
    }
}
