//! Command-line harness: fidelity tables, simulation, GA search,
//! transpilation and gate-encoding checks.
//!
//! Every result embeds a [`RunManifest`]. CSV output carries it as leading
//! `#` comment lines, JSON output as a `manifest` object, and circuit files
//! as comments the parser skips.

pub mod commands;
pub mod error;
pub mod manifest;
pub mod tables;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qadder_core::ga::GaConfig;
use qadder_core::noise::NoiseModel;
use qadder_core::text;

pub use error::{CliError, CliResult, Kind};
pub use manifest::RunManifest;
use tables::{compute_table, Profile, TableRequest, TableRow};

const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qadder", version, about = "Approximate quantum adders and the autoencoder built on them")]
pub struct Cli {
    /// RNG seed for sampling and the GA (GA default: the config's seed).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Noise model file (`key = value`); enables noisy simulation.
    #[arg(long, global = true)]
    pub noise: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; for `ga`, the prefix of the files written.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce one of the five fidelity tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        number: u8,
        #[arg(long, value_enum, default_value = "ideal")]
        profile: Profile,
        /// Adder circuit for tables 4 and 5.
        #[arg(long)]
        adder: Option<PathBuf>,
        /// Sample this many shots on tables 2 and 4.
        #[arg(long)]
        shots: Option<u64>,
    },
    /// Run a circuit file and report the measurement distribution.
    Simulate {
        circuit: PathBuf,
        /// Comma-separated angles `t` preparing `cos t|0> + sin t|1>` on the
        /// leading qubits; the rest start in |0>.
        #[arg(long, default_value = "")]
        input: String,
        /// One-based, comma-separated measured qubits (default: all).
        #[arg(long)]
        measure: Option<String>,
        #[arg(long)]
        shots: Option<u64>,
    },
    /// Search for a gate-limited adder.
    Ga {
        /// GA configuration (`key = value`); defaults when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Lower a circuit to {U1, U3, CNOT}.
    Transpile { circuit: PathBuf },
    /// Check whether a controlled gate can be encoded on the ancilla.
    EncodeGate { gate: String },
}

/// Bytes destined for stdout or a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub path: Option<PathBuf>,
    pub contents: String,
}

fn json<T: Serialize>(manifest: &RunManifest, key: &str, value: &T) -> CliResult<String> {
    let mut map = serde_json::Map::new();
    map.insert("manifest".into(), serde_json::to_value(manifest).map_err(CliError::internal)?);
    map.insert(key.into(), serde_json::to_value(value).map_err(CliError::internal)?);
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(map)).map_err(CliError::internal)?;
    s.push('\n');
    Ok(s)
}

fn csv<I, R>(manifest: &RunManifest, header: &[&str], rows: I) -> CliResult<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(CliError::internal)?;
    for row in rows {
        w.write_record(row).map_err(CliError::internal)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(CliError::internal)?).map_err(CliError::internal)?;
    Ok(format!("{}{body}", manifest.comment_block()))
}

fn f4(v: f64) -> String {
    format!("{v:.4}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn table_csv(manifest: &RunManifest, rows: &[TableRow]) -> CliResult<String> {
    let header = [
        "label",
        "arm",
        "method",
        "computed",
        "ideal_value",
        "f_tilde",
        "pure_forecast",
        "forecast_gap",
        "reference_ideal",
        "reference_up_to_date",
        "reference_advanced",
        "deviation",
        "cnots_paper",
        "cnots_transpiled",
        "cnots_forecast",
        "measured_qubits",
        "shots",
        "seed",
    ];
    csv(
        manifest,
        &header,
        rows.iter().map(|r| {
            vec![
                r.label.clone(),
                opt(r.arm),
                r.method.to_string(),
                f4(r.computed),
                f4(r.ideal_value),
                r.f_tilde.map(f4).unwrap_or_default(),
                f4(r.pure_forecast),
                r.forecast_gap.map(f4).unwrap_or_default(),
                f4(r.reference_ideal),
                f4(r.reference_up_to_date),
                f4(r.reference_advanced),
                f4(r.deviation),
                r.cnots_paper.to_string(),
                r.cnots_transpiled.to_string(),
                r.cnots_forecast.to_string(),
                r.measured_qubits.to_string(),
                opt(r.shots),
                opt(r.seed),
            ]
        }),
    )
}

fn noise_model(cli: &Cli) -> CliResult<Option<NoiseModel>> {
    cli.noise.as_deref().map(commands::load_noise).transpose()
}

fn single(cli: &Cli, contents: String) -> Vec<Emitted> {
    vec![Emitted {
        path: cli.out.clone(),
        contents,
    }]
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs a parsed command without touching stdout or the output files.
pub fn execute(cli: &Cli) -> CliResult<Vec<Emitted>> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Table {
            number,
            profile,
            adder,
            shots,
        } => {
            let noise = noise_model(cli)?.unwrap_or(NoiseModel::ADVANCED);
            let req = TableRequest {
                table: *number,
                profile: *profile,
                noise,
                shots: *shots,
                seed,
                adder: adder.as_deref().map(commands::load_adder).transpose()?,
            };
            let config = format!(
                "table = {number}\nprofile = {}\nshots = {}\nadder = {}\n{noise}",
                profile.as_str(),
                opt(*shots),
                adder.as_deref().map(|p| p.display().to_string()).unwrap_or_default(),
            );
            let manifest = RunManifest::new("table", config, seed);
            let rows = compute_table(&req)?;
            let contents = match cli.format {
                Format::Csv => table_csv(&manifest, &rows)?,
                Format::Json => json(&manifest, "rows", &rows)?,
            };
            Ok(single(cli, contents))
        }
        Command::Simulate {
            circuit,
            input,
            measure,
            shots,
        } => {
            let c = commands::load_circuit(circuit)?;
            let state = commands::parse_input_angles(input, c.n_qubits())?;
            let measured = match measure {
                Some(list) => commands::parse_qubit_list(list, c.n_qubits())?,
                None => (0..c.n_qubits()).collect(),
            };
            let noise = noise_model(cli)?;
            let sim = commands::simulate(&c, &state, &measured, noise.as_ref(), *shots, seed)?;
            let config = format!(
                "circuit = {}\ninput = {input}\nmeasure = {}\nshots = {}\nnoise = {}",
                circuit.display(),
                opt(measure.as_ref()),
                opt(*shots),
                noise.map(|n| n.to_string().replace('\n', " ")).unwrap_or_else(|| "none".into()),
            );
            let manifest = RunManifest::new("simulate", config, seed);
            let contents = match cli.format {
                Format::Json => json(&manifest, "simulation", &sim)?,
                Format::Csv => csv(
                    &manifest,
                    &["outcome", "probability", "count"],
                    sim.outcomes
                        .iter()
                        .map(|o| vec![o.outcome.clone(), f4(o.probability), opt(o.count)]),
                )?,
            };
            Ok(single(cli, contents))
        }
        Command::Ga { config } => {
            let mut cfg = match config {
                Some(path) => GaConfig::parse(&commands::read_file(path)?)
                    .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
                None => GaConfig::default(),
            };
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = noise_model(cli)? {
                cfg.noise = Some(n);
            }
            let manifest = RunManifest::new("ga", cfg.to_string(), cfg.seed);
            let (result, summary) = commands::run_ga(&cfg)?;
            let summary_text = match cli.format {
                Format::Json => json(&manifest, "summary", &summary)?,
                Format::Csv => csv(
                    &manifest,
                    &["average", "minimum", "minimum_theta1", "minimum_theta2", "gates", "cnots", "roundtrip_cnots"],
                    [vec![
                        f4(summary.average),
                        f4(summary.minimum),
                        f4(summary.minimum_input.0),
                        f4(summary.minimum_input.1),
                        summary.gates.to_string(),
                        summary.cnots.to_string(),
                        summary.roundtrip_cnots.to_string(),
                    ]],
                )?,
            };
            let circuit_text = format!("{}{}", manifest.comment_block(), text::serialize(&result.circuit));
            Ok(match &cli.out {
                None => vec![Emitted {
                    path: None,
                    contents: format!("{summary_text}{circuit_text}"),
                }],
                Some(prefix) => {
                    let ext = match cli.format {
                        Format::Csv => ".summary.csv",
                        Format::Json => ".summary.json",
                    };
                    vec![
                        Emitted {
                            path: Some(with_suffix(prefix, ".qc")),
                            contents: circuit_text,
                        },
                        Emitted {
                            path: Some(with_suffix(prefix, ".history.csv")),
                            contents: format!("{}{}", manifest.comment_block(), result.history_csv()),
                        },
                        Emitted {
                            path: Some(with_suffix(prefix, ext)),
                            contents: summary_text.clone(),
                        },
                        Emitted {
                            path: None,
                            contents: summary_text,
                        },
                    ]
                }
            })
        }
        Command::Transpile { circuit } => {
            let c = commands::load_circuit(circuit)?;
            let (lowered, report) = commands::transpile_circuit(&c)?;
            let manifest = RunManifest::new("transpile", format!("circuit = {}", circuit.display()), seed);
            let counts = format!(
                "# cnots: paper={} transpiled={} lowered={}\n",
                report.cnots_paper, report.cnots_transpiled, report.cnots_lowered
            );
            let contents = match cli.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        counts: &'a commands::TranspileReport,
                        circuit: String,
                    }
                    json(
                        &manifest,
                        "transpile",
                        &Out {
                            counts: &report,
                            circuit: text::serialize(&lowered),
                        },
                    )?
                }
                Format::Csv => format!("{}{counts}{}", manifest.comment_block(), text::serialize(&lowered)),
            };
            let mut out = single(cli, contents);
            if cli.out.is_some() {
                out.push(Emitted {
                    path: None,
                    contents: counts.trim_start_matches("# ").to_string(),
                });
            }
            Ok(out)
        }
        Command::EncodeGate { gate } => {
            let report = commands::encode_gate_spec(gate)?;
            let manifest = RunManifest::new("encode-gate", format!("gate = {gate}"), seed);
            let contents = match cli.format {
                Format::Json => json(&manifest, "encoding", &report)?,
                Format::Csv => {
                    let entry = |k: usize| {
                        report
                            .u_tilde
                            .as_ref()
                            .map(|u| format!("{:.4}{:+.4}i", u[k][0], u[k][1]))
                            .unwrap_or_default()
                    };
                    csv(
                        &manifest,
                        &["gate", "solvable", "u00", "u01", "u10", "u11", "residual"],
                        [vec![
                            report.gate.clone(),
                            report.solvable.to_string(),
                            entry(0),
                            entry(1),
                            entry(2),
                            entry(3),
                            format!("{:.3e}", report.residual),
                        ]],
                    )?
                }
            };
            Ok(single(cli, contents))
        }
    }
}

/// Parses arguments, runs, and writes outputs. Help and version requests
/// come back as `Ok` with the rendered text.
pub fn run<I, T>(args: I) -> CliResult<Vec<Emitted>>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Ok(vec![Emitted {
                path: None,
                contents: e.to_string(),
            }])
        }
        Err(e) => return Err(CliError::usage(e.to_string().trim_end())),
    };
    let emitted = execute(&cli)?;
    for item in &emitted {
        if let Some(path) = &item.path {
            std::fs::write(path, &item.contents)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(emitted)
}
