//! Command-line front end: one subcommand per scenario, JSON/CSV emission,
//! and the selftest that runs the full acceptance matrix.
//!
//! Exit codes: 0 success, 1 runtime/output failure (or failed selftest),
//! 2 invalid input.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use gatelab::acceptance::{run_all, summary_report, Tolerances};
use gatelab::par::ExecMode;
use gatelab::report::ScenarioReport;
use gatelab::scenarios::{
    scenario_boson_ring, scenario_dark_state_loop, scenario_pst_cycle, scenario_pst_transfer,
    scenario_qubit_gate, scenario_superposition_surface_with, surface_csv,
};

#[derive(Parser, Debug)]
#[command(
    name = "gatelab",
    version,
    about = "Dressed-state gate phase laboratory",
    long_about = "Numerical experiments on dressed-state gates: perfect state transfer \
                  through engineered chains, the two-stage qubit gate, the superposition \
                  phase surface over the initial-state angles ξ and γ, the slow three-level \
                  loop, and two-arm ring interference. All angles are radians."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. csv is available for the surface subcommand only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Output file path; standard output when omitted.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full transfer cycle of an engineered chain with the trivial gate.
    PstCycle {
        /// Chain site count N (at least 2).
        #[arg(long)]
        n: usize,
    },
    /// Half cycle of an engineered chain against the mirror swap gate.
    PstTransfer {
        /// Chain site count N (at least 2).
        #[arg(long)]
        n: usize,
    },
    /// Two-stage qubit gate: dressed phases of both z basis states.
    QubitGate {
        /// Product ϖδ of z-stage rate and duration (nonzero, radians).
        #[arg(long)]
        wdelta: f64,
        /// Gate angle θ0 in (0, 2π).
        #[arg(long)]
        theta0: f64,
    },
    /// Geometric-phase surface of cos(ξ)|↑> + sin(ξ)e^{iγ}|↓> at ϖδ = πn,
    /// gridded over ξ in [0, π] (outer) and γ in [0, 2π] (inner).
    Surface {
        /// Gate angle θ0 in (0, 2π).
        #[arg(long)]
        theta0: f64,
        /// Integer n fixing ϖδ = πn (at least 1).
        #[arg(long)]
        n: i64,
        /// Grid sizes as XIxGAMMA, e.g. 81x81, for the ξ and γ axes.
        #[arg(long, default_value = "81x81")]
        grid: String,
    },
    /// Slow closed loop of the three-level system over a spherical cap.
    DarkState {
        /// Cap polar angle θ_c in [0, π].
        #[arg(long)]
        thetac: f64,
        /// Loop duration in gap units (the spectral gap is 1).
        #[arg(long, default_value_t = 2000.0)]
        duration: f64,
        /// Midpoint steps per loop leg.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Two-arm ring interference from measured transfer signatures.
    BosonRing {
        /// Upper-arm site count N_U (at least 2).
        #[arg(long)]
        nu: usize,
        /// Lower-arm site count N_L (at least 2).
        #[arg(long)]
        nl: usize,
    },
    /// Run the invariant suite and the full acceptance matrix.
    Selftest {
        /// Seed for the randomized gate-realization checks.
        #[arg(long, default_value_t = 2026)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            let message = err
                .to_string()
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .to_string();
            eprintln!("{message}");
            return ExitCode::from(2);
        }
    };

    if let Err(message) = validate(&cli) {
        eprintln!("{message}");
        return ExitCode::from(2);
    }

    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::FAILURE
        }
    }
}

/// Scenario preconditions, checked before any computation starts.
fn validate(cli: &Cli) -> Result<(), String> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Surface { .. }) {
        return Err("error: csv output is available for the surface subcommand only".into());
    }
    let pi = std::f64::consts::PI;
    match &cli.command {
        Command::PstCycle { n } | Command::PstTransfer { n } => {
            if *n < 2 {
                return Err(format!("error: chain needs at least 2 sites, got {n}"));
            }
        }
        Command::QubitGate { wdelta, theta0 } => {
            if *wdelta == 0.0 || !wdelta.is_finite() {
                return Err(format!(
                    "error: ϖδ must be nonzero and finite, got {wdelta}"
                ));
            }
            if !(*theta0 > 0.0 && *theta0 < 2.0 * pi) {
                return Err(format!("error: θ0 must lie in (0, 2π), got {theta0}"));
            }
        }
        Command::Surface { theta0, n, grid } => {
            if !(*theta0 > 0.0 && *theta0 < 2.0 * pi) {
                return Err(format!("error: θ0 must lie in (0, 2π), got {theta0}"));
            }
            if *n < 1 {
                return Err(format!("error: n must be at least 1, got {n}"));
            }
            parse_grid(grid)?;
        }
        Command::DarkState {
            thetac,
            duration,
            samples,
        } => {
            if !(0.0..=pi).contains(thetac) {
                return Err(format!("error: θ_c must lie in [0, π], got {thetac}"));
            }
            if *duration <= 0.0 || !duration.is_finite() {
                return Err(format!("error: duration must be positive, got {duration}"));
            }
            if *samples == 0 {
                return Err("error: samples must be at least 1".into());
            }
        }
        Command::BosonRing { nu, nl } => {
            if *nu < 2 || *nl < 2 {
                return Err(format!(
                    "error: ring arms need at least 2 sites each, got N_U={nu} N_L={nl}"
                ));
            }
        }
        Command::Selftest { .. } => {}
    }
    Ok(())
}

fn parse_grid(grid: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = grid.split('x').collect();
    if parts.len() != 2 {
        return Err(format!("error: grid must look like 81x81, got {grid}"));
    }
    let xi: usize = parts[0]
        .parse()
        .map_err(|_| format!("error: bad ξ grid size in {grid}"))?;
    let gamma: usize = parts[1]
        .parse()
        .map_err(|_| format!("error: bad γ grid size in {grid}"))?;
    if !(2..=4096).contains(&xi) || !(2..=4096).contains(&gamma) {
        return Err(format!(
            "error: grid sizes must lie in 2..=4096, got {grid}"
        ));
    }
    Ok((xi, gamma))
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let render_report = |report: &ScenarioReport| -> Result<String, String> {
        report.to_json().map_err(|e| format!("error: {e}"))
    };

    let (payload, exit) = match &cli.command {
        Command::PstCycle { n } => {
            let report = scenario_pst_cycle(*n).map_err(|e| format!("error: {e}"))?;
            (render_report(&report)?, ExitCode::SUCCESS)
        }
        Command::PstTransfer { n } => {
            let report = scenario_pst_transfer(*n).map_err(|e| format!("error: {e}"))?;
            (render_report(&report)?, ExitCode::SUCCESS)
        }
        Command::QubitGate { wdelta, theta0 } => {
            let report =
                scenario_qubit_gate(*wdelta, *theta0).map_err(|e| format!("error: {e}"))?;
            (render_report(&report)?, ExitCode::SUCCESS)
        }
        Command::Surface { theta0, n, grid } => {
            let (grid_xi, grid_gamma) = parse_grid(grid)?;
            let result = scenario_superposition_surface_with(
                ExecMode::Auto,
                grid_xi,
                grid_gamma,
                *theta0,
                *n,
            )
            .map_err(|e| format!("error: {e}"))?;
            let payload = match cli.format {
                Format::Csv => surface_csv(&result.rows),
                Format::Json => render_report(&result.report)?,
            };
            (payload, ExitCode::SUCCESS)
        }
        Command::DarkState {
            thetac,
            duration,
            samples,
        } => {
            let report = scenario_dark_state_loop(*thetac, *duration, *samples)
                .map_err(|e| format!("error: {e}"))?;
            (render_report(&report.report)?, ExitCode::SUCCESS)
        }
        Command::BosonRing { nu, nl } => {
            let report = scenario_boson_ring(*nu, *nl).map_err(|e| format!("error: {e}"))?;
            (render_report(&report.report)?, ExitCode::SUCCESS)
        }
        Command::Selftest { seed } => {
            let results = run_all(*seed, &Tolerances::default(), None);
            let summary = summary_report(*seed, &results);
            let all_pass = results.iter().all(|r| r.pass());
            if !all_pass {
                let first = results
                    .iter()
                    .flat_map(|r| r.checks.iter())
                    .find(|c| !c.pass)
                    .map(|c| c.name.clone())
                    .unwrap_or_default();
                eprintln!("selftest failed: {first}");
            }
            (
                render_report(&summary)?,
                if all_pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                },
            )
        }
    };

    match &cli.output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(payload.as_bytes())
                .map_err(|e| format!("error: cannot write to standard output: {e}"))?;
        }
        Some(path) => {
            std::fs::write(path, payload.as_bytes())
                .map_err(|e| format!("error: cannot write {}: {e}", path.display()))?;
        }
    }
    Ok(exit)
}
