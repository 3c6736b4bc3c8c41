//! Command-line front end. All the logic lives in the library; this module
//! only parses arguments, loads files, dispatches, and maps errors to exit
//! codes:
//!
//! * `0`: success;
//! * `2`: bad input (file unreadable, malformed document, invariant
//!   violations, or a command missing the scenario section it needs);
//! * `3`: the model itself says no (self-locking geometry, no qualifying
//!   motor, no feasible grid point);
//! * `4`: the output could not be written.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::drivetrain::MotorSpec;
use crate::grasp::GraspSolution;
use crate::io::{parse_motor_catalog, parse_scenario};
use crate::model::{validate_scenario, Scenario};
use crate::render::{
    render_analysis, render_audit, render_finger_check, render_geometry_optimum,
    render_motor_choice, OutputFormat,
};
use crate::report::{analyze_scenario, resolved_finger, FingerCheckReport, Provenance};
use crate::sizing::{guideline_audit, optimize_geometry, select_motor, SizingRequest};
use crate::structural::stiffness_check;
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "gripstat",
    version,
    about = "Statics and actuator sizing for two-finger grippers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output form.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Override the scenario's sizing.safety_factor (must be >= 1).
    #[arg(long, global = true)]
    safety_factor: Option<f64>,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: grasp forces, drive chain, finger check, optional motor
    /// selection, and the guideline audit.
    Analyze {
        /// Scenario file (JSON).
        scenario: PathBuf,
        /// Motor catalog (CSV); when given, the report includes a selection.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Pick the lightest catalog motor that meets the torque demand and
    /// stays within its winding-temperature limit.
    SizeMotor {
        /// Scenario file (JSON).
        scenario: PathBuf,
        /// Motor catalog (CSV).
        #[arg(long)]
        catalog: PathBuf,
    },
    /// Search the scenario's geometry bounds for the moment arms that
    /// minimize the holding torque.
    OptimizeGeometry {
        /// Scenario file (JSON) declaring sizing.geometry_bounds.
        scenario: PathBuf,
    },
    /// Cantilever check of the finger beam under the grasp's normal force.
    CheckFinger {
        /// Scenario file (JSON) declaring a finger beam.
        scenario: PathBuf,
    },
    /// Score the scenario against the five design guidelines.
    Audit {
        /// Scenario file (JSON).
        scenario: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

/// Parses `std::env::args`, runs the requested command, and returns the
/// process exit code. Errors are printed to stderr.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), Error> {
    let format = OutputFormat::from(cli.format);
    let rendered = match &cli.command {
        Command::Analyze { scenario, catalog } => {
            let (scenario, provenance) = load_scenario(scenario, cli.safety_factor)?;
            let catalog = catalog.as_ref().map(load_catalog).transpose()?;
            let report = analyze_scenario(scenario, catalog.as_deref(), provenance)?;
            render_analysis(&report, format)
        }
        Command::SizeMotor { scenario, catalog } => {
            let (scenario, _) = load_scenario(scenario, cli.safety_factor)?;
            let request = SizingRequest::from_scenario(scenario, load_catalog(catalog)?);
            let choice = select_motor(&request)?;
            render_motor_choice(&choice, format)
        }
        Command::OptimizeGeometry { scenario } => {
            let (scenario, _) = load_scenario(scenario, cli.safety_factor)?;
            let request = SizingRequest::from_scenario(scenario, Vec::new());
            let optimum = optimize_geometry(&request)?;
            render_geometry_optimum(&optimum, format)
        }
        Command::CheckFinger { scenario } => {
            let (scenario, _) = load_scenario(scenario, cli.safety_factor)?;
            let beam = resolved_finger(&scenario).ok_or(Error::MissingSection {
                what: "finger (the check-finger command needs a finger beam)".into(),
            })?;
            let solution = GraspSolution::solve(&scenario)?;
            let report = FingerCheckReport {
                beam,
                force_n: solution.normal_force_n,
                check: stiffness_check(solution.normal_force_n, &beam),
            };
            render_finger_check(&report, format)
        }
        Command::Audit { scenario } => {
            let (scenario, _) = load_scenario(scenario, cli.safety_factor)?;
            let solution = GraspSolution::solve(&scenario)?;
            let structural =
                resolved_finger(&scenario).map(|beam| stiffness_check(solution.normal_force_n, &beam));
            let audit = guideline_audit(&scenario, &solution, structural.as_ref());
            render_audit(&audit, format)
        }
    };
    emit(&rendered, cli.out.as_ref())
}

fn load_scenario(
    path: &PathBuf,
    safety_factor: Option<f64>,
) -> Result<(Scenario, Provenance), Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::ReadInput {
        path: path.clone(),
        source,
    })?;
    let parsed = parse_scenario(&text)?;
    let mut scenario = parsed.scenario;
    let mut provenance = Provenance {
        defaults_applied: parsed.defaults_applied,
        notes: Vec::new(),
    };
    if let Some(sf) = safety_factor {
        scenario.sizing.safety_factor = sf;
        scenario = validate_scenario(scenario)?;
        provenance
            .notes
            .push(format!("sizing.safety_factor = {sf} from --safety-factor"));
    }
    Ok((scenario, provenance))
}

fn load_catalog(path: &PathBuf) -> Result<Vec<MotorSpec>, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::ReadInput {
        path: path.clone(),
        source,
    })?;
    Ok(parse_motor_catalog(&text)?)
}

fn emit(rendered: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        None => {
            print!("{rendered}");
            Ok(())
        }
        Some(path) => fs::write(path, rendered).map_err(|source| Error::WriteOutput {
            path: path.clone(),
            source,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_declaration_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn subcommands_and_flags_parse() {
        let cli = Cli::parse_from([
            "gripstat",
            "analyze",
            "scenario.json",
            "--catalog",
            "motors.csv",
            "--format",
            "json",
            "--safety-factor",
            "2.0",
            "--out",
            "report.json",
        ]);
        assert_eq!(cli.safety_factor, Some(2.0));
        assert_eq!(cli.format, FormatArg::Json);
        assert_eq!(cli.out.as_deref(), Some(std::path::Path::new("report.json")));
        assert!(matches!(cli.command, Command::Analyze { catalog: Some(_), .. }));

        for name in ["size-motor", "optimize-geometry", "check-finger", "audit"] {
            let args: Vec<&str> = if name == "size-motor" {
                vec!["gripstat", name, "s.json", "--catalog", "m.csv"]
            } else {
                vec!["gripstat", name, "s.json"]
            };
            assert!(Cli::try_parse_from(args).is_ok(), "subcommand {name} must parse");
        }
    }

    #[test]
    fn missing_files_map_to_read_errors() {
        let err = load_scenario(&PathBuf::from("/nonexistent/s.json"), None).unwrap_err();
        assert!(matches!(err, Error::ReadInput { .. }));
        assert_eq!(err.exit_code(), 2);
    }
}
