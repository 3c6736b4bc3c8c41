//! Statics and actuator sizing for two-finger parallel grippers.
//!
//! `gripstat` answers the questions that come up when sizing the drive of a
//! small gripper around a quasistatic friction-grasp model:
//!
//! * how hard must the fingers press so the object does not slip, and what
//!   torque must the driven gear hold ([`grasp`]);
//! * what does that torque demand of the motor once the gear train, PWM
//!   derating, and a stalled-winding temperature estimate are accounted for
//!   ([`drivetrain`]);
//! * does the finger itself stay stiff enough under that pinch force
//!   ([`structural`]);
//! * which catalog motor or which moment-arm geometry satisfies all of the
//!   above with margin, and how does the design score against a short list
//!   of gripper design guidelines ([`sizing`]).
//!
//! All quantities are SI (kg, m, N, N·m, rad/s, W, °C); field names carry
//! their unit. Inputs are validated up front and every violation is reported
//! at once; the solvers themselves never clamp or repair values.
//!
//! ## Quick start
//!
//! ```
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! use gripstat::{GraspSolution, io::parse_scenario};
//!
//! let parsed = parse_scenario(r#"{
//!     "object":      {"mass_kg": 2.0},
//!     "contact":     {"mu": 0.4},
//!     "geometry":    {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1},
//!     "environment": {"g_m_s2": 9.81}
//! }"#)?;
//!
//! let grasp = GraspSolution::solve(&parsed.scenario)?;
//! assert!((grasp.normal_force_n - 24.525).abs() < 1e-9);
//! assert!((grasp.holding_torque_nm - 2.4525).abs() < 1e-9);
//! # Ok(())
//! # }
//! ```
//!
//! ## Examples
//!
//! One runnable example per capability, under `examples/`:
//!
//! - **`grasp_forces`** - normal force, holding torque, and sensitivities
//! - **`pwm_and_thermal`** - torque-speed line, PWM derating, winding temperature
//! - **`finger_stiffness`** - cantilever deflection and stiffness check
//! - **`motor_selection`** - pick the lightest qualifying motor from a CSV catalog
//! - **`geometry_optimization`** - grid search for the torque-minimal moment arms
//! - **`design_audit`** - score a scenario against the five design guidelines
//! - **`full_report`** - the whole pipeline rendered as text and canonical JSON
//!
//! ```bash
//! cargo run --example grasp_forces
//! cargo run --example motor_selection
//! cargo run --example full_report
//! ```
//!
//! The same pipeline is scriptable through the thin `gripstat` binary
//! (`analyze`, `size-motor`, `optimize-geometry`, `check-finger`, `audit`);
//! see [`cli`] for the exit-code contract.

pub mod cli;
pub mod drivetrain;
pub mod grasp;
pub mod io;
pub mod model;
pub mod render;
pub mod report;
pub mod sizing;
pub mod structural;

pub use grasp::GraspSolution;
pub use model::{validate_scenario, Scenario, ValidationErrors};
pub use render::OutputFormat;
pub use report::{analyze_scenario, AnalysisReport, Provenance};

/// Any failure the crate can produce, with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationErrors),
    #[error(transparent)]
    Grasp(#[from] grasp::GraspError),
    #[error(transparent)]
    Drive(#[from] drivetrain::DriveError),
    #[error(transparent)]
    Sizing(#[from] sizing::SizingError),
    #[error(transparent)]
    Format(#[from] io::FormatError),
    #[error("scenario is missing the `{what}` section")]
    MissingSection { what: String },
    #[error("failed to read {path}: {source}")]
    ReadInput {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    WriteOutput {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    /// Exit code for the CLI: `2` for bad input, `3` when the model finds
    /// the request infeasible, `4` when the output cannot be written.
    pub fn exit_code(&self) -> i32 {
        use sizing::SizingError;
        match self {
            Error::Validation(_)
            | Error::Grasp(_)
            | Error::Drive(_)
            | Error::Format(_)
            | Error::MissingSection { .. }
            | Error::ReadInput { .. } => 2,
            Error::Sizing(err) => match err {
                SizingError::InfeasibleGeometry { .. }
                | SizingError::NoFeasibleMotor { .. }
                | SizingError::NoFeasiblePoint => 3,
                SizingError::EmptyCatalog
                | SizingError::MissingGeometryBounds
                | SizingError::Grasp(_) => 2,
            },
            Error::WriteOutput { .. } => 4,
        }
    }
}
