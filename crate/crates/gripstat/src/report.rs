//! Assembles the full analysis report for one scenario: grasp solution,
//! drive-chain summary, optional finger check, optional motor selection, and
//! the design-guideline audit, together with provenance notes about which
//! defaults were filled in.

use serde::{Deserialize, Serialize};

use crate::drivetrain::{linear_actuator_force, MotorSpec};
use crate::grasp::GraspSolution;
use crate::model::{validate_scenario, Scenario};
use crate::sizing::{
    guideline_audit, required_motor_torque, select_motor, AuditReport, MotorChoice, SizingError,
    SizingRequest,
};
use crate::structural::{stiffness_check, StiffnessCheck};
use crate::Error;

/// The drive chain worked backwards from the holding torque.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrivetrainSummary {
    pub safety_factor: f64,
    /// Torque demanded at the motor shaft, safety factor included (N·m).
    pub required_motor_torque_nm: f64,
    pub train_total_ratio: f64,
    pub train_total_efficiency: f64,
    pub pwm_duty: f64,
    /// Force to hoist gripper plus object at the scenario's lift
    /// acceleration (N).
    pub actuator_force_n: f64,
}

/// Outcome of the motor-selection step inside a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MotorSelection {
    /// A catalog entry qualified; `choice` holds it and its margins.
    Selected { choice: MotorChoice },
    /// A catalog was given but no entry passed both the torque and the
    /// thermal filter.
    Infeasible {
        required_torque_nm: f64,
        best_shortfall_nm: f64,
    },
    /// No catalog was supplied.
    NotRequested,
}

/// Where the numbers in a report came from: which omitted inputs were filled
/// with defaults, plus free-form notes (e.g. a safety factor overridden on
/// the command line).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// One `path = value` entry per default the parser filled in.
    pub defaults_applied: Vec<String>,
    pub notes: Vec<String>,
}

/// Everything the analysis derives from one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    /// The scenario as analyzed, defaults resolved.
    pub scenario: Scenario,
    pub grasp: GraspSolution,
    pub drivetrain: DrivetrainSummary,
    /// Present when the scenario declares a finger beam.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structural: Option<StiffnessCheck>,
    pub motor: MotorSelection,
    pub audit: AuditReport,
    pub provenance: Provenance,
}

/// Output document of the standalone finger check: the beam as checked
/// (fallback deflection limit resolved), the tip load, and the result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FingerCheckReport {
    pub beam: crate::structural::FingerBeam,
    /// Tip load (N): the grasp's required normal force.
    pub force_n: f64,
    pub check: StiffnessCheck,
}

/// The scenario's finger beam with the deflection limit resolved: the beam's
/// own limit wins, `limits.max_deflection_m` is the fallback for beams that
/// do not carry one.
pub fn resolved_finger(scenario: &Scenario) -> Option<crate::structural::FingerBeam> {
    scenario.finger.map(|mut beam| {
        if beam.deflection_limit_m.is_none() {
            beam.deflection_limit_m = scenario.limits.as_ref().and_then(|l| l.max_deflection_m);
        }
        beam
    })
}

/// Runs the whole pipeline for one scenario. A self-locking geometry
/// (`b ≤ μ a`) is an error because no positive drive torque exists to size
/// anything against; an exhausted motor catalog is not, and lands in the
/// report as [`MotorSelection::Infeasible`].
pub fn analyze_scenario(
    scenario: Scenario,
    catalog: Option<&[MotorSpec]>,
    provenance: Provenance,
) -> Result<AnalysisReport, Error> {
    let scenario = validate_scenario(scenario)?;
    let grasp = GraspSolution::solve(&scenario)?;

    let safety_factor = scenario.sizing.safety_factor;
    let required = required_motor_torque(&scenario, safety_factor)?;
    let train = &scenario.drivetrain.gear_train;
    let drivetrain = DrivetrainSummary {
        safety_factor,
        required_motor_torque_nm: required,
        train_total_ratio: train.total_ratio(),
        train_total_efficiency: train.total_efficiency(),
        pwm_duty: scenario.drivetrain.pwm.duty,
        actuator_force_n: linear_actuator_force(
            scenario.gripper_mass_kg,
            scenario.object.mass_kg,
            scenario.environment.g_m_s2,
            scenario.lift_accel_m_s2,
        )?,
    };

    let structural =
        resolved_finger(&scenario).map(|beam| stiffness_check(grasp.normal_force_n, &beam));

    let motor = match catalog {
        None => MotorSelection::NotRequested,
        Some([]) => return Err(SizingError::EmptyCatalog.into()),
        Some(entries) => {
            let request = SizingRequest::from_scenario(scenario.clone(), entries.to_vec());
            match select_motor(&request) {
                Ok(choice) => MotorSelection::Selected { choice },
                Err(SizingError::NoFeasibleMotor {
                    required_torque_nm,
                    best_shortfall_nm,
                }) => MotorSelection::Infeasible {
                    required_torque_nm,
                    best_shortfall_nm,
                },
                Err(other) => return Err(other.into()),
            }
        }
    };

    let audit = guideline_audit(&scenario, &grasp, structural.as_ref());

    Ok(AnalysisReport {
        scenario,
        grasp,
        drivetrain,
        structural,
        motor,
        audit,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AuditLimits;
    use crate::structural::FingerBeam;
    use crate::testutil::s1_scenario;
    use approx::assert_abs_diff_eq;

    fn catalog() -> Vec<MotorSpec> {
        vec![
            MotorSpec {
                id: "small".into(),
                name: "small test motor".into(),
                rated_voltage_v: 12.0,
                stall_torque_nm: 0.8,
                no_load_speed_rad_s: 300.0,
                stall_current_a: 0.8,
                winding_resistance_ohm: 3.0,
                thermal_resistance_k_per_w: 8.0,
                max_winding_temp_c: 100.0,
                mass_kg: 0.12,
                cost: 9.0,
            },
            MotorSpec {
                id: "mid".into(),
                name: "mid test motor".into(),
                rated_voltage_v: 12.0,
                stall_torque_nm: 1.6,
                no_load_speed_rad_s: 250.0,
                stall_current_a: 1.2,
                winding_resistance_ohm: 2.5,
                thermal_resistance_k_per_w: 7.0,
                max_winding_temp_c: 120.0,
                mass_kg: 0.2,
                cost: 15.0,
            },
        ]
    }

    #[test]
    fn full_report_for_the_worked_scenario() {
        let report =
            analyze_scenario(s1_scenario(), Some(&catalog()), Provenance::default()).unwrap();

        assert_abs_diff_eq!(report.grasp.normal_force_n, 24.525, epsilon = 1e-12);
        assert_abs_diff_eq!(report.grasp.holding_torque_nm, 2.4525, epsilon = 1e-12);
        assert!(report.grasp.geometry_feasible);

        let d = &report.drivetrain;
        assert_eq!(d.safety_factor, 1.5);
        assert_abs_diff_eq!(d.required_motor_torque_nm, 1.021875, epsilon = 1e-12);
        assert_abs_diff_eq!(d.train_total_ratio, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.train_total_efficiency, 0.9, epsilon = 1e-12);
        assert_eq!(d.pwm_duty, 1.0);
        // (2 kg object + 0.8 kg gripper) hoisted at 2 m/s²
        assert_abs_diff_eq!(d.actuator_force_n, 33.068, epsilon = 1e-12);

        match &report.motor {
            MotorSelection::Selected { choice } => {
                assert_eq!(choice.motor.id, "mid");
                assert!(choice.margin_nm > 0.0);
            }
            other => panic!("expected a selected motor, got {other:?}"),
        }
        assert_eq!(report.audit.entries.len(), 5);
    }

    #[test]
    fn self_locking_geometry_is_an_error() {
        let mut s = s1_scenario();
        s.geometry.arm_b_m = 0.015; // mu * a = 0.02 > b
        let err = analyze_scenario(s, None, Provenance::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::Sizing(SizingError::InfeasibleGeometry { .. })
        ));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn empty_catalog_is_an_error() {
        let err =
            analyze_scenario(s1_scenario(), Some(&[]), Provenance::default()).unwrap_err();
        assert!(matches!(err, Error::Sizing(SizingError::EmptyCatalog)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn missing_catalog_is_not_requested() {
        let report = analyze_scenario(s1_scenario(), None, Provenance::default()).unwrap();
        assert_eq!(report.motor, MotorSelection::NotRequested);
    }

    #[test]
    fn exhausted_catalog_lands_in_the_report() {
        let mut weak = catalog()[0].clone();
        weak.stall_torque_nm = 0.5;
        let report =
            analyze_scenario(s1_scenario(), Some(&[weak]), Provenance::default()).unwrap();
        match report.motor {
            MotorSelection::Infeasible {
                required_torque_nm,
                best_shortfall_nm,
            } => {
                assert_abs_diff_eq!(required_torque_nm, 1.021875, epsilon = 1e-12);
                assert_abs_diff_eq!(best_shortfall_nm, 0.521875, epsilon = 1e-12);
            }
            other => panic!("expected an infeasible selection, got {other:?}"),
        }
    }

    #[test]
    fn beam_deflection_limit_takes_precedence_over_fallback() {
        let beam = FingerBeam {
            length_m: 0.1,
            width_m: 0.01,
            thickness_m: 0.003,
            youngs_modulus_pa: 69e9,
            deflection_limit_m: Some(0.004),
        };
        let limits = AuditLimits {
            max_deflection_m: Some(0.009),
            ..AuditLimits::default()
        };

        let mut s = s1_scenario();
        s.finger = Some(beam);
        s.limits = Some(limits.clone());
        let own = analyze_scenario(s, None, Provenance::default()).unwrap();
        assert_eq!(own.structural.unwrap().deflection_limit_m, Some(0.004));

        let mut s = s1_scenario();
        s.finger = Some(FingerBeam {
            deflection_limit_m: None,
            ..beam
        });
        s.limits = Some(limits);
        let fallback = analyze_scenario(s, None, Provenance::default()).unwrap();
        assert_eq!(fallback.structural.unwrap().deflection_limit_m, Some(0.009));
    }

    #[test]
    fn report_round_trips_through_serde() {
        let report =
            analyze_scenario(s1_scenario(), Some(&catalog()), Provenance::default()).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
