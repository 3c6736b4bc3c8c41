//! Parsing of the two input formats: the scenario document (JSON) and the
//! motor catalog (CSV).
//!
//! Scenario parsing is strict about keys (an unknown key is an error, not a
//! warning) but forgiving about optional values: every omitted field with a
//! documented default is filled in, and each fill is recorded so reports can
//! show where their inputs came from.

use std::collections::HashSet;

use serde::Deserialize;

use crate::drivetrain::{
    GearStage, GearTrain, MotorSpec, PwmSettings, DEFAULT_GEAR_EFFICIENCY, DEFAULT_PWM_DUTY,
    DEFAULT_PWM_FREQUENCY_HZ,
};
use crate::model::{
    validate_scenario, AuditLimits, ContactModel, Drivetrain, Environment, GripperGeometry,
    ObjectSpec, Scenario, Shape, SizingPrefs, ValidationErrors, DEFAULT_AMBIENT_TEMP_C,
    DEFAULT_SAFETY_FACTOR, STANDARD_GRAVITY_M_S2,
};
use crate::sizing::GeometryBounds;
use crate::structural::{FingerBeam, ALUMINIUM_YOUNGS_MODULUS_PA};

/// Grid points per axis when a geometry-bounds box omits its step counts.
pub const DEFAULT_GRID_STEPS: usize = 50;

/// The exact catalog header, in order. Anything else is rejected.
pub const CATALOG_HEADER: &str = "id,name,rated_voltage_v,stall_torque_nm,no_load_speed_rad_s,\
                                  stall_current_a,winding_resistance_ohm,thermal_resistance_k_per_w,\
                                  max_winding_temp_c,mass_kg,cost";

/// Errors from reading either input format.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("scenario is not valid JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown key `{key}` at line {line} (keys are case-sensitive; check the format docs)")]
    UnknownKey { key: String, line: usize },
    #[error(transparent)]
    Invalid(#[from] ValidationErrors),
    #[error("catalog header must be exactly `{expected}`, got `{got}`")]
    BadHeader { expected: String, got: String },
    #[error("catalog line {line}: {reason}")]
    BadRow { line: u64, reason: String },
    #[error("catalog line {line}: duplicate motor id `{id}`")]
    DuplicateId { id: String, line: u64 },
}

/// A parsed scenario plus the record of every default that was filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedScenario {
    pub scenario: Scenario,
    /// One `path = value` entry per omitted field that received a default.
    pub defaults_applied: Vec<String>,
}

// Document-side mirrors of the model types. Fields that have defaults are
// `Option` here so that "omitted" is distinguishable from "given"; required
// fields stay bare and missing ones fail at parse time.

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    object: ObjectDoc,
    contact: ContactModel,
    geometry: GripperGeometry,
    #[serde(default)]
    drivetrain: Option<DrivetrainDoc>,
    #[serde(default)]
    finger: Option<FingerDoc>,
    #[serde(default)]
    environment: Option<EnvironmentDoc>,
    #[serde(default)]
    limits: Option<AuditLimits>,
    #[serde(default)]
    gripper_mass_kg: Option<f64>,
    #[serde(default)]
    lift_accel_m_s2: Option<f64>,
    #[serde(default)]
    sizing: Option<SizingDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectDoc {
    mass_kg: f64,
    #[serde(default)]
    shape: Option<Shape>,
    #[serde(default)]
    crush_limit_n: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentDoc {
    #[serde(default)]
    g_m_s2: Option<f64>,
    #[serde(default)]
    ambient_temp_c: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DrivetrainDoc {
    #[serde(default)]
    gear_train: Option<GearTrainDoc>,
    #[serde(default)]
    pwm: Option<PwmDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GearTrainDoc {
    stages: Vec<GearStageDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GearStageDoc {
    pinion_teeth: u32,
    gear_teeth: u32,
    #[serde(default)]
    efficiency: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PwmDoc {
    #[serde(default)]
    duty: Option<f64>,
    #[serde(default)]
    frequency_hz: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FingerDoc {
    /// Defaults to `geometry.finger_length_m` when omitted.
    #[serde(default)]
    length_m: Option<f64>,
    width_m: f64,
    thickness_m: f64,
    #[serde(default)]
    youngs_modulus_pa: Option<f64>,
    #[serde(default)]
    deflection_limit_m: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SizingDoc {
    #[serde(default)]
    safety_factor: Option<f64>,
    #[serde(default)]
    geometry_bounds: Option<GeometryBoundsDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometryBoundsDoc {
    a_min_m: f64,
    a_max_m: f64,
    b_min_m: f64,
    b_max_m: f64,
    #[serde(default)]
    a_steps: Option<usize>,
    #[serde(default)]
    b_steps: Option<usize>,
}

/// Tracks defaults while peeling the `Option`s off a document.
struct Resolver {
    applied: Vec<String>,
}

impl Resolver {
    fn take<T>(&mut self, value: Option<T>, path: &str, default: T, shown: &str) -> T {
        match value {
            Some(v) => v,
            None => {
                self.applied.push(format!("{path} = {shown}"));
                default
            }
        }
    }
}

fn resolve(doc: ScenarioDoc) -> (Scenario, Vec<String>) {
    let mut r = Resolver { applied: Vec::new() };

    let object = ObjectSpec {
        mass_kg: doc.object.mass_kg,
        shape: r.take(doc.object.shape, "object.shape", Shape::Cuboid, "cuboid"),
        crush_limit_n: doc.object.crush_limit_n,
    };

    let drivetrain = {
        let doc = doc.drivetrain.unwrap_or(DrivetrainDoc {
            gear_train: None,
            pwm: None,
        });
        let gear_train = match doc.gear_train {
            Some(train) => GearTrain {
                stages: train
                    .stages
                    .into_iter()
                    .enumerate()
                    .map(|(i, stage)| GearStage {
                        pinion_teeth: stage.pinion_teeth,
                        gear_teeth: stage.gear_teeth,
                        efficiency: r.take(
                            stage.efficiency,
                            &format!("drivetrain.gear_train.stages[{i}].efficiency"),
                            DEFAULT_GEAR_EFFICIENCY,
                            "0.9",
                        ),
                    })
                    .collect(),
            },
            None => {
                r.applied
                    .push("drivetrain.gear_train = direct drive (no stages)".into());
                GearTrain::default()
            }
        };
        let pwm_doc = doc.pwm.unwrap_or(PwmDoc {
            duty: None,
            frequency_hz: None,
        });
        let pwm = PwmSettings {
            duty: r.take(pwm_doc.duty, "drivetrain.pwm.duty", DEFAULT_PWM_DUTY, "1"),
            frequency_hz: r.take(
                pwm_doc.frequency_hz,
                "drivetrain.pwm.frequency_hz",
                DEFAULT_PWM_FREQUENCY_HZ,
                "20000",
            ),
        };
        Drivetrain { gear_train, pwm }
    };

    let finger = doc.finger.map(|f| FingerBeam {
        length_m: r.take(
            f.length_m,
            "finger.length_m",
            doc.geometry.finger_length_m,
            "geometry.finger_length_m",
        ),
        width_m: f.width_m,
        thickness_m: f.thickness_m,
        youngs_modulus_pa: r.take(
            f.youngs_modulus_pa,
            "finger.youngs_modulus_pa",
            ALUMINIUM_YOUNGS_MODULUS_PA,
            "6.9e10 (aluminium)",
        ),
        deflection_limit_m: f.deflection_limit_m,
    });

    let environment = {
        let doc = doc.environment.unwrap_or(EnvironmentDoc {
            g_m_s2: None,
            ambient_temp_c: None,
        });
        Environment {
            g_m_s2: r.take(doc.g_m_s2, "environment.g_m_s2", STANDARD_GRAVITY_M_S2, "9.80665"),
            ambient_temp_c: r.take(
                doc.ambient_temp_c,
                "environment.ambient_temp_c",
                DEFAULT_AMBIENT_TEMP_C,
                "25",
            ),
        }
    };

    let gripper_mass_kg = r.take(doc.gripper_mass_kg, "gripper_mass_kg", 0.0, "0");
    let lift_accel_m_s2 = r.take(doc.lift_accel_m_s2, "lift_accel_m_s2", 0.0, "0");

    let sizing = {
        let doc = doc.sizing.unwrap_or(SizingDoc {
            safety_factor: None,
            geometry_bounds: None,
        });
        SizingPrefs {
            safety_factor: r.take(
                doc.safety_factor,
                "sizing.safety_factor",
                DEFAULT_SAFETY_FACTOR,
                "1.5",
            ),
            geometry_bounds: doc.geometry_bounds.map(|b| GeometryBounds {
                a_min_m: b.a_min_m,
                a_max_m: b.a_max_m,
                b_min_m: b.b_min_m,
                b_max_m: b.b_max_m,
                a_steps: r.take(
                    b.a_steps,
                    "sizing.geometry_bounds.a_steps",
                    DEFAULT_GRID_STEPS,
                    "50",
                ),
                b_steps: r.take(
                    b.b_steps,
                    "sizing.geometry_bounds.b_steps",
                    DEFAULT_GRID_STEPS,
                    "50",
                ),
            }),
        }
    };

    let scenario = Scenario {
        object,
        contact: doc.contact,
        geometry: doc.geometry,
        drivetrain,
        finger,
        environment,
        limits: doc.limits,
        gripper_mass_kg,
        lift_accel_m_s2,
        sizing,
    };
    (scenario, r.applied)
}

fn classify_json_error(err: serde_json::Error) -> FormatError {
    let message = err.to_string();
    if let Some(rest) = message.strip_prefix("unknown field `") {
        if let Some(key) = rest.split('`').next() {
            return FormatError::UnknownKey {
                key: key.to_string(),
                line: err.line(),
            };
        }
    }
    FormatError::Parse {
        line: err.line(),
        column: err.column(),
        message,
    }
}

/// Parses and validates one scenario document, filling in and recording
/// defaults for every omitted optional field.
pub fn parse_scenario(text: &str) -> Result<ParsedScenario, FormatError> {
    let doc: ScenarioDoc = serde_json::from_str(text).map_err(classify_json_error)?;
    let (scenario, defaults_applied) = resolve(doc);
    let scenario = validate_scenario(scenario)?;
    Ok(ParsedScenario {
        scenario,
        defaults_applied,
    })
}

fn catalog_row_line(index: usize) -> u64 {
    // data rows start on line 2; line 1 is the header
    index as u64 + 2
}

/// Parses a motor catalog. The header must match [`CATALOG_HEADER`] exactly;
/// each row is validated and ids must be unique. A header-only file yields an
/// empty catalog (rejected later by the sizing step, not here).
pub fn parse_motor_catalog(text: &str) -> Result<Vec<MotorSpec>, FormatError> {
    let expected: Vec<&str> = CATALOG_HEADER.split(',').map(str::trim).collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let got: Vec<String> = reader
        .headers()
        .map_err(|e| FormatError::BadRow {
            line: 1,
            reason: e.to_string(),
        })?
        .iter()
        .map(str::to_string)
        .collect();
    if got != expected {
        return Err(FormatError::BadHeader {
            expected: expected.join(","),
            got: got.join(","),
        });
    }

    let mut motors = Vec::new();
    let mut seen = HashSet::new();
    for (index, record) in reader.deserialize::<MotorSpec>().enumerate() {
        let line = catalog_row_line(index);
        let motor = record.map_err(|e| FormatError::BadRow {
            line,
            reason: e.to_string(),
        })?;
        motor.validate().map_err(|e| FormatError::BadRow {
            line,
            reason: e.to_string(),
        })?;
        if !seen.insert(motor.id.clone()) {
            return Err(FormatError::DuplicateId {
                id: motor.id.clone(),
                line,
            });
        }
        motors.push(motor);
    }
    Ok(motors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const MINIMAL: &str = r#"{
        "object": {"mass_kg": 2.0},
        "contact": {"mu": 0.4},
        "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1}
    }"#;

    const GOOD_CSV: &str = "\
id,name,rated_voltage_v,stall_torque_nm,no_load_speed_rad_s,stall_current_a,winding_resistance_ohm,thermal_resistance_k_per_w,max_winding_temp_c,mass_kg,cost
m1,First,12,1.2,300,1.0,2.5,9,110,0.15,12.5
m2,Second,12,2.0,250,1.1,2.2,8,120,0.21,18
";

    #[test]
    fn minimal_scenario_fills_and_records_defaults() {
        let parsed = parse_scenario(MINIMAL).unwrap();
        let s = &parsed.scenario;
        assert_eq!(s.object.shape, Shape::Cuboid);
        assert_abs_diff_eq!(s.environment.g_m_s2, 9.80665);
        assert_abs_diff_eq!(s.environment.ambient_temp_c, 25.0);
        assert!(s.drivetrain.gear_train.stages.is_empty());
        assert_eq!(s.drivetrain.pwm.duty, 1.0);
        assert_eq!(s.drivetrain.pwm.frequency_hz, 20_000.0);
        assert_eq!(s.gripper_mass_kg, 0.0);
        assert_eq!(s.lift_accel_m_s2, 0.0);
        assert_eq!(s.sizing.safety_factor, 1.5);
        assert!(s.finger.is_none());
        assert!(s.limits.is_none());

        assert_eq!(
            parsed.defaults_applied,
            vec![
                "object.shape = cuboid",
                "drivetrain.gear_train = direct drive (no stages)",
                "drivetrain.pwm.duty = 1",
                "drivetrain.pwm.frequency_hz = 20000",
                "environment.g_m_s2 = 9.80665",
                "environment.ambient_temp_c = 25",
                "gripper_mass_kg = 0",
                "lift_accel_m_s2 = 0",
                "sizing.safety_factor = 1.5",
            ]
        );
    }

    #[test]
    fn fully_specified_scenario_records_nothing() {
        let text = r#"{
            "object": {"mass_kg": 2.0, "shape": "cylinder", "crush_limit_n": 50.0},
            "contact": {"mu": 0.4},
            "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1},
            "drivetrain": {
                "gear_train": {"stages": [{"pinion_teeth": 12, "gear_teeth": 48, "efficiency": 0.9}]},
                "pwm": {"duty": 0.6, "frequency_hz": 20000.0}
            },
            "finger": {
                "length_m": 0.1, "width_m": 0.01, "thickness_m": 0.003,
                "youngs_modulus_pa": 69e9, "deflection_limit_m": 0.006
            },
            "environment": {"g_m_s2": 9.81, "ambient_temp_c": 25.0},
            "limits": {"max_gripper_mass_kg": 1.2, "max_finger_length_m": 0.15, "encompassing": true},
            "gripper_mass_kg": 0.8,
            "lift_accel_m_s2": 2.0,
            "sizing": {
                "safety_factor": 1.5,
                "geometry_bounds": {
                    "a_min_m": 0.02, "a_max_m": 0.06, "b_min_m": 0.03, "b_max_m": 0.09,
                    "a_steps": 41, "b_steps": 61
                }
            }
        }"#;
        let parsed = parse_scenario(text).unwrap();
        assert!(parsed.defaults_applied.is_empty());
        assert_eq!(parsed.scenario.drivetrain.pwm.duty, 0.6);
        assert_eq!(parsed.scenario.finger.unwrap().deflection_limit_m, Some(0.006));
    }

    #[test]
    fn finger_length_inherits_the_geometry_length() {
        let text = r#"{
            "object": {"mass_kg": 2.0},
            "contact": {"mu": 0.4},
            "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1},
            "finger": {"width_m": 0.01, "thickness_m": 0.003}
        }"#;
        let parsed = parse_scenario(text).unwrap();
        let finger = parsed.scenario.finger.unwrap();
        assert_eq!(finger.length_m, 0.1);
        assert_abs_diff_eq!(finger.youngs_modulus_pa, 69e9);
        assert!(parsed
            .defaults_applied
            .contains(&"finger.length_m = geometry.finger_length_m".to_string()));
        assert!(parsed
            .defaults_applied
            .contains(&"finger.youngs_modulus_pa = 6.9e10 (aluminium)".to_string()));
    }

    #[test]
    fn stage_efficiency_and_grid_steps_default() {
        let text = r#"{
            "object": {"mass_kg": 2.0},
            "contact": {"mu": 0.4},
            "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1},
            "drivetrain": {"gear_train": {"stages": [{"pinion_teeth": 12, "gear_teeth": 48}]}},
            "sizing": {"geometry_bounds": {"a_min_m": 0.02, "a_max_m": 0.06, "b_min_m": 0.03, "b_max_m": 0.09}}
        }"#;
        let parsed = parse_scenario(text).unwrap();
        assert_eq!(parsed.scenario.drivetrain.gear_train.stages[0].efficiency, 0.9);
        let bounds = parsed.scenario.sizing.geometry_bounds.unwrap();
        assert_eq!((bounds.a_steps, bounds.b_steps), (50, 50));
        assert!(parsed
            .defaults_applied
            .contains(&"drivetrain.gear_train.stages[0].efficiency = 0.9".to_string()));
    }

    #[test]
    fn unknown_key_is_rejected_by_name() {
        let text = r#"{
            "object": {"mass_kg": 2.0, "weight_kg": 3.0},
            "contact": {"mu": 0.4},
            "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1}
        }"#;
        match parse_scenario(text) {
            Err(FormatError::UnknownKey { key, .. }) => assert_eq!(key, "weight_kg"),
            other => panic!("expected UnknownKey, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        match parse_scenario("{\n  \"object\": {,}\n}") {
            Err(FormatError::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn invalid_values_surface_every_violation() {
        let text = r#"{
            "object": {"mass_kg": -1.0},
            "contact": {"mu": 3.0},
            "geometry": {"arm_a_m": 0.05, "arm_b_m": 0.07, "finger_length_m": 0.1}
        }"#;
        match parse_scenario(text) {
            Err(FormatError::Invalid(errors)) => {
                assert_eq!(errors.violations.len(), 2);
                assert_eq!(errors.violations[0].path, "object.mass_kg");
                assert_eq!(errors.violations[1].path, "contact.mu");
            }
            other => panic!("expected Invalid, got {other:?}"),
        }
    }

    #[test]
    fn good_catalog_parses_in_order() {
        let motors = parse_motor_catalog(GOOD_CSV).unwrap();
        assert_eq!(motors.len(), 2);
        assert_eq!(motors[0].id, "m1");
        assert_eq!(motors[1].name, "Second");
        assert_abs_diff_eq!(motors[1].stall_torque_nm, 2.0);
    }

    #[test]
    fn header_only_catalog_is_empty_not_an_error() {
        let header_only = GOOD_CSV.lines().next().unwrap().to_string() + "\n";
        assert_eq!(parse_motor_catalog(&header_only).unwrap(), vec![]);
    }

    #[test]
    fn wrong_header_is_rejected() {
        let text = GOOD_CSV.replace("stall_torque_nm", "stall_torque");
        match parse_motor_catalog(&text) {
            Err(FormatError::BadHeader { got, .. }) => assert!(got.contains("stall_torque")),
            other => panic!("expected BadHeader, got {other:?}"),
        }
    }

    #[test]
    fn unparseable_row_reports_its_line() {
        let text = GOOD_CSV.replace("2.0,250", "lots,250");
        match parse_motor_catalog(&text) {
            Err(FormatError::BadRow { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected BadRow, got {other:?}"),
        }
    }

    #[test]
    fn invalid_row_values_report_their_line() {
        let text = GOOD_CSV.replace("12,1.2,300", "12,-1.2,300");
        match parse_motor_catalog(&text) {
            Err(FormatError::BadRow { line, reason }) => {
                assert_eq!(line, 2);
                assert!(reason.contains("stall_torque_nm"));
            }
            other => panic!("expected BadRow, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let text = GOOD_CSV.replace("m2,Second", "m1,Second");
        match parse_motor_catalog(&text) {
            Err(FormatError::DuplicateId { id, line }) => {
                assert_eq!(id, "m1");
                assert_eq!(line, 3);
            }
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }
}
