//! Validated SI domain types shared by every other module.
//!
//! All quantities are SI throughout the crate: kg, m, s, N, N·m, rad/s, W,
//! and °C for temperatures. There is no unit-conversion layer; the JSON key
//! names carry the unit (`mass_kg`, `arm_a_m`, ...) so a value can never be
//! fed in with the wrong scale silently.
//!
//! A [`Scenario`] is a plain value. Build one (in code or via
//! [`crate::io::parse_scenario`]) and pass it through [`validate_scenario`]
//! before handing it to the solvers; every invariant violation is collected
//! into a single [`ValidationErrors`] report, nothing is clamped or repaired.

use serde::{Deserialize, Serialize};

use crate::drivetrain::{GearTrain, PwmSettings};
use crate::sizing::GeometryBounds;
use crate::structural::FingerBeam;

/// Standard gravity (m/s²), the default for [`Environment::g_m_s2`].
pub const STANDARD_GRAVITY_M_S2: f64 = 9.80665;

/// Default ambient temperature (°C).
pub const DEFAULT_AMBIENT_TEMP_C: f64 = 25.0;

/// Upper sanity cap on the friction coefficient. Values above this are
/// rejected outright; they almost always mean a percent-vs-fraction mixup.
pub const MAX_FRICTION_COEFF: f64 = 2.0;

/// One violated invariant: which field and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidField {
    /// Dotted path into the scenario document, e.g. `object.mass_kg`.
    pub path: String,
    /// What the invariant requires, e.g. `must be > 0`.
    pub reason: String,
}

impl std::fmt::Display for InvalidField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

/// Every invariant violation found in one validation pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationErrors {
    pub violations: Vec<InvalidField>,
}

impl std::fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid scenario ({} problem(s))", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

/// Collects [`InvalidField`] entries while walking a scenario.
#[derive(Debug, Default)]
pub(crate) struct Violations(Vec<InvalidField>);

impl Violations {
    pub(crate) fn require(&mut self, ok: bool, path: impl Into<String>, reason: &str) {
        if !ok {
            self.0.push(InvalidField {
                path: path.into(),
                reason: reason.to_string(),
            });
        }
    }

    pub(crate) fn into_result(self) -> Result<(), ValidationErrors> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(ValidationErrors { violations: self.0 })
        }
    }
}

/// Nominal shape of the grasped object. Informational only; the planar
/// point-contact model does not distinguish shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Cuboid,
    Cylinder,
}

/// The object to be grasped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    /// Object mass (kg). Object mass only; the moving gripper assembly is
    /// accounted for separately in [`Scenario::gripper_mass_kg`].
    pub mass_kg: f64,
    pub shape: Shape,
    /// Largest normal force (N) the object tolerates without deformation.
    /// Absent means the crush check is reported as not evaluated, never as a
    /// pass.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crush_limit_n: Option<f64>,
}

impl ObjectSpec {
    fn check(&self, out: &mut Violations) {
        out.require(self.mass_kg > 0.0 && self.mass_kg.is_finite(), "object.mass_kg", "must be > 0");
        if let Some(limit) = self.crush_limit_n {
            out.require(limit > 0.0 && limit.is_finite(), "object.crush_limit_n", "must be > 0");
        }
    }
}

/// Fingertip-to-object contact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactModel {
    /// Coefficient of friction between finger and object surface
    /// (dimensionless, 0 < mu ≤ 2).
    pub mu: f64,
}

impl ContactModel {
    fn check(&self, out: &mut Violations) {
        out.require(self.mu > 0.0, "contact.mu", "must be > 0");
        out.require(self.mu <= MAX_FRICTION_COEFF, "contact.mu", "must be <= 2");
    }
}

/// Moment-arm geometry of one finger about its pivot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GripperGeometry {
    /// Moment arm of the friction force about the finger pivot (m).
    pub arm_a_m: f64,
    /// Moment arm of the normal reaction about the finger pivot (m).
    pub arm_b_m: f64,
    /// Free finger length (m).
    pub finger_length_m: f64,
}

impl GripperGeometry {
    fn check(&self, out: &mut Violations) {
        out.require(self.arm_a_m > 0.0 && self.arm_a_m.is_finite(), "geometry.arm_a_m", "must be > 0");
        out.require(self.arm_b_m > 0.0 && self.arm_b_m.is_finite(), "geometry.arm_b_m", "must be > 0");
        out.require(
            self.finger_length_m > 0.0 && self.finger_length_m.is_finite(),
            "geometry.finger_length_m",
            "must be > 0",
        );
    }
}

/// Ambient conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Environment {
    /// Gravitational acceleration (m/s²).
    pub g_m_s2: f64,
    /// Ambient temperature (°C), used by the winding-temperature estimate.
    pub ambient_temp_c: f64,
}

impl Default for Environment {
    fn default() -> Self {
        Self {
            g_m_s2: STANDARD_GRAVITY_M_S2,
            ambient_temp_c: DEFAULT_AMBIENT_TEMP_C,
        }
    }
}

impl Environment {
    fn check(&self, out: &mut Violations) {
        out.require(self.g_m_s2 > 0.0 && self.g_m_s2.is_finite(), "environment.g_m_s2", "must be > 0");
        out.require(self.ambient_temp_c.is_finite(), "environment.ambient_temp_c", "must be finite");
    }
}

/// Gear train plus the PWM drive settings it is driven with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Drivetrain {
    pub gear_train: GearTrain,
    pub pwm: PwmSettings,
}

impl Default for Drivetrain {
    fn default() -> Self {
        Self {
            gear_train: GearTrain { stages: Vec::new() },
            pwm: PwmSettings::default(),
        }
    }
}

/// Optional limits consumed by the design-guideline audit. A missing limit
/// makes the corresponding audit entry "not evaluated".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditLimits {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_gripper_mass_kg: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_finger_length_m: Option<f64>,
    /// Fallback tip-deflection limit (m); a limit on the finger beam itself
    /// takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deflection_m: Option<f64>,
    /// Declared, not derived: whether the jaws encompass the object. The
    /// planar point-contact model cannot tell, so the audit only echoes this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encompassing: Option<bool>,
}

impl AuditLimits {
    fn check(&self, out: &mut Violations) {
        if let Some(v) = self.max_gripper_mass_kg {
            out.require(v > 0.0 && v.is_finite(), "limits.max_gripper_mass_kg", "must be > 0");
        }
        if let Some(v) = self.max_finger_length_m {
            out.require(v > 0.0 && v.is_finite(), "limits.max_finger_length_m", "must be > 0");
        }
        if let Some(v) = self.max_deflection_m {
            out.require(v > 0.0 && v.is_finite(), "limits.max_deflection_m", "must be > 0");
        }
    }
}

/// Sizing preferences carried by the scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizingPrefs {
    /// Multiplier on the required torque demanded of the selected motor.
    pub safety_factor: f64,
    /// Search box for [`crate::sizing::optimize_geometry`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry_bounds: Option<GeometryBounds>,
}

/// Default safety factor applied to the required motor torque.
pub const DEFAULT_SAFETY_FACTOR: f64 = 1.5;

impl Default for SizingPrefs {
    fn default() -> Self {
        Self {
            safety_factor: DEFAULT_SAFETY_FACTOR,
            geometry_bounds: None,
        }
    }
}

/// A complete, SI-unit description of one gripping problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub object: ObjectSpec,
    pub contact: ContactModel,
    pub geometry: GripperGeometry,
    pub drivetrain: Drivetrain,
    /// Cantilever model of one finger for the stiffness check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finger: Option<FingerBeam>,
    pub environment: Environment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<AuditLimits>,
    /// Mass of the moving gripper assembly (kg, ≥ 0). Enters only the
    /// linear-actuator force estimate.
    pub gripper_mass_kg: f64,
    /// Peak vertical acceleration during a lift (m/s²). Must stay above
    /// free fall (> −g).
    pub lift_accel_m_s2: f64,
    pub sizing: SizingPrefs,
}

impl Scenario {
    /// Checks every invariant and returns all violations at once.
    pub fn check_invariants(&self) -> Result<(), ValidationErrors> {
        let mut out = Violations::default();
        self.object.check(&mut out);
        self.contact.check(&mut out);
        self.geometry.check(&mut out);
        self.environment.check(&mut out);
        for (i, stage) in self.drivetrain.gear_train.stages.iter().enumerate() {
            stage.check(&mut out, &format!("drivetrain.gear_train.stages[{i}]"));
        }
        self.drivetrain.pwm.check(&mut out, "drivetrain.pwm");
        if let Some(finger) = &self.finger {
            finger.check(&mut out, "finger");
        }
        if let Some(limits) = &self.limits {
            limits.check(&mut out);
        }
        out.require(
            self.gripper_mass_kg >= 0.0 && self.gripper_mass_kg.is_finite(),
            "gripper_mass_kg",
            "must be >= 0",
        );
        out.require(
            self.lift_accel_m_s2.is_finite() && self.lift_accel_m_s2 > -self.environment.g_m_s2,
            "lift_accel_m_s2",
            "must be > -g (free fall leaves nothing to lift)",
        );
        out.require(
            self.sizing.safety_factor >= 1.0 && self.sizing.safety_factor.is_finite(),
            "sizing.safety_factor",
            "must be >= 1",
        );
        if let Some(bounds) = &self.sizing.geometry_bounds {
            bounds.check(&mut out, "sizing.geometry_bounds");
        }
        out.into_result()
    }
}

/// Checks every invariant of `scenario` and passes the value through
/// unchanged. Idempotent: validating an already-valid scenario returns an
/// equal scenario. Never clamps or repairs a value.
pub fn validate_scenario(scenario: Scenario) -> Result<Scenario, ValidationErrors> {
    scenario.check_invariants()?;
    Ok(scenario)
}
