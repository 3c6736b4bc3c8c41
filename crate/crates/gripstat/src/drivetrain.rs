//! Gear-train torque chain, brushed-DC torque-speed line, PWM duty derating,
//! stall-heating estimate, and the linear-actuator lift force.
//!
//! Model choices, all first order:
//!
//! - torque-speed line is linear between `(0, τ_stall)` and `(ω_nl, 0)`; only
//!   the stall point matters for holding a grasp;
//! - PWM at duty `d` scales the average stall torque to `d · τ_stall`, with
//!   the on-phase current taken as stall current (the rotor is stationary
//!   while gripping); the switching frequency is carried in the data model
//!   but does not enter the average;
//! - winding heating is a steady-state lumped thermal resistance driven by
//!   the duty-averaged stall power `d · I_stall² · R_winding`.

use serde::{Deserialize, Serialize};

use crate::model::Violations;

/// Default per-mesh efficiency assumed when a stage omits it.
pub const DEFAULT_GEAR_EFFICIENCY: f64 = 0.9;

/// Default PWM settings when the scenario omits the pwm block.
pub const DEFAULT_PWM_DUTY: f64 = 1.0;
pub const DEFAULT_PWM_FREQUENCY_HZ: f64 = 20_000.0;

/// Errors from the drive-model operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DriveError {
    #[error("speed {speed_rad_s} rad/s outside the motor's 0..={no_load_speed_rad_s} rad/s range")]
    SpeedOutOfRange {
        speed_rad_s: f64,
        no_load_speed_rad_s: f64,
    },
    #[error("lift acceleration {lift_accel_m_s2} m/s² is at or below free fall (-{g_m_s2} m/s²)")]
    FreeFall { lift_accel_m_s2: f64, g_m_s2: f64 },
}

/// One pinion-to-gear mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GearStage {
    pub pinion_teeth: u32,
    pub gear_teeth: u32,
    /// Mesh efficiency (0 < η ≤ 1).
    pub efficiency: f64,
}

impl GearStage {
    /// Torque multiplication of the mesh, `gear_teeth / pinion_teeth`.
    pub fn ratio(&self) -> f64 {
        f64::from(self.gear_teeth) / f64::from(self.pinion_teeth)
    }

    pub(crate) fn check(&self, out: &mut Violations, path: &str) {
        out.require(self.pinion_teeth >= 1, format!("{path}.pinion_teeth"), "must be >= 1");
        out.require(self.gear_teeth >= 1, format!("{path}.gear_teeth"), "must be >= 1");
        out.require(
            self.efficiency > 0.0 && self.efficiency <= 1.0,
            format!("{path}.efficiency"),
            "must be in (0, 1]",
        );
    }
}

/// Ordered gear stages, motor side first. Empty means direct drive.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GearTrain {
    pub stages: Vec<GearStage>,
}

impl GearTrain {
    /// Product of the stage tooth ratios (1 for direct drive).
    pub fn total_ratio(&self) -> f64 {
        self.stages.iter().map(GearStage::ratio).product()
    }

    /// Product of the stage efficiencies (1 for direct drive).
    pub fn total_efficiency(&self) -> f64 {
        self.stages.iter().map(|s| s.efficiency).product()
    }
}

/// Output torque of one stage: `t_in · (gear/pinion) · η`.
pub fn gear_stage_output_torque(input_torque_nm: f64, stage: &GearStage) -> f64 {
    input_torque_nm * stage.ratio() * stage.efficiency
}

/// Torque delivered at the end of the train: the stages folded left over
/// [`gear_stage_output_torque`]. An empty train passes the torque through.
pub fn train_output_torque(input_torque_nm: f64, train: &GearTrain) -> f64 {
    train
        .stages
        .iter()
        .fold(input_torque_nm, gear_stage_output_torque)
}

/// One motor-catalog entry. Torque figures are at the motor's output shaft.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotorSpec {
    pub id: String,
    pub name: String,
    pub rated_voltage_v: f64,
    pub stall_torque_nm: f64,
    pub no_load_speed_rad_s: f64,
    pub stall_current_a: f64,
    pub winding_resistance_ohm: f64,
    /// Steady-state winding-to-ambient thermal resistance (K/W).
    pub thermal_resistance_k_per_w: f64,
    pub max_winding_temp_c: f64,
    pub mass_kg: f64,
    /// Unit cost in whatever currency the catalog is priced in.
    pub cost: f64,
}

impl MotorSpec {
    pub(crate) fn check(&self, out: &mut Violations, path: &str) {
        out.require(!self.id.is_empty(), format!("{path}.id"), "must not be empty");
        let positive: [(&str, f64); 7] = [
            ("rated_voltage_v", self.rated_voltage_v),
            ("stall_torque_nm", self.stall_torque_nm),
            ("no_load_speed_rad_s", self.no_load_speed_rad_s),
            ("stall_current_a", self.stall_current_a),
            ("winding_resistance_ohm", self.winding_resistance_ohm),
            ("thermal_resistance_k_per_w", self.thermal_resistance_k_per_w),
            ("mass_kg", self.mass_kg),
        ];
        for (field, value) in positive {
            out.require(value > 0.0 && value.is_finite(), format!("{path}.{field}"), "must be > 0");
        }
        out.require(
            self.max_winding_temp_c > 25.0 && self.max_winding_temp_c.is_finite(),
            format!("{path}.max_winding_temp_c"),
            "must be > 25 (above typical ambient)",
        );
        out.require(self.cost >= 0.0 && self.cost.is_finite(), format!("{path}.cost"), "must be >= 0");
    }

    /// Checks the catalog-entry invariants, collecting every violation.
    pub fn validate(&self) -> Result<(), crate::model::ValidationErrors> {
        let mut out = Violations::default();
        self.check(&mut out, "motor");
        out.into_result()
    }
}

/// PWM drive settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwmSettings {
    /// On-fraction of each period (0 ≤ duty ≤ 1).
    pub duty: f64,
    pub frequency_hz: f64,
}

impl Default for PwmSettings {
    fn default() -> Self {
        Self {
            duty: DEFAULT_PWM_DUTY,
            frequency_hz: DEFAULT_PWM_FREQUENCY_HZ,
        }
    }
}

impl PwmSettings {
    pub(crate) fn check(&self, out: &mut Violations, path: &str) {
        out.require(
            (0.0..=1.0).contains(&self.duty),
            format!("{path}.duty"),
            "must be in [0, 1]",
        );
        out.require(
            self.frequency_hz > 0.0 && self.frequency_hz.is_finite(),
            format!("{path}.frequency_hz"),
            "must be > 0",
        );
    }
}

/// Torque available at speed `ω` on the linear torque-speed line,
/// `τ_stall · (1 − ω / ω_nl)`.
pub fn motor_torque_at_speed(motor: &MotorSpec, speed_rad_s: f64) -> Result<f64, DriveError> {
    if speed_rad_s < 0.0 || speed_rad_s > motor.no_load_speed_rad_s {
        return Err(DriveError::SpeedOutOfRange {
            speed_rad_s,
            no_load_speed_rad_s: motor.no_load_speed_rad_s,
        });
    }
    Ok(motor.stall_torque_nm * (1.0 - speed_rad_s / motor.no_load_speed_rad_s))
}

/// Average stall torque under PWM excitation, `duty · τ_stall`.
pub fn pwm_effective_stall_torque(motor: &MotorSpec, pwm: &PwmSettings) -> f64 {
    pwm.duty * motor.stall_torque_nm
}

/// Steady-state winding temperature estimate while stalled under PWM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalEstimate {
    /// Duty-averaged dissipation `duty · I_stall² · R_winding` (W).
    pub average_power_w: f64,
    /// `ambient + P · R_thermal` (°C).
    pub steady_temp_c: f64,
    /// True iff the steady temperature stays at or below the winding limit.
    pub feasible: bool,
}

/// Lumped steady-state winding temperature while the motor is stalled and
/// PWM-driven at the given duty.
pub fn stall_winding_temperature(
    motor: &MotorSpec,
    pwm: &PwmSettings,
    ambient_temp_c: f64,
) -> ThermalEstimate {
    let average_power_w =
        pwm.duty * motor.stall_current_a * motor.stall_current_a * motor.winding_resistance_ohm;
    let steady_temp_c = ambient_temp_c + average_power_w * motor.thermal_resistance_k_per_w;
    ThermalEstimate {
        average_power_w,
        steady_temp_c,
        feasible: steady_temp_c <= motor.max_winding_temp_c,
    }
}

/// Force (N) a linear actuator must supply to lift gripper plus object at
/// the given peak vertical acceleration: `(m_gripper + m_object)(g + a)`.
pub fn linear_actuator_force(
    gripper_mass_kg: f64,
    object_mass_kg: f64,
    g_m_s2: f64,
    lift_accel_m_s2: f64,
) -> Result<f64, DriveError> {
    if lift_accel_m_s2 <= -g_m_s2 {
        return Err(DriveError::FreeFall {
            lift_accel_m_s2,
            g_m_s2,
        });
    }
    Ok((gripper_mass_kg + object_mass_kg) * (g_m_s2 + lift_accel_m_s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn stage(pinion: u32, gear: u32, eta: f64) -> GearStage {
        GearStage {
            pinion_teeth: pinion,
            gear_teeth: gear,
            efficiency: eta,
        }
    }

    fn motor(stall_torque: f64) -> MotorSpec {
        MotorSpec {
            id: "test".into(),
            name: "test motor".into(),
            rated_voltage_v: 12.0,
            stall_torque_nm: stall_torque,
            no_load_speed_rad_s: 100.0,
            stall_current_a: 2.0,
            winding_resistance_ohm: 3.0,
            thermal_resistance_k_per_w: 10.0,
            max_winding_temp_c: 120.0,
            mass_kg: 0.2,
            cost: 10.0,
        }
    }

    #[test]
    fn stage_torque_examples() {
        assert_eq!(gear_stage_output_torque(1.0, &stage(12, 48, 1.0)), 4.0);
        assert_eq!(gear_stage_output_torque(1.0, &stage(20, 20, 1.0)), 1.0);
        assert_abs_diff_eq!(gear_stage_output_torque(1.0, &stage(12, 48, 0.9)), 3.6, epsilon = 1e-12);
    }

    #[test]
    fn train_torque_examples() {
        let empty = GearTrain { stages: vec![] };
        assert_eq!(train_output_torque(1.0, &empty), 1.0);

        let two_stage = GearTrain {
            stages: vec![stage(12, 48, 0.9), stage(12, 24, 0.9)],
        };
        assert_abs_diff_eq!(train_output_torque(1.0, &two_stage), 6.48, epsilon = 1e-12);
        assert_eq!(train_output_torque(0.0, &two_stage), 0.0);
    }

    #[test]
    fn torque_speed_line_endpoints_and_midpoint() {
        let m = motor(1.2);
        assert_eq!(motor_torque_at_speed(&m, 0.0).unwrap(), 1.2);
        assert_eq!(motor_torque_at_speed(&m, 100.0).unwrap(), 0.0);
        assert_abs_diff_eq!(motor_torque_at_speed(&m, 50.0).unwrap(), 0.6, epsilon = 1e-12);
        assert!(motor_torque_at_speed(&m, -1.0).is_err());
        assert!(motor_torque_at_speed(&m, 100.1).is_err());
    }

    #[test]
    fn pwm_derating_examples() {
        let m = motor(1.2);
        let at = |duty: f64| {
            pwm_effective_stall_torque(
                &m,
                &PwmSettings {
                    duty,
                    frequency_hz: 1000.0,
                },
            )
        };
        assert_eq!(at(1.0), 1.2);
        assert_eq!(at(0.0), 0.0);
        assert_abs_diff_eq!(at(0.5), 0.6, epsilon = 1e-12);
    }

    #[test]
    fn stall_heating_worked_example() {
        // I = 2 A, Rw = 3 ohm, Rth = 10 K/W, duty 0.5, ambient 25 C -> 85 C
        let m = motor(1.2);
        let pwm = PwmSettings {
            duty: 0.5,
            frequency_hz: 1000.0,
        };
        let est = stall_winding_temperature(&m, &pwm, 25.0);
        assert_eq!(est.average_power_w, 6.0);
        assert_eq!(est.steady_temp_c, 85.0);
        assert!(est.feasible);

        let mut cooler_limit = motor(1.2);
        cooler_limit.max_winding_temp_c = 80.0;
        assert!(!stall_winding_temperature(&cooler_limit, &pwm, 25.0).feasible);
    }

    #[test]
    fn zero_duty_stays_at_ambient() {
        let m = motor(1.2);
        let pwm = PwmSettings {
            duty: 0.0,
            frequency_hz: 1000.0,
        };
        let est = stall_winding_temperature(&m, &pwm, 25.0);
        assert_eq!(est.steady_temp_c, 25.0);
        assert!(est.feasible);
    }

    #[test]
    fn actuator_force_examples() {
        assert_abs_diff_eq!(
            linear_actuator_force(0.8, 2.0, 9.81, 0.0).unwrap(),
            27.468,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            linear_actuator_force(0.8, 2.0, 9.81, 2.0).unwrap(),
            33.068,
            epsilon = 1e-12
        );
        assert_eq!(linear_actuator_force(0.0, 0.0, 9.81, 0.0).unwrap(), 0.0);
        assert!(linear_actuator_force(0.8, 2.0, 9.81, -9.81).is_err());
    }

    #[test]
    fn motor_spec_validation_catches_bad_fields() {
        let mut m = motor(1.2);
        m.stall_torque_nm = -1.0;
        m.max_winding_temp_c = 20.0;
        let err = m.validate().unwrap_err();
        assert!(err.violations.iter().any(|v| v.path == "motor.stall_torque_nm"));
        assert!(err.violations.iter().any(|v| v.path == "motor.max_winding_temp_c"));
    }
}
