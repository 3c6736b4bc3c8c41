//! Inverse problems over the grasp and drive models: required motor torque
//! through the gear train, catalog motor selection, moment-arm grid
//! optimization, and the five-point design-guideline audit.
//!
//! Everything here is deterministic. Motor selection and the geometry search
//! break ties with total orders, so the results are reproducible bit for bit
//! and easy to check against brute-force oracles.

use serde::{Deserialize, Serialize};

use crate::drivetrain::{pwm_effective_stall_torque, stall_winding_temperature, MotorSpec, ThermalEstimate};
use crate::grasp::{holding_torque, GraspError, GraspSolution};
use crate::model::{Scenario, Violations};
use crate::structural::StiffnessCheck;

/// Errors from the sizing operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SizingError {
    /// `b ≤ μ a`: the friction moment dominates and the model predicts no
    /// opening torque is needed to hold, so there is nothing to size a motor
    /// against.
    #[error(
        "grasp geometry infeasible: holding torque {holding_torque_nm} N·m is not positive \
         (arm b <= mu * arm a; friction moment dominates, the model predicts no opening \
         torque is needed to hold)"
    )]
    InfeasibleGeometry { holding_torque_nm: f64 },
    /// No catalog entry satisfies both the torque and the thermal filter.
    /// `best_shortfall_nm` is the required torque minus the strongest
    /// PWM-derated entry; zero or negative means some entry had the torque
    /// but failed the winding-temperature check.
    #[error(
        "no motor in the catalog qualifies: required {required_torque_nm} N·m at the shaft, \
         best shortfall {best_shortfall_nm} N·m"
    )]
    NoFeasibleMotor {
        required_torque_nm: f64,
        best_shortfall_nm: f64,
    },
    #[error("motor catalog is empty")]
    EmptyCatalog,
    #[error("no grid point in the geometry box satisfies the feasibility constraint")]
    NoFeasiblePoint,
    #[error("scenario declares no sizing.geometry_bounds to search")]
    MissingGeometryBounds,
    #[error(transparent)]
    Grasp(#[from] GraspError),
}

/// Search box for the moment-arm optimization, inclusive on all four edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryBounds {
    pub a_min_m: f64,
    pub a_max_m: f64,
    pub b_min_m: f64,
    pub b_max_m: f64,
    /// Grid points along the `a` axis (≥ 2, endpoints included).
    pub a_steps: usize,
    /// Grid points along the `b` axis (≥ 2, endpoints included).
    pub b_steps: usize,
}

impl GeometryBounds {
    pub(crate) fn check(&self, out: &mut Violations, path: &str) {
        out.require(
            self.a_min_m > 0.0 && self.a_min_m.is_finite(),
            format!("{path}.a_min_m"),
            "must be > 0",
        );
        out.require(
            self.b_min_m > 0.0 && self.b_min_m.is_finite(),
            format!("{path}.b_min_m"),
            "must be > 0",
        );
        out.require(
            self.a_max_m.is_finite() && self.a_min_m < self.a_max_m,
            format!("{path}.a_max_m"),
            "must be > a_min_m",
        );
        out.require(
            self.b_max_m.is_finite() && self.b_min_m < self.b_max_m,
            format!("{path}.b_max_m"),
            "must be > b_min_m",
        );
        out.require(self.a_steps >= 2, format!("{path}.a_steps"), "must be >= 2");
        out.require(self.b_steps >= 2, format!("{path}.b_steps"), "must be >= 2");
    }
}

/// `i`-th of `steps` grid points spanning `[min, max]`. Endpoints are
/// returned exactly so corner optima compare equal to the bounds.
pub fn grid_point(min: f64, max: f64, steps: usize, i: usize) -> f64 {
    debug_assert!(steps >= 2 && i < steps);
    if i == 0 {
        min
    } else if i == steps - 1 {
        max
    } else {
        min + (i as f64) * (max - min) / ((steps - 1) as f64)
    }
}

/// One complete sizing problem: a scenario, the torque margin demanded, the
/// catalog to pick from, and optionally a geometry box to search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizingRequest {
    pub scenario: Scenario,
    /// Multiplier on the holding torque (≥ 1).
    pub safety_factor: f64,
    pub catalog: Vec<MotorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry_bounds: Option<GeometryBounds>,
}

impl SizingRequest {
    /// Builds a request from a scenario's own sizing preferences.
    pub fn from_scenario(scenario: Scenario, catalog: Vec<MotorSpec>) -> Self {
        let safety_factor = scenario.sizing.safety_factor;
        let geometry_bounds = scenario.sizing.geometry_bounds;
        Self {
            scenario,
            safety_factor,
            catalog,
            geometry_bounds,
        }
    }
}

/// Torque the motor must produce at its own shaft so that, after the gear
/// train's ratio and mesh losses, `safety_factor × T` arrives at the driven
/// gear: `sf · T / Π(ratioᵢ · ηᵢ)`.
pub fn required_motor_torque(scenario: &Scenario, safety_factor: f64) -> Result<f64, SizingError> {
    let t = holding_torque(
        scenario.object.mass_kg,
        scenario.contact.mu,
        scenario.environment.g_m_s2,
        scenario.geometry.arm_a_m,
        scenario.geometry.arm_b_m,
    )?;
    if t <= 0.0 {
        return Err(SizingError::InfeasibleGeometry {
            holding_torque_nm: t,
        });
    }
    let train = &scenario.drivetrain.gear_train;
    Ok(safety_factor * t / (train.total_ratio() * train.total_efficiency()))
}

/// The motor picked by [`select_motor`] and the numbers that justify it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotorChoice {
    pub motor: MotorSpec,
    /// Shaft torque demanded of the motor, safety factor included (N·m).
    pub required_motor_torque_nm: f64,
    /// PWM-derated stall torque of the chosen motor (N·m).
    pub effective_torque_nm: f64,
    pub thermal: ThermalEstimate,
    /// `effective − required` (N·m), ≥ 0 by construction.
    pub margin_nm: f64,
}

/// Selects, among catalog entries whose PWM-derated stall torque covers the
/// required shaft torque and whose stalled winding stays within its
/// temperature limit, the one minimizing `(mass, cost, id)`.
pub fn select_motor(request: &SizingRequest) -> Result<MotorChoice, SizingError> {
    let required = required_motor_torque(&request.scenario, request.safety_factor)?;
    if request.catalog.is_empty() {
        return Err(SizingError::EmptyCatalog);
    }
    let pwm = &request.scenario.drivetrain.pwm;
    let ambient = request.scenario.environment.ambient_temp_c;

    let mut best: Option<(&MotorSpec, f64, ThermalEstimate)> = None;
    let mut strongest_effective = f64::NEG_INFINITY;
    for motor in &request.catalog {
        let effective = pwm_effective_stall_torque(motor, pwm);
        strongest_effective = strongest_effective.max(effective);
        if effective < required {
            continue;
        }
        let thermal = stall_winding_temperature(motor, pwm, ambient);
        if !thermal.feasible {
            continue;
        }
        let better = match &best {
            None => true,
            Some((incumbent, _, _)) => {
                (motor.mass_kg, motor.cost, motor.id.as_str())
                    < (incumbent.mass_kg, incumbent.cost, incumbent.id.as_str())
            }
        };
        if better {
            best = Some((motor, effective, thermal));
        }
    }

    match best {
        Some((motor, effective_torque_nm, thermal)) => Ok(MotorChoice {
            motor: motor.clone(),
            required_motor_torque_nm: required,
            effective_torque_nm,
            thermal,
            margin_nm: effective_torque_nm - required,
        }),
        None => Err(SizingError::NoFeasibleMotor {
            required_torque_nm: required,
            best_shortfall_nm: required - strongest_effective,
        }),
    }
}

/// The grid point found by [`optimize_geometry`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryOptimum {
    pub arm_a_m: f64,
    pub arm_b_m: f64,
    pub holding_torque_nm: f64,
}

/// Exhaustively evaluates the holding torque on the bounds grid and returns
/// the feasible point with the smallest torque. Feasibility is `b > μ a`.
/// Ties go to the smaller `b`, then the smaller `a`.
pub fn optimize_geometry(request: &SizingRequest) -> Result<GeometryOptimum, SizingError> {
    optimize_geometry_with(request, |_, _| true)
}

/// Like [`optimize_geometry`] but with an extra feasibility predicate
/// `keep(a, b)` intersected with the built-in `b > μ a` constraint.
pub fn optimize_geometry_with<F>(
    request: &SizingRequest,
    keep: F,
) -> Result<GeometryOptimum, SizingError>
where
    F: Fn(f64, f64) -> bool,
{
    let bounds = request
        .geometry_bounds
        .as_ref()
        .ok_or(SizingError::MissingGeometryBounds)?;
    let scenario = &request.scenario;
    let m = scenario.object.mass_kg;
    let mu = scenario.contact.mu;
    let g = scenario.environment.g_m_s2;

    let mut best: Option<GeometryOptimum> = None;
    for ai in 0..bounds.a_steps {
        let a = grid_point(bounds.a_min_m, bounds.a_max_m, bounds.a_steps, ai);
        for bi in 0..bounds.b_steps {
            let b = grid_point(bounds.b_min_m, bounds.b_max_m, bounds.b_steps, bi);
            if b <= mu * a || !keep(a, b) {
                continue;
            }
            let t = holding_torque(m, mu, g, a, b)?;
            let better = match &best {
                None => true,
                Some(incumbent) => {
                    (t, b, a)
                        < (
                            incumbent.holding_torque_nm,
                            incumbent.arm_b_m,
                            incumbent.arm_a_m,
                        )
                }
            };
            if better {
                best = Some(GeometryOptimum {
                    arm_a_m: a,
                    arm_b_m: b,
                    holding_torque_nm: t,
                });
            }
        }
    }
    best.ok_or(SizingError::NoFeasiblePoint)
}

/// Outcome of one audit entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Pass,
    Fail,
    NotEvaluated,
}

/// One of the five design-guideline checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditEntry {
    /// Guideline number, 1 through 5.
    pub guideline: u8,
    pub title: String,
    pub status: AuditStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    pub note: String,
}

/// The five guideline entries, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
}

fn pass_fail(ok: bool) -> AuditStatus {
    if ok {
        AuditStatus::Pass
    } else {
        AuditStatus::Fail
    }
}

/// Checks the scenario against the five design guidelines:
///
/// 1. keep the moving gripper mass down (`gripper_mass_kg ≤ limit`);
/// 2. hold securely (slip margin ≥ 0 at the applied normal force);
/// 3. encompass the object (echoes the declared flag; the planar
///    point-contact model cannot derive it);
/// 4. do not deform the object (normal force within its crush limit);
/// 5. keep the fingers short and stiff (length within limit and the
///    cantilever check passing).
///
/// Any limit a guideline needs that the scenario does not declare makes that
/// entry "not evaluated"; nothing is ever assumed to pass.
pub fn guideline_audit(
    scenario: &Scenario,
    solution: &GraspSolution,
    structural: Option<&StiffnessCheck>,
) -> AuditReport {
    let limits = scenario.limits.clone().unwrap_or_default();

    let gripper_mass = AuditEntry {
        guideline: 1,
        title: "gripper mass within limit".into(),
        status: match limits.max_gripper_mass_kg {
            Some(limit) => pass_fail(scenario.gripper_mass_kg <= limit),
            None => AuditStatus::NotEvaluated,
        },
        measured: Some(scenario.gripper_mass_kg),
        limit: limits.max_gripper_mass_kg,
        note: match limits.max_gripper_mass_kg {
            Some(_) => "lighter moving assemblies allow faster acceleration".into(),
            None => "no limits.max_gripper_mass_kg declared".into(),
        },
    };

    let secure = AuditEntry {
        guideline: 2,
        title: "secure grasp".into(),
        status: pass_fail(solution.slip_margin_n >= 0.0),
        measured: Some(solution.slip_margin_n),
        limit: Some(0.0),
        note: "secure is read as slip margin >= 0 N at the applied normal force".into(),
    };

    let encompassing = AuditEntry {
        guideline: 3,
        title: "object encompassed by the jaws".into(),
        status: match limits.encompassing {
            Some(flag) => pass_fail(flag),
            None => AuditStatus::NotEvaluated,
        },
        measured: None,
        limit: None,
        note: match limits.encompassing {
            Some(flag) => format!(
                "echoes the declared limits.encompassing = {flag}; not derivable from the \
                 planar point-contact model"
            ),
            None => "no limits.encompassing declared".into(),
        },
    };

    let crush = AuditEntry {
        guideline: 4,
        title: "grasp without deformation".into(),
        status: match solution.crush_margin_n {
            Some(margin) => pass_fail(margin >= 0.0),
            None => AuditStatus::NotEvaluated,
        },
        measured: Some(solution.normal_force_n),
        limit: scenario.object.crush_limit_n,
        note: match solution.crush_margin_n {
            Some(margin) => format!("crush margin {} N", crate::render::fmt_sig(margin)),
            None => "no object.crush_limit_n declared".into(),
        },
    };

    let length_limit = limits.max_finger_length_m;
    let stiffness_pass = structural.and_then(|s| s.pass);
    let finger = AuditEntry {
        guideline: 5,
        title: "finger length and stiffness".into(),
        status: match (length_limit, stiffness_pass) {
            (Some(limit), Some(stiff_ok)) => {
                pass_fail(scenario.geometry.finger_length_m <= limit && stiff_ok)
            }
            _ => AuditStatus::NotEvaluated,
        },
        measured: Some(scenario.geometry.finger_length_m),
        limit: length_limit,
        note: match (length_limit, stiffness_pass, structural) {
            (Some(_), Some(_), Some(s)) => format!(
                "tip deflection {} m under the required normal force, limit {} m",
                crate::render::fmt_sig(s.deflection_m),
                crate::render::fmt_sig(s.deflection_limit_m.unwrap_or(f64::NAN))
            ),
            (None, _, _) => "no limits.max_finger_length_m declared".into(),
            (_, _, None) => "no finger beam declared, stiffness not evaluated".into(),
            (_, None, Some(_)) => "no deflection limit declared, stiffness not evaluated".into(),
        },
    };

    AuditReport {
        entries: vec![gripper_mass, secure, encompassing, crush, finger],
    }
}
