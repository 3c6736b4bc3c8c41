//! Closed-form planar statics of a two-finger friction grasp.
//!
//! An object of mass `m` hangs between two opposing fingers, each pressing
//! with normal reaction `R` and carrying friction `μR` at the fingertip.
//! Force balance on the object and moment balance about the finger pivots
//! give the whole model:
//!
//! ```text
//! ΣFy = 0:   2 μ R = m g          →  R  = m g / (2 μ)
//! ΣM  = 0:   T' = R b − μ R a        (one link)
//!            T  = 2 (R b − μ R a)    (torque the drive must hold)
//! ```
//!
//! `a` and `b` are the moment arms of the friction force and the normal
//! reaction about the pivot. Algebraically `T = m g (b − μ a) / μ`; the
//! composed `R → T' → T` pipeline is the canonical route and the closed form
//! is kept as a cross-check.
//!
//! The closed form is valid only under the modeling assumptions baked into
//! the derivation:
//!
//! 1. rigid bodies with point contacts between fingertip and object, planar;
//! 2. linearized (instantaneous) kinematics;
//! 3. quasistatic equilibrium, no inertial or viscous terms;
//! 4. no sliding or rolling at the fingertips;
//! 5. no redundant degrees of freedom and no over-constrained grasp;
//! 6. object and contact state fully known, no in-grasp sensing.
//!
//! None of these conditions is observable from the numeric inputs, so none is
//! enforced at runtime; they are the reader's responsibility.
//!
//! Torques are returned signed and never clamped. A geometry with `b ≤ μ a`
//! yields `T ≤ 0`: the friction moment dominates and the model predicts no
//! opening torque is needed to hold (self-locking). Such solutions carry
//! `geometry_feasible = false` so a configuration mistake cannot hide behind
//! a clamp.

use serde::{Deserialize, Serialize};

use crate::model::Scenario;

/// Errors from the grasp statics operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraspError {
    /// `R = m g / (2 μ)` has no meaning for `μ ≤ 0`.
    #[error("friction coefficient must be > 0, got {mu}")]
    NonPositiveFriction { mu: f64 },
}

/// Normal reaction `R = m g / (2 μ)` (N) each finger must press with so that
/// the two friction forces carry the object's weight.
pub fn required_normal_force(mass_kg: f64, mu: f64, g_m_s2: f64) -> Result<f64, GraspError> {
    if mu <= 0.0 {
        return Err(GraspError::NonPositiveFriction { mu });
    }
    Ok(mass_kg * g_m_s2 / (2.0 * mu))
}

/// Reaction torque `T' = R b − μ R a` (N·m) on one link, signed; negative
/// means the friction moment dominates.
pub fn link_reaction_torque(normal_force_n: f64, mu: f64, arm_a_m: f64, arm_b_m: f64) -> f64 {
    normal_force_n * arm_b_m - mu * normal_force_n * arm_a_m
}

/// Minimum holding torque `T = 2 (R b − μ R a)` (N·m) the drive must apply at
/// the driven gear, with `R` from [`required_normal_force`].
pub fn holding_torque(
    mass_kg: f64,
    mu: f64,
    g_m_s2: f64,
    arm_a_m: f64,
    arm_b_m: f64,
) -> Result<f64, GraspError> {
    let r = required_normal_force(mass_kg, mu, g_m_s2)?;
    Ok(2.0 * link_reaction_torque(r, mu, arm_a_m, arm_b_m))
}

/// Residuals of the two equilibrium conditions for an applied `(R, T)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResidual {
    /// `2 μ R − m g` (N); zero when the applied normal force balances the weight.
    pub force_n: f64,
    /// `T − 2 (R b − μ R a)` (N·m); zero when the applied torque matches the
    /// applied normal force.
    pub moment_nm: f64,
}

/// Evaluates both equilibrium residuals for an applied normal force and
/// torque. Both components are zero exactly when the pair solves the model.
pub fn equilibrium_residual(
    mass_kg: f64,
    mu: f64,
    g_m_s2: f64,
    applied_normal_force_n: f64,
    applied_torque_nm: f64,
    arm_a_m: f64,
    arm_b_m: f64,
) -> EquilibriumResidual {
    EquilibriumResidual {
        force_n: 2.0 * mu * applied_normal_force_n - mass_kg * g_m_s2,
        moment_nm: applied_torque_nm
            - 2.0 * link_reaction_torque(applied_normal_force_n, mu, arm_a_m, arm_b_m),
    }
}

/// Slip margin `2 μ R − m g` (N) at an applied normal force. Non-negative
/// means the grasp holds under the no-slip model.
pub fn slip_margin(mass_kg: f64, mu: f64, g_m_s2: f64, applied_normal_force_n: f64) -> f64 {
    2.0 * mu * applied_normal_force_n - mass_kg * g_m_s2
}

/// Crush margin `crush_limit − R` (N); `None` when the object declares no
/// limit (reported as "not evaluated", never as a pass).
pub fn crush_margin(applied_normal_force_n: f64, crush_limit_n: Option<f64>) -> Option<f64> {
    crush_limit_n.map(|limit| limit - applied_normal_force_n)
}

/// Analytic partial derivatives of the holding torque
/// `T = m g (b − μ a) / μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorqueSensitivities {
    /// `∂T/∂a = −m g` (N·m per m).
    pub dt_da_nm_per_m: f64,
    /// `∂T/∂b = m g / μ` (N·m per m).
    pub dt_db_nm_per_m: f64,
    /// `∂T/∂μ = −m g b / μ²` (N·m per unit of μ).
    pub dt_dmu_nm: f64,
}

/// Analytic sensitivities of the holding torque to the two moment arms and
/// the friction coefficient.
pub fn torque_sensitivities(
    mass_kg: f64,
    mu: f64,
    g_m_s2: f64,
    _arm_a_m: f64,
    arm_b_m: f64,
) -> Result<TorqueSensitivities, GraspError> {
    if mu <= 0.0 {
        return Err(GraspError::NonPositiveFriction { mu });
    }
    let weight = mass_kg * g_m_s2;
    Ok(TorqueSensitivities {
        dt_da_nm_per_m: -weight,
        dt_db_nm_per_m: weight / mu,
        dt_dmu_nm: -weight * arm_b_m / (mu * mu),
    })
}

/// Full solution of the grasp model for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraspSolution {
    /// Required normal reaction `R` (N).
    pub normal_force_n: f64,
    /// Single-link torque `T'` (N·m).
    pub link_torque_nm: f64,
    /// Holding torque `T = 2 T'` (N·m), signed.
    pub holding_torque_nm: f64,
    /// True iff `T > 0`, i.e. `b > μ a`. False marks a self-locking geometry.
    pub geometry_feasible: bool,
    /// Slip margin (N) at the solution's own `R`; zero up to rounding, since
    /// `R` is by construction the minimum force that holds.
    pub slip_margin_n: f64,
    /// `crush_limit − R` (N); `None` when the object declares no limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crush_margin_n: Option<f64>,
    pub sensitivities: TorqueSensitivities,
}

impl GraspSolution {
    /// Solves the grasp model for a validated scenario.
    pub fn solve(scenario: &Scenario) -> Result<Self, GraspError> {
        let m = scenario.object.mass_kg;
        let mu = scenario.contact.mu;
        let g = scenario.environment.g_m_s2;
        let a = scenario.geometry.arm_a_m;
        let b = scenario.geometry.arm_b_m;

        let normal_force_n = required_normal_force(m, mu, g)?;
        let link_torque_nm = link_reaction_torque(normal_force_n, mu, a, b);
        let holding_torque_nm = 2.0 * link_torque_nm;
        Ok(Self {
            normal_force_n,
            link_torque_nm,
            holding_torque_nm,
            geometry_feasible: holding_torque_nm > 0.0,
            slip_margin_n: slip_margin(m, mu, g, normal_force_n),
            crush_margin_n: crush_margin(normal_force_n, scenario.object.crush_limit_n),
            sensitivities: torque_sensitivities(m, mu, g, a, b)?,
        })
    }
}
