//! Cantilever stiffness check for the gripper fingers.
//!
//! A finger is modeled as a rectangular cantilever fixed at the pivot and
//! point-loaded at the tip, bending about its weak axis (the thickness
//! direction). End-load Euler-Bernoulli closed forms:
//!
//! ```text
//! I = w t³ / 12        δ = F L³ / (3 E I)        k = 3 E I / L³
//! ```
//!
//! Curved fingers are treated as straight equivalents; shear deformation,
//! buckling, and fatigue are out of scope.

use serde::{Deserialize, Serialize};

use crate::model::Violations;

/// Young's modulus of aluminium (Pa), the default finger material.
pub const ALUMINIUM_YOUNGS_MODULUS_PA: f64 = 69e9;

/// Rectangular cantilever model of one finger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FingerBeam {
    /// Free length from the pivot to the load point (m).
    pub length_m: f64,
    /// Section width (m), perpendicular to the bending direction.
    pub width_m: f64,
    /// Section thickness in the bending direction (m).
    pub thickness_m: f64,
    pub youngs_modulus_pa: f64,
    /// Allowable tip deflection (m). Absent means the check reports
    /// "not evaluated".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deflection_limit_m: Option<f64>,
}

impl FingerBeam {
    pub(crate) fn check(&self, out: &mut Violations, path: &str) {
        out.require(self.length_m > 0.0 && self.length_m.is_finite(), format!("{path}.length_m"), "must be > 0");
        out.require(self.width_m > 0.0 && self.width_m.is_finite(), format!("{path}.width_m"), "must be > 0");
        out.require(
            self.thickness_m > 0.0 && self.thickness_m.is_finite(),
            format!("{path}.thickness_m"),
            "must be > 0",
        );
        out.require(
            self.youngs_modulus_pa > 0.0 && self.youngs_modulus_pa.is_finite(),
            format!("{path}.youngs_modulus_pa"),
            "must be > 0",
        );
        if let Some(limit) = self.deflection_limit_m {
            out.require(
                limit > 0.0 && limit.is_finite(),
                format!("{path}.deflection_limit_m"),
                "must be > 0",
            );
        }
    }

    /// Second moment of area of the rectangular section (m⁴).
    pub fn second_moment_m4(&self) -> f64 {
        rect_second_moment(self.width_m, self.thickness_m)
    }

    /// Tip stiffness `3 E I / L³` (N/m).
    pub fn tip_stiffness_n_per_m(&self) -> f64 {
        3.0 * self.youngs_modulus_pa * self.second_moment_m4() / self.length_m.powi(3)
    }
}

/// `I = w t³ / 12` for a rectangle bending about the t direction (m⁴).
pub fn rect_second_moment(width_m: f64, thickness_m: f64) -> f64 {
    width_m * thickness_m.powi(3) / 12.0
}

/// Tip deflection `F L³ / (3 E I)` under an end load (m).
pub fn tip_deflection(force_n: f64, beam: &FingerBeam) -> f64 {
    force_n * beam.length_m.powi(3) / (3.0 * beam.youngs_modulus_pa * beam.second_moment_m4())
}

/// Result of [`stiffness_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StiffnessCheck {
    pub deflection_m: f64,
    pub stiffness_n_per_m: f64,
    /// The limit the deflection was judged against, echoed for reporting.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deflection_limit_m: Option<f64>,
    /// `Some(deflection ≤ limit)` when a limit exists; `None` means the
    /// check was not evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

/// Evaluates tip deflection and stiffness under an end load and, when the
/// beam declares a deflection limit, whether the deflection stays within it.
pub fn stiffness_check(force_n: f64, beam: &FingerBeam) -> StiffnessCheck {
    let deflection_m = tip_deflection(force_n, beam);
    StiffnessCheck {
        deflection_m,
        stiffness_n_per_m: beam.tip_stiffness_n_per_m(),
        deflection_limit_m: beam.deflection_limit_m,
        pass: beam.deflection_limit_m.map(|limit| deflection_m <= limit),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn beam(limit: Option<f64>) -> FingerBeam {
        FingerBeam {
            length_m: 0.1,
            width_m: 0.01,
            thickness_m: 0.003,
            youngs_modulus_pa: 69e9,
            deflection_limit_m: limit,
        }
    }

    #[test]
    fn second_moment_examples() {
        assert_abs_diff_eq!(rect_second_moment(0.01, 0.003), 2.25e-11, epsilon = 1e-24);
        assert_relative_eq!(
            rect_second_moment(0.02, 0.006),
            8.0 * rect_second_moment(0.02, 0.003),
            max_relative = 1e-12
        );
        assert_abs_diff_eq!(rect_second_moment(1.0, 1.0), 1.0 / 12.0);
    }

    #[test]
    fn tip_deflection_examples() {
        // 10 N on a 0.1 m aluminium finger, 10 mm x 3 mm section: 0.01 / 4.6575 m
        let d = tip_deflection(10.0, &beam(None));
        assert_relative_eq!(d, 0.01 / 4.6575, max_relative = 1e-12);
        assert_abs_diff_eq!(d, 2.1471e-3, epsilon = 1e-7);

        assert_eq!(tip_deflection(0.0, &beam(None)), 0.0);

        let mut doubled = beam(None);
        doubled.length_m *= 2.0;
        assert_relative_eq!(tip_deflection(10.0, &doubled), 8.0 * d, max_relative = 1e-12);
    }

    #[test]
    fn stiffness_check_thresholds() {
        let passes = stiffness_check(10.0, &beam(Some(0.005)));
        assert_eq!(passes.pass, Some(true));
        assert_relative_eq!(passes.deflection_m, 2.147e-3, max_relative = 1e-3);

        let fails = stiffness_check(10.0, &beam(Some(0.001)));
        assert_eq!(fails.pass, Some(false));

        let unchecked = stiffness_check(10.0, &beam(None));
        assert_eq!(unchecked.pass, None);
    }

    #[test]
    fn deflection_times_stiffness_recovers_force() {
        let check = stiffness_check(10.0, &beam(None));
        assert_relative_eq!(
            check.deflection_m * check.stiffness_n_per_m,
            10.0,
            max_relative = 1e-12
        );
    }
}
