//! Output rendering: canonical JSON and a human-oriented text form.
//!
//! The JSON form is byte-stable: keys are sorted, floats are written with a
//! fixed nine-significant-digit scientific notation, negative zero is
//! normalized, and the result ends in one newline. Rendering, parsing the
//! result, and rendering again reproduces the bytes exactly, so outputs can
//! be diffed and checked into fixtures.
//!
//! The text form is for reading, not parsing: every number carries its unit
//! and is shown with six significant digits, trailing zeros trimmed.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::io::FormatError;
use crate::report::{AnalysisReport, FingerCheckReport, MotorSelection};
use crate::sizing::{AuditReport, AuditStatus, GeometryOptimum, MotorChoice};

/// The two output forms every command can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Serializes any value to the canonical JSON form.
pub fn to_stable_json<T: Serialize>(value: &T) -> String {
    let tree = serde_json::to_value(value).expect("value serializes to JSON");
    let mut out = String::new();
    write_value(&mut out, &tree, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(out, n),
        // serde_json's writer produces the escaping
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string encodes")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                indent(out, depth + 1);
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            // serde_json's map is key-ordered (preserve_order is off)
            for (i, (key, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                indent(out, depth + 1);
                out.push_str(&serde_json::to_string(key).expect("key encodes"));
                out.push_str(": ");
                write_value(out, item, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push('}');
        }
    }
}

fn write_number(out: &mut String, n: &serde_json::Number) {
    if let Some(i) = n.as_i64() {
        let _ = write!(out, "{i}");
    } else if let Some(u) = n.as_u64() {
        let _ = write!(out, "{u}");
    } else {
        let f = n.as_f64().expect("number is i64, u64 or f64");
        let f = if f == 0.0 { 0.0 } else { f }; // collapse -0.0
        let _ = write!(out, "{f:.8e}");
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

/// Formats a quantity for the text form: six significant digits, trailing
/// zeros trimmed, scientific notation only for extreme magnitudes.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if !(-7..7).contains(&magnitude) {
        let s = format!("{v:.5e}");
        let (mantissa, exponent) = s.split_once('e').expect("e-notation");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exponent}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Parses a JSON analysis report (e.g. one produced with
/// [`OutputFormat::Json`]) back into a structure.
pub fn parse_report(text: &str) -> Result<AnalysisReport, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Renders the full analysis report.
pub fn render_analysis(report: &AnalysisReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_stable_json(report),
        OutputFormat::Text => text_analysis(report),
    }
}

/// Renders a motor selection.
pub fn render_motor_choice(choice: &MotorChoice, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_stable_json(choice),
        OutputFormat::Text => text_motor_choice(choice),
    }
}

/// Renders a geometry optimum.
pub fn render_geometry_optimum(optimum: &GeometryOptimum, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_stable_json(optimum),
        OutputFormat::Text => text_geometry_optimum(optimum),
    }
}

/// Renders a finger check.
pub fn render_finger_check(report: &FingerCheckReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_stable_json(report),
        OutputFormat::Text => text_finger_check(report),
    }
}

/// Renders a guideline audit.
pub fn render_audit(audit: &AuditReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_stable_json(audit),
        OutputFormat::Text => {
            let mut out = String::new();
            text_audit_section(&mut out, audit);
            out
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn text_analysis(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let s = &report.scenario;
    let shape = match s.object.shape {
        crate::model::Shape::Cuboid => "cuboid",
        crate::model::Shape::Cylinder => "cylinder",
    };

    let _ = writeln!(out, "scenario");
    let _ = writeln!(out, "  object mass = {} kg ({shape})", fmt_sig(s.object.mass_kg));
    if let Some(limit) = s.object.crush_limit_n {
        let _ = writeln!(out, "  crush limit = {} N", fmt_sig(limit));
    }
    let _ = writeln!(out, "  friction coefficient mu = {}", fmt_sig(s.contact.mu));
    let _ = writeln!(out, "  gravity g = {} m/s^2", fmt_sig(s.environment.g_m_s2));
    let _ = writeln!(out, "  moment arm a = {} m", fmt_sig(s.geometry.arm_a_m));
    let _ = writeln!(out, "  moment arm b = {} m", fmt_sig(s.geometry.arm_b_m));
    let _ = writeln!(out, "  finger length = {} m", fmt_sig(s.geometry.finger_length_m));

    let g = &report.grasp;
    let _ = writeln!(out);
    let _ = writeln!(out, "grasp");
    let _ = writeln!(out, "  R = {} N normal force per finger", fmt_sig(g.normal_force_n));
    let _ = writeln!(out, "  T' = {} N·m reaction torque per link", fmt_sig(g.link_torque_nm));
    let _ = writeln!(out, "  T = {} N·m holding torque at the driven gear", fmt_sig(g.holding_torque_nm));
    let _ = writeln!(out, "  geometry feasible: {}", yes_no(g.geometry_feasible));
    let _ = writeln!(out, "  slip margin = {} N", fmt_sig(g.slip_margin_n));
    if let Some(margin) = g.crush_margin_n {
        let _ = writeln!(out, "  crush margin = {} N", fmt_sig(margin));
    }
    let sens = &g.sensitivities;
    let _ = writeln!(out, "  dT/da = {} N·m per m", fmt_sig(sens.dt_da_nm_per_m));
    let _ = writeln!(out, "  dT/db = {} N·m per m", fmt_sig(sens.dt_db_nm_per_m));
    let _ = writeln!(out, "  dT/dmu = {} N·m per unit mu", fmt_sig(sens.dt_dmu_nm));

    let d = &report.drivetrain;
    let _ = writeln!(out);
    let _ = writeln!(out, "drivetrain");
    let _ = writeln!(out, "  safety factor = {}", fmt_sig(d.safety_factor));
    let _ = writeln!(out, "  gear train ratio = {}, efficiency = {}", fmt_sig(d.train_total_ratio), fmt_sig(d.train_total_efficiency));
    let _ = writeln!(out, "  pwm duty = {}", fmt_sig(d.pwm_duty));
    let _ = writeln!(out, "  required motor torque = {} N·m", fmt_sig(d.required_motor_torque_nm));
    let _ = writeln!(out, "  actuator lift force = {} N", fmt_sig(d.actuator_force_n));

    if let Some(check) = &report.structural {
        let _ = writeln!(out);
        let _ = writeln!(out, "finger");
        let _ = writeln!(out, "  tip deflection = {} m under {} N", fmt_sig(check.deflection_m), fmt_sig(g.normal_force_n));
        let _ = writeln!(out, "  tip stiffness = {} N/m", fmt_sig(check.stiffness_n_per_m));
        match (check.deflection_limit_m, check.pass) {
            (Some(limit), Some(ok)) => {
                let _ = writeln!(out, "  deflection limit = {} m, within limit: {}", fmt_sig(limit), yes_no(ok));
            }
            _ => {
                let _ = writeln!(out, "  no deflection limit declared, not checked");
            }
        }
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "motor");
    match &report.motor {
        MotorSelection::Selected { choice } => text_motor_lines(&mut out, choice),
        MotorSelection::Infeasible {
            required_torque_nm,
            best_shortfall_nm,
        } => {
            let _ = writeln!(out, "  no catalog entry qualifies");
            let _ = writeln!(out, "  required torque = {} N·m", fmt_sig(*required_torque_nm));
            let _ = writeln!(out, "  best shortfall = {} N·m", fmt_sig(*best_shortfall_nm));
        }
        MotorSelection::NotRequested => {
            let _ = writeln!(out, "  no catalog supplied, selection skipped");
        }
    }

    let _ = writeln!(out);
    text_audit_section(&mut out, &report.audit);

    let p = &report.provenance;
    if !p.defaults_applied.is_empty() || !p.notes.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "provenance");
        for entry in &p.defaults_applied {
            let _ = writeln!(out, "  default: {entry}");
        }
        for note in &p.notes {
            let _ = writeln!(out, "  note: {note}");
        }
    }
    out
}

fn text_motor_lines(out: &mut String, choice: &MotorChoice) {
    let m = &choice.motor;
    let _ = writeln!(out, "  selected: {} ({})", m.id, m.name);
    let _ = writeln!(out, "  required torque = {} N·m", fmt_sig(choice.required_motor_torque_nm));
    let _ = writeln!(out, "  effective stall torque = {} N·m after pwm derating", fmt_sig(choice.effective_torque_nm));
    let _ = writeln!(out, "  torque margin = {} N·m", fmt_sig(choice.margin_nm));
    let _ = writeln!(out, "  average stall power = {} W", fmt_sig(choice.thermal.average_power_w));
    let _ = writeln!(
        out,
        "  steady winding temperature = {} °C (limit {} °C)",
        fmt_sig(choice.thermal.steady_temp_c),
        fmt_sig(m.max_winding_temp_c)
    );
    let _ = writeln!(out, "  mass = {} kg, cost = {}", fmt_sig(m.mass_kg), fmt_sig(m.cost));
}

fn text_motor_choice(choice: &MotorChoice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "motor selection");
    text_motor_lines(&mut out, choice);
    out
}

fn text_geometry_optimum(optimum: &GeometryOptimum) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "optimal moment arms");
    let _ = writeln!(out, "  a = {} m", fmt_sig(optimum.arm_a_m));
    let _ = writeln!(out, "  b = {} m", fmt_sig(optimum.arm_b_m));
    let _ = writeln!(out, "  T = {} N·m holding torque", fmt_sig(optimum.holding_torque_nm));
    out
}

fn text_finger_check(report: &FingerCheckReport) -> String {
    let mut out = String::new();
    let beam = &report.beam;
    let check = &report.check;
    let _ = writeln!(out, "finger stiffness check");
    let _ = writeln!(
        out,
        "  beam: length = {} m, width = {} m, thickness = {} m",
        fmt_sig(beam.length_m),
        fmt_sig(beam.width_m),
        fmt_sig(beam.thickness_m)
    );
    let _ = writeln!(out, "  young's modulus = {} Pa", fmt_sig(beam.youngs_modulus_pa));
    let _ = writeln!(out, "  section second moment = {} m^4", fmt_sig(beam.second_moment_m4()));
    let _ = writeln!(out, "  tip load = {} N", fmt_sig(report.force_n));
    let _ = writeln!(out, "  tip deflection = {} m", fmt_sig(check.deflection_m));
    let _ = writeln!(out, "  tip stiffness = {} N/m", fmt_sig(check.stiffness_n_per_m));
    match (check.deflection_limit_m, check.pass) {
        (Some(limit), Some(ok)) => {
            let _ = writeln!(out, "  deflection limit = {} m, within limit: {}", fmt_sig(limit), yes_no(ok));
        }
        _ => {
            let _ = writeln!(out, "  no deflection limit declared, not checked");
        }
    }
    out
}

fn text_audit_section(out: &mut String, audit: &AuditReport) {
    let _ = writeln!(out, "audit");
    for entry in &audit.entries {
        let status = match entry.status {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "FAIL",
            AuditStatus::NotEvaluated => "not evaluated",
        };
        let mut details: Vec<String> = Vec::new();
        if let Some(measured) = entry.measured {
            details.push(format!("measured {}", fmt_sig(measured)));
        }
        if let Some(limit) = entry.limit {
            details.push(format!("limit {}", fmt_sig(limit)));
        }
        if !entry.note.is_empty() {
            details.push(entry.note.clone());
        }
        let suffix = if details.is_empty() {
            String::new()
        } else {
            format!(" ({})", details.join("; "))
        };
        let _ = writeln!(out, "  {}. {}: {status}{suffix}", entry.guideline, entry.title);
    }
}
