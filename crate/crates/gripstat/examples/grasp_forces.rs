//! Grasp statics for one scenario: required normal force, holding torque,
//! margins, and the sensitivity of the torque to each design input.
//!
//! Run with: `cargo run --example grasp_forces`

use gripstat::grasp::{holding_torque, GraspSolution};
use gripstat::io::parse_scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/s1_scenario.json"
    ))?;
    let scenario = parse_scenario(&text)?.scenario;

    let grasp = GraspSolution::solve(&scenario)?;
    println!(
        "holding a {} kg object at mu = {}:",
        scenario.object.mass_kg, scenario.contact.mu
    );
    println!("  normal force per finger R = {:.4} N", grasp.normal_force_n);
    println!("  reaction torque per link T' = {:.5} N·m", grasp.link_torque_nm);
    println!("  holding torque T = {:.4} N·m", grasp.holding_torque_nm);
    println!("  geometry feasible: {}", grasp.geometry_feasible);
    println!("  slip margin at R: {:.4} N", grasp.slip_margin_n);
    if let Some(margin) = grasp.crush_margin_n {
        println!("  crush margin: {:.4} N", margin);
    }

    // Which input is worth a millimetre or a hundredth of mu?
    let s = grasp.sensitivities;
    println!("\nsensitivities of T:");
    println!("  dT/da = {:.4} N·m per m (longer lower arm helps)", s.dt_da_nm_per_m);
    println!("  dT/db = {:.4} N·m per m (longer upper arm costs)", s.dt_db_nm_per_m);
    println!("  dT/dmu = {:.5} N·m per unit mu", s.dt_dmu_nm);

    // Shrinking b below mu * a makes the friction moment dominate: the
    // torque goes negative and the solver flags the geometry instead of
    // clamping the value.
    let mut locked = scenario;
    locked.geometry.arm_b_m = 0.015;
    let t = holding_torque(
        locked.object.mass_kg,
        locked.contact.mu,
        locked.environment.g_m_s2,
        locked.geometry.arm_a_m,
        locked.geometry.arm_b_m,
    )?;
    println!(
        "\nwith b = {} m (below mu * a = {:.3} m):",
        locked.geometry.arm_b_m,
        locked.contact.mu * locked.geometry.arm_a_m
    );
    println!("  T = {:.4} N·m, feasible: {}", t, t > 0.0);

    Ok(())
}
