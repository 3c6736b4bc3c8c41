//! Moment-arm search: evaluate the holding torque on a grid over the
//! declared (a, b) box and keep the feasible point with the smallest torque.
//! The torque is linear in both arms, so the optimum lands on the corner
//! with the longest lower arm and the shortest upper arm.
//!
//! Run with: `cargo run --example geometry_optimization`

use gripstat::io::parse_scenario;
use gripstat::sizing::{optimize_geometry, optimize_geometry_with, SizingRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/s1_scenario.json"
    ))?;
    let scenario = parse_scenario(&text)?.scenario;
    let bounds = scenario
        .sizing
        .geometry_bounds
        .expect("the bundled scenario declares geometry bounds");

    println!(
        "searching a in [{}, {}] m, b in [{}, {}] m on a {} x {} grid",
        bounds.a_min_m, bounds.a_max_m, bounds.b_min_m, bounds.b_max_m, bounds.a_steps, bounds.b_steps
    );

    let request = SizingRequest::from_scenario(scenario, Vec::new());
    let best = optimize_geometry(&request)?;
    println!(
        "unconstrained optimum: a = {} m, b = {} m, T = {:.4} N·m",
        best.arm_a_m, best.arm_b_m, best.holding_torque_nm
    );

    // Real linkages rarely allow arbitrary arm pairs. Intersect the search
    // with any predicate, here a minimum b/a aspect so the jaw keeps a
    // usable opening stroke.
    let constrained = optimize_geometry_with(&request, |a, b| b >= 1.2 * a)?;
    println!(
        "with b >= 1.2 a:       a = {} m, b = {} m, T = {:.4} N·m",
        constrained.arm_a_m, constrained.arm_b_m, constrained.holding_torque_nm
    );

    Ok(())
}
