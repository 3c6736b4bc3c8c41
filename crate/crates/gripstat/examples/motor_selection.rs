//! Motor selection against a CSV catalog: work the holding torque back
//! through the gear train (safety factor included), derate each candidate by
//! PWM duty, drop the ones that would cook their winding at stall, and keep
//! the lightest survivor.
//!
//! Run with: `cargo run --example motor_selection`

use gripstat::drivetrain::{pwm_effective_stall_torque, stall_winding_temperature};
use gripstat::io::{parse_motor_catalog, parse_scenario};
use gripstat::sizing::{required_motor_torque, select_motor, SizingRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let scenario = parse_scenario(&std::fs::read_to_string(format!("{dir}/s1_scenario.json"))?)?
        .scenario;
    let catalog = parse_motor_catalog(&std::fs::read_to_string(format!("{dir}/motors.csv"))?)?;

    let required = required_motor_torque(&scenario, scenario.sizing.safety_factor)?;
    println!(
        "required at the motor shaft: {:.4} N·m (safety factor {})",
        required, scenario.sizing.safety_factor
    );

    println!("\ncandidates at pwm duty {}:", scenario.drivetrain.pwm.duty);
    for motor in &catalog {
        let effective = pwm_effective_stall_torque(motor, &scenario.drivetrain.pwm);
        let thermal = stall_winding_temperature(
            motor,
            &scenario.drivetrain.pwm,
            scenario.environment.ambient_temp_c,
        );
        let verdict = if effective < required {
            "too weak"
        } else if !thermal.feasible {
            "overheats at stall"
        } else {
            "qualifies"
        };
        println!(
            "  {:<11} {:.2} N·m effective, {:>6.1} °C stalled, {:.2} kg: {verdict}",
            motor.id, effective, thermal.steady_temp_c, motor.mass_kg
        );
    }

    let request = SizingRequest::from_scenario(scenario, catalog);
    let choice = select_motor(&request)?;
    println!(
        "\nselected {} ({}): margin {:.4} N·m, {:.1} °C stalled, {} kg, cost {}",
        choice.motor.id,
        choice.motor.name,
        choice.margin_nm,
        choice.thermal.steady_temp_c,
        choice.motor.mass_kg,
        choice.motor.cost
    );

    Ok(())
}
