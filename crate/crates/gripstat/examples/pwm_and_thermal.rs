//! DC-motor drive behaviour: the linear torque-speed line, average torque
//! under PWM, and the steady-state winding temperature while stalled.
//!
//! Run with: `cargo run --example pwm_and_thermal`

use gripstat::drivetrain::{
    motor_torque_at_speed, pwm_effective_stall_torque, stall_winding_temperature, MotorSpec,
    PwmSettings,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let motor = MotorSpec {
        id: "demo".into(),
        name: "demo 12 V motor".into(),
        rated_voltage_v: 12.0,
        stall_torque_nm: 2.0,
        no_load_speed_rad_s: 300.0,
        stall_current_a: 2.0,
        winding_resistance_ohm: 2.5,
        thermal_resistance_k_per_w: 10.0,
        max_winding_temp_c: 100.0,
        mass_kg: 0.18,
        cost: 14.0,
    };
    motor.validate()?;

    println!("torque-speed line of {} ({}):", motor.id, motor.name);
    for speed in [0.0, 75.0, 150.0, 225.0, 300.0] {
        let torque = motor_torque_at_speed(&motor, speed)?;
        println!("  at {:>5.1} rad/s: {:.3} N·m", speed, torque);
    }

    println!("\naverage stall torque under PWM:");
    for duty in [1.0, 0.8, 0.6, 0.3, 0.0] {
        let pwm = PwmSettings {
            duty,
            frequency_hz: 20_000.0,
        };
        println!(
            "  duty {:.1}: {:.2} N·m",
            duty,
            pwm_effective_stall_torque(&motor, &pwm)
        );
    }

    // Average stalled power is duty * I_stall^2 * R, so halving the duty
    // halves the heat load and brings the steady temperature down with it.
    println!("\nstalled winding temperature at 25 °C ambient:");
    for duty in [1.0, 0.6, 0.3] {
        let pwm = PwmSettings {
            duty,
            frequency_hz: 20_000.0,
        };
        let thermal = stall_winding_temperature(&motor, &pwm, 25.0);
        println!(
            "  duty {:.1}: {:.1} W -> {:.1} °C (limit {:.0} °C) {}",
            duty,
            thermal.average_power_w,
            thermal.steady_temp_c,
            motor.max_winding_temp_c,
            if thermal.feasible { "ok" } else { "OVER LIMIT" }
        );
    }

    Ok(())
}
