//! Cantilever view of one finger: second moment of area, tip deflection
//! under the pinch force, tip stiffness, and the pass/fail check against a
//! deflection limit.
//!
//! Run with: `cargo run --example finger_stiffness`

use gripstat::structural::{stiffness_check, tip_deflection, FingerBeam};

fn main() {
    let beam = FingerBeam {
        length_m: 0.1,
        width_m: 0.01,
        thickness_m: 0.003,
        youngs_modulus_pa: 69e9, // aluminium
        deflection_limit_m: Some(0.006),
    };
    let force_n = 24.525; // the grasp's required normal force

    println!("finger as a tip-loaded cantilever:");
    println!("  section second moment I = {:.3e} m^4", beam.second_moment_m4());
    println!("  tip stiffness k = {:.1} N/m", beam.tip_stiffness_n_per_m());

    let check = stiffness_check(force_n, &beam);
    println!("\nunder the {force_n} N pinch force:");
    println!("  tip deflection = {:.5} m", check.deflection_m);
    println!(
        "  limit = {:?} m, pass = {:?}",
        check.deflection_limit_m, check.pass
    );

    // Deflection scales with the cube of both length and thickness, so the
    // cheapest stiffness win is a shorter or marginally thicker finger.
    println!("\nhow geometry moves the deflection:");
    for (label, changed) in [
        ("as designed", beam),
        (
            "20% shorter",
            FingerBeam {
                length_m: 0.08,
                ..beam
            },
        ),
        (
            "1 mm thicker",
            FingerBeam {
                thickness_m: 0.004,
                ..beam
            },
        ),
    ] {
        println!(
            "  {label:<12} delta = {:.5} m",
            tip_deflection(force_n, &changed)
        );
    }
}
