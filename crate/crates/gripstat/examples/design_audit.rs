//! Design-guideline audit: score a scenario against the five gripper
//! guidelines (moving mass, secure grasp, encompassing jaws, no crushing,
//! short stiff fingers). Checks whose limits are not declared come back as
//! "not evaluated", never as silent passes.
//!
//! Run with: `cargo run --example design_audit`

use gripstat::grasp::GraspSolution;
use gripstat::io::parse_scenario;
use gripstat::report::resolved_finger;
use gripstat::sizing::{guideline_audit, AuditStatus};
use gripstat::structural::stiffness_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/s1_scenario.json"
    ))?;
    let scenario = parse_scenario(&text)?.scenario;

    let solution = GraspSolution::solve(&scenario)?;
    let structural =
        resolved_finger(&scenario).map(|beam| stiffness_check(solution.normal_force_n, &beam));
    let audit = guideline_audit(&scenario, &solution, structural.as_ref());

    for entry in &audit.entries {
        let status = match entry.status {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "FAIL",
            AuditStatus::NotEvaluated => "not evaluated",
        };
        println!("{}. {:<35} {}", entry.guideline, entry.title, status);
        if let (Some(measured), Some(limit)) = (entry.measured, entry.limit) {
            println!("     measured {measured} against limit {limit}");
        }
        println!("     {}", entry.note);
    }

    // The same scenario with the crush limit dropped: the deformation check
    // downgrades to "not evaluated" because nothing bounded it.
    let mut undeclared = scenario;
    undeclared.object.crush_limit_n = None;
    let solution = GraspSolution::solve(&undeclared)?;
    let audit = guideline_audit(&undeclared, &solution, structural.as_ref());
    println!(
        "\nwithout a declared crush limit, guideline 4 reports: {:?}",
        audit.entries[3].status
    );

    Ok(())
}
