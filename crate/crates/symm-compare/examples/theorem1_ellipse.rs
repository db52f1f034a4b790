//! Full linear-growth comparison pipeline (T1) on a 2:1 ellipse with
//! variable coefficients: solve, rearrange, symmetrize, solve the radial
//! majorant, and print every check.
//!
//! Run with `cargo run --example theorem1_ellipse`.

use symm_compare::scenario::{parse_config, run_scenario};

fn main() -> Result<(), symm_compare::Error> {
    let config = parse_config(
        r#"
name = "theorem1_ellipse_example"
theorem = "T1"
q = 1.0
resolutions = [0.05]
ladder = 128

[domain]
kind = "ellipse"
semi_x = 1.0
semi_y = 0.5

[coefficients]
lambda = "1 + 0.5*x^2"
a = "0.2*(1 + y^2)"
b = "0"
f = "1 + 0.25*x"
"#,
    )?;
    let outcome = run_scenario(&config)?;
    let run = outcome.finest();
    println!("scenario {} at h = {}", run.report.scenario, run.h);
    for check in &run.report.checks {
        println!(
            "  [{}] {:<28} margin {:+.4e} (tol {:.1e})",
            if check.pass { "pass" } else { "FAIL" },
            check.name,
            check.margin,
            check.tolerance
        );
    }
    for (name, value) in &run.report.constants {
        println!("  {name} = {value:.6}");
    }
    println!("overall: {}", if run.report.pass { "PASS" } else { "FAIL" });
    Ok(())
}
