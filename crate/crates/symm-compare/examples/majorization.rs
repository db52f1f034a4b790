//! Majorization: replace the symmetrized coefficients with anything larger
//! (and the zeroth-order constant with anything smaller in (0, delta]) and
//! the radial solution can only grow, so it still dominates `u*`.
//!
//! Run with `cargo run --example majorization`.

use symm_compare::scenario::{parse_config, run_scenario};

fn main() -> Result<(), symm_compare::Error> {
    let config = parse_config(
        r#"
name = "majorization_example"
theorem = "T2"
q = 1.5
resolutions = [0.05]
ladder = 128

[domain]
kind = "ellipse"
semi_x = 1.0
semi_y = 0.5

[coefficients]
lambda = "1 + 0.5*x^2"
a = "0.3"
b = "1"
f = "1"

[majorization]
corollary_constants = true
delta_factor = 0.5
"#,
    )?;
    let outcome = run_scenario(&config)?;
    let run = outcome.finest();
    println!(
        "corollary constants: a_bar = {:.4}, f_bar = {:.4}, delta_bar = {:.4}",
        run.report.constants["a_bar"],
        run.report.constants["f_bar"],
        run.report.constants["delta_bar"]
    );
    for name in ["dominance", "majorization_u_star", "majorization_v"] {
        let check = run.report.find_check(name).unwrap();
        println!(
            "  [{}] {:<20} margin {:+.4e}",
            if check.pass { "pass" } else { "FAIL" },
            check.name,
            check.margin
        );
    }
    println!("overall: {}", if run.report.pass { "PASS" } else { "FAIL" });
    Ok(())
}
