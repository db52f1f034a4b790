//! The classical comparison: `|u|*` against the solution of
//! `-lap v + alpha_max e_r . grad v = |f|*` on the equimeasurable ball.
//! On the ball with no drift the two profiles coincide.
//!
//! Run with `cargo run --example talenti_demo`.

use symm_compare::scenario::{demo_talenti_config, parse_config, run_scenario};

fn main() -> Result<(), symm_compare::Error> {
    // the built-in equality case
    let demo = demo_talenti_config();
    let outcome = run_scenario(&demo)?;
    let run = outcome.finest();
    println!("ball, no drift: checks");
    for check in &run.report.checks {
        println!(
            "  [{}] {:<22} margin {:+.4e}",
            if check.pass { "pass" } else { "FAIL" },
            check.name,
            check.margin
        );
    }

    // ellipse with drift and reaction
    let ellipse = parse_config(
        r#"
name = "talenti_ellipse_example"
theorem = "talenti"
resolutions = [0.05]

[domain]
kind = "ellipse"
semi_x = 1.0
semi_y = 0.5

[coefficients]
lambda = "1"
b = "0.2"
f = "1"
alpha_x = "0.5"
alpha_y = "0"
"#,
    )?;
    let outcome = run_scenario(&ellipse)?;
    let run = outcome.finest();
    let dom = run.report.find_check("dominance_abs").unwrap();
    println!(
        "\nellipse with drift: dominance margin {:+.4e} -> {}",
        dom.margin,
        if dom.pass { "PASS" } else { "FAIL" }
    );
    Ok(())
}
