//! Solve the Dirichlet problem `-lap u = 1` on the unit disk and compare to
//! the radial closed form `(1 - r^2)/4`, then flip the sign of the source to
//! see the weak maximum principle at work.
//!
//! Run with `cargo run --example poisson_disk`.

use symm_compare::mesh::CellMatrixField;
use symm_compare::solver::check_weak_max_principle;
use symm_compare::{build_mesh, solve_linear, DomainSpec, NodalField};

fn main() -> Result<(), symm_compare::Error> {
    let mesh = build_mesh(&DomainSpec::disk(1.0, 0.04))?;
    let a = CellMatrixField::identity(&mesh);
    let f = NodalField::constant(&mesh, 1.0);
    let report = solve_linear(&a, None, None, &f, &mesh)?;
    println!(
        "solved {} unknowns, residual {:.2e}, converged = {}",
        mesh.node_count(),
        report.final_residual,
        report.converged
    );

    let mut worst = 0.0f64;
    for (i, p) in mesh.nodes().iter().enumerate() {
        let exact = (1.0 - p[0] * p[0] - p[1] * p[1]) / 4.0;
        worst = worst.max((report.solution.values()[i] - exact).abs());
    }
    println!("max nodal error vs (1 - r^2)/4: {worst:.2e}");
    println!("max u = {:.6} (exact 0.25)", report.solution.max());

    let negative = solve_linear(&a, None, None, &f.map(|v| -v), &mesh)?;
    println!(
        "with f = -1 the solution stays nonpositive: max u = {:.2e}",
        check_weak_max_principle(&negative.solution)
    );
    Ok(())
}
