//! Solve a gradient-dependent semilinear problem with the fixed-point map:
//! `-u'' - |u'|/2 = 1` on `(-1, 1)`, which has the closed form
//! `u(x) = -2(1 - |x|) + 4(e^{1/2} - e^{|x|/2})`.
//!
//! Run with `cargo run --example fixed_point_semilinear`.

use symm_compare::mesh::CellMatrixField;
use symm_compare::solver::StructuralBounds;
use symm_compare::{build_mesh, fixed_point_solve, DomainSpec, HForm, SemilinearSpec};

fn main() -> Result<(), symm_compare::Error> {
    let mesh = build_mesh(&DomainSpec::interval(-1.0, 1.0, 0.01))?;
    let spec = SemilinearSpec {
        a_matrix: CellMatrixField::identity(&mesh),
        h_form: HForm::Callback {
            eval: Box::new(|_x, _s, p| -0.5 * p[0].hypot(p[1]) - 1.0),
            bounds: StructuralBounds {
                sup_a_plus: 0.5,
                inf_b: 0.0,
                sup_abs_f: 1.0,
                q: 1.0,
            },
        },
    };
    let report = fixed_point_solve(&spec, 0.5, 400, 1e-12)?;
    println!(
        "fixed point: {} iterations, residual {:.2e}, converged = {}",
        report.iterations, report.final_residual, report.converged
    );

    let exact = |x: f64| {
        let x = x.abs();
        -2.0 * (1.0 - x) + 4.0 * ((0.5f64).exp() - (0.5 * x).exp())
    };
    let mut worst = 0.0f64;
    for (i, p) in mesh.nodes().iter().enumerate() {
        worst = worst.max((report.solution.values()[i] - exact(p[0])).abs());
    }
    println!("max error vs the closed form: {worst:.2e}");
    println!(
        "u(0) = {:.6} (exact {:.6})",
        report.solution.max(),
        exact(0.0)
    );
    Ok(())
}
