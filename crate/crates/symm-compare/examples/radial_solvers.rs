//! The three radial solvers on the ball: closed-form checks for the
//! integrating-factor quadrature, the monotone shortcut of the
//! absolute-gradient form, and damped Newton for the semilinear form.
//!
//! Run with `cargo run --example radial_solvers`.

use symm_compare::radial::{
    radial_residual, solve_abs_gradient, solve_er_drift, solve_semilinear_radial, RadialForm,
    RadialProblem, SolutionPath,
};

fn main() -> Result<(), symm_compare::Error> {
    // -div(grad z) = 1 on the unit disk: z = (1 - r^2)/4
    let poisson = RadialProblem::constant(2, 1.0, 1.0, 0.0, 1.0, RadialForm::ErDrift);
    let z = solve_er_drift(&poisson)?;
    let mut worst = 0.0f64;
    for (&r, &v) in z.profile.grid().iter().zip(z.profile.values()) {
        worst = worst.max((v - (1.0 - r * r) / 4.0).abs());
    }
    println!(
        "er-drift Poisson: max error {worst:.2e}, flux defect {:.2e}",
        z.residual
    );

    // absolute-gradient form with a nonnegative source: the quadrature path
    let absg = RadialProblem::constant(2, 1.0, 1.0, 0.4, 1.0, RadialForm::AbsGradientLinear);
    let v = solve_abs_gradient(&absg)?;
    println!(
        "abs-gradient: path {:?}, v(0) = {:.6}",
        v.path,
        v.profile.values()[0]
    );
    assert_eq!(v.path, SolutionPath::Quadrature);

    // semilinear with delta > 0: -v'' + v = 1 on (0, 1), v = 1 - cosh r / cosh 1
    let sem = RadialProblem::constant(
        1,
        1.0,
        1.0,
        0.0,
        1.0,
        RadialForm::Semilinear { q: 1.5, delta: 1.0 },
    );
    let w = solve_semilinear_radial(&sem)?;
    let mut worst = 0.0f64;
    for (&r, &val) in w.profile.grid().iter().zip(w.profile.values()) {
        worst = worst.max((val - (1.0 - r.cosh() / 1.0f64.cosh())).abs());
    }
    println!(
        "semilinear cosh case: path {:?}, max error {worst:.2e}, residual {:.2e}",
        w.path,
        radial_residual(&w.profile, &sem)
    );

    // general coefficients
    let general = RadialProblem::constant(
        2,
        1.0,
        1.0,
        0.3,
        1.0,
        RadialForm::Semilinear { q: 1.5, delta: 0.5 },
    );
    let g = solve_semilinear_radial(&general)?;
    println!(
        "general q = 1.5 solve: path {:?}, v(0) = {:.6}, residual {:.2e}",
        g.path,
        g.profile.values()[0],
        g.residual
    );
    Ok(())
}
