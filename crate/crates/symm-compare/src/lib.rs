//! Level-set symmetrization of second-order elliptic operators, with numerical
//! comparison of Dirichlet solutions on a planar domain against radially
//! symmetric majorants on the equimeasurable ball.
//!
//! The crate is organized around a pipeline:
//!
//! 1. [`mesh`] — planar domains, conforming triangulations, piecewise-linear
//!    fields, and exact superlevel-set geometry.
//! 2. [`solver`] — P1 Galerkin solves of `-div(A grad u) + H(x, u, grad u) = 0`
//!    with homogeneous Dirichlet data, linear or via a fixed-point map.
//! 3. [`rearrange`] — distribution functions, decreasing Schwarz rearrangement,
//!    and the classical rearrangement inequalities.
//! 4. [`symmetrize`] — the level-set symmetrization of the diffusion and
//!    lower-order coefficients, producing radial profiles and the constructive
//!    constants that drive the comparison.
//! 5. [`radial`] — radial two-point solvers on the equimeasurable ball:
//!    integrating-factor quadrature for drift forms and damped Newton for the
//!    semilinear form.
//! 6. [`scenario`] — config-driven end-to-end verification runs with reports.
//!
//! See the `examples/` directory for one runnable example per capability, and
//! the `symm-compare` binary for the thin command-line front end.

pub mod error;
pub mod expr;
pub mod mesh;
pub mod radial;
pub mod rearrange;
pub mod report;
pub mod scenario;
pub mod solver;
pub mod sparse;
pub mod symmetrize;

pub use error::Error;
pub use mesh::{
    build_mesh, gradient, integrate, superlevel_area, superlevel_integral, CellMatrixField,
    DomainKind, DomainSpec, NodalField, TriMesh,
};
pub use rearrange::{
    distribution_function, hardy_littlewood_margin, lp_norm, polya_szego_margin,
    schwarz_rearrangement, RadialProfile, StepDistribution,
};
pub use solver::{fixed_point_solve, solve_linear, HForm, SemilinearSpec, SolveReport};

/// Lebesgue measure of the unit ball in dimension `n`.
pub fn unit_ball_volume(n: usize) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    match n {
        1 => 2.0,
        2 => std::f64::consts::PI,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

/// Radius of the ball with volume `measure` in dimension `n`.
pub fn equimeasurable_radius(measure: f64, n: usize) -> f64 {
    (measure / unit_ball_volume(n)).powf(1.0 / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes_match_closed_forms() {
        assert_eq!(unit_ball_volume(1), 2.0);
        assert_eq!(unit_ball_volume(2), std::f64::consts::PI);
        assert!((unit_ball_volume(3) - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - std::f64::consts::PI.powi(2) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn radius_inverts_volume() {
        for n in 1..=3 {
            let r = equimeasurable_radius(1.7, n);
            assert!((unit_ball_volume(n) * r.powi(n as i32) - 1.7).abs() < 1e-13);
        }
    }
}
