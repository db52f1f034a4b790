//! Radial two-point solvers on the equimeasurable ball `B_R`.
//!
//! Three forms are covered:
//!
//! * `er_drift`: `-div(L grad z) + a e_r . grad z = g`, integrated in closed
//!   form with the integrating factor `Theta = exp(-int a / L)`, which
//!   reduces the equation to two nested quadratures:
//!   `Theta r^{n-1} L z' = -int_0^r Theta g s^{n-1} ds`, then `z = int_r^R (-z')`.
//! * `abs_gradient_linear`: `-div(L grad v) - a |grad v| = g`. When the
//!   quadrature solution is monotone non-increasing the two forms coincide
//!   (`|v'| = -v'`); otherwise a damped Newton solve with the true
//!   nonlinearity takes over and the report says which path ran.
//! * `semilinear`: `-div(L grad v) - a |v'|^q + delta v = g` with
//!   `delta > 0`, `q in (1, 2]`, via damped Newton on a node-centered
//!   finite-volume system. The coordinate singularity at `r = 0` is handled
//!   by the flux formulation: the flux `r^{n-1} L v'` vanishes at the origin
//!   in every dimension.

use crate::error::Error;
use crate::rearrange::RadialProfile;

/// Default number of radial grid nodes.
pub const RADIAL_POINTS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialForm {
    /// `-div(L grad z) + a e_r . grad z = g`
    ErDrift,
    /// `-div(L grad v) - a |grad v| = g`
    AbsGradientLinear,
    /// `-div(L grad v) - a |v'|^q + delta v = g`
    Semilinear { q: f64, delta: f64 },
}

/// A radial problem on `[0, R]` with Dirichlet data at `R` and a symmetry
/// flux condition at the origin.
#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub dimension: usize,
    pub radius: f64,
    pub lambda: RadialProfile,
    pub gradient_coef: RadialProfile,
    pub rhs: RadialProfile,
    pub form: RadialForm,
    pub grid_points: usize,
}

impl RadialProblem {
    pub fn new(
        dimension: usize,
        radius: f64,
        lambda: RadialProfile,
        gradient_coef: RadialProfile,
        rhs: RadialProfile,
        form: RadialForm,
    ) -> Self {
        Self {
            dimension,
            radius,
            lambda,
            gradient_coef,
            rhs,
            form,
            grid_points: RADIAL_POINTS,
        }
    }

    /// Constant-coefficient convenience constructor.
    pub fn constant(
        dimension: usize,
        radius: f64,
        lambda: f64,
        gradient_coef: f64,
        rhs: f64,
        form: RadialForm,
    ) -> Self {
        let two = |v: f64| RadialProfile::from_fn(dimension, radius, 2, move |_| v);
        Self::new(
            dimension,
            radius,
            two(lambda),
            two(gradient_coef),
            two(rhs),
            form,
        )
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.dimension < 1 {
            return Err(Error::ConfigValidation(
                "radial dimension must be >= 1".into(),
            ));
        }
        if !(self.radius > 0.0) {
            return Err(Error::ConfigValidation("radius must be positive".into()));
        }
        if self.lambda.values().iter().any(|&v| v <= 0.0) {
            return Err(Error::ConfigValidation(
                "lambda must be positive on the grid".into(),
            ));
        }
        if self.gradient_coef.values().iter().any(|&v| v < 0.0) {
            return Err(Error::ConfigValidation(
                "gradient coefficient must be nonnegative".into(),
            ));
        }
        if let RadialForm::Semilinear { q, delta } = self.form {
            if !(delta > 0.0) {
                return Err(Error::ConfigValidation(format!(
                    "semilinear form needs delta > 0, got {delta}"
                )));
            }
            if !(q > 1.0 && q <= 2.0) {
                return Err(Error::ConfigValidation(format!(
                    "semilinear form needs q in (1, 2], got {q}"
                )));
            }
        }
        Ok(())
    }

    /// Quadrature grid: uniform base plus every coefficient breakpoint, so
    /// coefficients given as (near-)step profiles are integrated exactly.
    fn quadrature_grid(&self) -> Vec<f64> {
        let mut grid: Vec<f64> = (0..self.grid_points)
            .map(|i| self.radius * i as f64 / (self.grid_points - 1) as f64)
            .collect();
        for src in [&self.lambda, &self.gradient_coef, &self.rhs] {
            for &r in src.grid() {
                if r > 0.0 && r < self.radius {
                    grid.push(r);
                }
            }
        }
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        grid.dedup_by(|a, b| (*a - *b) < 1e-15 * self.radius);
        grid
    }

    fn uniform_grid(&self) -> Vec<f64> {
        (0..self.grid_points)
            .map(|i| self.radius * i as f64 / (self.grid_points - 1) as f64)
            .collect()
    }
}

/// How a solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionPath {
    Quadrature,
    Newton { iterations: usize },
}

/// A radial solve outcome: the profile, the path taken, and the residual in
/// the form's native metric (flux-identity defect for quadrature paths,
/// max-norm system residual for Newton paths).
#[derive(Debug, Clone)]
pub struct RadialSolve {
    pub profile: RadialProfile,
    pub path: SolutionPath,
    pub residual: f64,
}

const GL5_X: [f64; 5] = [
    0.046910077030668,
    0.230765344947158,
    0.5,
    0.769234655052842,
    0.953089922969332,
];
const GL5_W: [f64; 5] = [
    0.118463442528095,
    0.239314335249683,
    0.284444444444444,
    0.239314335249683,
    0.118463442528095,
];

/// Integrating factor `Theta(r) = exp(-int_0^r a(s)/L(s) ds)` on the
/// problem's quadrature grid. Gauss-Legendre per interval; since the grid
/// contains every coefficient breakpoint the integrand is smooth per piece.
pub fn theta_factor(
    lambda: &RadialProfile,
    gradient_coef: &RadialProfile,
    grid: &[f64],
) -> Vec<f64> {
    let mut theta = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    for (i, &r) in grid.iter().enumerate() {
        if i > 0 {
            let r0 = grid[i - 1];
            let piece: f64 = GL5_X
                .iter()
                .zip(&GL5_W)
                .map(|(&x, &w)| {
                    let s = r0 + x * (r - r0);
                    w * gradient_coef.eval(s) / lambda.eval(s)
                })
                .sum();
            acc += piece * (r - r0);
        }
        theta.push((-acc).exp());
    }
    theta
}

/// `ThetaFactor` as a profile (positive, non-increasing, `Theta(0) = 1`).
pub fn theta_profile(problem: &RadialProblem) -> RadialProfile {
    let grid = problem.quadrature_grid();
    let theta = theta_factor(&problem.lambda, &problem.gradient_coef, &grid);
    RadialProfile::new(problem.dimension, grid, theta).expect("grid is valid")
}

/// Closed-form solve of the `er_drift` form by double quadrature.
pub fn solve_er_drift(problem: &RadialProblem) -> Result<RadialSolve, Error> {
    problem.validate()?;
    let (grid, z, _zp) = er_drift_quadrature(problem);
    let profile = RadialProfile::new(problem.dimension, grid, z)?;
    let residual = flux_identity_defect(problem, &profile);
    Ok(RadialSolve {
        profile,
        path: SolutionPath::Quadrature,
        residual,
    })
}

fn er_drift_quadrature(problem: &RadialProblem) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = problem.dimension as i32;
    let grid = problem.quadrature_grid();
    let m = grid.len();
    let theta = theta_factor(&problem.lambda, &problem.gradient_coef, &grid);
    // inner(r) = int_0^r Theta g s^{n-1} ds, trapezoid on the grid
    let mut inner = vec![0.0; m];
    for i in 1..m {
        let (r0, r1) = (grid[i - 1], grid[i]);
        let f0 = theta[i - 1] * problem.rhs.eval(r0) * r0.powi(n - 1);
        let f1 = theta[i] * problem.rhs.eval(r1) * r1.powi(n - 1);
        inner[i] = inner[i - 1] + 0.5 * (f0 + f1) * (r1 - r0);
    }
    // z'(r) = -inner(r) / (Theta r^{n-1} L)
    let mut zp = vec![0.0; m];
    for i in 1..m {
        let denom = theta[i] * grid[i].powi(n - 1) * problem.lambda.eval(grid[i]);
        zp[i] = -inner[i] / denom;
    }
    // z(r) = int_r^R (-z'), trapezoid, z(R) = 0 exactly
    let mut z = vec![0.0; m];
    for i in (0..m - 1).rev() {
        z[i] = z[i + 1] - 0.5 * (zp[i] + zp[i + 1]) * (grid[i + 1] - grid[i]);
    }
    (grid, z, zp)
}

/// Defect of the flux identity `Theta r^{n-1} L z' + int_0^r Theta g = 0`,
/// with `z'` recovered from the solution by inverting the trapezoid rule
/// (the recovery is exact for profiles produced by `solve_er_drift`).
pub fn flux_identity_defect(problem: &RadialProblem, solution: &RadialProfile) -> f64 {
    let n = problem.dimension as i32;
    let grid = solution.grid();
    let m = grid.len();
    let theta = theta_factor(&problem.lambda, &problem.gradient_coef, grid);
    let mut inner = vec![0.0; m];
    for i in 1..m {
        let (r0, r1) = (grid[i], grid[i - 1]);
        let f1 = theta[i] * problem.rhs.eval(r0) * r0.powi(n - 1);
        let f0 = theta[i - 1] * problem.rhs.eval(r1) * r1.powi(n - 1);
        inner[i] = inner[i - 1] + 0.5 * (f0 + f1) * (r0 - r1);
    }
    // Recover z' from z: z[i] - z[i-1] = (zp[i-1] + zp[i])/2 * dr, zp[0] = 0.
    let z = solution.values();
    let mut zp = vec![0.0; m];
    for i in 1..m {
        let dr = grid[i] - grid[i - 1];
        zp[i] = 2.0 * (z[i] - z[i - 1]) / dr - zp[i - 1];
    }
    let mut worst = 0.0f64;
    let scale = 1.0 + inner.iter().cloned().fold(0.0f64, |a, b| a.max(b.abs()));
    for i in 0..m {
        let flux = theta[i] * grid[i].powi(n - 1) * problem.lambda.eval(grid[i]) * zp[i];
        worst = worst.max((flux + inner[i]).abs());
    }
    worst / scale
}

/// Solve the `abs_gradient_linear` form. Runs the drift quadrature first and
/// keeps it when the solution is monotone non-increasing (the two forms then
/// agree); otherwise falls back to damped Newton with the `|v'|`
/// nonlinearity.
pub fn solve_abs_gradient(problem: &RadialProblem) -> Result<RadialSolve, Error> {
    problem.validate()?;
    let (grid, z, zp) = er_drift_quadrature(problem);
    let monotone = zp.iter().all(|&v| v <= 1e-10);
    if monotone {
        let profile = RadialProfile::new(problem.dimension, grid, z)?;
        let residual = flux_identity_defect(problem, &profile);
        return Ok(RadialSolve {
            profile,
            path: SolutionPath::Quadrature,
            residual,
        });
    }
    let initial = RadialProfile::new(problem.dimension, grid, z)?.resample(problem.grid_points);
    newton_radial(problem, 1.0, 0.0, Some(&initial))
}

/// Damped Newton solve of the semilinear form.
pub fn solve_semilinear_radial(problem: &RadialProblem) -> Result<RadialSolve, Error> {
    problem.validate()?;
    let (q, delta) = match problem.form {
        RadialForm::Semilinear { q, delta } => (q, delta),
        _ => {
            return Err(Error::ConfigValidation(
                "solve_semilinear_radial requires the semilinear form".into(),
            ))
        }
    };
    newton_radial(problem, q, delta, None)
}

/// Node-centered finite-volume residual of
/// `-(r^{n-1} L v')' / r^{n-1} - a |v'|^q + delta v - g = 0`
/// with `v(R) = 0` and vanishing flux at the origin.
struct RadialFdm {
    n: i32,
    grid: Vec<f64>,
    dr: f64,
    lam_mid: Vec<f64>, // L at cell interfaces r_{i+1/2}
    a: Vec<f64>,
    g: Vec<f64>,
    vol: Vec<f64>,
    q: f64,
    delta: f64,
}

impl RadialFdm {
    fn build(problem: &RadialProblem, q: f64, delta: f64) -> Self {
        let grid = problem.uniform_grid();
        let m = grid.len();
        let dr = grid[1] - grid[0];
        let n = problem.dimension as i32;
        let lam_mid: Vec<f64> = (0..m - 1)
            .map(|i| problem.lambda.eval(0.5 * (grid[i] + grid[i + 1])))
            .collect();
        let a: Vec<f64> = grid
            .iter()
            .map(|&r| problem.gradient_coef.eval(r))
            .collect();
        let g: Vec<f64> = grid.iter().map(|&r| problem.rhs.eval(r)).collect();
        // control volumes: [0, dr/2] for node 0, [r - dr/2, r + dr/2] inside
        let vol: Vec<f64> = (0..m - 1)
            .map(|i| {
                let lo = if i == 0 { 0.0 } else { grid[i] - 0.5 * dr };
                let hi = grid[i] + 0.5 * dr;
                (hi.powi(n) - lo.powi(n)) / n as f64
            })
            .collect();
        Self {
            n,
            grid,
            dr,
            lam_mid,
            a,
            g,
            vol,
            q,
            delta,
        }
    }

    fn unknowns(&self) -> usize {
        self.grid.len() - 1
    }

    fn flux(&self, v: &[f64], i: usize) -> f64 {
        // flux through the interface r_{i+1/2}; v[m-1] = 0 implicitly
        let m = self.grid.len();
        let vi = if i < m - 1 { v[i] } else { 0.0 };
        let vnext = if i + 1 < m - 1 { v[i + 1] } else { 0.0 };
        let r_mid = 0.5 * (self.grid[i] + self.grid[i + 1]);
        r_mid.powi(self.n - 1) * self.lam_mid[i] * (vnext - vi) / self.dr
    }

    fn dv_central(&self, v: &[f64], i: usize) -> f64 {
        if i == 0 {
            return 0.0; // symmetry
        }
        let m = self.grid.len();
        let vprev = v[i - 1];
        let vnext = if i + 1 < m - 1 { v[i + 1] } else { 0.0 };
        (vnext - vprev) / (2.0 * self.dr)
    }

    fn residual(&self, v: &[f64], out: &mut [f64]) {
        let k = self.unknowns();
        for i in 0..k {
            let flux_hi = self.flux(v, i);
            let flux_lo = if i == 0 { 0.0 } else { self.flux(v, i - 1) };
            let dv = self.dv_central(v, i);
            out[i] = -(flux_hi - flux_lo) / self.vol[i] - self.a[i] * dv.abs().powf(self.q)
                + self.delta * v[i]
                - self.g[i];
        }
    }

    /// Tridiagonal Jacobian (the central |v'|^q coupling stays within
    /// nearest neighbors).
    fn jacobian(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let k = self.unknowns();
        let mut lower = vec![0.0; k];
        let mut diag = vec![0.0; k];
        let mut upper = vec![0.0; k];
        for i in 0..k {
            let r_hi = 0.5 * (self.grid[i] + self.grid[i + 1]);
            let c_hi = r_hi.powi(self.n - 1) * self.lam_mid[i] / self.dr / self.vol[i];
            diag[i] += c_hi;
            if i + 1 < k {
                upper[i] -= c_hi;
            }
            if i > 0 {
                let r_lo = 0.5 * (self.grid[i - 1] + self.grid[i]);
                let c_lo = r_lo.powi(self.n - 1) * self.lam_mid[i - 1] / self.dr / self.vol[i];
                diag[i] += c_lo;
                lower[i] -= c_lo;
            }
            diag[i] += self.delta;
            if i > 0 {
                let dv = self.dv_central(v, i);
                // d/dv of -a |dv|^q, with |s|^q differentiated as
                // q |s|^{q-1} sign(s) (continuous for q > 1)
                let dpsi = if dv == 0.0 && self.q < 2.0 {
                    0.0
                } else {
                    self.q * dv.abs().powf(self.q - 1.0) * dv.signum()
                };
                let w = -self.a[i] * dpsi / (2.0 * self.dr);
                if i + 1 < k {
                    upper[i] += w;
                }
                lower[i] -= w;
            }
        }
        (lower, diag, upper)
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0f64, f64::max)
}

/// Damped Newton on the finite-volume system. The initial guess is the
/// solution of the linear problem with the gradient coefficient removed,
/// unless the caller supplies one.
fn newton_radial(
    problem: &RadialProblem,
    q: f64,
    delta: f64,
    initial: Option<&RadialProfile>,
) -> Result<RadialSolve, Error> {
    let fdm = RadialFdm::build(problem, q, delta);
    let k = fdm.unknowns();
    let mut v: Vec<f64> = match initial {
        Some(profile) => (0..k).map(|i| profile.eval(fdm.grid[i])).collect(),
        None => {
            // a = 0 linearization: tridiagonal solve
            let zero_a = RadialFdm {
                a: vec![0.0; fdm.a.len()],
                ..RadialFdm::build(problem, q, delta)
            };
            let (lower, diag, upper) = zero_a.jacobian(&vec![0.0; k]);
            crate::sparse::solve_tridiagonal(&lower, &diag, &upper, &fdm.g[..k])?
        }
    };
    let tol = 1e-10;
    let mut res = vec![0.0; k];
    fdm.residual(&v, &mut res);
    let mut res_norm = max_abs(&res);
    let mut trace = vec![res_norm];
    let max_iter = 200;
    for iter in 0..max_iter {
        if res_norm <= tol {
            let profile = extend_to_profile(problem, &fdm, &v)?;
            return Ok(RadialSolve {
                profile,
                path: SolutionPath::Newton { iterations: iter },
                residual: res_norm,
            });
        }
        let (lower, diag, upper) = fdm.jacobian(&v);
        let neg_res: Vec<f64> = res.iter().map(|r| -r).collect();
        let step = crate::sparse::solve_tridiagonal(&lower, &diag, &upper, &neg_res)?;
        // backtracking: accept the first damping that decreases the residual
        let mut lambda = 1.0;
        let mut accepted = false;
        let mut candidate = v.clone();
        let mut cand_res = vec![0.0; k];
        for _ in 0..30 {
            for i in 0..k {
                candidate[i] = v[i] + lambda * step[i];
            }
            fdm.residual(&candidate, &mut cand_res);
            let cand_norm = max_abs(&cand_res);
            if cand_norm < res_norm * (1.0 - 1e-4 * lambda) || cand_norm <= tol {
                v = candidate.clone();
                res.copy_from_slice(&cand_res);
                res_norm = cand_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        trace.push(res_norm);
        if !accepted {
            let tail: Vec<f64> = trace.iter().rev().take(6).rev().copied().collect();
            return Err(Error::NonConvergence {
                iterations: iter + 1,
                trace: tail,
            });
        }
    }
    if res_norm <= tol {
        let profile = extend_to_profile(problem, &fdm, &v)?;
        return Ok(RadialSolve {
            profile,
            path: SolutionPath::Newton {
                iterations: max_iter,
            },
            residual: res_norm,
        });
    }
    let tail: Vec<f64> = trace.iter().rev().take(6).rev().copied().collect();
    Err(Error::NonConvergence {
        iterations: max_iter,
        trace: tail,
    })
}

fn extend_to_profile(
    problem: &RadialProblem,
    fdm: &RadialFdm,
    v: &[f64],
) -> Result<RadialProfile, Error> {
    let mut values = v.to_vec();
    values.push(0.0);
    RadialProfile::new(problem.dimension, fdm.grid.clone(), values)
}

/// Residual of a candidate profile against the problem's native metric.
pub fn radial_residual(profile: &RadialProfile, problem: &RadialProblem) -> f64 {
    match problem.form {
        RadialForm::ErDrift | RadialForm::AbsGradientLinear => {
            flux_identity_defect(problem, profile)
        }
        RadialForm::Semilinear { q, delta } => {
            let fdm = RadialFdm::build(problem, q, delta);
            let k = fdm.unknowns();
            let v: Vec<f64> = (0..k).map(|i| profile.eval(fdm.grid[i])).collect();
            let mut res = vec![0.0; k];
            fdm.residual(&v, &mut res);
            max_abs(&res)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_profile(n: usize, r: f64, f: impl Fn(f64) -> f64) -> RadialProfile {
        RadialProfile::from_fn(n, r, 257, f)
    }

    #[test]
    fn theta_closed_forms() {
        let p = RadialProblem::constant(2, 1.0, 1.0, 0.0, 1.0, RadialForm::ErDrift);
        let theta = theta_profile(&p);
        assert!(theta.values().iter().all(|&v| (v - 1.0).abs() < 1e-14));

        let c = 0.8;
        let p2 = RadialProblem::constant(2, 1.0, 1.0, c, 1.0, RadialForm::ErDrift);
        let theta2 = theta_profile(&p2);
        for (&r, &v) in theta2.grid().iter().zip(theta2.values()) {
            assert!((v - (-c * r).exp()).abs() < 1e-12, "Theta({r}) = {v}");
        }
        assert_eq!(theta2.values()[0], 1.0);
        for w in theta2.values().windows(2) {
            assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn theta_matches_fine_cumulative_oracle() {
        // log Theta against a 16x finer cumulative-sum quadrature.
        let lam = uniform_profile(2, 1.0, |r| 1.0 + 0.5 * r * r);
        let a = uniform_profile(2, 1.0, |r| 0.3 + 0.2 * (3.0 * r).sin().powi(2));
        let prob = RadialProblem::new(
            2,
            1.0,
            lam.clone(),
            a.clone(),
            uniform_profile(2, 1.0, |_| 1.0),
            RadialForm::ErDrift,
        );
        let theta = theta_profile(&prob);
        let fine = 64 * 4096;
        let mut acc = 0.0;
        let mut prev = a.eval(0.0) / lam.eval(0.0);
        let dr = 1.0 / fine as f64;
        let mut oracle = vec![0.0f64];
        for i in 1..=fine {
            let r = i as f64 * dr;
            let v = a.eval(r) / lam.eval(r);
            acc += 0.5 * (prev + v) * dr;
            prev = v;
            oracle.push(acc);
        }
        // evaluate the cumulative oracle at an arbitrary radius by adding the
        // partial trapezoid of the last sub-step
        let oracle_at = |r: f64| -> f64 {
            let idx = ((r / dr).floor() as usize).min(fine - 1);
            let r0 = idx as f64 * dr;
            let f0 = a.eval(r0) / lam.eval(r0);
            let f1 = a.eval(r) / lam.eval(r);
            oracle[idx] + 0.5 * (f0 + f1) * (r - r0)
        };
        for (k, &r) in theta.grid().iter().enumerate().step_by(17) {
            let log_theta = theta.values()[k].ln();
            assert!(
                (log_theta + oracle_at(r)).abs() < 1e-8,
                "log Theta mismatch at r = {r}"
            );
        }
    }

    #[test]
    fn er_drift_poisson_closed_forms() {
        // n = 2: z = (1 - r^2)/4
        let p = RadialProblem::constant(2, 1.0, 1.0, 0.0, 1.0, RadialForm::ErDrift);
        let sol = solve_er_drift(&p).unwrap();
        assert_eq!(sol.path, SolutionPath::Quadrature);
        for (&r, &v) in sol.profile.grid().iter().zip(sol.profile.values()) {
            assert!((v - (1.0 - r * r) / 4.0).abs() < 1e-12, "z({r}) = {v}");
        }
        // n = 1: z = (1 - r^2)/2
        let p1 = RadialProblem::constant(1, 1.0, 1.0, 0.0, 1.0, RadialForm::ErDrift);
        let sol1 = solve_er_drift(&p1).unwrap();
        for (&r, &v) in sol1.profile.grid().iter().zip(sol1.profile.values()) {
            assert!((v - (1.0 - r * r) / 2.0).abs() < 1e-12);
        }
        assert!(sol.residual < 1e-12);
        assert!(sol1.residual < 1e-12);
    }

    /// Second-order central finite differences on a fine grid, assembled and
    /// solved independently of the quadrature route.
    fn er_drift_fdm_oracle(p: &RadialProblem, m: usize) -> RadialProfile {
        let n = p.dimension as i32;
        let dr = p.radius / (m - 1) as f64;
        let grid: Vec<f64> = (0..m).map(|i| i as f64 * dr).collect();
        let k = m - 1;
        let mut lower = vec![0.0; k];
        let mut diag = vec![0.0; k];
        let mut upper = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        for i in 0..k {
            let r = grid[i];
            let vol = {
                let lo = if i == 0 { 0.0 } else { r - 0.5 * dr };
                ((r + 0.5 * dr).powi(n) - lo.powi(n)) / n as f64
            };
            let c_hi = (r + 0.5 * dr).powi(n - 1) * p.lambda.eval(r + 0.5 * dr) / dr / vol;
            diag[i] += c_hi;
            if i + 1 < k {
                upper[i] -= c_hi;
            }
            if i > 0 {
                let c_lo = (r - 0.5 * dr).powi(n - 1) * p.lambda.eval(r - 0.5 * dr) / dr / vol;
                diag[i] += c_lo;
                lower[i] -= c_lo;
            }
            // drift a e_r . grad z with central differences
            if i > 0 {
                let a = p.gradient_coef.eval(r);
                upper[i] += a / (2.0 * dr);
                lower[i] -= a / (2.0 * dr);
            }
            rhs[i] = p.rhs.eval(r);
        }
        let v = crate::sparse::solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        let mut values = v;
        values.push(0.0);
        RadialProfile::new(p.dimension, grid, values).unwrap()
    }

    #[test]
    fn er_drift_generic_matches_fdm_oracle() {
        let p = RadialProblem::new(
            2,
            1.0,
            uniform_profile(2, 1.0, |r| 1.0 + 0.4 * r),
            uniform_profile(2, 1.0, |r| 0.5 + 0.3 * (2.0 * r).cos().powi(2)),
            uniform_profile(2, 1.0, |r| 1.0 + r * r),
            RadialForm::ErDrift,
        );
        let sol = solve_er_drift(&p).unwrap();
        let oracle = er_drift_fdm_oracle(&p, 4097);
        let mut worst = 0.0f64;
        for k in 0..=100 {
            let r = k as f64 / 100.0;
            worst = worst.max((sol.profile.eval(r) - oracle.eval(r)).abs());
        }
        assert!(worst < 1e-4, "quadrature vs FDM oracle {worst}");
    }

    #[test]
    fn abs_gradient_coincides_for_nonnegative_rhs() {
        let p = RadialProblem::new(
            2,
            1.0,
            uniform_profile(2, 1.0, |r| 1.0 + 0.2 * r),
            uniform_profile(2, 1.0, |_| 0.4),
            uniform_profile(2, 1.0, |r| 1.0 + 0.5 * r),
            RadialForm::AbsGradientLinear,
        );
        let sol = solve_abs_gradient(&p).unwrap();
        assert_eq!(sol.path, SolutionPath::Quadrature);
        let drift = solve_er_drift(&RadialProblem {
            form: RadialForm::ErDrift,
            ..p.clone()
        })
        .unwrap();
        for k in 0..=64 {
            let r = k as f64 / 64.0;
            assert!((sol.profile.eval(r) - drift.profile.eval(r)).abs() < 1e-14);
        }
        // a = 0 makes the two forms identical trivially
        let p0 = RadialProblem::constant(2, 1.0, 1.0, 0.0, 1.0, RadialForm::AbsGradientLinear);
        let s0 = solve_abs_gradient(&p0).unwrap();
        let d0 = solve_er_drift(&RadialProblem {
            form: RadialForm::ErDrift,
            ..p0
        })
        .unwrap();
        for k in 0..=64 {
            let r = k as f64 / 64.0;
            assert!((s0.profile.eval(r) - d0.profile.eval(r)).abs() < 1e-14);
        }
    }

    #[test]
    fn abs_gradient_newton_fallback_on_signed_rhs() {
        // rhs changing sign makes the quadrature solution non-monotone; the
        // fallback must report the Newton path and satisfy the true equation.
        let p = RadialProblem::new(
            1,
            1.0,
            uniform_profile(1, 1.0, |_| 1.0),
            uniform_profile(1, 1.0, |_| 0.5),
            uniform_profile(1, 1.0, |r| if r < 0.5 { -2.0 } else { 3.0 }),
            RadialForm::AbsGradientLinear,
        );
        let sol = solve_abs_gradient(&p).unwrap();
        assert!(matches!(sol.path, SolutionPath::Newton { .. }));
        assert!(sol.residual <= 1e-10);
    }

    #[test]
    fn semilinear_cosh_closed_form() {
        // a = 0, delta = 1, g = 1, n = 1, R = 1: v = 1 - cosh(r)/cosh(1).
        let p = RadialProblem::constant(
            1,
            1.0,
            1.0,
            0.0,
            1.0,
            RadialForm::Semilinear { q: 1.5, delta: 1.0 },
        );
        let sol = solve_semilinear_radial(&p).unwrap();
        assert!(sol.residual <= 1e-10);
        let mut worst = 0.0f64;
        for (&r, &v) in sol.profile.grid().iter().zip(sol.profile.values()) {
            let exact = 1.0 - r.cosh() / 1.0f64.cosh();
            worst = worst.max((v - exact).abs());
        }
        assert!(worst < 1e-6, "cosh case error {worst}");
    }

    #[test]
    fn semilinear_zero_data_gives_zero() {
        let p = RadialProblem::constant(
            2,
            1.0,
            1.0,
            0.0,
            0.0,
            RadialForm::Semilinear { q: 1.5, delta: 0.7 },
        );
        let sol = solve_semilinear_radial(&p).unwrap();
        assert!(sol.profile.values().iter().all(|v| v.abs() < 1e-12));
    }

    /// Shooting oracle: integrate the radial ODE from the origin with RK4 on
    /// a fine grid, collapsing the (n-1)/r singularity via its limit at 0,
    /// and adjust v(0) by the secant method until v(R) = 0.
    fn shooting_oracle(
        n: usize,
        radius: f64,
        lambda: f64,
        a: f64,
        q: f64,
        delta: f64,
        g: f64,
    ) -> impl Fn(f64) -> f64 {
        let steps = 40_000usize;
        let dr = radius / steps as f64;
        let n_f = n as f64;
        let integrate = move |v0: f64| -> (f64, Vec<f64>) {
            let mut v = v0;
            let mut w = 0.0f64;
            let mut trace = Vec::with_capacity(steps + 1);
            trace.push(v);
            let deriv = |r: f64, v: f64, w: f64| -> (f64, f64) {
                // w' from: -lambda (w' + (n-1)/r w) - a |w|^q + delta v - g = 0
                if r < 1e-12 {
                    let wp = (delta * v - g) / (n_f * lambda);
                    (w, wp)
                } else {
                    let wp = (delta * v - g - a * w.abs().powf(q)) / lambda - (n_f - 1.0) / r * w;
                    (w, wp)
                }
            };
            for i in 0..steps {
                let r = i as f64 * dr;
                let (k1v, k1w) = deriv(r, v, w);
                let (k2v, k2w) = deriv(r + 0.5 * dr, v + 0.5 * dr * k1v, w + 0.5 * dr * k1w);
                let (k3v, k3w) = deriv(r + 0.5 * dr, v + 0.5 * dr * k2v, w + 0.5 * dr * k2w);
                let (k4v, k4w) = deriv(r + dr, v + dr * k3v, w + dr * k3w);
                v += dr / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
                w += dr / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
                trace.push(v);
            }
            (v, trace)
        };
        // secant iteration on v(0)
        let mut s0 = g / delta.max(1e-9);
        let mut s1 = 0.5 * s0 + 0.1;
        let (mut f0, _) = integrate(s0);
        let (mut f1, _) = integrate(s1);
        for _ in 0..60 {
            if (f1 - f0).abs() < 1e-300 {
                break;
            }
            let s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
            s0 = s1;
            f0 = f1;
            s1 = s2;
            f1 = integrate(s1).0;
            if f1.abs() < 1e-13 {
                break;
            }
        }
        let (_, trace) = integrate(s1);
        move |r: f64| {
            let x = (r / dr).clamp(0.0, steps as f64);
            let i = (x.floor() as usize).min(steps - 1);
            let t = x - i as f64;
            trace[i] * (1.0 - t) + trace[i + 1] * t
        }
    }

    #[test]
    fn semilinear_q15_matches_shooting_oracle() {
        let (lambda, a, q, delta, g) = (1.0, 0.3, 1.5, 0.5, 1.0);
        let p = RadialProblem::constant(2, 1.0, lambda, a, g, RadialForm::Semilinear { q, delta });
        let sol = solve_semilinear_radial(&p).unwrap();
        assert!(sol.residual <= 1e-10);
        let oracle = shooting_oracle(2, 1.0, lambda, a, q, delta, g);
        let mut worst = 0.0f64;
        for (&r, &v) in sol.profile.grid().iter().zip(sol.profile.values()) {
            worst = worst.max((v - oracle(r)).abs());
        }
        assert!(worst < 1e-5, "shooting oracle disagreement {worst}");
    }

    #[test]
    fn residual_metrics_on_exact_and_perturbed_solutions() {
        let p = RadialProblem::constant(2, 1.0, 1.0, 0.0, 1.0, RadialForm::ErDrift);
        let sol = solve_er_drift(&p).unwrap();
        assert!(radial_residual(&sol.profile, &p) < 1e-8);
        // quadratic is annihilated exactly by the semilinear FDM as well
        let psem = RadialProblem::constant(
            2,
            1.0,
            1.0,
            0.0,
            1.0,
            RadialForm::Semilinear { q: 1.5, delta: 1.0 },
        );
        let quad = RadialProfile::from_fn(2, 1.0, RADIAL_POINTS, |r| (1.0 - r * r) / 4.0);
        // residual of the quadratic against -lap v + v = 1 + v - 1 ... check
        // sensitivity instead: the solved profile has tiny residual, a bumped
        // copy does not.
        let solved = solve_semilinear_radial(&psem).unwrap();
        assert!(radial_residual(&solved.profile, &psem) <= 1e-10);
        let bumped = RadialProfile::new(
            2,
            solved.profile.grid().to_vec(),
            solved
                .profile
                .values()
                .iter()
                .enumerate()
                .map(|(i, &v)| if i == 100 { v + 1e-3 } else { v })
                .collect(),
        )
        .unwrap();
        assert!(radial_residual(&bumped, &psem) > 1e-4);
        let _ = quad;
    }

    #[test]
    fn er_drift_monotone_in_the_source() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c: Vec<f64> = (0..6).map(|_| rng.gen_range(0.1..1.0)).collect();
            let lam = uniform_profile(2, 1.0, |r| 0.8 + c[0] * r);
            let a = uniform_profile(2, 1.0, |r| c[1] * (1.0 + (c[2] * 6.0 * r).sin().abs()));
            let g_lo = uniform_profile(2, 1.0, |r| c[3] + (c[4] * 5.0 * r).cos());
            let bump = c[5];
            let g_hi = g_lo.map(|v| v + bump);
            let base =
                RadialProblem::new(2, 1.0, lam.clone(), a.clone(), g_lo, RadialForm::ErDrift);
            let major = RadialProblem::new(2, 1.0, lam, a, g_hi, RadialForm::ErDrift);
            let z_lo = solve_er_drift(&base).unwrap().profile;
            let z_hi = solve_er_drift(&major).unwrap().profile;
            for k in 0..=128 {
                let r = k as f64 / 128.0;
                assert!(z_hi.eval(r) >= z_lo.eval(r) - 1e-12);
            }
        }
    }

    #[test]
    fn semilinear_monotone_under_majorization() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let c: Vec<f64> = (0..6).map(|_| rng.gen_range(0.1..0.8)).collect();
            let lam = uniform_profile(2, 1.0, |r| 1.0 + c[0] * r * r);
            let a = uniform_profile(2, 1.0, |r| c[1] * (1.0 + r));
            let f = uniform_profile(2, 1.0, |r| 0.5 + c[2] * (4.0 * r).cos().powi(2));
            let q = 1.0 + c[3];
            let delta = 0.2 + c[4];
            let base = RadialProblem::new(
                2,
                1.0,
                lam.clone(),
                a.clone(),
                f.clone(),
                RadialForm::Semilinear { q, delta },
            );
            // raise a and f, lower delta: the solution must not decrease
            let major = RadialProblem::new(
                2,
                1.0,
                lam,
                a.map(|v| v + 0.2),
                f.map(|v| v + c[5]),
                RadialForm::Semilinear {
                    q,
                    delta: delta * 0.7,
                },
            );
            let v = solve_semilinear_radial(&base).unwrap().profile;
            let vbar = solve_semilinear_radial(&major).unwrap().profile;
            for k in 0..=128 {
                let r = k as f64 / 128.0;
                assert!(
                    vbar.eval(r) >= v.eval(r) - 1e-8,
                    "majorization violated at r = {r}: {} < {}",
                    vbar.eval(r),
                    v.eval(r)
                );
            }
        }
    }

    #[test]
    fn grid_refinement_improves_analytic_error() {
        let error_with = |points: usize| -> f64 {
            let mut p = RadialProblem::constant(
                1,
                1.0,
                1.0,
                0.0,
                1.0,
                RadialForm::Semilinear { q: 1.5, delta: 1.0 },
            );
            p.grid_points = points;
            let sol = solve_semilinear_radial(&p).unwrap();
            let mut worst = 0.0f64;
            for (&r, &v) in sol.profile.grid().iter().zip(sol.profile.values()) {
                worst = worst.max((v - (1.0 - r.cosh() / 1.0f64.cosh())).abs());
            }
            worst
        };
        let coarse = error_with(65);
        let fine = error_with(129);
        assert!(fine * 3.0 <= coarse, "refinement {coarse} -> {fine}");
    }

    #[test]
    fn hardy_littlewood_transfer_of_rearranged_sources() {
        // Step sources with identical distribution: the solution with the
        // decreasing arrangement dominates every equimeasurable rearrangement.
        // Blocks are aligned to the uniform grid with near-jump ramps, so the
        // step data is carried exactly by the piecewise-linear profiles.
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 1usize;
        let radius = 1.0;
        let blocks = 8usize;
        let sorted_vals: Vec<f64> = (0..blocks).map(|k| 2.0 - 0.25 * k as f64).collect();
        let make_step = |vals: &[f64]| -> RadialProfile {
            // grid with doubled points at the block edges
            let eps = 1e-9;
            let mut grid = vec![0.0];
            let mut values = vec![vals[0]];
            for b in 0..blocks {
                let hi = radius * (b + 1) as f64 / blocks as f64;
                if b + 1 < blocks {
                    grid.push(hi - eps);
                    values.push(vals[b]);
                    grid.push(hi);
                    values.push(vals[b + 1]);
                } else {
                    grid.push(hi);
                    values.push(vals[b]);
                }
            }
            RadialProfile::new(n, grid, values).unwrap()
        };
        let lam = uniform_profile(n, radius, |r| 1.0 + 0.3 * r);
        let a = uniform_profile(n, radius, |r| 0.4 + 0.2 * r);
        let sorted_profile = make_step(&sorted_vals);
        let z_star = solve_er_drift(&RadialProblem::new(
            n,
            radius,
            lam.clone(),
            a.clone(),
            sorted_profile,
            RadialForm::ErDrift,
        ))
        .unwrap()
        .profile;
        for _ in 0..5 {
            let mut perm = sorted_vals.clone();
            perm.shuffle(&mut rng);
            let z_perm = solve_er_drift(&RadialProblem::new(
                n,
                radius,
                lam.clone(),
                a.clone(),
                make_step(&perm),
                RadialForm::ErDrift,
            ))
            .unwrap()
            .profile;
            for k in 0..=256 {
                let r = radius * k as f64 / 256.0;
                assert!(
                    z_perm.eval(r) <= z_star.eval(r) + 1e-6,
                    "transfer violated at r = {r}"
                );
            }
        }
    }

    #[test]
    fn invalid_problems_are_rejected() {
        let p = RadialProblem::constant(2, 1.0, -1.0, 0.0, 1.0, RadialForm::ErDrift);
        assert!(solve_er_drift(&p).is_err());
        let p2 = RadialProblem::constant(
            2,
            1.0,
            1.0,
            0.0,
            1.0,
            RadialForm::Semilinear { q: 1.5, delta: 0.0 },
        );
        assert!(solve_semilinear_radial(&p2).is_err());
        let p3 = RadialProblem::constant(
            2,
            1.0,
            1.0,
            0.0,
            1.0,
            RadialForm::Semilinear { q: 2.5, delta: 1.0 },
        );
        assert!(solve_semilinear_radial(&p3).is_err());
    }
}
