//! P1 Galerkin solver for `-div(A grad u) + H(x, u, grad u) = 0` with
//! homogeneous Dirichlet data.
//!
//! Affine forms `H = alpha . grad u + b u - f` are solved directly. General
//! forms go through the fixed-point map `T`: given an iterate `v`, the next
//! candidate solves the linear problem `-div(A grad u) = -H(x, v, grad v)`,
//! and iterates are relaxed with a factor `theta`.
//!
//! The gradient-dependent terms are discretized without stabilization;
//! scenario drivers keep the mesh Peclet number below one so no artificial
//! diffusion pollutes the comparison margins.

use std::sync::Arc;

use crate::error::Error;
use crate::mesh::{gradient_at_nodes, CellMatrixField, NodalField, TriMesh};
use crate::sparse::{solve_bicgstab, solve_cg, Csr, Triplets};

/// Structural bounds declared for a callback-form `H` per the growth
/// hypothesis `H(x,s,p) >= -a |p|^q + b s - f`.
#[derive(Debug, Clone, Copy)]
pub struct StructuralBounds {
    pub sup_a_plus: f64,
    pub inf_b: f64,
    pub sup_abs_f: f64,
    pub q: f64,
}

/// The lower-order term of the equation.
pub enum HForm {
    /// `H = alpha . grad u + b u - f` with `alpha` given per node.
    Affine {
        alpha: Option<Vec<[f64; 2]>>,
        b: NodalField,
        f: NodalField,
    },
    /// Pointwise evaluator `H(x, s, p)` with declared structural bounds.
    Callback {
        eval: Box<dyn Fn([f64; 2], f64, [f64; 2]) -> f64 + Send + Sync>,
        bounds: StructuralBounds,
    },
}

impl std::fmt::Debug for HForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HForm::Affine { .. } => f.write_str("HForm::Affine"),
            HForm::Callback { bounds, .. } => write!(f, "HForm::Callback({bounds:?})"),
        }
    }
}

/// A semilinear Dirichlet problem on a mesh.
#[derive(Debug)]
pub struct SemilinearSpec {
    pub a_matrix: CellMatrixField,
    pub h_form: HForm,
}

impl SemilinearSpec {
    pub fn validate(&self) -> Result<(), Error> {
        self.a_matrix.check_elliptic()?;
        match &self.h_form {
            HForm::Affine { b, .. } => {
                if b.min() < 0.0 {
                    return Err(Error::ConfigValidation(format!(
                        "zeroth-order coefficient b must be nonnegative, min {}",
                        b.min()
                    )));
                }
            }
            HForm::Callback { bounds, .. } => {
                if bounds.inf_b < 0.0 {
                    return Err(Error::ConfigValidation(
                        "declared inf b must be nonnegative".into(),
                    ));
                }
                if !(1.0..=2.0).contains(&bounds.q) {
                    return Err(Error::ConfigValidation(format!(
                        "declared exponent q = {} outside [1, 2]",
                        bounds.q
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solution: NodalField,
    pub iterations: usize,
    /// Residual of the discrete equation (energy-type norm, see the solver).
    pub final_residual: f64,
    /// Tolerance the residual is held to when `converged` is set.
    pub tolerance: f64,
    pub converged: bool,
}

/// Assembled Dirichlet system: the full Galerkin matrix plus its restriction
/// to interior (non-boundary) unknowns.
pub struct DirichletSystem {
    mesh: Arc<TriMesh>,
    full: Csr,
    reduced: Csr,
    interior: Vec<usize>,
    symmetric: bool,
}

impl DirichletSystem {
    pub fn full_matrix(&self) -> &Csr {
        &self.full
    }

    pub fn reduced_matrix(&self) -> &Csr {
        &self.reduced
    }

    pub fn interior_nodes(&self) -> &[usize] {
        &self.interior
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    fn restrict(&self, nodal: &[f64]) -> Vec<f64> {
        self.interior.iter().map(|&i| nodal[i]).collect()
    }

    fn extend(&self, interior: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.mesh.node_count()];
        for (k, &i) in self.interior.iter().enumerate() {
            out[i] = interior[k];
        }
        out
    }

    /// Solve the reduced system for a nodal load vector.
    pub fn solve_load(&self, load: &[f64]) -> Result<Vec<f64>, Error> {
        let rhs = self.restrict(load);
        let n = rhs.len().max(1);
        let x = if self.symmetric {
            solve_cg(&self.reduced, &rhs, 1e-13, 40 * n + 2000)?
        } else {
            solve_bicgstab(&self.reduced, &rhs, 1e-13, 40 * n + 2000)?
        };
        Ok(self.extend(&x))
    }

    /// Energy norm sqrt(v^T K v) over interior unknowns.
    pub fn energy_norm(&self, nodal: &[f64]) -> f64 {
        let v = self.restrict(nodal);
        let mut kv = vec![0.0; v.len()];
        self.reduced.matvec(&v, &mut kv);
        v.iter()
            .zip(&kv)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs()
            .sqrt()
    }
}

/// Assemble the Galerkin matrix of `-div(A grad .) + alpha . grad . + b .`
/// with P1 elements. The reaction term is mass-lumped, which preserves the
/// M-matrix structure on non-obtuse meshes. Rows and columns of boundary
/// nodes are eliminated in the reduced matrix.
pub fn assemble(
    a_matrix: &CellMatrixField,
    alpha: Option<&[[f64; 2]]>,
    b: Option<&NodalField>,
    mesh: &Arc<TriMesh>,
) -> Result<DirichletSystem, Error> {
    a_matrix.check_elliptic()?;
    if !a_matrix.mesh().same_as(mesh) {
        return Err(Error::MeshMismatch(
            "matrix field on a different mesh".into(),
        ));
    }
    if let Some(bf) = b {
        if bf.min() < 0.0 {
            return Err(Error::ConfigValidation(format!(
                "reaction coefficient must be nonnegative, min {}",
                bf.min()
            )));
        }
    }
    let n = mesh.node_count();
    let mut trip = Triplets::new(n);
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            let len = mesh.cell_measure(c);
            let a = a_matrix.matrices()[c].a11;
            let local = [*i, *j];
            let grads = [-1.0 / len, 1.0 / len];
            for (&li, &gi) in local.iter().zip(&grads) {
                for (&lj, &gj) in local.iter().zip(&grads) {
                    trip.push(li, lj, a * gi * gj * len);
                }
            }
            if let Some(al) = alpha {
                for (row, &li) in local.iter().enumerate() {
                    let other = local[1 - row];
                    let weight = len * (2.0 * al[li][0] + al[other][0]) / 6.0;
                    for (&lj, &gj) in local.iter().zip(&grads) {
                        trip.push(li, lj, weight * gj);
                    }
                }
            }
            if let Some(bf) = b {
                let bv = bf.values();
                trip.push(*i, *i, len * (2.0 * bv[*i] + bv[*j]) / 6.0);
                trip.push(*j, *j, len * (2.0 * bv[*j] + bv[*i]) / 6.0);
            }
        }
    } else {
        for c in 0..mesh.cell_count() {
            let tri = mesh.triangles()[c];
            let area = mesh.cell_measure(c);
            let grads = mesh.p1_gradients(c);
            let am = a_matrix.matrices()[c];
            for (li, &ni) in tri.iter().enumerate() {
                let agi = am.apply(grads[li]);
                for (lj, &nj) in tri.iter().enumerate() {
                    let stiff = area * (agi[0] * grads[lj][0] + agi[1] * grads[lj][1]);
                    trip.push(ni, nj, stiff);
                }
            }
            if let Some(al) = alpha {
                for (li, &ni) in tri.iter().enumerate() {
                    // int_T phi_i alpha, alpha interpolated linearly
                    let mut ax = 0.0;
                    let mut ay = 0.0;
                    for (lm, &nm) in tri.iter().enumerate() {
                        let w = if lm == li { 2.0 } else { 1.0 };
                        ax += w * al[nm][0];
                        ay += w * al[nm][1];
                    }
                    let wx = area * ax / 12.0;
                    let wy = area * ay / 12.0;
                    for (lj, &nj) in tri.iter().enumerate() {
                        trip.push(ni, nj, wx * grads[lj][0] + wy * grads[lj][1]);
                    }
                }
            }
            if let Some(bf) = b {
                let bv = bf.values();
                for (li, &ni) in tri.iter().enumerate() {
                    let mut w = 0.0;
                    for (lm, &nm) in tri.iter().enumerate() {
                        w += if lm == li { 2.0 * bv[nm] } else { bv[nm] };
                    }
                    trip.push(ni, ni, area * w / 12.0);
                }
            }
        }
    }
    let full = trip.to_csr();

    let mut index_of = vec![None; n];
    let mut interior = Vec::new();
    for i in 0..n {
        if !mesh.is_boundary(i) {
            index_of[i] = Some(interior.len());
            interior.push(i);
        }
    }
    let mut red = Triplets::new(interior.len());
    for (k, &i) in interior.iter().enumerate() {
        for j in 0..n {
            let v = full.get(i, j);
            if v != 0.0 {
                if let Some(kj) = index_of[j] {
                    red.push(k, kj, v);
                }
            }
        }
    }
    let reduced = red.to_csr();
    let symmetric = alpha.is_none();
    Ok(DirichletSystem {
        mesh: Arc::clone(mesh),
        full,
        reduced,
        interior,
        symmetric,
    })
}

/// Consistent P1 load vector of a nodal source.
pub fn load_vector(f: &NodalField) -> Vec<f64> {
    let mesh = f.mesh();
    let fv = f.values();
    let mut load = vec![0.0; mesh.node_count()];
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            let len = mesh.cell_measure(c);
            load[*i] += len * (2.0 * fv[*i] + fv[*j]) / 6.0;
            load[*j] += len * (2.0 * fv[*j] + fv[*i]) / 6.0;
        }
    } else {
        for c in 0..mesh.cell_count() {
            let tri = mesh.triangles()[c];
            let area = mesh.cell_measure(c);
            for (li, &ni) in tri.iter().enumerate() {
                let mut w = 0.0;
                for (lm, &nm) in tri.iter().enumerate() {
                    w += if lm == li { 2.0 * fv[nm] } else { fv[nm] };
                }
                load[ni] += area * w / 12.0;
            }
        }
    }
    load
}

/// Solve the affine problem `-div(A grad u) + alpha . grad u + b u = f`,
/// `u = 0` on the boundary.
pub fn solve_linear(
    a_matrix: &CellMatrixField,
    alpha: Option<&[[f64; 2]]>,
    b: Option<&NodalField>,
    f: &NodalField,
    mesh: &Arc<TriMesh>,
) -> Result<SolveReport, Error> {
    let system = assemble(a_matrix, alpha, b, mesh)?;
    let load = load_vector(f);
    let u = system.solve_load(&load)?;
    let residual = scaled_residual(&system, &u, &load);
    let tolerance = 1e-10;
    Ok(SolveReport {
        solution: NodalField::new(Arc::clone(mesh), u)?,
        iterations: 1,
        final_residual: residual,
        tolerance,
        converged: residual <= tolerance,
    })
}

/// Diagonally scaled residual norm sqrt(r^T D^-1 r) of the reduced system, a
/// mesh-independent stand-in for the energy dual norm of the defect.
fn scaled_residual(system: &DirichletSystem, u_nodal: &[f64], load: &[f64]) -> f64 {
    let u = system.restrict(u_nodal);
    if u.is_empty() {
        return 0.0;
    }
    let rhs = system.restrict(load);
    let mut ku = vec![0.0; u.len()];
    system.reduced.matvec(&u, &mut ku);
    let d = system.reduced.diagonal();
    let mut acc = 0.0;
    for i in 0..u.len() {
        let r = ku[i] - rhs[i];
        let di = if d[i] != 0.0 { d[i] } else { 1.0 };
        acc += r * r / di;
    }
    acc.sqrt()
}

/// Max nodal value of a computed solution; the weak maximum principle says
/// this is nonpositive whenever the data satisfies `f <= 0`, `b >= 0`.
pub fn check_weak_max_principle(u: &NodalField) -> f64 {
    u.max()
}

/// Fixed-point iteration `u_{k+1} = (1 - theta) u_k + theta T(u_k)` where
/// `T(v)` solves `-div(A grad u) = -H(x, v, grad v)`.
///
/// Affine forms short-circuit to a single direct solve (the map is then
/// constant in `v`). Exhausting `max_iter` yields `converged = false`, never
/// a silent wrong answer.
pub fn fixed_point_solve(
    spec: &SemilinearSpec,
    theta: f64,
    max_iter: usize,
    tol: f64,
) -> Result<SolveReport, Error> {
    spec.validate()?;
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::ConfigValidation(format!(
            "relaxation theta = {theta} outside (0, 1]"
        )));
    }
    let mesh = Arc::clone(spec.a_matrix.mesh());
    let eval = match &spec.h_form {
        HForm::Affine { alpha, b, f } => {
            let mut report = solve_linear(&spec.a_matrix, alpha.as_deref(), Some(b), f, &mesh)?;
            report.tolerance = report.tolerance.max(10.0 * tol);
            report.converged = report.final_residual <= report.tolerance;
            return Ok(report);
        }
        HForm::Callback { eval, .. } => eval,
    };

    let system = assemble(&spec.a_matrix, None, None, &mesh)?;
    let n = mesh.node_count();
    let h_load = |u: &[f64]| -> Result<Vec<f64>, Error> {
        let u_field = NodalField::new(Arc::clone(&mesh), u.to_vec())?;
        let grads = gradient_at_nodes(&u_field);
        let mut h_nodal = vec![0.0; n];
        for i in 0..n {
            h_nodal[i] = eval(mesh.nodes()[i], u[i], grads[i]);
        }
        Ok(load_vector(&NodalField::new(Arc::clone(&mesh), h_nodal)?))
    };

    let mut u = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    let mut diff_trace: Vec<f64> = Vec::new();
    while iterations < max_iter {
        iterations += 1;
        let load: Vec<f64> = h_load(&u)?.iter().map(|v| -v).collect();
        let t_u = system.solve_load(&load)?;
        let mut delta = vec![0.0; n];
        for i in 0..n {
            let next = (1.0 - theta) * u[i] + theta * t_u[i];
            delta[i] = next - u[i];
            u[i] = next;
        }
        let diff = system.energy_norm(&delta);
        diff_trace.push(diff);
        if diff <= tol {
            converged = true;
            break;
        }
    }

    // Residual of the full semilinear discrete equation, measured in the
    // energy dual norm: r = K u + load(H(u)), residual = sqrt(r . K^-1 r).
    let r_full = {
        let hl = h_load(&u)?;
        let u_int = system.restrict(&u);
        let mut ku = vec![0.0; u_int.len()];
        system.reduced.matvec(&u_int, &mut ku);
        ku.iter()
            .zip(system.restrict(&hl))
            .map(|(a, b)| a + b)
            .collect::<Vec<f64>>()
    };
    let residual = if r_full.is_empty() {
        0.0
    } else {
        let e = solve_cg(&system.reduced, &r_full, 1e-12, 40 * r_full.len() + 2000)?;
        r_full
            .iter()
            .zip(&e)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .abs()
            .sqrt()
    };
    let tolerance = 10.0 * tol;
    if converged && residual > tolerance {
        converged = false;
    }
    Ok(SolveReport {
        solution: NodalField::new(Arc::clone(&mesh), u)?,
        iterations,
        final_residual: residual,
        tolerance,
        converged,
    })
}
