//! Minimal sparse linear algebra for the P1 solves: CSR storage, conjugate
//! gradients for symmetric systems, BiCGSTAB for drift terms. Both are
//! Jacobi-preconditioned and fully deterministic (fixed accumulation order).

use crate::error::Error;

/// Coordinate-format accumulator used during assembly.
#[derive(Debug, Clone)]
pub struct Triplets {
    n: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl Triplets {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.n && col < self.n);
        if value != 0.0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn to_csr(&self) -> Csr {
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; self.n + 1];
        let mut cols: Vec<usize> = Vec::with_capacity(sorted.len());
        let mut vals: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut current_row = 0usize;
        for (r, c, v) in sorted {
            while current_row < r {
                current_row += 1;
                row_ptr[current_row] = cols.len();
            }
            if let (Some(&lc), true) = (cols.last(), cols.len() > row_ptr[r]) {
                if lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            cols.push(c);
            vals.push(v);
        }
        while current_row < self.n {
            current_row += 1;
            row_ptr[current_row] = cols.len();
        }
        Csr {
            n: self.n,
            row_ptr,
            cols,
            vals,
        }
    }
}

/// Compressed sparse row matrix.
#[derive(Debug, Clone)]
pub struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        for r in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            y[r] = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for r in 0..self.n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if self.cols[k] == r {
                    d[r] += self.vals[k];
                }
            }
        }
        d
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let mut acc = 0.0;
        for k in self.row_ptr[row]..self.row_ptr[row + 1] {
            if self.cols[k] == col {
                acc += self.vals[k];
            }
        }
        acc
    }

    /// Largest entrywise asymmetry |A - A^T|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.cols[k];
                if c >= r {
                    worst = worst.max((self.vals[k] - self.get(c, r)).abs());
                }
            }
        }
        worst
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Jacobi-preconditioned conjugate gradients. Requires SPD input.
pub fn solve_cg(a: &Csr, b: &[f64], rel_tol: f64, max_iter: usize) -> Result<Vec<f64>, Error> {
    let n = a.n();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let inv_d: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&d| if d != 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_d).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for _ in 0..max_iter {
        if norm(&r) <= rel_tol * b_norm {
            return Ok(x);
        }
        a.matvec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::SolverFailure(format!(
                "CG curvature {pap} <= 0; matrix not positive definite"
            )));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_d[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    if norm(&r) <= rel_tol * b_norm {
        Ok(x)
    } else {
        Err(Error::SolverFailure(format!(
            "CG stalled at relative residual {:.3e} after {max_iter} iterations",
            norm(&r) / b_norm
        )))
    }
}

/// Jacobi-preconditioned BiCGSTAB for mildly nonsymmetric systems.
pub fn solve_bicgstab(
    a: &Csr,
    b: &[f64],
    rel_tol: f64,
    max_iter: usize,
) -> Result<Vec<f64>, Error> {
    let n = a.n();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let inv_d: Vec<f64> = a
        .diagonal()
        .iter()
        .map(|&d| if d != 0.0 { 1.0 / d } else { 1.0 })
        .collect();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let r0 = r.clone();
    let mut rho = 1.0;
    let mut alpha = 1.0;
    let mut omega = 1.0;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut phat = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut shat = vec![0.0; n];
    let mut t = vec![0.0; n];
    for _ in 0..max_iter {
        if norm(&r) <= rel_tol * b_norm {
            return Ok(x);
        }
        let rho_new = dot(&r0, &r);
        if rho_new.abs() < f64::MIN_POSITIVE {
            return Err(Error::SolverFailure("BiCGSTAB breakdown (rho = 0)".into()));
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        for i in 0..n {
            phat[i] = p[i] * inv_d[i];
        }
        a.matvec(&phat, &mut v);
        alpha = rho / dot(&r0, &v);
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        if norm(&s) <= rel_tol * b_norm {
            for i in 0..n {
                x[i] += alpha * phat[i];
            }
            return Ok(x);
        }
        for i in 0..n {
            shat[i] = s[i] * inv_d[i];
        }
        a.matvec(&shat, &mut t);
        let tt = dot(&t, &t);
        if tt == 0.0 {
            return Err(Error::SolverFailure("BiCGSTAB breakdown (t = 0)".into()));
        }
        omega = dot(&t, &s) / tt;
        for i in 0..n {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        if omega == 0.0 {
            return Err(Error::SolverFailure(
                "BiCGSTAB breakdown (omega = 0)".into(),
            ));
        }
    }
    if norm(&r) <= rel_tol * b_norm {
        Ok(x)
    } else {
        Err(Error::SolverFailure(format!(
            "BiCGSTAB stalled at relative residual {:.3e} after {max_iter} iterations",
            norm(&r) / b_norm
        )))
    }
}

/// Thomas algorithm for tridiagonal systems (used by the radial solvers).
/// `lower[0]` and `upper[n-1]` are ignored.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, Error> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    if diag[0] == 0.0 {
        return Err(Error::SolverFailure("tridiagonal pivot is zero".into()));
    }
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - lower[i] * c[i - 1];
        if m == 0.0 {
            return Err(Error::SolverFailure("tridiagonal pivot is zero".into()));
        }
        c[i] = if i + 1 < n { upper[i] / m } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    Ok(x)
}
