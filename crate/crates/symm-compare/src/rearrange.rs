//! Distribution functions, decreasing Schwarz rearrangement, and the
//! classical rearrangement inequalities.
//!
//! The distribution function of a P1 field is computed exactly at every
//! distinct node value by superlevel-set clipping, and stored as a
//! right-continuous step function. The rearrangement applies the min-formula
//! `u*(x) = min { t : mu(t) <= alpha_n |x|^n }` to that step function, so
//! monotonicity, order preservation, and equimeasurability against the
//! stored distribution hold exactly by construction.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::mesh::{self, NodalField};
use crate::{equimeasurable_radius, unit_ball_volume};

/// Right-continuous, non-increasing step function `t -> mu(t)`.
#[derive(Debug, Clone)]
pub struct StepDistribution {
    breakpoints: Vec<f64>,
    measures: Vec<f64>,
    total: f64,
    /// Values carrying a positive-area plateau, with the plateau measure.
    plateaus: Vec<(f64, f64)>,
}

impl StepDistribution {
    /// Assemble from explicit breakpoints and measures; the measures must be
    /// non-increasing and end at zero.
    pub fn from_parts(
        breakpoints: Vec<f64>,
        measures: Vec<f64>,
        total: f64,
    ) -> Result<Self, Error> {
        if breakpoints.len() != measures.len() || breakpoints.is_empty() {
            return Err(Error::InvalidSpec(
                "breakpoints/measures length mismatch".into(),
            ));
        }
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidSpec(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        for w in measures.windows(2) {
            if w[1] > w[0] + 1e-12 {
                return Err(Error::InvalidSpec("measures must be non-increasing".into()));
            }
        }
        if measures.last().copied().unwrap_or(0.0).abs() > 1e-12 {
            return Err(Error::InvalidSpec(
                "distribution must vanish at the max value".into(),
            ));
        }
        let mut plateaus = Vec::new();
        for k in 0..breakpoints.len() {
            let prev = if k == 0 { total } else { measures[k - 1] };
            let jump = prev - measures[k];
            if k == 0 && jump > 0.0 {
                // mass sitting exactly at the minimum value
                plateaus.push((breakpoints[0], jump));
            } else if k > 0 && jump > 0.0 {
                plateaus.push((breakpoints[k], jump));
            }
        }
        Ok(Self {
            breakpoints,
            measures,
            total,
            plateaus,
        })
    }

    /// mu(t): measure of the superlevel set `{u > t}`.
    pub fn eval(&self, t: f64) -> f64 {
        if t < self.breakpoints[0] {
            return self.total;
        }
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        self.measures[idx - 1]
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    /// Total measure of the domain.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Values `t` where `{u = t}` has positive measure, with that measure.
    pub fn plateaus(&self) -> &[(f64, f64)] {
        &self.plateaus
    }

    /// Exact min-formula value of the rearrangement at superlevel measure
    /// `s`: the smallest breakpoint `t` with `mu(t) <= s`.
    pub fn rearranged_at_measure(&self, s: f64) -> f64 {
        let idx = self.measures.partition_point(|&m| m > s);
        // measures are non-increasing, so idx is the first index with
        // mu <= s; idx == len cannot happen since the last measure is 0.
        self.breakpoints[idx.min(self.breakpoints.len() - 1)]
    }
}

/// Distribution function of a P1 field, exact at every distinct node value.
pub fn distribution_function(u: &NodalField) -> StepDistribution {
    let meshref = u.mesh();
    let total = meshref.area();
    // Distinct node values, ascending.
    let mut sorted: Vec<f64> = u.values().to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();
    let breakpoints = sorted;
    let k = breakpoints.len();

    // Cells fully above a level contribute their whole measure; straddling
    // cells are clipped exactly. One pass per cell over the breakpoints
    // inside its value range keeps this near-linear.
    let mut full = vec![0.0f64; k + 1]; // difference accumulator
    let mut partial = vec![0.0f64; k];
    let mut plateau_acc: BTreeMap<u64, f64> = BTreeMap::new();
    let dim = meshref.dim();
    for c in 0..meshref.cell_count() {
        let nodes = meshref.cell_nodes(c);
        let count = if dim == 1 { 2 } else { 3 };
        let vals: Vec<f64> = nodes.iter().take(count).map(|&i| u.values()[i]).collect();
        let vmin = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let vmax = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let measure = meshref.cell_measure(c);
        if vmin == vmax {
            plateau_acc
                .entry(vmin.to_bits())
                .and_modify(|m| *m += measure)
                .or_insert(measure);
        }
        // Breakpoints strictly below vmin see the full cell.
        let lo = breakpoints.partition_point(|&t| t < vmin);
        full[0] += measure;
        full[lo] -= measure;
        // Breakpoints in [vmin, vmax) see a clipped cell.
        let hi = breakpoints.partition_point(|&t| t < vmax);
        for (slot, &t) in breakpoints[lo..hi].iter().enumerate() {
            partial[lo + slot] += cell_superlevel_measure(meshref, u.values(), c, t);
        }
    }
    let mut measures = Vec::with_capacity(k);
    let mut running = 0.0;
    for i in 0..k {
        running += full[i];
        measures.push(running + partial[i]);
    }
    // Exactness guarantees monotonicity up to rounding; enforce it so the
    // step-function invariants hold bitwise.
    for i in 1..k {
        if measures[i] > measures[i - 1] {
            measures[i] = measures[i - 1];
        }
    }
    if let Some(last) = measures.last_mut() {
        *last = 0.0;
    }
    let plateaus: Vec<(f64, f64)> = plateau_acc
        .into_iter()
        .map(|(bits, m)| (f64::from_bits(bits), m))
        .collect();
    let mut plateaus = plateaus;
    plateaus.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    StepDistribution {
        breakpoints,
        measures,
        total,
        plateaus,
    }
}

/// Measure of `{u > a}` restricted to one cell.
fn cell_superlevel_measure(
    mesh: &crate::mesh::TriMesh,
    values: &[f64],
    cell: usize,
    a: f64,
) -> f64 {
    // Sorted-vertex closed form; exact for affine data.
    let nodes = mesh.cell_nodes(cell);
    let measure = mesh.cell_measure(cell);
    if mesh.dim() == 1 {
        let (v0, v1) = (values[nodes[0]], values[nodes[1]]);
        let (lo, hi) = (v0.min(v1), v0.max(v1));
        if lo > a {
            return measure;
        }
        if hi <= a {
            return 0.0;
        }
        return measure * (hi - a) / (hi - lo);
    }
    let mut v = [values[nodes[0]], values[nodes[1]], values[nodes[2]]];
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (v1, v2, v3) = (v[0], v[1], v[2]);
    if a < v1 {
        measure
    } else if a >= v3 {
        0.0
    } else if a >= v2 {
        measure * (v3 - a) * (v3 - a) / ((v3 - v1) * (v3 - v2))
    } else {
        measure * (1.0 - (a - v1) * (a - v1) / ((v2 - v1) * (v3 - v1)))
    }
}

/// Radially sampled function of `r` on `[0, R]`, piecewise linear in `r`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    dimension: usize,
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl RadialProfile {
    pub fn new(dimension: usize, grid: Vec<f64>, values: Vec<f64>) -> Result<Self, Error> {
        if grid.len() != values.len() || grid.len() < 2 {
            return Err(Error::InvalidSpec(
                "profile needs matching grid/value lists".into(),
            ));
        }
        if grid[0] != 0.0 {
            return Err(Error::InvalidSpec(
                "profile grid must start at r = 0".into(),
            ));
        }
        for w in grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidSpec(
                    "profile grid must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self {
            dimension,
            grid,
            values,
        })
    }

    pub fn from_fn(dimension: usize, radius: f64, points: usize, f: impl Fn(f64) -> f64) -> Self {
        let grid: Vec<f64> = (0..points)
            .map(|i| radius * i as f64 / (points - 1) as f64)
            .collect();
        let values = grid.iter().map(|&r| f(r)).collect();
        Self {
            dimension,
            grid,
            values,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn radius(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Piecewise-linear evaluation, clamped outside `[0, R]`.
    pub fn eval(&self, r: f64) -> f64 {
        if r <= self.grid[0] {
            return self.values[0];
        }
        if r >= self.radius() {
            return *self.values.last().unwrap();
        }
        let idx = self.grid.partition_point(|&g| g <= r) - 1;
        let (r0, r1) = (self.grid[idx], self.grid[idx + 1]);
        let t = (r - r0) / (r1 - r0);
        self.values[idx] + t * (self.values[idx + 1] - self.values[idx])
    }

    /// Resample onto a uniform grid with `points` nodes.
    pub fn resample(&self, points: usize) -> RadialProfile {
        let radius = self.radius();
        let grid: Vec<f64> = (0..points)
            .map(|i| radius * i as f64 / (points - 1) as f64)
            .collect();
        let values = grid.iter().map(|&r| self.eval(r)).collect();
        RadialProfile {
            dimension: self.dimension,
            grid,
            values,
        }
    }

    /// Nodewise map, same grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> RadialProfile {
        RadialProfile {
            dimension: self.dimension,
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Integral over the ball: `int_0^R v(r) n alpha_n r^{n-1} dr`, exact for
    /// the piecewise-linear profile.
    pub fn ball_integral(&self) -> f64 {
        let n = self.dimension as i32;
        let alpha = unit_ball_volume(self.dimension);
        let mut acc = 0.0;
        for i in 0..self.grid.len() - 1 {
            let (r0, r1) = (self.grid[i], self.grid[i + 1]);
            let (v0, v1) = (self.values[i], self.values[i + 1]);
            // v(r) = v0 + s (v1 - v0), r = r0 + s (r1 - r0); 5-point
            // Gauss-Legendre is exact for the polynomial integrand.
            acc += gauss5(|s| {
                let r = r0 + s * (r1 - r0);
                let v = v0 + s * (v1 - v0);
                v * (self.dimension as f64) * alpha * r.powi(n - 1)
            }) * (r1 - r0);
        }
        acc
    }

    /// CSV serialization: header `r,value`, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,value\n");
        for (&r, &v) in self.grid.iter().zip(&self.values) {
            out.push_str(&format!("{r},{v}\n"));
        }
        out
    }

    /// Parse the `r,value` CSV form.
    pub fn from_csv(dimension: usize, text: &str) -> Result<Self, Error> {
        let mut lines = text.lines();
        match lines.next() {
            Some("r,value") => {}
            other => return Err(Error::Parse(format!("bad profile header: {other:?}"))),
        }
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let (r, v) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad profile row: {line}")))?;
            grid.push(
                r.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad radius: {r}")))?,
            );
            values.push(
                v.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad value: {v}")))?,
            );
        }
        RadialProfile::new(dimension, grid, values)
    }

    /// Measure of `{profile > t}` for a non-increasing profile, from the
    /// radial formula `alpha_n r_t^n` with `r_t` the last radius above `t`.
    pub fn superlevel_measure(&self, t: f64) -> f64 {
        let alpha = unit_ball_volume(self.dimension);
        if self.values[0] <= t {
            return 0.0;
        }
        for i in 0..self.values.len() - 1 {
            let (v0, v1) = (self.values[i], self.values[i + 1]);
            if v1 <= t {
                // crossing inside [grid[i], grid[i+1]]
                let s = if v0 == v1 { 0.0 } else { (v0 - t) / (v0 - v1) };
                let r = self.grid[i] + s * (self.grid[i + 1] - self.grid[i]);
                return alpha * r.powi(self.dimension as i32);
            }
        }
        alpha * self.radius().powi(self.dimension as i32)
    }
}

fn gauss5(f: impl Fn(f64) -> f64) -> f64 {
    // 5-point Gauss-Legendre on [0, 1].
    const X: [f64; 5] = [
        0.046910077030668,
        0.230765344947158,
        0.5,
        0.769234655052842,
        0.953089922969332,
    ];
    const W: [f64; 5] = [
        0.118463442528095,
        0.239314335249683,
        0.284444444444444,
        0.239314335249683,
        0.118463442528095,
    ];
    X.iter().zip(&W).map(|(&x, &w)| w * f(x)).sum()
}

/// Decreasing Schwarz rearrangement of `u` onto the ball of equal measure in
/// dimension `n`.
pub fn schwarz_rearrangement(u: &NodalField, n: usize) -> RadialProfile {
    let dist = distribution_function(u);
    rearrangement_profile(&dist, n)
}

/// Corner points `(radius, value)` of the rearrangement: the exact quantile
/// polyline through `(rho(mu(t_i)), t_i)` for every breakpoint, with both
/// bounding radii at every plateau so flat segments are carried exactly.
fn quantile_corners(dist: &StepDistribution, n: usize) -> Vec<(f64, f64)> {
    let alpha = unit_ball_volume(n);
    let total = dist.total();
    let plateau_of = |t: f64| -> f64 {
        dist.plateaus()
            .iter()
            .find(|&&(pv, _)| pv == t)
            .map(|&(_, m)| m)
            .unwrap_or(0.0)
    };
    let mut corners: Vec<(f64, f64)> = Vec::new();
    for (i, (&t, &mu)) in dist.breakpoints().iter().zip(dist.measures()).enumerate() {
        corners.push((mu, t));
        let p = plateau_of(t);
        if p > 0.0 {
            corners.push(((mu + p).min(total), t));
        }
        if i == 0 && mu + p < total {
            corners.push((total, t));
        }
    }
    // Ascending in measure; ties in measure are genuine jumps of the
    // quantile function, kept as near-vertical segments by nudging all but
    // the smallest value backward by a negligible measure.
    corners.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(b.1.partial_cmp(&a.1).unwrap())
    });
    corners.dedup_by(|next, kept| next.0 == kept.0 && next.1 == kept.1);
    let eps_s = 1e-12 * total.max(1.0);
    let group_tol = 1e-15 * total.max(1.0);
    let mut i = 0;
    while i < corners.len() {
        let mut j = i;
        while j + 1 < corners.len() && (corners[j + 1].0 - corners[i].0).abs() <= group_tol {
            j += 1;
        }
        let s = corners[j].0;
        for (offset, corner) in corners[i..=j].iter_mut().enumerate() {
            corner.0 = s - (j - i - offset) as f64 * eps_s;
        }
        i = j + 1;
    }
    corners.retain(|&(s, _)| s >= 0.0);
    corners
        .into_iter()
        .map(|(s, t)| ((s / alpha).powf(1.0 / n as f64), t))
        .collect()
}

/// Rearrangement profile of an explicit step distribution: the quantile
/// polyline resampled onto the uniform 512-point grid together with all of
/// its own corner radii.
pub fn rearrangement_profile(dist: &StepDistribution, n: usize) -> RadialProfile {
    let radius = equimeasurable_radius(dist.total(), n);
    let corners = quantile_corners(dist, n);
    const POINTS: usize = 512;
    let mut grid: Vec<f64> = (0..POINTS)
        .map(|i| radius * i as f64 / (POINTS - 1) as f64)
        .collect();
    grid.extend(corners.iter().map(|&(r, _)| r));
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * radius.max(1.0));
    if let Some(first) = grid.first_mut() {
        *first = 0.0;
    }
    if let Some(last) = grid.last_mut() {
        *last = radius;
    }
    let values: Vec<f64> = grid.iter().map(|&r| eval_polyline(&corners, r)).collect();
    RadialProfile {
        dimension: n,
        grid,
        values,
    }
}

fn eval_polyline(corners: &[(f64, f64)], r: f64) -> f64 {
    if r <= corners[0].0 {
        return corners[0].1;
    }
    if r >= corners[corners.len() - 1].0 {
        return corners[corners.len() - 1].1;
    }
    let idx = corners.partition_point(|&(cr, _)| cr <= r) - 1;
    let (r0, v0) = corners[idx];
    let (r1, v1) = corners[idx + 1];
    if r1 <= r0 {
        return v1;
    }
    v0 + (r - r0) / (r1 - r0) * (v1 - v0)
}

/// Things that carry an Lp norm: P1 fields and radial profiles.
pub trait LpNorm {
    fn lp_norm(&self, p: f64) -> f64;
}

/// `Lp` norm; pass `f64::INFINITY` for the sup norm.
pub fn lp_norm<T: LpNorm>(x: &T, p: f64) -> f64 {
    x.lp_norm(p)
}

impl LpNorm for NodalField {
    fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "p must be >= 1");
        if p.is_infinite() {
            return self.values().iter().map(|v| v.abs()).fold(0.0f64, f64::max);
        }
        if (p - 1.0).abs() < 1e-14 {
            // |g| integrated exactly by splitting at the zero level.
            let pos = mesh::superlevel_integral(self, self, 0.0).expect("same mesh");
            return 2.0 * pos - mesh::integrate(self);
        }
        if (p - 2.0).abs() < 1e-14 {
            return l2_squared_field(self).sqrt();
        }
        // Degree-5 quadrature per cell; exact for p = 4 with affine data.
        let meshref = self.mesh();
        let mut acc = 0.0;
        if meshref.dim() == 1 {
            for (c, [i, j]) in meshref.segments().iter().enumerate() {
                let (v0, v1) = (self.values()[*i], self.values()[*j]);
                acc += gauss5(|s| (v0 + s * (v1 - v0)).abs().powf(p)) * meshref.cell_measure(c);
            }
        } else {
            for c in 0..meshref.cell_count() {
                let [i, j, k] = meshref.triangles()[c];
                let (v0, v1, v2) = (self.values()[i], self.values()[j], self.values()[k]);
                acc += tri_quadrature_deg5(v0, v1, v2, p) * meshref.cell_measure(c);
            }
        }
        acc.powf(1.0 / p)
    }
}

fn l2_squared_field(g: &NodalField) -> f64 {
    let meshref = g.mesh();
    let mut acc = 0.0;
    if meshref.dim() == 1 {
        for (c, [i, j]) in meshref.segments().iter().enumerate() {
            let (v0, v1) = (g.values()[*i], g.values()[*j]);
            acc += meshref.cell_measure(c) / 3.0 * (v0 * v0 + v0 * v1 + v1 * v1);
        }
    } else {
        for c in 0..meshref.cell_count() {
            let [i, j, k] = meshref.triangles()[c];
            let (v0, v1, v2) = (g.values()[i], g.values()[j], g.values()[k]);
            let sum = v0 + v1 + v2;
            let sq = v0 * v0 + v1 * v1 + v2 * v2;
            acc += meshref.cell_measure(c) / 12.0 * (sum * sum + sq);
        }
    }
    acc
}

/// Degree-5 symmetric triangle rule applied to |affine|^p; weights sum to 1.
fn tri_quadrature_deg5(v0: f64, v1: f64, v2: f64, p: f64) -> f64 {
    const W0: f64 = 0.225;
    const WA: f64 = 0.132394152788506;
    const WB: f64 = 0.125939180544827;
    const A1: f64 = 0.059715871789770;
    const B1: f64 = 0.470142064105115;
    const A2: f64 = 0.797426985353087;
    const B2: f64 = 0.101286507323456;
    let eval = |b0: f64, b1: f64, b2: f64| (b0 * v0 + b1 * v1 + b2 * v2).abs().powf(p);
    W0 * eval(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
        + WA * (eval(A1, B1, B1) + eval(B1, A1, B1) + eval(B1, B1, A1))
        + WB * (eval(A2, B2, B2) + eval(B2, A2, B2) + eval(B2, B2, A2))
}

impl LpNorm for RadialProfile {
    fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "p must be >= 1");
        if p.is_infinite() {
            return self.values.iter().map(|v| v.abs()).fold(0.0f64, f64::max);
        }
        let n = self.dimension as i32;
        let alpha = unit_ball_volume(self.dimension);
        let mut acc = 0.0;
        for i in 0..self.grid.len() - 1 {
            let (r0, r1) = (self.grid[i], self.grid[i + 1]);
            let (v0, v1) = (self.values[i], self.values[i + 1]);
            // split at a sign change so |v|^p stays smooth per piece
            let mut cuts = vec![0.0, 1.0];
            if v0 * v1 < 0.0 {
                cuts.insert(1, v0 / (v0 - v1));
            }
            for w in cuts.windows(2) {
                let (s0, s1) = (w[0], w[1]);
                acc += gauss5(|q| {
                    let s = s0 + q * (s1 - s0);
                    let r = r0 + s * (r1 - r0);
                    let v = v0 + s * (v1 - v0);
                    v.abs().powf(p) * self.dimension as f64 * alpha * r.powi(n - 1)
                }) * (r1 - r0)
                    * (s1 - s0);
            }
        }
        acc.powf(1.0 / p)
    }
}

/// `int_{B_R} u* g*  -  int_Omega u g`; Hardy-Littlewood makes this
/// nonnegative up to discretization.
pub fn hardy_littlewood_margin(u: &NodalField, g: &NodalField, n: usize) -> Result<f64, Error> {
    mesh::check_same_mesh(u, g)?;
    let du = distribution_function(u);
    let dg = distribution_function(g);
    // int u* g* over the ball: both quantile polylines are piecewise linear
    // in r, so Gauss-Legendre per merged-corner interval is exact.
    let cu = quantile_corners(&du, n);
    let cg = quantile_corners(&dg, n);
    let radius = equimeasurable_radius(du.total(), n);
    let mut cuts: Vec<f64> = cu.iter().chain(&cg).map(|&(r, _)| r).collect();
    cuts.push(0.0);
    cuts.push(radius);
    cuts.retain(|&r| (0.0..=radius).contains(&r));
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let alpha = unit_ball_volume(n);
    let mut star = 0.0;
    for w in cuts.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        if r1 <= r0 {
            continue;
        }
        star += gauss5(|q| {
            let r = r0 + q * (r1 - r0);
            eval_polyline(&cu, r) * eval_polyline(&cg, r) * n as f64 * alpha * r.powi(n as i32 - 1)
        }) * (r1 - r0);
    }
    // int_Omega u g, exact for P1 * P1.
    let meshref = u.mesh();
    let mut plain = 0.0;
    if meshref.dim() == 1 {
        for (c, [i, j]) in meshref.segments().iter().enumerate() {
            let (u0, u1) = (u.values()[*i], u.values()[*j]);
            let (g0, g1) = (g.values()[*i], g.values()[*j]);
            plain +=
                meshref.cell_measure(c) / 6.0 * (2.0 * u0 * g0 + 2.0 * u1 * g1 + u0 * g1 + u1 * g0);
        }
    } else {
        for c in 0..meshref.cell_count() {
            let [i, j, k] = meshref.triangles()[c];
            let (u0, u1, u2) = (u.values()[i], u.values()[j], u.values()[k]);
            let (g0, g1, g2) = (g.values()[i], g.values()[j], g.values()[k]);
            let su = u0 + u1 + u2;
            let sg = g0 + g1 + g2;
            let diag = u0 * g0 + u1 * g1 + u2 * g2;
            plain += meshref.cell_measure(c) / 12.0 * (su * sg + diag);
        }
    }
    Ok(star - plain)
}

/// `||grad u||_{L2(Omega)} - ||grad u*||_{L2(B_R)}`; Polya-Szego makes this
/// nonnegative up to discretization. Operates on |u|.
pub fn polya_szego_margin(u: &NodalField, n: usize) -> f64 {
    let w = u.map(f64::abs);
    let grads = mesh::gradient(&w);
    let meshref = w.mesh();
    let mut grad_sq = 0.0;
    for (c, g) in grads.iter().enumerate() {
        grad_sq += meshref.cell_measure(c) * (g[0] * g[0] + g[1] * g[1]);
    }
    let star = schwarz_rearrangement(&w, n);
    let alpha = unit_ball_volume(n);
    let mut star_sq = 0.0;
    for i in 0..star.grid().len() - 1 {
        let dr = star.grid()[i + 1] - star.grid()[i];
        if dr <= 0.0 {
            continue;
        }
        let slope = (star.values()[i + 1] - star.values()[i]) / dr;
        let shell = alpha * (star.grid()[i + 1].powi(n as i32) - star.grid()[i].powi(n as i32));
        star_sq += slope * slope * shell;
    }
    grad_sq.sqrt() - star_sq.sqrt()
}
