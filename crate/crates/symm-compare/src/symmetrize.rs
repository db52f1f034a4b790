//! Level-set symmetrization of the second-order terms.
//!
//! Given a reference function `psi` (positive inside, zero on the boundary),
//! a diffusion tensor `A >= Lambda Id`, and lower-order coefficients `a`,
//! `f`, this module builds their radial counterparts on the equimeasurable
//! ball:
//!
//! * a ladder of levels `a_k` with exact superlevel areas and the
//!   volume-preserving radius map `rho(a_k)`;
//! * `Lambda_hat = G(r)`, the harmonic level-set mean of `Lambda`;
//! * the normalized flux `F(r) < 0` of `A grad psi` through each level set,
//!   and from it `psi_hat(r) = -int_r^R F`;
//! * the gradient-coefficient symmetrization `a_hat` (max-based branch for
//!   q = 2, power-mean branch for 1 <= q < 2) and the level-set mean
//!   `f_hat`;
//! * the constructive constants: `delta_hat` (the positive zeroth-order
//!   coefficient scale) and the gap `eta` measuring how far `psi_hat`
//!   dominates the levels when the domain is not a ball.
//!
//! Surface integrals are realized as co-area shell averages over bands
//! `{a - da < psi <= a + da}`, which stay robust near the (finite) critical
//! set where contour extraction degenerates. Bands found degenerate are
//! widened once and then dropped; profiles interpolate across dropped
//! levels.

use crate::error::Error;
use crate::mesh::{self, band_samples, CellMatrixField, NodalField};
use crate::rearrange::RadialProfile;
use crate::unit_ball_volume;

/// One rung of the level ladder.
#[derive(Debug, Clone, Copy)]
pub struct LadderLevel {
    pub level: f64,
    /// Exact superlevel area `|{psi > level}|`.
    pub area: f64,
    /// Volume-preserving radius: `alpha_n radius^n = area`.
    pub radius: f64,
    /// Half-width of the co-area shell band used for surface averages.
    pub half_width: f64,
    /// Levels whose shell stays degenerate after one widening are dropped.
    pub alive: bool,
}

/// Ladder of superlevel sets of `psi`, at area quantiles plus a geometric
/// tail toward the maximum so the innermost radii are resolved.
#[derive(Debug, Clone)]
pub struct LevelLadder {
    dimension: usize,
    total_area: f64,
    max_value: f64,
    levels: Vec<LadderLevel>,
}

impl LevelLadder {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    pub fn levels(&self) -> &[LadderLevel] {
        &self.levels
    }

    /// Radius of the equimeasurable ball (from the area of `{psi > 0}`).
    pub fn ball_radius(&self) -> f64 {
        self.levels[0].radius
    }

    fn alive(&self) -> impl Iterator<Item = &LadderLevel> + '_ {
        self.levels.iter().filter(|l| l.alive)
    }
}

fn validate_psi(psi: &NodalField) -> Result<(), Error> {
    let meshref = psi.mesh();
    let scale = psi.max().abs().max(1e-300);
    for i in 0..meshref.node_count() {
        let v = psi.values()[i];
        if meshref.is_boundary(i) {
            if v.abs() > 1e-10 * scale {
                return Err(Error::InvalidPsi(format!(
                    "psi must vanish on the boundary; node {i} has {v}"
                )));
            }
        } else if v <= 0.0 {
            return Err(Error::InvalidPsi(format!(
                "psi must be positive in the interior; node {i} has {v}"
            )));
        }
    }
    Ok(())
}

/// Build the level ladder: `K` area quantiles of `psi` plus a geometric tail
/// of six further levels. Radii come from exact superlevel areas.
pub fn build_ladder(psi: &NodalField, count: usize) -> Result<LevelLadder, Error> {
    if count < 16 {
        return Err(Error::ConfigValidation(format!(
            "ladder size {count} too small; need at least 16"
        )));
    }
    validate_psi(psi)?;
    let dimension = psi.mesh().dim();
    let max_value = psi.max();
    let total = mesh::superlevel_area(psi, 0.0);
    let alpha = unit_ball_volume(dimension);

    let mut targets: Vec<f64> = (1..count)
        .map(|k| total * (count - k) as f64 / count as f64)
        .collect();
    // geometric tail toward the maximum
    for j in 1..=6 {
        targets.push(total / count as f64 / (1 << j) as f64);
    }

    let mut levels = vec![LadderLevel {
        level: 0.0,
        area: total,
        radius: (total / alpha).powf(1.0 / dimension as f64),
        half_width: max_value / (4.0 * count as f64),
        alive: true,
    }];
    for target in targets {
        let mut lo = 0.0f64;
        let mut hi = max_value;
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mesh::superlevel_area(psi, mid) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let level = 0.5 * (lo + hi);
        let area = mesh::superlevel_area(psi, level);
        let radius = (area / alpha).powf(1.0 / dimension as f64);
        levels.push(LadderLevel {
            level,
            area,
            radius,
            half_width: max_value / (4.0 * count as f64),
            alive: true,
        });
    }
    // enforce strictly increasing levels and strictly decreasing areas
    levels.sort_by(|a, b| a.level.partial_cmp(&b.level).unwrap());
    let mut kept: Vec<LadderLevel> = Vec::with_capacity(levels.len());
    for lv in levels {
        match kept.last() {
            Some(prev)
                if lv.level <= prev.level + 1e-13 * max_value
                    || lv.area >= prev.area - 1e-13 * total =>
            {
                continue;
            }
            _ => kept.push(lv),
        }
    }
    let mut ladder = LevelLadder {
        dimension,
        total_area: total,
        max_value,
        levels: kept,
    };

    // degenerate-shell protocol: widen once, then drop
    let one = NodalField::constant(psi.mesh(), 1.0);
    let floor = 1e-12 * total;
    for lv in ladder.levels.iter_mut() {
        let (_, vol) = mesh::band_integral(
            &one,
            psi,
            lv.level - lv.half_width,
            lv.level + lv.half_width,
        )?;
        if vol < floor {
            lv.half_width *= 2.0;
            let (_, vol2) = mesh::band_integral(
                &one,
                psi,
                lv.level - lv.half_width,
                lv.level + lv.half_width,
            )?;
            if vol2 < floor {
                lv.alive = false;
            }
        }
    }
    Ok(ladder)
}

/// Co-area weighted mean of `g` over the level set at rung `k`, realized as
/// the band average over `{a - da < psi <= a + da}`.
pub fn surface_average(
    g: &NodalField,
    psi: &NodalField,
    ladder: &LevelLadder,
    k: usize,
) -> Result<f64, Error> {
    let lv = &ladder.levels[k];
    if !lv.alive {
        return Err(Error::DegenerateLevel { level: lv.level });
    }
    let (integral, volume) =
        mesh::band_integral(g, psi, lv.level - lv.half_width, lv.level + lv.half_width)?;
    if volume < 1e-12 * ladder.total_area {
        return Err(Error::DegenerateLevel { level: lv.level });
    }
    Ok(integral / volume)
}

/// Assemble an ascending radial profile from per-level values, inserting
/// `r = 0` with the supplied center value. Dead levels are skipped, so the
/// profile interpolates across them.
fn ladder_profile(
    ladder: &LevelLadder,
    values: &[(usize, f64)],
    center: f64,
) -> Result<RadialProfile, Error> {
    let mut pts: Vec<(f64, f64)> = values
        .iter()
        .map(|&(k, v)| (ladder.levels[k].radius, v))
        .collect();
    pts.push((0.0, center));
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14 * ladder.ball_radius());
    let (grid, vals): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    RadialProfile::new(ladder.dimension, grid, vals)
}

/// Symmetrized diffusion coefficient: `Lambda_hat(rho(a_k)) = G(rho(a_k))`,
/// the harmonic level-set mean of `Lambda`.
pub fn hat_lambda(
    psi: &NodalField,
    lambda: &NodalField,
    ladder: &LevelLadder,
) -> Result<RadialProfile, Error> {
    if lambda.min() <= 0.0 {
        return Err(Error::NonElliptic(format!(
            "Lambda must be positive, min {}",
            lambda.min()
        )));
    }
    let inv = lambda.map(|v| 1.0 / v);
    let mut vals = Vec::new();
    for (k, lv) in ladder.levels.iter().enumerate() {
        if !lv.alive {
            continue;
        }
        vals.push((k, 1.0 / surface_average(&inv, psi, ladder, k)?));
    }
    let center = vals.last().map(|&(_, v)| v).unwrap_or(1.0);
    ladder_profile(ladder, &vals, center)
}

/// Source route for the level-set flux of `A grad psi`.
pub enum FluxSource<'a> {
    /// `psi` solves its PDE, so `div(A grad psi) = H(x, psi, grad psi)`
    /// holds in the strong sense; pass that right-hand side as a field.
    DivergenceField(&'a NodalField),
    /// Direct contour flux: line integration of `A grad psi . nu` over the
    /// per-cell level segments.
    Contour,
}

/// Normalized total flux through the level set at each rung:
/// `F(rho(a_k)) = int_{Omega_{a_k}} div(A grad psi) / (n alpha_n rho^{n-1} G)`.
/// Always negative; a nonnegative value signals a discretization too coarse
/// to carry the construction.
pub fn flux_profile(
    psi: &NodalField,
    a_matrix: &CellMatrixField,
    ladder: &LevelLadder,
    lambda_hat: &RadialProfile,
    source: FluxSource<'_>,
) -> Result<RadialProfile, Error> {
    let n = ladder.dimension;
    let alpha = unit_ball_volume(n);
    let mut vals = Vec::new();
    for (k, lv) in ladder.levels.iter().enumerate() {
        if !lv.alive {
            continue;
        }
        let total_flux = match source {
            FluxSource::DivergenceField(div) => mesh::superlevel_integral(div, psi, lv.level)?,
            FluxSource::Contour => contour_flux(psi, a_matrix, lv.level),
        };
        let g = lambda_hat.eval(lv.radius);
        let denom = n as f64 * alpha * lv.radius.powi(n as i32 - 1) * g;
        let f = total_flux / denom;
        if f >= 0.0 {
            return Err(Error::ConstructionViolation(format!(
                "flux F = {f} >= 0 at level {} (discretization too coarse)",
                lv.level
            )));
        }
        vals.push((k, f));
    }
    ladder_profile(ladder, &vals, 0.0)
}

/// Contour flux `oint_{psi = a} A grad psi . nu` with `nu` the outward normal
/// of the superlevel set: per cell the level line is a straight segment and
/// the flux contribution is `-|segment| (A grad psi . grad psi) / |grad psi|`.
fn contour_flux(psi: &NodalField, a_matrix: &CellMatrixField, level: f64) -> f64 {
    let meshref = psi.mesh();
    let pv = psi.values();
    let grads = mesh::gradient(psi);
    let mut acc = 0.0;
    if meshref.dim() == 1 {
        for (c, [i, j]) in meshref.segments().iter().enumerate() {
            let (v0, v1) = (pv[*i], pv[*j]);
            if (v0 > level) == (v1 > level) {
                continue;
            }
            let slope = grads[c][0];
            acc -= a_matrix.matrices()[c].a11 * slope.abs();
        }
        return acc;
    }
    for c in 0..meshref.cell_count() {
        let [i, j, k] = meshref.triangles()[c];
        let (vmin, vmax) = {
            let (a, b, cc) = (pv[i], pv[j], pv[k]);
            (a.min(b).min(cc), a.max(b).max(cc))
        };
        if vmin > level || vmax <= level {
            continue;
        }
        // endpoints of the level segment inside the cell
        let nodes = [i, j, k];
        let mut pts: Vec<[f64; 2]> = Vec::with_capacity(2);
        for e in 0..3 {
            let (na, nb) = (nodes[e], nodes[(e + 1) % 3]);
            let (va, vb) = (pv[na], pv[nb]);
            if (va > level) != (vb > level) {
                let t = (level - va) / (vb - va);
                let (pa, pb) = (meshref.nodes()[na], meshref.nodes()[nb]);
                pts.push([pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1])]);
            }
        }
        if pts.len() != 2 {
            continue;
        }
        let seg = ((pts[0][0] - pts[1][0]).powi(2) + (pts[0][1] - pts[1][1]).powi(2)).sqrt();
        let grad = grads[c];
        let norm = grad[0].hypot(grad[1]);
        if norm == 0.0 {
            continue;
        }
        let ag = a_matrix.matrices()[c].apply(grad);
        acc -= seg * (ag[0] * grad[0] + ag[1] * grad[1]) / norm;
    }
    acc
}

/// `psi_hat(r) = -int_r^R F(s) ds` by trapezoidal quadrature on the flux
/// grid; vanishes at `R` exactly and is non-increasing since `F <= 0`.
pub fn hat_psi(flux: &RadialProfile) -> Result<RadialProfile, Error> {
    if flux.values().iter().any(|&v| v > 0.0) {
        return Err(Error::ConstructionViolation(
            "flux profile must be nonpositive".into(),
        ));
    }
    let grid = flux.grid().to_vec();
    let fv = flux.values();
    let m = grid.len();
    let mut values = vec![0.0; m];
    for i in (0..m - 1).rev() {
        values[i] = values[i + 1] - 0.5 * (fv[i] + fv[i + 1]) * (grid[i + 1] - grid[i]);
    }
    RadialProfile::new(flux.dimension(), grid, values)
}

/// Symmetrized gradient coefficient. The `q = 2` branch takes the shell-band
/// max of `a^+ / Lambda` (slightly overestimating, which preserves the
/// inequality direction); the `1 <= q < 2` branch is the weighted power mean
/// `[avg (a^+)^{2/(2-q)} Lambda^{-q/(2-q)}]^{(2-q)/2} Lambda_hat^{q/2}`,
/// evaluated with per-level normalization so powers near `q = 2` stay in
/// range.
pub fn hat_a(
    psi: &NodalField,
    a_field: &NodalField,
    lambda: &NodalField,
    lambda_hat: &RadialProfile,
    ladder: &LevelLadder,
    q: f64,
) -> Result<RadialProfile, Error> {
    if !(1.0..=2.0).contains(&q) {
        return Err(Error::ConfigValidation(format!("q = {q} outside [1, 2]")));
    }
    let meshref = psi.mesh();
    let mut vals = Vec::new();
    for (k, lv) in ladder.levels.iter().enumerate() {
        if !lv.alive {
            continue;
        }
        let g_hat = lambda_hat.eval(lv.radius);
        let (lo, hi) = (lv.level - lv.half_width, lv.level + lv.half_width);
        let value = if q == 2.0 {
            // quadrature points of the shell band: clipped-polygon vertices
            // plus the nodes of every cell meeting the band (a slightly
            // larger pool that keeps the max an upper bound of the q -> 2
            // power-mean limit)
            let mut m = 0.0f64;
            for s in &band_samples(psi, lo, hi) {
                let a_plus = s.interpolate(meshref, a_field.values()).max(0.0);
                let lam = s.interpolate(meshref, lambda.values());
                m = m.max(a_plus / lam);
            }
            for c in 0..meshref.cell_count() {
                let nodes = meshref.cell_nodes(c);
                let count = if meshref.dim() == 1 { 2 } else { 3 };
                let (mut cmin, mut cmax) = (f64::INFINITY, f64::NEG_INFINITY);
                for &nd in nodes.iter().take(count) {
                    cmin = cmin.min(psi.values()[nd]);
                    cmax = cmax.max(psi.values()[nd]);
                }
                if cmin > hi || cmax <= lo {
                    continue;
                }
                for &nd in nodes.iter().take(count) {
                    m = m.max(a_field.values()[nd].max(0.0) / lambda.values()[nd]);
                }
            }
            m * g_hat
        } else {
            // nodal t = (a^+)^2 / Lambda^q, normalized by its max over the
            // cells meeting the band
            let t: Vec<f64> = a_field
                .values()
                .iter()
                .zip(lambda.values())
                .map(|(&a, &l)| a.max(0.0).powi(2) / l.powf(q))
                .collect();
            let mut t_max = 0.0f64;
            for c in 0..meshref.cell_count() {
                let nodes = meshref.cell_nodes(c);
                let count = if meshref.dim() == 1 { 2 } else { 3 };
                let (mut cmin, mut cmax) = (f64::INFINITY, f64::NEG_INFINITY);
                for &nd in nodes.iter().take(count) {
                    cmin = cmin.min(psi.values()[nd]);
                    cmax = cmax.max(psi.values()[nd]);
                }
                if cmin > hi || cmax <= lo {
                    continue;
                }
                for &nd in nodes.iter().take(count) {
                    t_max = t_max.max(t[nd]);
                }
            }
            if t_max == 0.0 {
                0.0
            } else {
                let p = 1.0 / (2.0 - q);
                let w = NodalField::new(
                    std::sync::Arc::clone(meshref),
                    t.iter().map(|&ti| (ti / t_max).powf(p)).collect(),
                )?;
                let avg = surface_average(&w, psi, ladder, k)?.max(f64::MIN_POSITIVE);
                t_max.sqrt() * avg.powf((2.0 - q) / 2.0) * g_hat.powf(q / 2.0)
            }
        };
        vals.push((k, value));
    }
    let center = vals.last().map(|&(_, v)| v).unwrap_or(0.0);
    ladder_profile(ladder, &vals, center)
}

/// Symmetrized source: the plain level-set mean of `f`.
pub fn hat_f(
    psi: &NodalField,
    f_field: &NodalField,
    ladder: &LevelLadder,
) -> Result<RadialProfile, Error> {
    let mut vals = Vec::new();
    for (k, lv) in ladder.levels.iter().enumerate() {
        if !lv.alive {
            continue;
        }
        vals.push((k, surface_average(f_field, psi, ladder, k)?));
    }
    let center = vals.last().map(|&(_, v)| v).unwrap_or(0.0);
    ladder_profile(ladder, &vals, center)
}

/// The positive zeroth-order coefficient of the symmetrized semilinear
/// problem: `m_b` times the smallest ratio `a_k / psi_hat(rho(a_k))` over
/// the ladder. Lies in `(0, m_b]` because `psi_hat` dominates the levels.
pub fn delta_hat(psi_hat: &RadialProfile, ladder: &LevelLadder, m_b: f64) -> Result<f64, Error> {
    if !(m_b > 0.0) {
        return Err(Error::ConfigValidation(format!(
            "inf b must be positive, got {m_b}"
        )));
    }
    let mut ratio = f64::INFINITY;
    for lv in ladder.alive() {
        if lv.level <= 0.0 {
            continue;
        }
        let ph = psi_hat.eval(lv.radius);
        if ph <= 0.0 {
            return Err(Error::ConstructionViolation(format!(
                "psi_hat vanishes at radius {} though the level {} is positive",
                lv.radius, lv.level
            )));
        }
        ratio = ratio.min(lv.level / ph);
    }
    if !ratio.is_finite() {
        return Err(Error::ConstructionViolation(
            "ladder has no positive levels".into(),
        ));
    }
    Ok(m_b * ratio)
}

/// Gap of the domination `psi_hat(rho(a)) >= a`: the smallest value of
/// `psi_hat(rho(a_k)) / a_k - 1`. Nonnegative up to discretization, and
/// strictly positive when the domain is not a ball.
pub fn eta_gap(psi_hat: &RadialProfile, ladder: &LevelLadder) -> f64 {
    let mut gap = f64::INFINITY;
    for lv in ladder.alive() {
        if lv.level <= 0.0 {
            continue;
        }
        gap = gap.min(psi_hat.eval(lv.radius) / lv.level - 1.0);
    }
    gap
}

/// Per-level pointwise comparison of the symmetrized operator against the
/// original one over the shell band.
#[derive(Debug, Clone, Copy)]
pub struct LevelMargin {
    pub level: f64,
    pub radius: f64,
    /// `min_y expr(y) - expr_hat`, with
    /// `expr = -div(A grad psi) - a |grad psi|^q - f`.
    pub margin_min: f64,
    /// `max_y expr(y) - expr_hat` (the existence form of the comparison).
    pub margin_exists: f64,
}

/// Evaluate the pointwise differential comparison at every live level: the
/// symmetrized operator value at `rho(a_k)` against the range of the
/// original operator over the shell band. The divergence route requires the
/// strong-form source `div(A grad psi) = H(x, psi, grad psi)`.
#[allow(clippy::too_many_arguments)]
pub fn key2_check(
    psi: &NodalField,
    div_source: &NodalField,
    a_field: &NodalField,
    f_field: &NodalField,
    ladder: &LevelLadder,
    lambda_hat: &RadialProfile,
    a_hat: &RadialProfile,
    f_hat: &RadialProfile,
    flux: &RadialProfile,
    q: f64,
) -> Result<Vec<LevelMargin>, Error> {
    let meshref = psi.mesh();
    let grads = mesh::gradient(psi);
    let n = ladder.dimension as i32;
    // radial divergence of Lambda_hat grad psi_hat from the flux form:
    // div = (1/r^{n-1}) d/dr [ r^{n-1} G F ]
    let live: Vec<&LadderLevel> = ladder.alive().collect();
    let phi: Vec<f64> = live
        .iter()
        .map(|lv| lv.radius.powi(n - 1) * lambda_hat.eval(lv.radius) * flux.eval(lv.radius))
        .collect();
    let mut out = Vec::new();
    for (idx, lv) in live.iter().enumerate() {
        if lv.level <= 0.0 {
            continue;
        }
        // central difference in radius over neighbouring live levels
        let (lo_idx, hi_idx) = (idx.saturating_sub(1), (idx + 1).min(live.len() - 1));
        if hi_idx == lo_idx {
            continue;
        }
        // radii decrease with the level index; skip rungs whose radial
        // stencil is too wide relative to the radius to resolve the
        // divergence term
        let dr = live[lo_idx].radius - live[hi_idx].radius;
        if dr <= 0.0 || dr > 0.15 * lv.radius {
            continue;
        }
        let dphi = (phi[lo_idx] - phi[hi_idx]) / dr;
        let div_hat = dphi / lv.radius.powi(n - 1);
        let expr_hat = -div_hat
            - a_hat.eval(lv.radius) * flux.eval(lv.radius).abs().powf(q)
            - f_hat.eval(lv.radius);

        let samples = band_samples(psi, lv.level - lv.half_width, lv.level + lv.half_width);
        if samples.is_empty() {
            continue;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for s in &samples {
            let grad = grads[s.cell];
            let gnorm = grad[0].hypot(grad[1]);
            let expr = -s.interpolate(meshref, div_source.values())
                - s.interpolate(meshref, a_field.values()) * gnorm.powf(q)
                - s.interpolate(meshref, f_field.values());
            lo = lo.min(expr);
            hi = hi.max(expr);
        }
        out.push(LevelMargin {
            level: lv.level,
            radius: lv.radius,
            margin_min: lo - expr_hat,
            margin_exists: hi - expr_hat,
        });
    }
    Ok(out)
}

/// The bundled outcome of a full symmetrization pass.
#[derive(Debug, Clone)]
pub struct Symmetrization {
    pub ladder: LevelLadder,
    pub lambda_hat: RadialProfile,
    pub a_hat: RadialProfile,
    pub f_hat: RadialProfile,
    pub flux: RadialProfile,
    pub psi_hat: RadialProfile,
    pub eta: f64,
}

/// Run the whole construction for a reference function and its coefficients.
pub fn symmetrize(
    psi: &NodalField,
    a_matrix: &CellMatrixField,
    lambda: &NodalField,
    a_field: &NodalField,
    f_field: &NodalField,
    q: f64,
    ladder_size: usize,
    source: FluxSource<'_>,
) -> Result<Symmetrization, Error> {
    let ladder = build_ladder(psi, ladder_size)?;
    let lambda_hat = hat_lambda(psi, lambda, &ladder)?;
    let flux = flux_profile(psi, a_matrix, &ladder, &lambda_hat, source)?;
    let psi_hat = hat_psi(&flux)?;
    let a_hat = hat_a(psi, a_field, lambda, &lambda_hat, &ladder, q)?;
    let f_hat = hat_f(psi, f_field, &ladder)?;
    let eta = eta_gap(&psi_hat, &ladder);
    Ok(Symmetrization {
        ladder,
        lambda_hat,
        a_hat,
        f_hat,
        flux,
        psi_hat,
        eta,
    })
}

/// CSV of the symmetrized coefficient profiles on the uniform 512 grid:
/// `r, lambda_hat, a_hat, f_hat`.
pub fn profiles_csv(sym: &Symmetrization) -> String {
    let lambda = sym.lambda_hat.resample(crate::radial::RADIAL_POINTS);
    let a = sym.a_hat.resample(crate::radial::RADIAL_POINTS);
    let f = sym.f_hat.resample(crate::radial::RADIAL_POINTS);
    let mut out = String::from("r,lambda_hat,a_hat,f_hat\n");
    for (i, &r) in lambda.grid().iter().enumerate() {
        out.push_str(&format!(
            "{r},{},{},{}\n",
            lambda.values()[i],
            a.values()[i],
            f.values()[i]
        ));
    }
    out
}

/// JSON sidecar with the scalar outputs of the construction.
pub fn sidecar_json(sym: &Symmetrization, q: f64, delta: Option<f64>) -> String {
    let delta_text = delta.map_or("null".to_string(), |d| format!("{d}"));
    format!(
        "{{\"n\": {}, \"R\": {}, \"q\": {q}, \"delta_hat\": {delta_text}, \"eta\": {}}}\n",
        sym.ladder.dimension(),
        sym.ladder.ball_radius(),
        sym.eta
    )
}
