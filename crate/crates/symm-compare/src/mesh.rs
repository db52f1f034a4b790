//! Planar domains, conforming triangulations, piecewise-linear fields, and
//! exact superlevel-set geometry.
//!
//! All fields are interpolated affinely per cell (P1). Superlevel areas and
//! integrals of affine data over `{psi > a}` are therefore computed exactly by
//! polygon clipping, so every distribution function and co-area shell integral
//! downstream carries no quadrature error beyond the mesh itself.
//!
//! One-dimensional meshes (intervals split into segments) are carried by the
//! same type; every operation branches on `dim`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Error;

/// Domain geometry.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    Disk {
        radius: f64,
    },
    Ellipse {
        semi_x: f64,
        semi_y: f64,
    },
    /// Simple, positively oriented, non-degenerate boundary loop.
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Interval {
        start: f64,
        end: f64,
    },
}

/// A domain together with the target edge length of its triangulation.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub kind: DomainKind,
    /// Target edge length `h`; the built mesh has max edge `<= 1.5 h`.
    pub edge_length: f64,
}

impl DomainSpec {
    pub fn disk(radius: f64, h: f64) -> Self {
        Self {
            kind: DomainKind::Disk { radius },
            edge_length: h,
        }
    }

    pub fn ellipse(semi_x: f64, semi_y: f64, h: f64) -> Self {
        Self {
            kind: DomainKind::Ellipse { semi_x, semi_y },
            edge_length: h,
        }
    }

    pub fn polygon(vertices: Vec<[f64; 2]>, h: f64) -> Self {
        Self {
            kind: DomainKind::Polygon { vertices },
            edge_length: h,
        }
    }

    pub fn interval(start: f64, end: f64, h: f64) -> Self {
        Self {
            kind: DomainKind::Interval { start, end },
            edge_length: h,
        }
    }

    /// Diameter of the domain (an upper bound is fine for validation).
    pub fn diameter(&self) -> f64 {
        match &self.kind {
            DomainKind::Disk { radius } => 2.0 * radius,
            DomainKind::Ellipse { semi_x, semi_y } => 2.0 * semi_x.max(*semi_y),
            DomainKind::Polygon { vertices } => {
                let mut d = 0.0f64;
                for (i, p) in vertices.iter().enumerate() {
                    for q in vertices.iter().skip(i + 1) {
                        d = d.max(dist(*p, *q));
                    }
                }
                d
            }
            DomainKind::Interval { start, end } => (end - start).abs(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !self.edge_length.is_finite() || self.edge_length <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "target edge length must be positive, got {}",
                self.edge_length
            )));
        }
        match &self.kind {
            DomainKind::Disk { radius } => {
                if !radius.is_finite() || *radius <= 0.0 {
                    return Err(Error::InvalidSpec(format!(
                        "disk radius {radius} must be positive"
                    )));
                }
            }
            DomainKind::Ellipse { semi_x, semi_y } => {
                if *semi_x <= 0.0 || *semi_y <= 0.0 || !semi_x.is_finite() || !semi_y.is_finite() {
                    return Err(Error::InvalidSpec(format!(
                        "ellipse semi-axes ({semi_x}, {semi_y}) must be positive"
                    )));
                }
            }
            DomainKind::Polygon { vertices } => validate_polygon(vertices)?,
            DomainKind::Interval { start, end } => {
                if !(end > start) {
                    return Err(Error::InvalidSpec(format!(
                        "empty interval ({start}, {end})"
                    )));
                }
            }
        }
        if self.edge_length >= self.diameter() {
            return Err(Error::InvalidSpec(format!(
                "edge length {} is not smaller than the domain diameter {}",
                self.edge_length,
                self.diameter()
            )));
        }
        Ok(())
    }
}

fn validate_polygon(vertices: &[[f64; 2]]) -> Result<(), Error> {
    if vertices.len() < 3 {
        return Err(Error::InvalidSpec(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    for (i, p) in vertices.iter().enumerate() {
        for (j, q) in vertices.iter().enumerate().skip(i + 1) {
            if dist(*p, *q) < 1e-12 {
                return Err(Error::InvalidSpec(format!(
                    "repeated polygon vertex at positions {i} and {j}"
                )));
            }
        }
    }
    let area = polygon_signed_area(vertices);
    if area.abs() < 1e-14 {
        return Err(Error::InvalidSpec(
            "polygon is degenerate (zero area)".into(),
        ));
    }
    if area < 0.0 {
        return Err(Error::InvalidSpec(
            "polygon must be positively oriented".into(),
        ));
    }
    // Simplicity: no two non-adjacent edges may intersect.
    let n = vertices.len();
    for i in 0..n {
        let (a1, a2) = (vertices[i], vertices[(i + 1) % n]);
        for j in i + 1..n {
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            let (b1, b2) = (vertices[j], vertices[(j + 1) % n]);
            if segments_intersect(a1, a2, b1, b2) {
                return Err(Error::InvalidSpec(format!(
                    "polygon edges {i} and {j} intersect; boundary must be simple"
                )));
            }
        }
    }
    Ok(())
}

fn polygon_signed_area(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * acc
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_intersect(a1: [f64; 2], a2: [f64; 2], b1: [f64; 2], b2: [f64; 2]) -> bool {
    let d1 = cross(b1, b2, a1);
    let d2 = cross(b1, b2, a2);
    let d3 = cross(a1, a2, b1);
    let d4 = cross(a1, a2, b2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    false
}

/// Conforming mesh of a planar domain (triangles) or an interval (segments).
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    dim: usize,
    nodes: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    segments: Vec<[usize; 2]>,
    boundary: Vec<bool>,
    cell_measure: Vec<f64>,
    area: f64,
}

impl TriMesh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn segments(&self) -> &[[usize; 2]] {
        &self.segments
    }

    pub fn cell_count(&self) -> usize {
        if self.dim == 1 {
            self.segments.len()
        } else {
            self.triangles.len()
        }
    }

    pub fn is_boundary(&self, node: usize) -> bool {
        self.boundary[node]
    }

    pub fn boundary_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&i| self.boundary[i])
    }

    /// Lebesgue measure of a cell (triangle area / segment length).
    pub fn cell_measure(&self, cell: usize) -> f64 {
        self.cell_measure[cell]
    }

    /// Total area (length in 1D); exactly the sum of cell measures.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Node indices of a cell, padded with a repeat in 1D.
    pub fn cell_nodes(&self, cell: usize) -> [usize; 3] {
        if self.dim == 1 {
            let [a, b] = self.segments[cell];
            [a, b, b]
        } else {
            self.triangles[cell]
        }
    }

    pub fn cell_centroid(&self, cell: usize) -> [f64; 2] {
        if self.dim == 1 {
            let [a, b] = self.segments[cell];
            let (p, q) = (self.nodes[a], self.nodes[b]);
            [0.5 * (p[0] + q[0]), 0.0]
        } else {
            let [a, b, c] = self.triangles[cell];
            let (p, q, r) = (self.nodes[a], self.nodes[b], self.nodes[c]);
            [(p[0] + q[0] + r[0]) / 3.0, (p[1] + q[1] + r[1]) / 3.0]
        }
    }

    /// Gradient of the P1 basis functions on a triangle, one 2-vector per
    /// local vertex.
    pub fn p1_gradients(&self, cell: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.triangles[cell];
        let (p, q, r) = (self.nodes[a], self.nodes[b], self.nodes[c]);
        let det = 2.0 * self.cell_measure[cell];
        [
            [(q[1] - r[1]) / det, (r[0] - q[0]) / det],
            [(r[1] - p[1]) / det, (p[0] - r[0]) / det],
            [(p[1] - q[1]) / det, (q[0] - p[0]) / det],
        ]
    }

    /// Two meshes agree if they are the same allocation or structurally equal.
    pub fn same_as(&self, other: &TriMesh) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn max_edge_length(&self) -> f64 {
        let mut m = 0.0f64;
        if self.dim == 1 {
            for [a, b] in &self.segments {
                m = m.max((self.nodes[*b][0] - self.nodes[*a][0]).abs());
            }
        } else {
            for [a, b, c] in &self.triangles {
                m = m.max(dist(self.nodes[*a], self.nodes[*b]));
                m = m.max(dist(self.nodes[*b], self.nodes[*c]));
                m = m.max(dist(self.nodes[*c], self.nodes[*a]));
            }
        }
        m
    }

    /// Smallest interior angle over all triangles, in degrees. Returns 180
    /// for 1D meshes, where the notion is void.
    pub fn min_angle_deg(&self) -> f64 {
        if self.dim == 1 {
            return 180.0;
        }
        let mut min = f64::INFINITY;
        for [a, b, c] in &self.triangles {
            let (p, q, r) = (self.nodes[*a], self.nodes[*b], self.nodes[*c]);
            for (o, u, v) in [(p, q, r), (q, r, p), (r, p, q)] {
                let du = [u[0] - o[0], u[1] - o[1]];
                let dv = [v[0] - o[0], v[1] - o[1]];
                let dot = du[0] * dv[0] + du[1] * dv[1];
                let nu = (du[0] * du[0] + du[1] * du[1]).sqrt();
                let nv = (dv[0] * dv[0] + dv[1] * dv[1]).sqrt();
                let ang = (dot / (nu * nv)).clamp(-1.0, 1.0).acos();
                min = min.min(ang);
            }
        }
        min.to_degrees()
    }

    fn finalize(
        dim: usize,
        nodes: Vec<[f64; 2]>,
        mut triangles: Vec<[usize; 3]>,
        segments: Vec<[usize; 2]>,
        boundary: Vec<bool>,
    ) -> Result<TriMesh, Error> {
        let mut cell_measure = Vec::new();
        if dim == 1 {
            for [a, b] in &segments {
                let len = nodes[*b][0] - nodes[*a][0];
                if len <= 0.0 {
                    return Err(Error::InvalidSpec(
                        "segment with non-positive length".into(),
                    ));
                }
                cell_measure.push(len);
            }
        } else {
            for t in triangles.iter_mut() {
                let signed = cross(nodes[t[0]], nodes[t[1]], nodes[t[2]]) * 0.5;
                if signed < 0.0 {
                    t.swap(1, 2);
                }
            }
            for [a, b, c] in &triangles {
                let signed = cross(nodes[*a], nodes[*b], nodes[*c]) * 0.5;
                if signed <= 0.0 {
                    return Err(Error::InvalidSpec("triangle with non-positive area".into()));
                }
                cell_measure.push(signed);
            }
        }
        let area = cell_measure.iter().sum();
        Ok(TriMesh {
            dim,
            nodes,
            triangles,
            segments,
            boundary,
            cell_measure,
            area,
        })
    }
}

/// Build a conforming mesh for the spec. Deterministic: the same spec always
/// produces the same mesh.
pub fn build_mesh(spec: &DomainSpec) -> Result<Arc<TriMesh>, Error> {
    spec.validate()?;
    let h = spec.edge_length;
    let mesh = match &spec.kind {
        DomainKind::Disk { radius } => build_disk(*radius, h)?,
        DomainKind::Ellipse { semi_x, semi_y } => {
            let scale = semi_x.max(*semi_y);
            let disk = build_disk(1.0, h / scale)?;
            let nodes = disk
                .nodes
                .iter()
                .map(|p| [p[0] * semi_x, p[1] * semi_y])
                .collect();
            TriMesh::finalize(2, nodes, disk.triangles, disk.segments, disk.boundary)?
        }
        DomainKind::Polygon { vertices } => build_polygon(vertices, h)?,
        DomainKind::Interval { start, end } => build_interval(*start, *end, h)?,
    };
    debug_assert!(mesh.max_edge_length() <= 1.5 * h + 1e-12);
    Ok(Arc::new(mesh))
}

fn build_interval(start: f64, end: f64, h: f64) -> Result<TriMesh, Error> {
    let n = (((end - start) / h).round() as usize).max(1);
    let dx = (end - start) / n as f64;
    let nodes: Vec<[f64; 2]> = (0..=n).map(|i| [start + i as f64 * dx, 0.0]).collect();
    let segments: Vec<[usize; 2]> = (0..n).map(|i| [i, i + 1]).collect();
    let mut boundary = vec![false; n + 1];
    boundary[0] = true;
    boundary[n] = true;
    TriMesh::finalize(1, nodes, Vec::new(), segments, boundary)
}

/// Hexagonal ring mesh of a disk: ring `j` carries `6 j` nodes, which keeps
/// every triangle near-equilateral.
fn build_disk(radius: f64, h: f64) -> Result<TriMesh, Error> {
    let rings = ((radius / h).ceil() as usize).max(1);
    let dr = radius / rings as f64;
    let mut nodes = vec![[0.0, 0.0]];
    let mut ring_start = vec![0usize; rings + 1];
    for j in 1..=rings {
        ring_start[j] = nodes.len();
        let count = 6 * j;
        let r = dr * j as f64;
        for i in 0..count {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
            nodes.push([r * theta.cos(), r * theta.sin()]);
        }
    }
    let mut triangles = Vec::new();
    for i in 0..6 {
        triangles.push([0, ring_start[1] + i, ring_start[1] + (i + 1) % 6]);
    }
    for j in 2..=rings {
        let (si, ni) = (ring_start[j - 1], 6 * (j - 1));
        let (so, no) = (ring_start[j], 6 * j);
        let mut i = 0usize;
        let mut o = 0usize;
        while i < ni || o < no {
            let advance_outer = if o == no {
                false
            } else if i == ni {
                true
            } else {
                // strict: on ties the inner ring advances, which keeps the
                // walk balanced and the diagonals short
                ((o + 1) as f64 / no as f64) < ((i + 1) as f64 / ni as f64)
            };
            if advance_outer {
                triangles.push([so + o, so + (o + 1) % no, si + i % ni]);
                o += 1;
            } else {
                triangles.push([si + i, si + (i + 1) % ni, so + o % no]);
                i += 1;
            }
        }
    }
    let mut boundary = vec![false; nodes.len()];
    for k in ring_start[rings]..nodes.len() {
        boundary[k] = true;
    }
    TriMesh::finalize(2, nodes, triangles, Vec::new(), boundary)
}

/// Ear-clip the polygon into a coarse triangulation, then refine every
/// triangle uniformly (each split into four similar children) until the
/// target edge length is met. Uniform splitting preserves the coarse
/// triangles' angles exactly and keeps the mesh conforming.
fn build_polygon(vertices: &[[f64; 2]], h: f64) -> Result<TriMesh, Error> {
    let mut nodes: Vec<[f64; 2]> = vertices.to_vec();
    let mut triangles = ear_clip(vertices)?;

    let mut max_edge = 0.0f64;
    for [a, b, c] in &triangles {
        max_edge = max_edge.max(dist(nodes[*a], nodes[*b]));
        max_edge = max_edge.max(dist(nodes[*b], nodes[*c]));
        max_edge = max_edge.max(dist(nodes[*c], nodes[*a]));
    }
    let levels = if max_edge <= 1.5 * h {
        0
    } else {
        (max_edge / (1.5 * h)).log2().ceil() as usize
    };
    for _ in 0..levels {
        red_refine(&mut nodes, &mut triangles);
    }

    // An edge on the boundary belongs to exactly one triangle.
    let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for [a, b, c] in &triangles {
        for (u, v) in [(*a, *b), (*b, *c), (*c, *a)] {
            *edge_count.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    let mut boundary = vec![false; nodes.len()];
    for ((u, v), count) in edge_count {
        if count == 1 {
            boundary[u] = true;
            boundary[v] = true;
        }
    }
    TriMesh::finalize(2, nodes, triangles, Vec::new(), boundary)
}

fn ear_clip(vertices: &[[f64; 2]]) -> Result<Vec<[usize; 3]>, Error> {
    let mut active: Vec<usize> = (0..vertices.len()).collect();
    let mut triangles = Vec::new();
    while active.len() > 3 {
        // Pick the valid ear with the best (largest) minimum angle.
        let mut best: Option<(usize, f64)> = None;
        for k in 0..active.len() {
            let prev = active[(k + active.len() - 1) % active.len()];
            let cur = active[k];
            let next = active[(k + 1) % active.len()];
            let (p, q, r) = (vertices[prev], vertices[cur], vertices[next]);
            if cross(p, q, r) <= 1e-14 {
                continue; // reflex or collinear corner
            }
            let contains_other = active.iter().any(|&m| {
                m != prev && m != cur && m != next && point_in_triangle(vertices[m], p, q, r)
            });
            if contains_other {
                continue;
            }
            let quality = triangle_min_angle(p, q, r);
            if best.map_or(true, |(_, bq)| quality > bq) {
                best = Some((k, quality));
            }
        }
        let (k, _) = best.ok_or_else(|| {
            Error::InvalidSpec("polygon could not be triangulated (not simple?)".into())
        })?;
        let prev = active[(k + active.len() - 1) % active.len()];
        let cur = active[k];
        let next = active[(k + 1) % active.len()];
        triangles.push([prev, cur, next]);
        active.remove(k);
    }
    triangles.push([active[0], active[1], active[2]]);
    Ok(triangles)
}

fn triangle_min_angle(p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> f64 {
    let mut min = f64::INFINITY;
    for (o, u, v) in [(p, q, r), (q, r, p), (r, p, q)] {
        let du = [u[0] - o[0], u[1] - o[1]];
        let dv = [v[0] - o[0], v[1] - o[1]];
        let dot = du[0] * dv[0] + du[1] * dv[1];
        let nu = du[0].hypot(du[1]);
        let nv = dv[0].hypot(dv[1]);
        min = min.min((dot / (nu * nv)).clamp(-1.0, 1.0).acos());
    }
    min
}

fn point_in_triangle(x: [f64; 2], p: [f64; 2], q: [f64; 2], r: [f64; 2]) -> bool {
    let d1 = cross(p, q, x);
    let d2 = cross(q, r, x);
    let d3 = cross(r, p, x);
    let eps = -1e-14;
    d1 > eps && d2 > eps && d3 > eps
}

fn red_refine(nodes: &mut Vec<[f64; 2]>, triangles: &mut Vec<[usize; 3]>) {
    let mut midpoints: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut mid = |nodes: &mut Vec<[f64; 2]>, a: usize, b: usize| -> usize {
        let key = (a.min(b), a.max(b));
        *midpoints.entry(key).or_insert_with(|| {
            let p = nodes[a];
            let q = nodes[b];
            nodes.push([0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]);
            nodes.len() - 1
        })
    };
    let old = std::mem::take(triangles);
    for [a, b, c] in old {
        let ab = mid(nodes, a, b);
        let bc = mid(nodes, b, c);
        let ca = mid(nodes, c, a);
        triangles.push([a, ab, ca]);
        triangles.push([b, bc, ab]);
        triangles.push([c, ca, bc]);
        triangles.push([ab, bc, ca]);
    }
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

/// Piecewise-linear scalar field: one value per node, affine per cell.
#[derive(Debug, Clone)]
pub struct NodalField {
    mesh: Arc<TriMesh>,
    values: Vec<f64>,
}

impl NodalField {
    pub fn new(mesh: Arc<TriMesh>, values: Vec<f64>) -> Result<Self, Error> {
        if values.len() != mesh.node_count() {
            return Err(Error::MeshMismatch(format!(
                "{} values for {} nodes",
                values.len(),
                mesh.node_count()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn from_fn(mesh: &Arc<TriMesh>, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = mesh.nodes().iter().map(|p| f(p[0], p[1])).collect();
        Self {
            mesh: Arc::clone(mesh),
            values,
        }
    }

    pub fn constant(mesh: &Arc<TriMesh>, value: f64) -> Self {
        Self {
            mesh: Arc::clone(mesh),
            values: vec![value; mesh.node_count()],
        }
    }

    pub fn mesh(&self) -> &Arc<TriMesh> {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Nodewise map, same mesh.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> NodalField {
        NodalField {
            mesh: Arc::clone(&self.mesh),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip(
        &self,
        other: &NodalField,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<NodalField, Error> {
        check_same_mesh(self, other)?;
        Ok(NodalField {
            mesh: Arc::clone(&self.mesh),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

pub(crate) fn check_same_mesh(a: &NodalField, b: &NodalField) -> Result<(), Error> {
    if Arc::ptr_eq(&a.mesh, &b.mesh) || a.mesh.same_as(&b.mesh) {
        Ok(())
    } else {
        Err(Error::MeshMismatch(
            "fields live on different meshes".into(),
        ))
    }
}

/// Symmetric 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymMat2 {
    pub fn identity() -> Self {
        Self {
            a11: 1.0,
            a12: 0.0,
            a22: 1.0,
        }
    }

    pub fn scaled_identity(s: f64) -> Self {
        Self {
            a11: s,
            a12: 0.0,
            a22: s,
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let tr = self.a11 + self.a22;
        let det = self.a11 * self.a22 - self.a12 * self.a12;
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        tr / 2.0 - disc
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a12 * v[0] + self.a22 * v[1],
        ]
    }
}

/// Per-cell constant symmetric 2x2 matrix data (the diffusion tensor A).
/// In 1D only the `a11` entry participates.
#[derive(Debug, Clone)]
pub struct CellMatrixField {
    mesh: Arc<TriMesh>,
    matrices: Vec<SymMat2>,
}

impl CellMatrixField {
    pub fn new(mesh: Arc<TriMesh>, matrices: Vec<SymMat2>) -> Result<Self, Error> {
        if matrices.len() != mesh.cell_count() {
            return Err(Error::MeshMismatch(format!(
                "{} matrices for {} cells",
                matrices.len(),
                mesh.cell_count()
            )));
        }
        Ok(Self { mesh, matrices })
    }

    /// Evaluate a matrix-valued function at cell centroids.
    pub fn from_fn(mesh: &Arc<TriMesh>, f: impl Fn(f64, f64) -> SymMat2) -> Self {
        let matrices = (0..mesh.cell_count())
            .map(|c| {
                let p = mesh.cell_centroid(c);
                f(p[0], p[1])
            })
            .collect();
        Self {
            mesh: Arc::clone(mesh),
            matrices,
        }
    }

    pub fn identity(mesh: &Arc<TriMesh>) -> Self {
        Self::from_fn(mesh, |_, _| SymMat2::identity())
    }

    pub fn mesh(&self) -> &Arc<TriMesh> {
        &self.mesh
    }

    pub fn matrices(&self) -> &[SymMat2] {
        &self.matrices
    }

    /// Smallest eigenvalue over all cells; uniform ellipticity needs this
    /// positive.
    pub fn min_eigenvalue(&self) -> f64 {
        if self.mesh.dim() == 1 {
            self.matrices
                .iter()
                .map(|m| m.a11)
                .fold(f64::INFINITY, f64::min)
        } else {
            self.matrices
                .iter()
                .map(SymMat2::min_eigenvalue)
                .fold(f64::INFINITY, f64::min)
        }
    }

    pub fn check_elliptic(&self) -> Result<(), Error> {
        let lam = self.min_eigenvalue();
        if lam <= 0.0 {
            return Err(Error::NonElliptic(format!(
                "smallest eigenvalue {lam} <= 0"
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Quadrature and level-set geometry
// ---------------------------------------------------------------------------

/// Integral of the P1 interpolant over the whole domain; exact.
pub fn integrate(g: &NodalField) -> f64 {
    let mesh = g.mesh();
    let mut acc = 0.0;
    for c in 0..mesh.cell_count() {
        let nodes = mesh.cell_nodes(c);
        let mean = if mesh.dim() == 1 {
            0.5 * (g.values[nodes[0]] + g.values[nodes[1]])
        } else {
            (g.values[nodes[0]] + g.values[nodes[1]] + g.values[nodes[2]]) / 3.0
        };
        acc += mesh.cell_measure(c) * mean;
    }
    acc
}

/// Exact gradient of the affine interpolant, one 2-vector per cell.
/// In 1D the second component is zero.
pub fn gradient(g: &NodalField) -> Vec<[f64; 2]> {
    let mesh = g.mesh();
    let mut out = Vec::with_capacity(mesh.cell_count());
    if mesh.dim() == 1 {
        for (c, [a, b]) in mesh.segments().iter().enumerate() {
            let slope = (g.values[*b] - g.values[*a]) / mesh.cell_measure(c);
            out.push([slope, 0.0]);
        }
    } else {
        for c in 0..mesh.cell_count() {
            let [a, b, cc] = mesh.triangles()[c];
            let grads = mesh.p1_gradients(c);
            let mut gx = 0.0;
            let mut gy = 0.0;
            for (node, grad) in [a, b, cc].into_iter().zip(grads) {
                gx += g.values[node] * grad[0];
                gy += g.values[node] * grad[1];
            }
            out.push([gx, gy]);
        }
    }
    out
}

/// Per-cell gradients averaged to nodes with cell-measure weights.
pub fn gradient_at_nodes(g: &NodalField) -> Vec<[f64; 2]> {
    let mesh = g.mesh();
    let per_cell = gradient(g);
    let mut acc = vec![[0.0f64; 2]; mesh.node_count()];
    let mut weight = vec![0.0f64; mesh.node_count()];
    for c in 0..mesh.cell_count() {
        let w = mesh.cell_measure(c);
        let nodes = mesh.cell_nodes(c);
        let k = if mesh.dim() == 1 { 2 } else { 3 };
        for &node in nodes.iter().take(k) {
            acc[node][0] += w * per_cell[c][0];
            acc[node][1] += w * per_cell[c][1];
            weight[node] += w;
        }
    }
    for (a, w) in acc.iter_mut().zip(weight) {
        a[0] /= w;
        a[1] /= w;
    }
    acc
}

/// A vertex of a clipped cell polygon: position, psi value, and barycentric
/// coordinates with respect to the owning cell.
#[derive(Debug, Clone, Copy)]
struct ClipVert {
    pos: [f64; 2],
    psi: f64,
    bary: [f64; 3],
}

fn lerp_vert(p: &ClipVert, q: &ClipVert, t: f64) -> ClipVert {
    ClipVert {
        pos: [
            p.pos[0] + t * (q.pos[0] - p.pos[0]),
            p.pos[1] + t * (q.pos[1] - p.pos[1]),
        ],
        psi: p.psi + t * (q.psi - p.psi),
        bary: [
            p.bary[0] + t * (q.bary[0] - p.bary[0]),
            p.bary[1] + t * (q.bary[1] - p.bary[1]),
            p.bary[2] + t * (q.bary[2] - p.bary[2]),
        ],
    }
}

/// Sutherland-Hodgman clip of a convex polygon against `psi > a` (keep_above)
/// or `psi <= a`.
fn clip_polygon(poly: &[ClipVert], a: f64, keep_above: bool, out: &mut Vec<ClipVert>) {
    out.clear();
    let inside = |v: &ClipVert| if keep_above { v.psi > a } else { v.psi <= a };
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let pin = inside(p);
        let qin = inside(q);
        if pin {
            out.push(*p);
        }
        if pin != qin {
            let t = (a - p.psi) / (q.psi - p.psi);
            out.push(lerp_vert(p, q, t.clamp(0.0, 1.0)));
        }
    }
}

fn triangle_clip_verts(mesh: &TriMesh, psi: &[f64], cell: usize) -> [ClipVert; 3] {
    let [a, b, c] = mesh.triangles()[cell];
    [
        ClipVert {
            pos: mesh.nodes()[a],
            psi: psi[a],
            bary: [1.0, 0.0, 0.0],
        },
        ClipVert {
            pos: mesh.nodes()[b],
            psi: psi[b],
            bary: [0.0, 1.0, 0.0],
        },
        ClipVert {
            pos: mesh.nodes()[c],
            psi: psi[c],
            bary: [0.0, 0.0, 1.0],
        },
    ]
}

fn polygon_area(poly: &[ClipVert]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for k in 1..poly.len() - 1 {
        acc += cross(poly[0].pos, poly[k].pos, poly[k + 1].pos);
    }
    0.5 * acc
}

/// Exact integral over the polygon of the affine function with the given
/// nodal values on the owning cell.
fn polygon_integral(poly: &[ClipVert], nodal: [f64; 3]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let val = |v: &ClipVert| v.bary[0] * nodal[0] + v.bary[1] * nodal[1] + v.bary[2] * nodal[2];
    let mut acc = 0.0;
    for k in 1..poly.len() - 1 {
        let area = 0.5 * cross(poly[0].pos, poly[k].pos, poly[k + 1].pos);
        acc += area * (val(&poly[0]) + val(&poly[k]) + val(&poly[k + 1])) / 3.0;
    }
    acc
}

/// Exact area of `{psi > a}` under affine interpolation.
pub fn superlevel_area(psi: &NodalField, a: f64) -> f64 {
    let mesh = psi.mesh();
    let vals = psi.values();
    let mut acc = 0.0;
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            acc += segment_superlevel(vals[*i], vals[*j], a, mesh.cell_measure(c)).0;
        }
        return acc;
    }
    let mut buf = Vec::with_capacity(8);
    for c in 0..mesh.cell_count() {
        let [i, j, k] = mesh.triangles()[c];
        let (lo, hi) = min_max3(vals[i], vals[j], vals[k]);
        if lo > a {
            acc += mesh.cell_measure(c);
        } else if hi <= a {
            // nothing
        } else {
            let tri = triangle_clip_verts(mesh, vals, c);
            clip_polygon(&tri, a, true, &mut buf);
            acc += polygon_area(&buf);
        }
    }
    acc
}

/// Length of `{v > a}` within a segment of the given length, plus the
/// integral of an affine companion when needed (returned via closure form
/// below); here only the measure.
fn segment_superlevel(v0: f64, v1: f64, a: f64, len: f64) -> (f64, f64, f64) {
    // Returns (sublength, t_start, t_end) of {v > a} in local coordinates.
    let in0 = v0 > a;
    let in1 = v1 > a;
    match (in0, in1) {
        (true, true) => (len, 0.0, 1.0),
        (false, false) => (0.0, 0.0, 0.0),
        (true, false) => {
            let t = (a - v0) / (v1 - v0);
            (len * t, 0.0, t)
        }
        (false, true) => {
            let t = (a - v0) / (v1 - v0);
            (len * (1.0 - t), t, 1.0)
        }
    }
}

/// Exact integral of the affine interpolant of `g` over `{psi > a}`.
pub fn superlevel_integral(g: &NodalField, psi: &NodalField, a: f64) -> Result<f64, Error> {
    check_same_mesh(g, psi)?;
    let mesh = psi.mesh();
    let pv = psi.values();
    let gv = g.values();
    let mut acc = 0.0;
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            let (sub, t0, t1) = segment_superlevel(pv[*i], pv[*j], a, mesh.cell_measure(c));
            if sub > 0.0 {
                let g0 = gv[*i] + t0 * (gv[*j] - gv[*i]);
                let g1 = gv[*i] + t1 * (gv[*j] - gv[*i]);
                acc += sub * 0.5 * (g0 + g1);
            }
        }
        return Ok(acc);
    }
    let mut buf = Vec::with_capacity(8);
    for c in 0..mesh.cell_count() {
        let [i, j, k] = mesh.triangles()[c];
        let (lo, hi) = min_max3(pv[i], pv[j], pv[k]);
        let nodal = [gv[i], gv[j], gv[k]];
        if lo > a {
            let mean = (nodal[0] + nodal[1] + nodal[2]) / 3.0;
            acc += mesh.cell_measure(c) * mean;
        } else if hi <= a {
            // nothing
        } else {
            let tri = triangle_clip_verts(mesh, pv, c);
            clip_polygon(&tri, a, true, &mut buf);
            acc += polygon_integral(&buf, nodal);
        }
    }
    Ok(acc)
}

fn min_max3(a: f64, b: f64, c: f64) -> (f64, f64) {
    (a.min(b).min(c), a.max(b).max(c))
}

/// A sample point of the band `{lo < psi <= hi}`: the owning cell and the
/// barycentric coordinates of a vertex of the clipped band region. The
/// samples realize the extrema of any affine-per-cell quantity on the band.
#[derive(Debug, Clone, Copy)]
pub struct BandSample {
    pub cell: usize,
    pub pos: [f64; 2],
    pub bary: [f64; 3],
}

impl BandSample {
    /// Interpolate a nodal field at this sample.
    pub fn interpolate(&self, mesh: &TriMesh, values: &[f64]) -> f64 {
        let nodes = mesh.cell_nodes(self.cell);
        if mesh.dim() == 1 {
            self.bary[0] * values[nodes[0]] + self.bary[1] * values[nodes[1]]
        } else {
            self.bary[0] * values[nodes[0]]
                + self.bary[1] * values[nodes[1]]
                + self.bary[2] * values[nodes[2]]
        }
    }
}

/// Vertices of the clipped band `{lo < psi <= hi}`, cell by cell. Affine
/// functions attain their band extrema at these points.
pub fn band_samples(psi: &NodalField, lo: f64, hi: f64) -> Vec<BandSample> {
    let mesh = psi.mesh();
    let vals = psi.values();
    let mut out = Vec::new();
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            let (v0, v1) = (vals[*i], vals[*j]);
            if v0.min(v1) > hi || v0.max(v1) <= lo {
                continue;
            }
            for t in clip_interval(v0, v1, lo, hi) {
                let p0 = mesh.nodes()[*i];
                let p1 = mesh.nodes()[*j];
                out.push(BandSample {
                    cell: c,
                    pos: [p0[0] + t * (p1[0] - p0[0]), 0.0],
                    bary: [1.0 - t, t, 0.0],
                });
            }
        }
        return out;
    }
    let mut buf_a = Vec::with_capacity(8);
    let mut buf_b = Vec::with_capacity(8);
    for c in 0..mesh.cell_count() {
        let [i, j, k] = mesh.triangles()[c];
        let (vmin, vmax) = min_max3(vals[i], vals[j], vals[k]);
        if vmin > hi || vmax <= lo {
            continue;
        }
        let tri = triangle_clip_verts(mesh, vals, c);
        clip_polygon(&tri, lo, true, &mut buf_a);
        clip_polygon(&buf_a, hi, false, &mut buf_b);
        if polygon_area(&buf_b).abs() < f64::EPSILON * mesh.cell_measure(c) && buf_b.len() < 3 {
            continue;
        }
        for v in &buf_b {
            out.push(BandSample {
                cell: c,
                pos: v.pos,
                bary: v.bary,
            });
        }
    }
    out
}

/// Integral of `g` and measure of the band `{lo < psi <= hi}`, computed
/// cell-locally (equivalent to the superlevel-integral difference but free
/// of bulk cancellation).
pub fn band_integral(
    g: &NodalField,
    psi: &NodalField,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64), Error> {
    check_same_mesh(g, psi)?;
    let mesh = psi.mesh();
    let pv = psi.values();
    let gv = g.values();
    let mut integral = 0.0;
    let mut volume = 0.0;
    if mesh.dim() == 1 {
        for (c, [i, j]) in mesh.segments().iter().enumerate() {
            let (v0, v1) = (pv[*i], pv[*j]);
            if v0.min(v1) > hi || v0.max(v1) <= lo {
                continue;
            }
            let ts = clip_interval(v0, v1, lo, hi);
            if ts.len() == 2 {
                let len = mesh.cell_measure(c) * (ts[1] - ts[0]);
                let g0 = gv[*i] + ts[0] * (gv[*j] - gv[*i]);
                let g1 = gv[*i] + ts[1] * (gv[*j] - gv[*i]);
                integral += len * 0.5 * (g0 + g1);
                volume += len;
            }
        }
        return Ok((integral, volume));
    }
    let mut buf_a = Vec::with_capacity(8);
    let mut buf_b = Vec::with_capacity(8);
    for c in 0..mesh.cell_count() {
        let [i, j, k] = mesh.triangles()[c];
        let (vmin, vmax) = min_max3(pv[i], pv[j], pv[k]);
        if vmin > hi || vmax <= lo {
            continue;
        }
        let nodal = [gv[i], gv[j], gv[k]];
        if vmin > lo && vmax <= hi {
            integral += mesh.cell_measure(c) * (nodal[0] + nodal[1] + nodal[2]) / 3.0;
            volume += mesh.cell_measure(c);
            continue;
        }
        let tri = triangle_clip_verts(mesh, pv, c);
        clip_polygon(&tri, lo, true, &mut buf_a);
        clip_polygon(&buf_a, hi, false, &mut buf_b);
        integral += polygon_integral(&buf_b, nodal);
        volume += polygon_area(&buf_b);
    }
    Ok((integral, volume))
}

/// Endpoints (in local coordinates) of `{lo < v <= hi}` within a segment.
fn clip_interval(v0: f64, v1: f64, lo: f64, hi: f64) -> Vec<f64> {
    let param = |a: f64| -> Option<f64> {
        if (v1 - v0).abs() < f64::EPSILON * (1.0 + v0.abs() + v1.abs()) {
            None
        } else {
            Some(((a - v0) / (v1 - v0)).clamp(0.0, 1.0))
        }
    };
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    let inc = v1 > v0;
    if let Some(t) = param(lo) {
        if inc {
            t0 = t0.max(t);
        } else {
            t1 = t1.min(t);
        }
    }
    if let Some(t) = param(hi) {
        if inc {
            t1 = t1.min(t);
        } else {
            t0 = t0.max(t);
        }
    }
    if t0 < t1 {
        vec![t0, t1]
    } else {
        Vec::new()
    }
}

// ---------------------------------------------------------------------------
// Plain-text mesh and field exchange
// ---------------------------------------------------------------------------

/// Serialize to the plain-text exchange format: header `nodes N triangles T`,
/// then `N` lines `x y boundary_flag`, then `T` lines `i j k` (0-based).
/// Segments of 1D meshes are written with the third index repeating the
/// second.
pub fn export_mesh(mesh: &TriMesh) -> String {
    let mut out = String::new();
    let t = mesh.cell_count();
    out.push_str(&format!("nodes {} triangles {}\n", mesh.node_count(), t));
    for (i, p) in mesh.nodes().iter().enumerate() {
        out.push_str(&format!(
            "{} {} {}\n",
            p[0],
            p[1],
            u8::from(mesh.is_boundary(i))
        ));
    }
    for c in 0..t {
        let [a, b, k] = mesh.cell_nodes(c);
        out.push_str(&format!("{a} {b} {k}\n"));
    }
    out
}

pub fn import_mesh(text: &str) -> Result<Arc<TriMesh>, Error> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty mesh file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "nodes" || parts[2] != "triangles" {
        return Err(Error::Parse(format!("bad mesh header: {header}")));
    }
    let n: usize = parts[1]
        .parse()
        .map_err(|_| Error::Parse("bad node count".into()))?;
    let t: usize = parts[3]
        .parse()
        .map_err(|_| Error::Parse("bad cell count".into()))?;
    let mut nodes = Vec::with_capacity(n);
    let mut boundary = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated node list".into()))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("bad node line: {line}")));
        }
        let x: f64 = fields[0]
            .parse()
            .map_err(|_| Error::Parse("bad x coordinate".into()))?;
        let y: f64 = fields[1]
            .parse()
            .map_err(|_| Error::Parse("bad y coordinate".into()))?;
        let flag: u8 = fields[2]
            .parse()
            .map_err(|_| Error::Parse("bad boundary flag".into()))?;
        nodes.push([x, y]);
        boundary.push(flag != 0);
    }
    let mut triangles = Vec::new();
    let mut segments = Vec::new();
    for _ in 0..t {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated cell list".into()))?;
        let idx: Vec<usize> = line
            .split_whitespace()
            .map(|s| {
                s.parse()
                    .map_err(|_| Error::Parse(format!("bad cell line: {line}")))
            })
            .collect::<Result<_, _>>()?;
        if idx.len() != 3 {
            return Err(Error::Parse(format!("bad cell line: {line}")));
        }
        if idx.iter().any(|&i| i >= n) {
            return Err(Error::Parse(format!("cell index out of range: {line}")));
        }
        if idx[1] == idx[2] {
            segments.push([idx[0], idx[1]]);
        } else {
            triangles.push([idx[0], idx[1], idx[2]]);
        }
    }
    let dim = if triangles.is_empty() && !segments.is_empty() {
        1
    } else {
        2
    };
    if dim == 2 && !segments.is_empty() {
        return Err(Error::Parse("mesh mixes segments and triangles".into()));
    }
    Ok(Arc::new(TriMesh::finalize(
        dim, nodes, triangles, segments, boundary,
    )?))
}

/// One value per line, node order.
pub fn export_field(field: &NodalField) -> String {
    let mut out = String::new();
    for v in field.values() {
        out.push_str(&format!("{v}\n"));
    }
    out
}

pub fn import_field(mesh: &Arc<TriMesh>, text: &str) -> Result<NodalField, Error> {
    let values: Vec<f64> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad field value: {l}")))
        })
        .collect::<Result<_, _>>()?;
    NodalField::new(Arc::clone(mesh), values)
}
