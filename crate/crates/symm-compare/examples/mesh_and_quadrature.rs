//! Build meshes for the supported domain kinds and exercise the exact
//! superlevel-set geometry: areas, clipped integrals, and the text exchange
//! format.
//!
//! Run with `cargo run --example mesh_and_quadrature`.

use symm_compare::mesh::{export_mesh, superlevel_area, superlevel_integral};
use symm_compare::{build_mesh, integrate, DomainSpec, NodalField};

fn main() -> Result<(), symm_compare::Error> {
    let disk = build_mesh(&DomainSpec::disk(1.0, 0.05))?;
    println!(
        "disk:     {} nodes, {} triangles, area {:.6} (pi = {:.6}), max edge {:.4}, min angle {:.1} deg",
        disk.node_count(),
        disk.cell_count(),
        disk.area(),
        std::f64::consts::PI,
        disk.max_edge_length(),
        disk.min_angle_deg()
    );

    let square = build_mesh(&DomainSpec::polygon(
        vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
        0.05,
    ))?;
    println!(
        "square:   {} nodes, {} triangles, area {:.12}",
        square.node_count(),
        square.cell_count(),
        square.area()
    );

    let interval = build_mesh(&DomainSpec::interval(-1.0, 1.0, 0.1))?;
    println!(
        "interval: {} nodes, {} segments, length {:.12}",
        interval.node_count(),
        interval.cell_count(),
        interval.area()
    );

    // Exact superlevel geometry of the P1 interpolant.
    let psi = NodalField::from_fn(&disk, |x, y| (1.0 - x * x - y * y) / 4.0);
    let area = superlevel_area(&psi, 0.125);
    println!(
        "area of {{psi > 1/8}} for psi = (1-r^2)/4: {:.6} (exact pi/2 = {:.6})",
        area,
        std::f64::consts::PI / 2.0
    );
    let g = NodalField::from_fn(&disk, |x, y| x * x + y * y);
    let clipped = superlevel_integral(&g, &psi, 0.125)?;
    println!("integral of r^2 over the same set: {clipped:.6}");
    println!("integral of r^2 over the disk:     {:.6}", integrate(&g));

    // Plain-text exchange format.
    let text = export_mesh(&interval);
    println!("\nmesh file header: {}", text.lines().next().unwrap());
    Ok(())
}
