//! The identity case of the level-set symmetrization: on the ball with a
//! radial reference function and identity diffusion, the construction
//! returns its own input — `Lambda_hat = 1`, `F(r) = -r/2`, `psi_hat = psi`.
//!
//! Run with `cargo run --example symmetrize_identity`.

use symm_compare::mesh::CellMatrixField;
use symm_compare::symmetrize::{delta_hat, symmetrize, FluxSource};
use symm_compare::{build_mesh, DomainSpec, NodalField};

fn main() -> Result<(), symm_compare::Error> {
    let mesh = build_mesh(&DomainSpec::disk(1.0, 0.04))?;
    let psi = NodalField::from_fn(&mesh, |x, y| (1.0 - x * x - y * y).max(0.0) / 4.0);
    let a_matrix = CellMatrixField::identity(&mesh);
    let lambda = NodalField::constant(&mesh, 1.0);
    // psi solves -lap psi = 1, so div(grad psi) = -1 identically.
    let divergence = NodalField::constant(&mesh, -1.0);

    let sym = symmetrize(
        &psi,
        &a_matrix,
        &lambda,
        &NodalField::constant(&mesh, 0.0),
        &NodalField::constant(&mesh, 1.0),
        1.0,
        128,
        FluxSource::DivergenceField(&divergence),
    )?;

    let lam_spread = sym
        .lambda_hat
        .values()
        .iter()
        .map(|v| (v - 1.0).abs())
        .fold(0.0f64, f64::max);
    println!("Lambda_hat deviation from 1: {lam_spread:.2e}");

    let mut worst_flux = 0.0f64;
    for (&r, &f) in sym.flux.grid().iter().zip(sym.flux.values()) {
        worst_flux = worst_flux.max((f + r / 2.0).abs());
    }
    println!("flux deviation from F(r) = -r/2: {worst_flux:.2e}");

    let mut worst_psi = 0.0f64;
    for k in 0..=100 {
        let r = sym.ladder.ball_radius() * k as f64 / 100.0;
        worst_psi = worst_psi.max((sym.psi_hat.eval(r) - (1.0 - r * r) / 4.0).abs());
    }
    println!("psi_hat deviation from psi:      {worst_psi:.2e}");
    println!("eta (gap above the levels):      {:+.3e}", sym.eta);
    println!(
        "delta_hat with inf b = 1:        {:.6} (identity case returns inf b)",
        delta_hat(&sym.psi_hat, &sym.ladder, 1.0)?
    );
    Ok(())
}
