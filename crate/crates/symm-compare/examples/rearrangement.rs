//! Distribution functions and the decreasing Schwarz rearrangement:
//! equimeasurability, norm preservation, and the Hardy-Littlewood and
//! Polya-Szego inequalities on a non-radial field.
//!
//! Run with `cargo run --example rearrangement`.

use symm_compare::rearrange::{hardy_littlewood_margin, lp_norm, polya_szego_margin};
use symm_compare::{
    build_mesh, distribution_function, schwarz_rearrangement, DomainSpec, NodalField,
};

fn main() -> Result<(), symm_compare::Error> {
    let mesh = build_mesh(&DomainSpec::ellipse(1.0, 0.5, 0.03))?;
    let u = NodalField::from_fn(&mesh, |x, y| {
        (2.0 * x).cos() * (1.0 - x * x - 4.0 * y * y).max(0.0)
    });

    let dist = distribution_function(&u);
    println!(
        "distribution: {} breakpoints, total measure {:.6}",
        dist.breakpoints().len(),
        dist.total()
    );

    let star = schwarz_rearrangement(&u, 2);
    println!(
        "rearranged onto the ball of radius {:.6}; u*(0) = {:.6} = max u = {:.6}",
        star.radius(),
        star.values()[0],
        u.max()
    );

    // equimeasurability at a few levels
    for t in [0.1, 0.3, 0.6] {
        println!(
            "  mu({t:.1}) field {:.6} vs profile {:.6}",
            dist.eval(t),
            star.superlevel_measure(t)
        );
    }

    let l2_field = lp_norm(&u, 2.0);
    let l2_star = lp_norm(&star, 2.0);
    println!("L2 norms: field {l2_field:.6} vs rearranged {l2_star:.6}");

    let g = NodalField::from_fn(&mesh, |x, y| 1.0 + x - y);
    println!(
        "Hardy-Littlewood margin (must be >= 0): {:+.3e}",
        hardy_littlewood_margin(&u, &g, 2)?
    );
    println!(
        "Polya-Szego margin (must be >= 0):      {:+.3e}",
        polya_szego_margin(&u, 2)
    );
    Ok(())
}
