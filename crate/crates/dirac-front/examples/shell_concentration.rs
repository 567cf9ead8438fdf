//! A momentum-localized state leaves every fixed ball and piles up near the
//! light shell |x| = |t|.
//!
//! The state occupies momenta |p| in [1, 2], so every group speed is close
//! to 1.  Over time the mass inside a fixed ball drains away polynomially
//! while the mass outside the ball of radius |t| also vanishes: what is left
//! concentrates on a thin shell expanding at light speed.

use dirac_front::{
    momentum_bump_state, random_weights, shell_report, Evolver, GridSpec, Representation, Result,
};

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 48.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let weights = random_weights(grid.spinor_components(), 9);
    let (psi, spread) =
        momentum_bump_state(grid, Representation::Weyl, 1.0, [1.5, 0.0, 0.0], 0.5, &weights)?;
    println!("initial position spread ~ {spread:.2}");
    println!();

    let times: Vec<f64> = (1..=10).map(|k| k as f64).collect();
    let table = shell_report(&ev, &psi, &times, 1.0)?;
    println!("   t     mass in B_1    mass outside B_t");
    for row in &table.rows {
        println!(" {:>4.1}     {:.3e}       {:.3e}", row.t, row.inner, row.outer);
    }

    if let Some(q) = table.fit_decay_exponent(2.0, 10.0) {
        println!();
        println!("inner-ball drain: mass ~ (1+t)^{q:.2}");
    }
    Ok(())
}
