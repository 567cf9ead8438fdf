//! Why the Dirac evolution and not a scalar phase: the Newton-Wigner style
//! evolution e^{it·ε(p)} applied to the same initial data leaks outside the
//! light cone at every finite time.
//!
//! The leak is not a discretization artifact.  Scalar-phase evolution is not
//! causal; only asymptotically does its outside-the-cone mass decay.  The
//! genuine Dirac evolution keeps that mass at lattice-noise level.

use dirac_front::{
    build_state, EnergySign, Evolver, GridSpec, Representation, Result, StateRecipe,
};

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let rho = 0.5;
    let psi = build_state(&StateRecipe::Bump { center: [0.0; 3], rho, seed: 4 }, &ev)?;

    println!("   t    outside-cone mass (Dirac)   outside-cone mass (scalar phase)");
    for k in 1..=8 {
        let t = 0.5 * k as f64;
        let cone = rho + t;
        let dirac = ev.evolve(&psi, t)?.mass_outside(cone)?;
        let nw = ev.evolve_nw(&psi, t, EnergySign::Plus)?.mass_outside(cone)?;
        println!(" {t:>4.1}        {dirac:.3e}                  {nw:.3e}");
    }
    println!();
    println!("the scalar-phase column decays only slowly with t; the Dirac column");
    println!("is rounding plus aliasing noise, orders of magnitude below it");
    Ok(())
}
