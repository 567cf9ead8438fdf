//! Causality and the min law.
//!
//! Causality bounds every border from below: the carrier can grow at most at
//! light speed.  The min law is sharper and exact: of the two borders at
//! times `t` and `-t`, the smaller one has receded at exactly light speed,
//! `min{border(t), border(-t)} = border(0) - |t|`.

use dirac_front::{
    build_state, check_causality, check_min_law, linspace, Evolver, GridSpec, Representation,
    Result, StateRecipe, DELTA_DEFAULT,
};

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let psi = build_state(&StateRecipe::Bump { center: [0.0; 3], rho: 0.5, seed: 3 }, &ev)?;
    let tol = 3.0 * grid.dx();

    let times = linspace(-1.5, 1.5, 31);
    let dirs = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]];
    let causality = check_causality(&ev, &psi, &dirs, &times, DELTA_DEFAULT, tol)?;
    println!(
        "causality: {} checks, {} violation(s), worst margin {:+.3e}",
        causality.entries.len(),
        causality.violations(),
        causality.worst_margin()
    );

    let half: Vec<f64> = times.iter().copied().filter(|t| *t >= 0.0).collect();
    let min_law = check_min_law(&ev, &psi, &[1.0, 0.0, 0.0], &half, DELTA_DEFAULT, tol)?;
    println!(
        "min law:   {} checks, {} violation(s), worst margin {:+.3e}",
        min_law.entries.len(),
        min_law.violations(),
        min_law.worst_margin()
    );
    // first half of the entries is the +x direction, second half is -x
    println!();
    println!("  t      min of the two borders   border(0) - t");
    for e in min_law.entries.iter().take(min_law.entries.len() / 2).step_by(3) {
        println!("{:+.2}        {:+.5}             {:+.5}", e.t, e.lhs, e.rhs);
    }
    Ok(())
}
