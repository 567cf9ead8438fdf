//! Once |t| exceeds twice the localization radius, the receding border moves
//! exactly linearly: border(t) = crossing - |t|, anchored where the carrier
//! met the light cone.

use dirac_front::{
    build_state, check_long_term, linspace, Evolver, GridSpec, Representation, Result,
    StateRecipe, DELTA_DEFAULT,
};

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let r0 = 0.5;
    let psi = build_state(&StateRecipe::Bump { center: [0.0; 3], rho: r0, seed: 2 }, &ev)?;

    // the law needs |t| >= 2 r0; sample well past that on both sides
    let mut times = linspace(1.0, 2.0, 11);
    times.extend(linspace(-2.0, -1.0, 11));
    let report = check_long_term(
        &ev,
        &psi,
        &[[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]],
        r0,
        &times,
        DELTA_DEFAULT,
        3.0 * grid.dx(),
    )?;

    println!(
        "{}: {} checks, {} violation(s), worst margin {:+.3e}",
        report.name,
        report.entries.len(),
        report.violations(),
        report.worst_margin()
    );
    println!();
    println!("   t       border(t)    anchored line");
    for e in report.entries.iter().take(11).step_by(2) {
        println!(" {:+.2}     {:+.5}     {:+.5}", e.t, e.lhs, e.rhs);
    }
    Ok(())
}
