//! Forward and backward turning times share a budget: their absolute values
//! sum to at most the carrier width.
//!
//! Measures both tents of a generic state and prints the budget check, plus
//! the two-sided border bounds that hold at every sampled time.

use dirac_front::{
    build_state, check_upper_bound, linspace, measure_turning_pair, Evolver, GridSpec,
    Representation, Result, StateRecipe, DELTA_DEFAULT,
};

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let recipe = StateRecipe::Nise {
        rho: 0.5,
        direction: [1.0, 0.0, 0.0],
        tau: 0.15,
        delta_shift: 0.25,
        seed: 11,
    };
    let psi = build_state(&recipe, &ev)?;

    let pair = measure_turning_pair(&ev, &psi, &[1.0, 0.0, 0.0], 1.3, 27, DELTA_DEFAULT)?;
    let budget = pair.forward.t_e.abs() + pair.backward.t_e.abs();
    println!("forward turning time  {:+.4}", pair.forward.t_e);
    println!("backward turning time {:+.4}", pair.backward.t_e);
    println!("carrier width          {:.4}", pair.width());
    println!("|t_fwd| + |t_back| = {budget:.4}  <=  width: {}", budget <= pair.width());

    // the same budget, plus per-time two-sided bounds, as a structured report
    let times = linspace(-1.0, 1.0, 21);
    let report =
        check_upper_bound(&ev, &psi, &[1.0, 0.0, 0.0], &times, DELTA_DEFAULT, 3.0 * grid.dx())?;
    println!();
    println!(
        "{}: {} entries, {} violation(s), worst margin {:+.3e}",
        report.name,
        report.entries.len(),
        report.violations(),
        report.worst_margin()
    );
    Ok(())
}
