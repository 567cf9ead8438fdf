//! Prescribing both turning times of a state.
//!
//! Superposing a state with a shifted, internally evolved copy of itself
//! moves the two turning times independently.  The construction predicts the
//! offsets; the measurement confirms them.

use dirac_front::{
    bump_state, measure_turning_pair, nise_state, random_weights, Evolver, GridSpec,
    Representation, Result, DELTA_DEFAULT,
};

const EX: [f64; 3] = [1.0, 0.0, 0.0];

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let weights = random_weights(grid.spinor_components(), 5);
    let psi1 = bump_state(grid, Representation::Weyl, 1.0, [0.0; 3], 0.5, &weights)?;

    let base = measure_turning_pair(&ev, &psi1, &EX, 1.3, 27, DELTA_DEFAULT)?;
    println!(
        "base state: t_fwd = {:+.4}, t_back = {:+.4}",
        base.forward.t_e, base.backward.t_e
    );
    println!();
    println!("  tau     predicted pair        measured pair");

    for tau in [-0.2, -0.1, 0.0, 0.1, 0.2] {
        let ns = nise_state(&ev, &psi1, &EX, tau, 0.5)?;
        // the forward tent belongs to the unshifted copy, the backward tent
        // to the copy that was evolved by -tau before shifting
        let pred_fwd = base.forward.t_e + ns.te_offset;
        let pred_back = base.backward.t_e + ns.tebar_offset;
        let pair = measure_turning_pair(&ev, &ns.field, &EX, 1.3, 27, DELTA_DEFAULT)?;
        println!(
            "{tau:+.2}   ({pred_fwd:+.4}, {pred_back:+.4})   ({:+.4}, {:+.4})",
            pair.forward.t_e, pair.backward.t_e
        );
    }
    Ok(())
}
