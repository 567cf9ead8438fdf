//! Thin slabs cut from the far face of an engineered state inherit a late
//! backward turning time: the cut's turning time is at least half its own
//! carrier width.
//!
//! The parent state is slab-confined with both turning times at +1, so its
//! far face is made of content that keeps receding for a while.  A sharp
//! indicator cut of that face produces a new state; the theorems apply to it
//! unchanged because they only require bounded localization.
//!
//! Sharp cuts carry O(1/p) momentum tails, so the border is sampled at
//! whole-voxel times where that content translates silently.

use dirac_front::{
    dsabtp_state, fit_tent, measure_traces, slab_cut, BorderScanner, Evolver, GridSpec,
    Representation, Result, DELTA_DEFAULT,
};

const EX: [f64; 3] = [1.0, 0.0, 0.0];

fn main() -> Result<()> {
    let grid = GridSpec::new(1, 512, 16.0)?;
    let ev = Evolver::new(grid, Representation::Weyl, 1.0)?;
    let dx = grid.dx();
    let st = dsabtp_state(&ev, &EX, -1.5, 1.5, 1.0, 0)?;

    let meas = [-1.0, 0.0, 0.0];
    let scan = BorderScanner::new(&st.field)?;
    let face = -scan.border(&meas, DELTA_DEFAULT)?;
    println!("parent slab [-1.5, 1.5], turning times at +1, far face at {face:+.4}");
    println!();
    println!(" cut width    measured width    turning time    half width");

    let times: Vec<f64> = (0..33).map(|k| (k as f64 - 16.0) * 2.0 * dx).collect();
    for w in [0.125, 0.25, 0.5, 0.75] {
        let cut = slab_cut(&st.field, &EX, face - w, face + dx / 2.0)?;
        let cs = BorderScanner::new(&cut)?;
        let width = -cs.border(&meas, DELTA_DEFAULT)? - cs.border(&EX, DELTA_DEFAULT)?;
        let traces = measure_traces(&ev, &cut, &[meas], &times, DELTA_DEFAULT)?;
        let tent = fit_tent(&traces[0])?;
        let late = if tent.t_e >= 0.5 * width { "late" } else { "EARLY" };
        println!(
            "  {w:.3}          {width:.4}          {:+.4}         {:.4}   {late}",
            tent.t_e,
            0.5 * width
        );
    }
    Ok(())
}
