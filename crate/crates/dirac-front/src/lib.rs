//! Numerical laboratory for exact free Dirac time evolution.
//!
//! The evolution is computed in momentum space, mode by mode, from the
//! closed form `cos(tε)·I + i·t·sinc(tε)·h(p)` of the propagator, so the
//! only discretization is the lattice itself: no time stepping, no operator
//! splitting, and unitarity to rounding error.  On top of that sit
//! measurement tools for how the carrier (the essential support) of a state
//! moves:
//!
//! - [`border`]: δ-borders of the carrier along arbitrary directions,
//!   tent fits for turning times, and checkers for the light-cone laws
//!   (causality, the min law, two-sided bounds, long-term recession).
//! - [`states`]: reproducible state factories, including superpositions
//!   with prescribed turning times and slab-confined engineered states.
//! - [`entire`]: overflow-free log-magnitudes of the entire functions
//!   behind the propagator, two-sided exponential sandwiches, and growth
//!   (indicator) estimates tying a state's transform to its carrier.
//! - [`experiment`]: named, configured runs that write deterministic CSV
//!   and JSON artifacts, used by the `dirac-front` binary.
//!
//! The crate's examples directory is the guided tour: each example is a
//! runnable demonstration of one capability.

pub mod algebra;
pub mod border;
pub mod entire;
pub mod error;
pub mod evolve;
pub mod experiment;
pub mod fft;
pub mod field;
pub mod grid;
pub mod parallel;
pub mod states;

pub use algebra::{DiracAlgebra, EnergySign, Representation};
pub use border::{
    border, border_trace, check_causality, check_long_term, check_min_law, check_upper_bound,
    fit_tent, fit_tent_free_slopes, measure_traces, shell_report, BorderScanner, BorderTrace,
    CheckEntry, CheckReport, ShellRow, ShellTable, TentFit,
};
pub use entire::{
    efsinc_check, entire_cos_log, entire_sinc_log, fourier_laplace, fourier_laplace_log,
    p_indicator_estimate, support_function, ComplexPoint, CorrectionKind, EfsincReport,
    IndicatorEstimate, LogMagnitude, SandwichKind,
};
pub use error::{DiracError, Result};
pub use evolve::{sinc, Evolver};
pub use experiment::{
    config_from_json, list_experiments, run, validate_config, ExperimentConfig, ExperimentKind,
    RunManifest,
};
pub use field::{Space, SpinorField};
pub use grid::{linspace, GridSpec};
pub use states::{
    build_state, bump_state, dsabtp_state, measure_turning_pair, momentum_bump_state, nise_state,
    random_weights, slab_cut, time_reverse, translate, DsabtpState, NiseState, StateRecipe,
    TentPair, DELTA_DEFAULT,
};
