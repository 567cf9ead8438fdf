//! State constructions: smooth bumps in position and momentum space, exact
//! lattice translations, time reversal, and the composite interference
//! states with prescribed carrier-border turning times.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::DiracAlgebra;
use crate::algebra::Representation;
use crate::border::{fit_tent, measure_traces, BorderScanner, TentFit};
use crate::error::{DiracError, Result};
use crate::evolve::Evolver;
use crate::field::{Space, SpinorField};
use crate::grid::{linspace, GridSpec};

/// Border threshold used by the internal measurements of the composite
/// constructions.
pub const DELTA_DEFAULT: f64 = 1e-6;

/// `exp(-1/(1-r²))` for `r < 1`, zero beyond: the standard smooth compactly
/// supported profile.
pub fn bump_profile(r: f64) -> f64 {
    if r * r < 1.0 {
        (-1.0 / (1.0 - r * r)).exp()
    } else {
        0.0
    }
}

pub fn round_to_lattice(x: f64, dx: f64) -> f64 {
    (x / dx).round() * dx
}

/// Smallest lattice multiple `>= x` (up to rounding slack).
pub fn ceil_to_lattice(x: f64, dx: f64) -> f64 {
    (x / dx - 1e-9).ceil() * dx
}

/// Deterministic generic spinor weights: moduli in `[0.5, 1.5)` so no
/// component degenerates to zero.
pub fn random_weights(n_components: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n_components)
        .map(|_| {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let modulus = 0.5 + rng.gen_range(0.0..1.0);
            Complex64::from_polar(modulus, theta)
        })
        .collect()
}

fn check_weights(grid: &GridSpec, weights: &[Complex64]) -> Result<()> {
    if weights.len() != grid.spinor_components() {
        return Err(DiracError::Argument(format!(
            "expected {} spinor weights, got {}",
            grid.spinor_components(),
            weights.len()
        )));
    }
    if weights.iter().map(|w| w.norm_sqr()).sum::<f64>() == 0.0 {
        return Err(DiracError::Argument("spinor weights must not all vanish".into()));
    }
    Ok(())
}

fn check_inactive_axes(grid: &GridSpec, v: &[f64; 3], what: &str) -> Result<()> {
    for a in grid.dim()..3 {
        if v[a] != 0.0 {
            return Err(DiracError::Argument(format!(
                "{what} component {a} must be zero on a {}-d grid",
                grid.dim()
            )));
        }
    }
    Ok(())
}

/// Normalized smooth bump `ψ(x) = f(|x-center|/ρ)·u` with carrier the
/// closed ball of radius `ρ`.
pub fn bump_state(
    grid: GridSpec,
    representation: Representation,
    mass: f64,
    center: [f64; 3],
    rho: f64,
    weights: &[Complex64],
) -> Result<SpinorField> {
    let dx = grid.dx();
    if !(rho > 2.0 * dx) {
        return Err(DiracError::Resolution(format!(
            "bump radius {rho} needs more than two lattice spacings ({dx})"
        )));
    }
    check_weights(&grid, weights)?;
    check_inactive_axes(&grid, &center, "bump center")?;
    for a in 0..grid.dim() {
        if center[a].abs() + rho > grid.extent() / 2.0 - 2.0 * dx {
            return Err(DiracError::Config(format!(
                "bump carrier reaches the periodic boundary along axis {a}"
            )));
        }
    }
    let mut psi = SpinorField::zeros(grid, representation, Space::Position, mass)?;
    for v in 0..grid.volume() {
        let x = grid.position_of(v);
        let d2 = (0..3).map(|a| (x[a] - center[a]).powi(2)).sum::<f64>();
        let f = bump_profile(d2.sqrt() / rho);
        if f > 0.0 {
            for (c, w) in weights.iter().enumerate() {
                psi.comps[c][v] = w * f;
            }
        }
    }
    psi.normalized()
}

/// Normalized state whose momentum representation is a smooth bump around
/// `p_center`.  Also reports the minimal group speed `v = min |p|/ε(p)` over
/// the momentum carrier (zero when the carrier touches `p = 0`).
pub fn momentum_bump_state(
    grid: GridSpec,
    representation: Representation,
    mass: f64,
    p_center: [f64; 3],
    p_radius: f64,
    weights: &[Complex64],
) -> Result<(SpinorField, f64)> {
    let dp = grid.dp();
    if !(p_radius > 2.0 * dp) {
        return Err(DiracError::Resolution(format!(
            "momentum bump radius {p_radius} needs more than two momentum bins ({dp})"
        )));
    }
    check_weights(&grid, weights)?;
    check_inactive_axes(&grid, &p_center, "momentum center")?;
    let p_max = (grid.n() / 2) as f64 * dp;
    for a in 0..grid.dim() {
        if p_center[a].abs() + p_radius > p_max - 2.0 * dp {
            return Err(DiracError::Config(format!(
                "momentum carrier exceeds the resolved band along axis {a}"
            )));
        }
    }
    let mut phi = SpinorField::zeros(grid, representation, Space::Momentum, mass)?;
    let mut v_min = f64::INFINITY;
    for v in 0..grid.volume() {
        let p = grid.momentum_of(v);
        let d2 = (0..3).map(|a| (p[a] - p_center[a]).powi(2)).sum::<f64>();
        let f = bump_profile(d2.sqrt() / p_radius);
        if f > 0.0 {
            for (c, w) in weights.iter().enumerate() {
                phi.comps[c][v] = w * f;
            }
            let p_abs = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            v_min = v_min.min(p_abs / (p_abs * p_abs + mass * mass).sqrt());
        }
    }
    if !v_min.is_finite() {
        return Err(DiracError::UndefinedState("momentum bump hit no lattice modes".into()));
    }
    let psi = phi.normalized()?.to_space(Space::Position);
    Ok((psi, v_min))
}

/// `(Wψ)(x) = ψ(x - b)` as an exact circular index shift.  The shift must be
/// a lattice-multiple vector; there is no interpolation.
pub fn translate(psi: &SpinorField, shift: &[f64; 3]) -> Result<SpinorField> {
    if psi.space != Space::Position {
        return Err(DiracError::Argument(
            "translation acts on position-space fields".into(),
        ));
    }
    let grid = psi.grid;
    check_inactive_axes(&grid, shift, "translation")?;
    let dx = grid.dx();
    let n = grid.n() as i64;
    let mut steps = [0i64; 3];
    for a in 0..grid.dim() {
        let k = shift[a] / dx;
        let kr = k.round();
        if (k - kr).abs() > 1e-9 * (1.0 + k.abs()) {
            return Err(DiracError::Argument(format!(
                "translation component {} = {} is not a lattice multiple of {}",
                a, shift[a], dx
            )));
        }
        steps[a] = (kr as i64).rem_euclid(n);
    }
    if steps == [0, 0, 0] {
        return Ok(psi.clone());
    }
    let mut out = psi.clone();
    for (c, comp) in psi.comps.iter().enumerate() {
        for v in 0..grid.volume() {
            let idx = grid.decompose(v);
            let mut src = [0usize; 3];
            for a in 0..3 {
                src[a] = ((idx[a] as i64 - steps[a]).rem_euclid(n)) as usize;
            }
            out.comps[c][v] = comp[grid.compose(src)];
        }
    }
    Ok(out)
}

/// Antiunitary time reversal `𝒯ψ = ω ψ̄` (chiral representation only).
pub fn time_reverse(psi: &SpinorField) -> Result<SpinorField> {
    if psi.representation != Representation::Weyl {
        return Err(DiracError::Config(
            "time reversal is implemented in the chiral (Weyl) representation only".into(),
        ));
    }
    let alg = DiracAlgebra::new(psi.representation, psi.grid.dim())?;
    let pos = psi.to_space(Space::Position);
    let mut out = pos.clone();
    let n_c = pos.n_components();
    for v in 0..pos.grid.volume() {
        for c in 0..n_c {
            let mut acc = Complex64::default();
            for d in 0..n_c {
                acc += alg.omega.a[c][d] * pos.comps[d][v].conj();
            }
            out.comps[c][v] = acc;
        }
    }
    Ok(out)
}

/// Superposition of a state with a shifted, internally evolved copy of
/// itself.  The copy sits deeper along `e`, so the `e`-border tracks the
/// base state while the `ē`-border tracks the copy, whose tent is displaced
/// in time by `-tau`.
#[derive(Clone, Debug)]
pub struct NiseState {
    pub field: SpinorField,
    pub tau: f64,
    pub shift: f64,
    /// Predicted turning-time offsets relative to the base state's fitted
    /// turning times along `e` and `-e`.
    pub te_offset: f64,
    pub tebar_offset: f64,
}

pub fn nise_state(
    ev: &Evolver,
    psi1: &SpinorField,
    e: &[f64; 3],
    tau: f64,
    delta_shift: f64,
) -> Result<NiseState> {
    if !(delta_shift > 0.0) {
        return Err(DiracError::Argument(format!(
            "superposition shift must be positive, got {delta_shift}"
        )));
    }
    if tau.abs() > delta_shift {
        return Err(DiracError::Argument(format!(
            "internal evolution lag |{tau}| must not exceed the shift {delta_shift}"
        )));
    }
    let grid = ev.grid();
    let e = grid.unit_direction(e)?;
    let base = psi1.to_space(Space::Position);
    let r1 = BorderScanner::new(&base)?.carrier_radius(DELTA_DEFAULT)?;
    if r1 + tau.abs() + delta_shift > grid.extent() / 2.0 - 2.0 * grid.dx() {
        return Err(DiracError::Config(
            "shifted copy would reach the periodic boundary".into(),
        ));
    }
    let copy = ev.evolve(&base, tau)?;
    let shift = [delta_shift * e[0], delta_shift * e[1], delta_shift * e[2]];
    let moved = translate(&copy, &shift)?;
    let field = base.add(&moved)?.normalized()?;
    Ok(NiseState { field, tau, shift: delta_shift, te_offset: 0.0, tebar_offset: -tau })
}

/// Fitted tents along `e` and `-e` plus the t = 0 borders, from one shared
/// evolution sweep over a symmetric time window.
#[derive(Clone, Debug)]
pub struct TentPair {
    pub forward: TentFit,
    pub backward: TentFit,
    pub border_fwd: f64,
    pub border_back: f64,
}

impl TentPair {
    /// Carrier width at t = 0.
    pub fn width(&self) -> f64 {
        -self.border_back - self.border_fwd
    }
}

pub fn measure_turning_pair(
    ev: &Evolver,
    psi: &SpinorField,
    e: &[f64; 3],
    half_width: f64,
    steps: usize,
    delta: f64,
) -> Result<TentPair> {
    let e = ev.grid().unit_direction(e)?;
    let ebar = [-e[0], -e[1], -e[2]];
    let pos = psi.to_space(Space::Position);
    let base = BorderScanner::new(&pos)?;
    let border_fwd = base.border(&e, delta)?;
    let border_back = base.border(&ebar, delta)?;
    let times = linspace(-half_width, half_width, steps);
    let traces = measure_traces(ev, &pos, &[e, ebar], &times, delta)?;
    Ok(TentPair {
        forward: fit_tent(&traces[0])?,
        backward: fit_tent(&traces[1])?,
        border_fwd,
        border_back,
    })
}

/// State whose carrier lies in the slab `a ≤ x·e ≤ b` with both turning
/// times at the prescribed `tau`.
#[derive(Clone, Debug)]
pub struct DsabtpState {
    pub field: SpinorField,
    pub tau: f64,
    pub a: f64,
    pub b: f64,
}

/// Pipeline: bump, measure its tents, superpose a shifted copy so both
/// turning times coincide, translate that common time to zero, recenter,
/// then evolve by `-tau` (displacing both tents to `+tau`) and move the
/// carrier into the slab.
pub fn dsabtp_state(
    ev: &Evolver,
    e: &[f64; 3],
    a: f64,
    b: f64,
    tau: f64,
    seed: u64,
) -> Result<DsabtpState> {
    if !(a < b) {
        return Err(DiracError::Argument(format!("slab needs a < b, got [{a}, {b}]")));
    }
    let half = (b - a) / 2.0;
    if !(tau.abs() < half) {
        return Err(DiracError::Argument(format!(
            "turning time |{tau}| must be below the slab half-width {half}"
        )));
    }
    let grid = *ev.grid();
    let dx = grid.dx();
    if a.abs().max(b.abs()) > grid.extent() / 2.0 - 2.0 * dx {
        return Err(DiracError::Config("slab reaches the periodic boundary".into()));
    }
    let e = grid.unit_direction(e)?;
    let rho = half - tau.abs();
    let rho1 = (rho - 4.0 * dx).max(0.6 * rho);
    if rho1 <= 2.0 * dx {
        return Err(DiracError::Resolution(format!(
            "slab [{a}, {b}] with turning time {tau} leaves bump radius {rho1:.4}, \
             too thin for spacing {dx}"
        )));
    }
    let weights = random_weights(grid.spinor_components(), seed);
    let psi1 = bump_state(grid, ev.algebra().representation, ev.mass(), [0.0; 3], rho1, &weights)?;
    let pair1 =
        measure_turning_pair(ev, &psi1, &e, 2.0 * rho1 + 6.0 * dx, 25, DELTA_DEFAULT)?;
    let te1 = pair1.forward.t_e;
    let tebar1 = pair1.backward.t_e;
    // Shift the copy's tent so both turning times land on te1, then move
    // that instant to t = 0.
    let tau_prime = tebar1 - te1;
    let delta_shift = ceil_to_lattice(tau_prime.abs(), dx).max(dx);
    let nise = nise_state(ev, &psi1, &e, tau_prime, delta_shift)?;
    let eta_raw = ev.evolve(&nise.field, te1)?;
    let scan = BorderScanner::new(&eta_raw)?;
    let ebar = [-e[0], -e[1], -e[2]];
    let mid = (scan.border(&e, DELTA_DEFAULT)? - scan.border(&ebar, DELTA_DEFAULT)?) / 2.0;
    let recenter = [
        round_to_lattice(-mid * e[0], dx),
        round_to_lattice(-mid * e[1], dx),
        round_to_lattice(-mid * e[2], dx),
    ];
    let eta = translate(&eta_raw, &recenter)?;
    let slab0 = ev.evolve(&eta, -tau)?;
    let center = (a + b) / 2.0;
    let place = [
        round_to_lattice(center * e[0], dx),
        round_to_lattice(center * e[1], dx),
        round_to_lattice(center * e[2], dx),
    ];
    let field = translate(&slab0, &place)?;
    Ok(DsabtpState { field, tau, a, b })
}

/// Sharp indicator cut to the slab `α₁ ≤ x·e ≤ α₂`, renormalized.  The
/// result is bounded localized but no longer smooth.
pub fn slab_cut(psi: &SpinorField, e: &[f64; 3], alpha1: f64, alpha2: f64) -> Result<SpinorField> {
    if !(alpha1 < alpha2) {
        return Err(DiracError::Argument(format!(
            "cut needs α₁ < α₂, got [{alpha1}, {alpha2}]"
        )));
    }
    let pos = psi.to_space(Space::Position);
    let grid = pos.grid;
    let e = grid.unit_direction(e)?;
    let mut out = pos.clone();
    for v in 0..grid.volume() {
        let x = grid.position_of(v);
        let proj = x[0] * e[0] + x[1] * e[1] + x[2] * e[2];
        if proj < alpha1 || proj > alpha2 {
            for comp in out.comps.iter_mut() {
                comp[v] = Complex64::default();
            }
        }
    }
    if out.norm_sq() <= 1e-28 {
        return Err(DiracError::EmptyCut(format!(
            "no carrier mass in the slab [{alpha1}, {alpha2}]"
        )));
    }
    out.normalized()
}

/// Serializable construction recipes for the experiment configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateRecipe {
    Bump {
        center: [f64; 3],
        rho: f64,
        #[serde(default)]
        seed: u64,
    },
    MomentumBump {
        p_center: [f64; 3],
        p_radius: f64,
        #[serde(default)]
        seed: u64,
    },
    Nise {
        rho: f64,
        direction: [f64; 3],
        tau: f64,
        delta_shift: f64,
        #[serde(default)]
        seed: u64,
    },
    Dsabtp {
        direction: [f64; 3],
        a: f64,
        b: f64,
        tau: f64,
        #[serde(default)]
        seed: u64,
    },
    SlabCut {
        base: Box<StateRecipe>,
        direction: [f64; 3],
        a: f64,
        b: f64,
    },
}

pub fn build_state(recipe: &StateRecipe, ev: &Evolver) -> Result<SpinorField> {
    let grid = *ev.grid();
    let repr = ev.algebra().representation;
    let mass = ev.mass();
    match recipe {
        StateRecipe::Bump { center, rho, seed } => {
            let weights = random_weights(grid.spinor_components(), *seed);
            bump_state(grid, repr, mass, *center, *rho, &weights)
        }
        StateRecipe::MomentumBump { p_center, p_radius, seed } => {
            let weights = random_weights(grid.spinor_components(), *seed);
            momentum_bump_state(grid, repr, mass, *p_center, *p_radius, &weights)
                .map(|(psi, _)| psi)
        }
        StateRecipe::Nise { rho, direction, tau, delta_shift, seed } => {
            let weights = random_weights(grid.spinor_components(), *seed);
            let psi1 = bump_state(grid, repr, mass, [0.0; 3], *rho, &weights)?;
            nise_state(ev, &psi1, direction, *tau, *delta_shift).map(|n| n.field)
        }
        StateRecipe::Dsabtp { direction, a, b, tau, seed } => {
            dsabtp_state(ev, direction, *a, *b, *tau, *seed).map(|d| d.field)
        }
        StateRecipe::SlabCut { base, direction, a, b } => {
            let inner = build_state(base, ev)?;
            slab_cut(&inner, direction, *a, *b)
        }
    }
}
