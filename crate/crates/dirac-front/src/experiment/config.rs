//! Typed experiment configuration: JSON parsing, per-experiment defaults,
//! and validation that reports every problem at once.

use serde::{Deserialize, Serialize};

use crate::algebra::{EnergySign, Representation};
use crate::entire::{CorrectionKind, SandwichKind};
use crate::error::{DiracError, Result};
use crate::grid::{linspace, GridSpec};
use crate::states::StateRecipe;

use super::ExperimentKind;

/// Lattice parameters before validation; `GridSpec::new` enforces the
/// power-of-two and extent constraints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridParams {
    pub dim: usize,
    pub n: usize,
    pub extent: f64,
}

impl GridParams {
    pub fn build(&self) -> Result<GridSpec> {
        GridSpec::new(self.dim, self.n, self.extent)
    }

    fn dx(&self) -> f64 {
        if self.n == 0 { f64::NAN } else { self.extent / self.n as f64 }
    }
}

/// Evenly spaced evolution times, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSampling {
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
}

impl TimeSampling {
    pub fn new(t_min: f64, t_max: f64, steps: usize) -> Self {
        TimeSampling { t_min, t_max, steps }
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.steps)
    }

    pub fn step(&self) -> f64 {
        if self.steps < 2 {
            0.0
        } else {
            (self.t_max - self.t_min) / (self.steps - 1) as f64
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TremblingParams {
    /// Prescribed forward turning time.
    pub t1: f64,
    /// Prescribed backward turning time; must exceed `t1`.
    pub t2: f64,
}

impl Default for TremblingParams {
    fn default() -> Self {
        TremblingParams { t1: 0.0, t2: 0.3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongTermParams {
    /// Localization radius; the linear regime starts at `|t| = 2 r0`.
    pub r0: f64,
}

impl Default for LongTermParams {
    fn default() -> Self {
        LongTermParams { r0: 0.5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShellParams {
    /// Radius of the fixed inner ball whose mass must empty out.
    pub r_inner: f64,
    /// Time range for the log-log fit of the outer mass.
    pub fit_t_min: f64,
    pub fit_t_max: f64,
    /// The fitted outer-decay exponent must not exceed this.
    pub exponent_max: f64,
    /// Upper bound on the inner mass fraction at the final time.
    pub inner_max: f64,
}

impl Default for ShellParams {
    fn default() -> Self {
        ShellParams {
            r_inner: 0.5,
            fit_t_min: 2.0,
            fit_t_max: 10.0,
            exponent_max: -2.0,
            inner_max: 0.1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EfsincParams {
    pub function: SandwichKind,
    pub t: f64,
    pub mu: f64,
    pub u_min: f64,
    pub u_max: f64,
    pub u_steps: usize,
    /// Lower edge of the `v` grid; defaults to just above the validity
    /// threshold of the sandwich.
    pub v_min: Option<f64>,
    pub v_max: f64,
    pub v_steps: usize,
}

impl Default for EfsincParams {
    fn default() -> Self {
        EfsincParams {
            function: SandwichKind::Cos,
            t: 1.0,
            mu: 1.0,
            u_min: -50.0,
            u_max: 50.0,
            u_steps: 200,
            v_min: None,
            v_max: 50.0,
            v_steps: 200,
        }
    }
}

impl EfsincParams {
    /// Validity threshold in `|v|` below which the sandwich is not claimed.
    pub fn threshold(&self) -> f64 {
        2.0f64.sqrt() * self.mu + std::f64::consts::LN_2 / (2.0 * self.t.abs())
    }

    /// Resolved lower edge of the `v` grid.
    pub fn v_lo(&self) -> f64 {
        self.v_min
            .unwrap_or_else(|| self.threshold() + 0.02 * (1.0 + self.mu))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IndicatorParams {
    pub function: SandwichKind,
    pub t: f64,
    pub mu: f64,
    pub lambda: [f64; 3],
    /// Real base point of the imaginary ray.
    pub x: [f64; 3],
    pub radii: Vec<f64>,
    /// Relative accuracy demanded of the final corrected estimate.
    pub rel_tol: f64,
}

impl Default for IndicatorParams {
    fn default() -> Self {
        IndicatorParams {
            function: SandwichKind::Cos,
            t: 1.0,
            mu: 1.0,
            lambda: [1.0, 0.0, 0.0],
            x: [0.3, 0.0, 0.0],
            radii: vec![1e2, 1e3, 1e4],
            rel_tol: 0.01,
        }
    }
}

impl IndicatorParams {
    pub fn correction(&self) -> CorrectionKind {
        match self.function {
            SandwichKind::Cos => CorrectionKind::None,
            SandwichKind::Sinc => CorrectionKind::InverseModulus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PpParams {
    pub directions: Vec<[f64; 3]>,
    pub radii: Vec<f64>,
    pub rel_tol: f64,
    /// Quantile level used for the carrier support function.  Smaller than
    /// the usual border level because the transform's growth is driven by
    /// the outermost voxels regardless of their mass.
    pub border_delta: f64,
}

impl Default for PpParams {
    fn default() -> Self {
        let s3 = 1.0 / 3.0f64.sqrt();
        let s2 = 1.0 / 2.0f64.sqrt();
        PpParams {
            directions: vec![
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
                [s3, s3, s3],
                [s2, -s2, 0.0],
            ],
            radii: vec![1e2, 1e3, 1e4],
            rel_tol: 0.05,
            // far below the relative mass of any voxel plane the transform's
            // growth can resolve; the state is built in position space, so
            // exact zeros survive and no FFT round-off dust reaches the scan
            border_delta: 1e-15,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GptebParams {
    /// Slab faces along the direction: carrier sits in `a <= x·e <= b`.
    pub a: f64,
    pub b: f64,
    /// Prescribed common turning time of the parent state; nonzero.
    pub tau: f64,
    /// Widths of the far-face cuts to sweep.
    pub cut_widths: Vec<f64>,
}

impl Default for GptebParams {
    fn default() -> Self {
        GptebParams {
            a: -1.5,
            b: 1.5,
            tau: 1.0,
            cut_widths: vec![0.25, 0.5, 0.75],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchParams {
    /// Number of random configurations to try.
    pub samples: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { samples: 6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NwParams {
    /// Energy branch whose scalar phase drives the comparison evolution.
    pub energy: EnergySign,
}

impl Default for NwParams {
    fn default() -> Self {
        NwParams { energy: EnergySign::Plus }
    }
}

fn d_mass() -> f64 {
    1.0
}

fn d_representation() -> Representation {
    Representation::Weyl
}

fn d_direction() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

fn d_delta() -> f64 {
    crate::states::DELTA_DEFAULT
}

/// Full description of a run.  Only `experiment` is mandatory; everything
/// else has a per-experiment default filled in by [`ExperimentConfig::normalized`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridParams>,
    #[serde(default = "d_mass")]
    pub mass: f64,
    #[serde(default = "d_representation")]
    pub representation: Representation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateRecipe>,
    #[serde(default = "d_direction")]
    pub direction: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<TimeSampling>,
    #[serde(default = "d_delta")]
    pub delta: f64,
    /// Absolute tolerance override for the experiment's main check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trembling: Option<TremblingParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub long_term: Option<LongTermParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shell: Option<ShellParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub efsinc: Option<EfsincParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indicator: Option<IndicatorParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pp: Option<PpParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gpteb: Option<GptebParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nw: Option<NwParams>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentKind::Tent,
            grid: None,
            mass: d_mass(),
            representation: d_representation(),
            state: None,
            direction: d_direction(),
            times: None,
            delta: d_delta(),
            tolerance: None,
            seed: 0,
            output_dir: None,
            trembling: None,
            long_term: None,
            shell: None,
            efsinc: None,
            indicator: None,
            pp: None,
            gpteb: None,
            search: None,
            nw: None,
        }
    }
}

impl ExperimentKind {
    fn uses_state(self) -> bool {
        matches!(
            self,
            ExperimentKind::Tent
                | ExperimentKind::Trembling
                | ExperimentKind::MinLaw
                | ExperimentKind::UpperBound
                | ExperimentKind::LongTerm
                | ExperimentKind::Shell
                | ExperimentKind::AsymptoticCausality
                | ExperimentKind::PpConsistency
        )
    }

    fn uses_times(self) -> bool {
        matches!(
            self,
            ExperimentKind::Tent
                | ExperimentKind::Trembling
                | ExperimentKind::MinLaw
                | ExperimentKind::UpperBound
                | ExperimentKind::LongTerm
                | ExperimentKind::Shell
                | ExperimentKind::AsymptoticCausality
                | ExperimentKind::GptebSearch
        )
    }

    /// Experiments whose time window feeds a tent fit and therefore needs
    /// enough samples on both sides of the breakpoint.
    fn fits_tent(self) -> bool {
        matches!(
            self,
            ExperimentKind::Tent
                | ExperimentKind::Trembling
                | ExperimentKind::UpperBound
                | ExperimentKind::GptebSearch
        )
    }
}

/// Carrier radius implied by a recipe, when one can be read off without
/// building the state.  Used for the up-front horizon check.
fn recipe_radius_hint(recipe: &StateRecipe) -> Option<f64> {
    match recipe {
        StateRecipe::Bump { center, rho, .. } => {
            let c = (center[0] * center[0] + center[1] * center[1] + center[2] * center[2]).sqrt();
            Some(c + rho)
        }
        StateRecipe::MomentumBump { .. } => None,
        StateRecipe::Nise { rho, tau, delta_shift, .. } => Some(rho + delta_shift + tau.abs()),
        StateRecipe::Dsabtp { a, b, .. } => Some(a.abs().max(b.abs())),
        StateRecipe::SlabCut { base, .. } => recipe_radius_hint(base),
    }
}

impl ExperimentConfig {
    /// Minimal config for an experiment; `normalized` turns it into a full
    /// runnable description.
    pub fn minimal(kind: ExperimentKind) -> Self {
        ExperimentConfig { experiment: kind, ..Default::default() }
    }

    /// Fully populated default config for an experiment.
    pub fn example(kind: ExperimentKind) -> Self {
        ExperimentConfig::minimal(kind)
            .normalized()
            .expect("built-in defaults validate")
    }

    /// Fill per-experiment defaults, then validate.  Every violation is
    /// reported, not just the first.
    pub fn normalized(mut self) -> Result<Self> {
        self.fill_defaults();
        let violations = self.violations();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(DiracError::Config(format!(
                "invalid config ({} problem{}):\n  - {}",
                violations.len(),
                if violations.len() == 1 { "" } else { "s" },
                violations.join("\n  - ")
            )))
        }
    }

    fn fill_defaults(&mut self) {
        let kind = self.experiment;
        if self.grid.is_none() {
            self.grid = Some(match kind {
                ExperimentKind::Shell => GridParams { dim: 1, n: 512, extent: 48.0 },
                ExperimentKind::PpConsistency => GridParams { dim: 3, n: 64, extent: 4.0 },
                ExperimentKind::Efsinc | ExperimentKind::Indicator => {
                    GridParams { dim: 1, n: 64, extent: 16.0 }
                }
                // n = 512 keeps aliased momentum tails of bump states well
                // below the border quantile at arbitrary sample times
                _ => GridParams { dim: 1, n: 512, extent: 16.0 },
            });
        }
        match kind {
            ExperimentKind::Trembling => {
                self.trembling.get_or_insert_with(TremblingParams::default);
            }
            ExperimentKind::LongTerm => {
                self.long_term.get_or_insert_with(LongTermParams::default);
            }
            ExperimentKind::Shell => {
                self.shell.get_or_insert_with(ShellParams::default);
            }
            ExperimentKind::AsymptoticCausality => {
                self.nw.get_or_insert_with(NwParams::default);
            }
            ExperimentKind::Efsinc => {
                self.efsinc.get_or_insert_with(EfsincParams::default);
            }
            ExperimentKind::Indicator => {
                self.indicator.get_or_insert_with(IndicatorParams::default);
            }
            ExperimentKind::PpConsistency => {
                self.pp.get_or_insert_with(PpParams::default);
            }
            ExperimentKind::GptebSearch => {
                self.gpteb.get_or_insert_with(GptebParams::default);
            }
            ExperimentKind::OpenProblemSearch => {
                self.search.get_or_insert_with(SearchParams::default);
            }
            _ => {}
        }
        if kind.uses_state() && self.state.is_none() {
            let seed = self.seed;
            self.state = Some(match kind {
                ExperimentKind::Shell => StateRecipe::MomentumBump {
                    p_center: [1.5, 0.0, 0.0],
                    p_radius: 0.5,
                    seed,
                },
                ExperimentKind::LongTerm => StateRecipe::Bump {
                    center: [0.0; 3],
                    rho: self.long_term.map(|p| p.r0).unwrap_or(0.5),
                    seed,
                },
                ExperimentKind::PpConsistency => StateRecipe::Bump {
                    center: [0.0; 3],
                    rho: 0.98,
                    seed,
                },
                _ => StateRecipe::Bump { center: [0.0; 3], rho: 0.5, seed },
            });
        }
        if kind.uses_times() && self.times.is_none() {
            self.times = Some(match kind {
                ExperimentKind::LongTerm => TimeSampling::new(1.0, 2.0, 21),
                ExperimentKind::Shell => TimeSampling::new(1.0, 10.0, 10),
                ExperimentKind::AsymptoticCausality => TimeSampling::new(0.25, 4.0, 16),
                // step 2dx on the default grid: sharp cuts carry O(1/p)
                // momentum tails, and only at multiples of dx does that
                // content shift by whole voxels instead of ringing off-cone
                ExperimentKind::GptebSearch => TimeSampling::new(-1.0, 1.0, 33),
                _ => TimeSampling::new(-1.0, 1.0, 41),
            });
        }
    }

    /// Every problem with the (default-filled) config, in declaration order.
    pub fn violations(&self) -> Vec<String> {
        // inner errors already carry a category prefix; strip it so the
        // bullet list does not read "error: ... error: ..."
        let plain = |e: &DiracError| {
            let s = e.to_string();
            s.strip_prefix("configuration error: ").map(str::to_owned).unwrap_or(s)
        };
        let mut out = Vec::new();
        let kind = self.experiment;
        let grid = match &self.grid {
            Some(g) => match g.build() {
                Ok(spec) => Some(spec),
                Err(e) => {
                    out.push(plain(&e));
                    None
                }
            },
            None => {
                out.push("grid parameters are missing".into());
                None
            }
        };
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            out.push(format!("mass must be positive and finite, got {}", self.mass));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            out.push(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0 && tol.is_finite()) {
                out.push(format!("tolerance override must be positive, got {tol}"));
            }
        }
        if let Some(spec) = &grid {
            if kind.uses_state() || kind == ExperimentKind::GptebSearch {
                if let Err(e) = spec.unit_direction(&self.direction) {
                    out.push(plain(&e));
                }
            }
        }
        if kind.uses_times() {
            match &self.times {
                Some(ts) => {
                    let min_steps = if kind.fits_tent() { 5 } else { 2 };
                    if ts.steps < min_steps {
                        out.push(format!(
                            "time sampling needs at least {min_steps} steps for this \
                             experiment, got {}",
                            ts.steps
                        ));
                    }
                    if !(ts.t_min < ts.t_max) || !ts.t_min.is_finite() || !ts.t_max.is_finite() {
                        out.push(format!(
                            "time window must satisfy t_min < t_max with finite endpoints, \
                             got [{}, {}]",
                            ts.t_min, ts.t_max
                        ));
                    }
                }
                None => out.push("time sampling is missing".into()),
            }
        }
        self.per_kind_violations(&mut out);
        // Horizon: the carrier grown by |t| must stay clear of the wrap.
        if let (Some(spec), Some(ts), Some(recipe)) = (&grid, &self.times, &self.state) {
            if kind.uses_times() {
                if let Some(r0) = recipe_radius_hint(recipe) {
                    let t_need = ts.t_min.abs().max(ts.t_max.abs());
                    if !spec.horizon_ok(r0, t_need) {
                        out.push(format!(
                            "grid extent {} cannot hold carrier radius {r0} evolved to \
                             |t| = {t_need} without wrap-around; need extent >= {:.3}",
                            spec.extent(),
                            2.0 * (r0 + t_need) + 4.0 * spec.dx()
                        ));
                    }
                }
            }
        }
        out
    }

    fn per_kind_violations(&self, out: &mut Vec<String>) {
        match self.experiment {
            ExperimentKind::Trembling => {
                if let Some(p) = &self.trembling {
                    if !(p.t1 < p.t2) {
                        out.push(format!(
                            "trembling requires t1 < t2, got t1 = {}, t2 = {}",
                            p.t1, p.t2
                        ));
                    }
                }
            }
            ExperimentKind::LongTerm => {
                if let Some(p) = &self.long_term {
                    if !(p.r0 > 0.0) {
                        out.push(format!("localization radius must be positive, got {}", p.r0));
                    } else if let Some(ts) = &self.times {
                        let t_lo = ts.t_min.abs().min(ts.t_max.abs());
                        let crosses_zero = ts.t_min < 0.0 && ts.t_max > 0.0;
                        if crosses_zero || t_lo + 1e-12 < 2.0 * p.r0 {
                            out.push(format!(
                                "long-term checks need |t| >= 2 r0 = {}; the window \
                                 [{}, {}] includes smaller times",
                                2.0 * p.r0,
                                ts.t_min,
                                ts.t_max
                            ));
                        }
                    }
                }
            }
            ExperimentKind::Shell => {
                if let Some(p) = &self.shell {
                    if !(p.r_inner > 0.0) {
                        out.push(format!("inner radius must be positive, got {}", p.r_inner));
                    }
                    if !(p.fit_t_min < p.fit_t_max) {
                        out.push(format!(
                            "shell fit range must be increasing, got [{}, {}]",
                            p.fit_t_min, p.fit_t_max
                        ));
                    }
                    if !(p.inner_max > 0.0) {
                        out.push(format!(
                            "inner mass bound must be positive, got {}",
                            p.inner_max
                        ));
                    }
                }
            }
            ExperimentKind::Efsinc => {
                if let Some(p) = &self.efsinc {
                    if p.t == 0.0 {
                        out.push("sandwich bounds require t != 0".into());
                    }
                    if !(p.mu >= 0.0) {
                        out.push(format!("mass parameter must be >= 0, got {}", p.mu));
                    }
                    if p.u_steps < 2 || p.v_steps < 2 {
                        out.push(format!(
                            "sandwich grid needs at least 2 steps per axis, got {}x{}",
                            p.u_steps, p.v_steps
                        ));
                    }
                    if !(p.u_min < p.u_max) {
                        out.push(format!(
                            "sandwich u range must be increasing, got [{}, {}]",
                            p.u_min, p.u_max
                        ));
                    }
                    if p.t != 0.0 && p.mu >= 0.0 {
                        let lo = p.v_lo();
                        if !(lo > p.threshold()) {
                            out.push(format!(
                                "v_min = {lo} must exceed the validity threshold {:.6}",
                                p.threshold()
                            ));
                        }
                        if !(lo < p.v_max) {
                            out.push(format!(
                                "sandwich v range must be increasing, got [{lo}, {}]",
                                p.v_max
                            ));
                        }
                    }
                }
            }
            ExperimentKind::Indicator => {
                if let Some(p) = &self.indicator {
                    if p.t == 0.0 {
                        out.push("indicator target requires t != 0".into());
                    }
                    if !(p.mu >= 0.0) {
                        out.push(format!("mass parameter must be >= 0, got {}", p.mu));
                    }
                    let norm = (p.lambda[0] * p.lambda[0]
                        + p.lambda[1] * p.lambda[1]
                        + p.lambda[2] * p.lambda[2])
                        .sqrt();
                    if !(norm > 0.0) {
                        out.push("indicator direction must be nonzero".into());
                    }
                    check_radii(&p.radii, out);
                    if !(p.rel_tol > 0.0) {
                        out.push(format!("relative tolerance must be positive, got {}", p.rel_tol));
                    }
                }
            }
            ExperimentKind::PpConsistency => {
                if let Some(p) = &self.pp {
                    if p.directions.is_empty() {
                        out.push("consistency check needs at least one direction".into());
                    }
                    check_radii(&p.radii, out);
                    if !(p.rel_tol > 0.0) {
                        out.push(format!("relative tolerance must be positive, got {}", p.rel_tol));
                    }
                    if !(p.border_delta > 0.0 && p.border_delta < 1.0) {
                        out.push(format!(
                            "border quantile must lie in (0, 1), got {}",
                            p.border_delta
                        ));
                    }
                }
            }
            ExperimentKind::GptebSearch => {
                if let Some(p) = &self.gpteb {
                    if !(p.a < p.b) {
                        out.push(format!("slab faces must satisfy a < b, got a = {}, b = {}", p.a, p.b));
                    }
                    if p.tau == 0.0 {
                        out.push("the engineered turning time tau must be nonzero".into());
                    }
                    if p.a < p.b && !(p.tau.abs() < (p.b - p.a) / 2.0) {
                        out.push(format!(
                            "|tau| = {} must be smaller than the slab half-width {}",
                            p.tau.abs(),
                            (p.b - p.a) / 2.0
                        ));
                    }
                    if p.cut_widths.is_empty() || p.cut_widths.iter().any(|w| !(*w > 0.0)) {
                        out.push("cut widths must be a nonempty list of positive numbers".into());
                    }
                }
            }
            ExperimentKind::OpenProblemSearch => {
                if let Some(p) = &self.search {
                    if p.samples == 0 {
                        out.push("search needs at least one sample".into());
                    }
                }
            }
            _ => {}
        }
    }

    /// Grid parameters after normalization.
    pub fn grid_params(&self) -> GridParams {
        self.grid.expect("normalized config has grid parameters")
    }

    /// Lattice spacing after normalization.
    pub fn dx(&self) -> f64 {
        self.grid_params().dx()
    }
}

fn check_radii(radii: &[f64], out: &mut Vec<String>) {
    if radii.len() < 2 {
        out.push(format!(
            "indicator estimation needs at least two radii, got {}",
            radii.len()
        ));
    } else if radii.windows(2).any(|w| !(w[0] > 0.0 && w[1] > w[0])) {
        out.push("indicator radii must be positive and increasing".into());
    }
}

/// Parse and validate a config from JSON text.
pub fn validate_config(text: &str) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig = serde_json::from_str(text)?;
    cfg.normalized()
}

/// Parse a config from JSON text, accepting either a bare config or a
/// manifest produced by an earlier run (its `config` field is reused, which
/// makes any manifest directly re-runnable).
pub fn config_from_json(text: &str) -> Result<ExperimentConfig> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let config_value = match (value.get("config"), value.get("tool_version")) {
        (Some(c), Some(_)) => c.clone(),
        _ => value,
    };
    let cfg: ExperimentConfig = serde_json::from_value(config_value)?;
    cfg.normalized()
}
