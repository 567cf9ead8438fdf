//! Log-domain evaluation of the entire functions `cos(tε(z))` and
//! `sinc(tε(z))` on complex momenta, Fourier-Laplace transforms of lattice
//! states at complex points, indicator (growth-rate) estimation along
//! imaginary rays, and carrier support functions.
//!
//! Everything that can reach magnitudes near `e^{|Im w|}` is computed as a
//! natural log directly; the evaluators stay finite for imaginary parts up
//! to 10⁴ and beyond.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};
use crate::field::{Space, SpinorField};

/// `ln` of a complex magnitude, representable even when the magnitude
/// itself overflows an `f64`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogMagnitude(pub f64);

/// A point of ℂ³ split as `z = x + iλr`.
#[derive(Clone, Copy, Debug)]
pub struct ComplexPoint {
    pub z: [Complex64; 3],
}

impl ComplexPoint {
    pub fn new(z: [Complex64; 3]) -> Self {
        ComplexPoint { z }
    }

    pub fn from_parts(x: &[f64; 3], lambda: &[f64; 3], r: f64) -> Self {
        let mut z = [Complex64::default(); 3];
        for a in 0..3 {
            z[a] = Complex64::new(x[a], lambda[a] * r);
        }
        ComplexPoint { z }
    }

    /// One-dimensional point `u + iv` in the first coordinate.
    pub fn one_dim(u: f64, v: f64) -> Self {
        ComplexPoint { z: [Complex64::new(u, v), Complex64::default(), Complex64::default()] }
    }

    /// Analytic square `Σ z_j²` (not the Hermitian norm).
    pub fn z_squared(&self) -> Complex64 {
        self.z[0] * self.z[0] + self.z[1] * self.z[1] + self.z[2] * self.z[2]
    }
}

/// `ln|cos(w)|` for complex `w`, stable for arbitrarily large `|Im w|`:
/// `2 ln|cos(a+ib)| = 2|b| - 2 ln2 + ln(1 + 2 q cos 2a + q²)` with
/// `q = e^{-2|b|}`.  Even in `w`, so square-root branches cancel.
pub fn ln_abs_cos(w: Complex64) -> f64 {
    let a = w.re;
    let b = w.im.abs();
    let q = (-2.0 * b).exp();
    let c2a = (2.0 * a).cos();
    (2.0 * b - 2.0 * std::f64::consts::LN_2 + (q * (2.0 * c2a + q)).ln_1p()) / 2.0
}

/// `ln|sin(w)|`, same scheme with the opposite interference sign.
pub fn ln_abs_sin(w: Complex64) -> f64 {
    let a = w.re;
    let b = w.im.abs();
    let q = (-2.0 * b).exp();
    let c2a = (2.0 * a).cos();
    (2.0 * b - 2.0 * std::f64::consts::LN_2 + (q * (-2.0 * c2a + q)).ln_1p()) / 2.0
}

fn w_of(t: f64, z: &ComplexPoint, m: f64) -> Complex64 {
    let s = z.z_squared() + m * m;
    s.sqrt() * t
}

/// `ln|cos(t ε(z))|` with `ε(z)² = z² + m²`.
pub fn entire_cos_log(t: f64, z: &ComplexPoint, m: f64) -> LogMagnitude {
    if t == 0.0 {
        return LogMagnitude(0.0);
    }
    LogMagnitude(ln_abs_cos(w_of(t, z, m)))
}

/// `ln|sinc(t ε(z))|` with `sinc(w) = sin(w)/w` and `sinc(0) = 1`.
pub fn entire_sinc_log(t: f64, z: &ComplexPoint, m: f64) -> LogMagnitude {
    if t == 0.0 {
        return LogMagnitude(0.0);
    }
    let s = z.z_squared() + m * m;
    let w_sq = s * (t * t);
    if w_sq.norm() <= 1e-8 {
        // ln|sinc(w)| = Re ln(1 - w²/6 + w⁴/120 - …)
        let correction = -w_sq / 6.0 - w_sq * w_sq / 180.0;
        return LogMagnitude(correction.re);
    }
    let w = s.sqrt() * t;
    let ln_abs_w = t.abs().ln() + 0.5 * s.norm().ln();
    LogMagnitude(ln_abs_sin(w) - ln_abs_w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SandwichKind {
    Cos,
    Sinc,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct EfsincRow {
    pub u: f64,
    pub v: f64,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
}

/// Verification record for the two-sided exponential sandwich of
/// `|cos(t√(μ²+(u+iv)²))|` (or the sinc analogue) above the validity
/// threshold in `|v|`.
#[derive(Clone, Debug, Serialize)]
pub struct EfsincReport {
    pub kind: SandwichKind,
    pub t: f64,
    pub mu: f64,
    /// Validity threshold `√2·μ + ln2/(2|t|)`; all sampled `|v|` exceed it.
    pub threshold: f64,
    pub log_a: f64,
    pub log_b: f64,
    pub rows: Vec<EfsincRow>,
    pub violations: usize,
    pub worst_lower_margin: f64,
    pub worst_upper_margin: f64,
}

/// Sandwich constants in log-domain.  For the sinc case both bounds carry
/// an extra `|u+iv|⁻¹` factor.
fn sandwich_constants(kind: SandwichKind, t: f64, mu: f64) -> (f64, f64) {
    let tm = t.abs() * mu;
    match kind {
        SandwichKind::Cos => (-(4.0f64).ln() - tm, tm),
        SandwichKind::Sinc => (
            0.5 * (1.0 / 24.0f64).ln() - t.abs().ln() - tm,
            0.5 * (2.0f64).ln() - t.abs().ln() + tm,
        ),
    }
}

pub fn efsinc_check(
    kind: SandwichKind,
    t: f64,
    mu: f64,
    u_samples: &[f64],
    v_samples: &[f64],
) -> Result<EfsincReport> {
    if t == 0.0 {
        return Err(DiracError::Argument("sandwich bounds require t != 0".into()));
    }
    if !(mu >= 0.0) {
        return Err(DiracError::Argument(format!("mass parameter must be >= 0, got {mu}")));
    }
    if u_samples.is_empty() || v_samples.is_empty() {
        return Err(DiracError::Argument("empty sandwich sample grid".into()));
    }
    let threshold = 2.0f64.sqrt() * mu + std::f64::consts::LN_2 / (2.0 * t.abs());
    if let Some(v) = v_samples.iter().find(|v| v.abs() <= threshold) {
        return Err(DiracError::Argument(format!(
            "sample v = {v} inside the validity threshold |v| > {threshold:.6}"
        )));
    }
    let (log_a, log_b) = sandwich_constants(kind, t, mu);
    let mut rows = Vec::with_capacity(u_samples.len() * v_samples.len());
    let mut violations = 0usize;
    let mut worst_lower = f64::INFINITY;
    let mut worst_upper = f64::INFINITY;
    for &v in v_samples {
        for &u in u_samples {
            let z = ComplexPoint::one_dim(u, v);
            let (value, modulus_ln) = match kind {
                SandwichKind::Cos => (entire_cos_log(t, &z, mu).0, 0.0),
                SandwichKind::Sinc => {
                    (entire_sinc_log(t, &z, mu).0, Complex64::new(u, v).norm().ln())
                }
            };
            let lower = log_a + (t * v).abs() - modulus_ln;
            let upper = log_b + (t * v).abs() - modulus_ln;
            worst_lower = worst_lower.min(value - lower);
            worst_upper = worst_upper.min(upper - value);
            if value < lower || value > upper {
                violations += 1;
            }
            rows.push(EfsincRow { u, v, lower, value, upper });
        }
    }
    Ok(EfsincReport {
        kind,
        t,
        mu,
        threshold,
        log_a,
        log_b,
        rows,
        violations,
        worst_lower_margin: worst_lower,
        worst_upper_margin: worst_upper,
    })
}

fn require_position(psi: &SpinorField, what: &str) -> Result<()> {
    if psi.space != Space::Position {
        return Err(DiracError::Argument(format!("{what} needs a position-space field")));
    }
    Ok(())
}

fn check_component(psi: &SpinorField, component: usize) -> Result<()> {
    if component >= psi.n_components() {
        return Err(DiracError::Argument(format!(
            "component {component} out of range (state has {})",
            psi.n_components()
        )));
    }
    Ok(())
}

/// Fourier-Laplace transform `f(z) = (2π)^{-d/2} ∫ e^{-iq·z} ψ_l(q) dq` by
/// direct quadrature over the carrier voxels.  Overflows for large `|Im z|`;
/// use [`fourier_laplace_log`] there.
pub fn fourier_laplace(psi: &SpinorField, z: &ComplexPoint, component: usize) -> Result<Complex64> {
    require_position(psi, "the Fourier-Laplace transform")?;
    check_component(psi, component)?;
    let grid = psi.grid;
    let d = grid.dim();
    let scale = grid.cell_volume_position() * (2.0 * std::f64::consts::PI).powf(-(d as f64) / 2.0);
    let mut acc = Complex64::default();
    for (v, &amp) in psi.comps[component].iter().enumerate() {
        if amp == Complex64::default() {
            continue;
        }
        let q = grid.position_of(v);
        let mut phase = Complex64::default();
        for a in 0..d {
            phase += z.z[a] * q[a];
        }
        acc += amp * (Complex64::new(0.0, -1.0) * phase).exp();
    }
    Ok(acc * scale)
}

/// `ln|f(z)|` of the same transform, overflow-free: the growth factor
/// `e^{q·Im z}` is handled by a running-maximum shift before summation.
pub fn fourier_laplace_log(
    psi: &SpinorField,
    z: &ComplexPoint,
    component: usize,
) -> Result<LogMagnitude> {
    require_position(psi, "the Fourier-Laplace transform")?;
    check_component(psi, component)?;
    let grid = psi.grid;
    let d = grid.dim();
    let ln_scale =
        grid.cell_volume_position().ln() - (d as f64) / 2.0 * (2.0 * std::f64::consts::PI).ln();
    let mut shift = f64::NEG_INFINITY;
    for (v, &amp) in psi.comps[component].iter().enumerate() {
        if amp == Complex64::default() {
            continue;
        }
        let q = grid.position_of(v);
        let growth: f64 = (0..d).map(|a| q[a] * z.z[a].im).sum();
        shift = shift.max(growth + amp.norm().ln());
    }
    if shift == f64::NEG_INFINITY {
        return Ok(LogMagnitude(f64::NEG_INFINITY));
    }
    let mut acc = Complex64::default();
    for (v, &amp) in psi.comps[component].iter().enumerate() {
        if amp == Complex64::default() {
            continue;
        }
        let q = grid.position_of(v);
        let mut growth = 0.0;
        let mut angle = 0.0;
        for a in 0..d {
            growth += q[a] * z.z[a].im;
            angle -= q[a] * z.z[a].re;
        }
        let magnitude = (growth + amp.norm().ln() - shift).exp();
        acc += Complex64::from_polar(magnitude, angle + amp.arg());
    }
    Ok(LogMagnitude(shift + acc.norm().ln() + ln_scale))
}

/// First-order correction applied to indicator estimates before
/// extrapolation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionKind {
    None,
    /// Compensates a known `|z|⁻¹` prefactor by adding `ln(|λ|r)/r`.
    InverseModulus,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IndicatorRow {
    pub r: f64,
    pub estimate: f64,
    pub corrected: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndicatorEstimate {
    pub rows: Vec<IndicatorRow>,
    /// Richardson extrapolation of the corrected column, eliminating the
    /// `O(1/r)` term.
    pub extrapolated: f64,
}

/// Growth rate of `ln|f|` along the imaginary ray `x + iλr`:
/// `(1/r)·ln|f(x+iλr)|` over a geometric `r` schedule.
pub fn p_indicator_estimate(
    f: impl Fn(&ComplexPoint) -> Result<LogMagnitude>,
    lambda: &[f64; 3],
    x: &[f64; 3],
    r_schedule: &[f64],
    correction: CorrectionKind,
) -> Result<IndicatorEstimate> {
    if r_schedule.len() < 2 {
        return Err(DiracError::Argument(
            "indicator estimation needs at least two radii".into(),
        ));
    }
    if r_schedule.windows(2).any(|w| !(w[0] > 0.0 && w[1] > w[0])) {
        return Err(DiracError::Argument(
            "indicator radii must be positive and increasing".into(),
        ));
    }
    let lambda_norm =
        (lambda[0] * lambda[0] + lambda[1] * lambda[1] + lambda[2] * lambda[2]).sqrt();
    if !(lambda_norm > 0.0) {
        return Err(DiracError::Argument("indicator direction must be nonzero".into()));
    }
    let mut rows = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let value = f(&ComplexPoint::from_parts(x, lambda, r))?.0;
        let estimate = value / r;
        let corrected = match correction {
            CorrectionKind::None => estimate,
            CorrectionKind::InverseModulus => estimate + (lambda_norm * r).ln() / r,
        };
        rows.push(IndicatorRow { r, estimate, corrected });
    }
    let last = rows[rows.len() - 1];
    let prev = rows[rows.len() - 2];
    let extrapolated = (last.r * last.corrected - prev.r * prev.corrected) / (last.r - prev.r);
    Ok(IndicatorEstimate { rows, extrapolated })
}

/// Support function of the δ-carrier: `H(λ) = sup{x·λ}` over the carrier
/// after trimming a δ mass fraction from the far side.  Shares the border
/// quantile, so `H(-e) = -border(ψ, e, δ)` holds exactly.
pub fn support_function(psi: &SpinorField, lambda: &[f64; 3], delta: f64) -> Result<f64> {
    let unit = psi.grid.unit_direction(lambda)?;
    let norm = (lambda[0] * lambda[0] + lambda[1] * lambda[1] + lambda[2] * lambda[2]).sqrt();
    let opposite = [-unit[0], -unit[1], -unit[2]];
    Ok(-norm * crate::border::border(psi, &opposite, delta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Representation;
    use crate::field::Space;
    use crate::grid::GridSpec;
    use crate::states::{bump_state, random_weights};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cos_log_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let w = Complex64::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let direct = w.cos().norm().ln();
            let stable = ln_abs_cos(w);
            assert!(
                (direct - stable).abs() <= 1e-12 * (1.0 + direct.abs()),
                "w {w} direct {direct} stable {stable}"
            );
            let direct_sin = w.sin().norm().ln();
            let stable_sin = ln_abs_sin(w);
            assert!((direct_sin - stable_sin).abs() <= 1e-12 * (1.0 + direct_sin.abs()));
        }
    }

    #[test]
    fn sinc_log_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..500 {
            let z = ComplexPoint::one_dim(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let t = rng.gen_range(0.2..3.0);
            let m = rng.gen_range(0.0..2.0);
            let w = (z.z_squared() + m * m).sqrt() * t;
            let direct = (w.sin() / w).norm().ln();
            let stable = entire_sinc_log(t, &z, m).0;
            assert!(
                (direct - stable).abs() <= 1e-11 * (1.0 + direct.abs()),
                "w {w} direct {direct} stable {stable}"
            );
        }
    }

    #[test]
    fn large_imaginary_part_no_overflow() {
        for b in [700.0, 1e4] {
            let z = ComplexPoint::one_dim(0.0, b);
            let got = entire_cos_log(1.0, &z, 0.0).0;
            let want = b - std::f64::consts::LN_2;
            assert!((got - want).abs() <= 1e-9 * b, "b {b}: got {got} want {want}");
            assert!(got.is_finite());
            let got_sinc = entire_sinc_log(1.0, &z, 0.0).0;
            let want_sinc = b - std::f64::consts::LN_2 - b.ln();
            assert!((got_sinc - want_sinc).abs() <= 1e-9 * b);
        }
    }

    #[test]
    fn evenness_is_bitwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let w = Complex64::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            assert_eq!(ln_abs_cos(w).to_bits(), ln_abs_cos(-w).to_bits());
            assert_eq!(ln_abs_sin(w).to_bits(), ln_abs_sin(-w).to_bits());
            let z = ComplexPoint::one_dim(w.re, w.im);
            let t = rng.gen_range(0.2..2.0);
            // even in t as well: w ↦ -w under t ↦ -t
            assert_eq!(
                entire_sinc_log(t, &z, 1.0).0.to_bits(),
                entire_sinc_log(-t, &z, 1.0).0.to_bits()
            );
        }
    }

    #[test]
    fn zero_time_and_small_argument() {
        let z = ComplexPoint::one_dim(3.0, 4.0);
        assert_eq!(entire_cos_log(0.0, &z, 1.0).0, 0.0);
        assert_eq!(entire_sinc_log(0.0, &z, 1.0).0, 0.0);
        // series branch: |w| = 1e-8
        let tiny = ComplexPoint::one_dim(1e-5, 0.0);
        let got = entire_sinc_log(1e-3, &tiny, 0.0).0;
        assert!(got.abs() <= 1e-15, "got {got}");
        // real argument: |cos| <= 1
        for u in [0.3, 1.7, 12.0] {
            let p = ComplexPoint::one_dim(u, 0.0);
            assert!(entire_cos_log(1.0, &p, 1.0).0 <= 0.0);
        }
    }

    #[test]
    fn sandwich_margins_at_mu_zero() {
        let report =
            efsinc_check(SandwichKind::Cos, 1.0, 0.0, &[0.0], &[40.0]).unwrap();
        assert_eq!(report.violations, 0);
        // |cos(iv)| = cosh v, so both margins sit at ln 2 exactly
        assert!((report.worst_lower_margin - std::f64::consts::LN_2).abs() <= 1e-9);
        assert!((report.worst_upper_margin - std::f64::consts::LN_2).abs() <= 1e-9);
    }

    #[test]
    fn sandwich_holds_on_grid() {
        let t = 1.0;
        let mu = 1.0;
        let threshold = 2.0f64.sqrt() * mu + std::f64::consts::LN_2 / (2.0 * t);
        let us = crate::grid::linspace(-50.0, 50.0, 50);
        let vs = crate::grid::linspace(threshold + 0.05, 50.0, 50);
        for kind in [SandwichKind::Cos, SandwichKind::Sinc] {
            let report = efsinc_check(kind, t, mu, &us, &vs).unwrap();
            assert_eq!(report.violations, 0, "{kind:?}");
            assert!(report.worst_lower_margin >= 0.0);
            assert!(report.worst_upper_margin >= 0.0);
        }
    }

    #[test]
    fn sandwich_validation() {
        assert!(efsinc_check(SandwichKind::Cos, 0.0, 1.0, &[0.0], &[10.0]).is_err());
        // v below the threshold
        assert!(efsinc_check(SandwichKind::Cos, 1.0, 1.0, &[0.0], &[1.0]).is_err());
        assert!(efsinc_check(SandwichKind::Cos, 1.0, -1.0, &[0.0], &[10.0]).is_err());
    }

    fn test_bump_1d() -> (GridSpec, SpinorField) {
        let grid = GridSpec::new(1, 128, 8.0).unwrap();
        let w = random_weights(2, 9);
        let psi = bump_state(grid, Representation::Weyl, 1.0, [0.0; 3], 0.9, &w).unwrap();
        (grid, psi)
    }

    #[test]
    fn fourier_laplace_matches_fft_on_the_lattice() {
        let (grid, psi) = test_bump_1d();
        let phi = psi.to_space(Space::Momentum);
        for bin in [0usize, 1, 5, 60, 100, 127] {
            let p = grid.momentum_of(bin);
            let z = ComplexPoint::from_parts(&p, &[0.0; 3], 0.0);
            let direct = fourier_laplace(&psi, &z, 0).unwrap();
            let via_fft = phi.comps[0][bin];
            assert!(
                (direct - via_fft).norm() <= 1e-10,
                "bin {bin}: direct {direct} fft {via_fft}"
            );
        }
    }

    #[test]
    fn fourier_laplace_at_zero_is_the_mean() {
        let (grid, psi) = test_bump_1d();
        let z = ComplexPoint::from_parts(&[0.0; 3], &[0.0; 3], 0.0);
        let got = fourier_laplace(&psi, &z, 1).unwrap();
        let want = psi.comps[1].iter().sum::<Complex64>() * grid.dx()
            / (2.0 * std::f64::consts::PI).sqrt();
        assert!((got - want).norm() <= 1e-12);
    }

    #[test]
    fn log_transform_matches_plain_at_moderate_points() {
        let (_, psi) = test_bump_1d();
        for (x, lam, r) in [(0.4, 1.0, 2.0), (-1.0, -0.5, 6.0), (0.0, 1.0, 10.0)] {
            let z = ComplexPoint::from_parts(&[x, 0.0, 0.0], &[lam, 0.0, 0.0], r);
            let plain = fourier_laplace(&psi, &z, 0).unwrap().norm().ln();
            let logged = fourier_laplace_log(&psi, &z, 0).unwrap().0;
            assert!(
                (plain - logged).abs() <= 1e-10 * (1.0 + plain.abs()),
                "plain {plain} logged {logged}"
            );
        }
    }

    /// `|f(x+iλr)| <= C e^{(R+2Δx)|λ|r}` for a state carried by a ball of
    /// radius `R`: the transform has exponential type at most the carrier
    /// radius.
    #[test]
    fn exponential_type_bounded_by_carrier_radius() {
        let (grid, psi) = test_bump_1d();
        let rho = 0.9;
        let ln_l1 = (psi.comps[0].iter().map(|z| z.norm()).sum::<f64>() * grid.dx()
            / (2.0 * std::f64::consts::PI).sqrt())
        .ln();
        for r in [1.0, 10.0, 100.0, 1e4] {
            let z = ComplexPoint::from_parts(&[0.0; 3], &[1.0, 0.0, 0.0], r);
            let got = fourier_laplace_log(&psi, &z, 0).unwrap().0;
            let bound = ln_l1 + (rho + 2.0 * grid.dx()) * r;
            assert!(got <= bound, "r {r}: {got} > {bound}");
        }
    }

    #[test]
    fn indicator_of_cos_converges_to_speed_times_direction() {
        let est = p_indicator_estimate(
            |z| Ok(entire_cos_log(1.0, z, 1.0)),
            &[0.0, 0.0, 1.0],
            &[0.3, 0.0, 0.0],
            &[1e2, 1e3, 1e4],
            CorrectionKind::None,
        )
        .unwrap();
        let last = est.rows.last().unwrap();
        assert!((last.estimate - 1.0).abs() <= 0.01, "estimate {}", last.estimate);
        assert!((est.extrapolated - 1.0).abs() <= 1e-3, "extrapolated {}", est.extrapolated);
    }

    #[test]
    fn indicator_of_sinc_needs_the_modulus_correction() {
        let est = p_indicator_estimate(
            |z| Ok(entire_sinc_log(1.0, z, 1.0)),
            &[1.0, 0.0, 0.0],
            &[0.0; 3],
            &[1e2, 1e3, 1e4],
            CorrectionKind::InverseModulus,
        )
        .unwrap();
        let last = est.rows.last().unwrap();
        // raw estimate still carries the -ln(r)/r deficit; corrected is tight
        assert!(last.estimate < last.corrected);
        assert!((last.corrected - 1.0).abs() <= 0.01, "corrected {}", last.corrected);
        assert!((est.extrapolated - 1.0).abs() <= 5e-3);
    }

    #[test]
    fn indicator_of_a_constant_is_zero() {
        let est = p_indicator_estimate(
            |_| Ok(LogMagnitude(0.0)),
            &[1.0, 0.0, 0.0],
            &[0.0; 3],
            &[1e2, 1e3, 1e4],
            CorrectionKind::None,
        )
        .unwrap();
        assert!(est.rows.iter().all(|row| row.estimate == 0.0));
        assert_eq!(est.extrapolated, 0.0);
    }

    #[test]
    fn indicator_validation() {
        let f = |_: &ComplexPoint| Ok(LogMagnitude(0.0));
        assert!(p_indicator_estimate(f, &[1.0, 0.0, 0.0], &[0.0; 3], &[100.0], CorrectionKind::None)
            .is_err());
        let f = |_: &ComplexPoint| Ok(LogMagnitude(0.0));
        assert!(p_indicator_estimate(
            f,
            &[1.0, 0.0, 0.0],
            &[0.0; 3],
            &[100.0, 50.0],
            CorrectionKind::None
        )
        .is_err());
        let f = |_: &ComplexPoint| Ok(LogMagnitude(0.0));
        assert!(p_indicator_estimate(
            f,
            &[0.0; 3],
            &[0.0; 3],
            &[100.0, 200.0],
            CorrectionKind::None
        )
        .is_err());
    }

    #[test]
    fn support_function_of_a_ball_state() {
        let grid = GridSpec::new(3, 32, 8.0).unwrap();
        let w = random_weights(4, 10);
        let psi = bump_state(grid, Representation::Weyl, 1.0, [0.0; 3], 1.0, &w).unwrap();
        let dx = grid.dx();
        let s3 = 1.0 / 3.0f64.sqrt();
        for lam in [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [s3, s3, s3]] {
            let h = support_function(&psi, &lam, 1e-6).unwrap();
            assert!((h - 1.0).abs() <= 2.0 * dx, "H {h} along {lam:?}");
            let doubled = [2.0 * lam[0], 2.0 * lam[1], 2.0 * lam[2]];
            let h2 = support_function(&psi, &doubled, 1e-6).unwrap();
            assert!((h2 - 2.0 * h).abs() <= 1e-14);
        }
        // exact agreement with the border quantile
        let e = [1.0, 0.0, 0.0];
        let h = support_function(&psi, &[-1.0, 0.0, 0.0], 1e-6).unwrap();
        let b = crate::border::border(&psi, &e, 1e-6).unwrap();
        assert_eq!(h, -b);
    }
}
