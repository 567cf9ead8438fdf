//! Two-sided exponential sandwich for the entire functions behind the
//! propagator.
//!
//! For complex argument z = u + iv with |v| above a threshold depending on t
//! and the mass, |cos(t√(μ²+z²))| and |sinc| are pinched between constant
//! multiples of e^{|t||v|}.  Sampled on a grid in the z-plane; any violation
//! would be printed row by row.

use dirac_front::{efsinc_check, linspace, Result, SandwichKind};

fn main() -> Result<()> {
    let t = 1.0;
    let mu = 1.0;
    let threshold = 2.0f64.sqrt() * mu + std::f64::consts::LN_2 / (2.0 * t);
    let u = linspace(-40.0, 40.0, 81);
    let v: Vec<f64> = linspace(2.0, 30.0, 57)
        .into_iter()
        .filter(|v| *v > threshold)
        .collect();

    for kind in [SandwichKind::Cos, SandwichKind::Sinc] {
        let report = efsinc_check(kind, t, mu, &u, &v)?;
        println!(
            "{:?}: {} grid points above threshold {:.3}, violations: {}",
            kind,
            report.rows.len(),
            report.threshold,
            report.violations
        );
        println!(
            "  sandwich: {:+.4} <= ln|f| - |t||v| <= {:+.4}",
            report.log_a, report.log_b
        );
        let tightest = report
            .rows
            .iter()
            .map(|r| (r.value - r.lower).min(r.upper - r.value))
            .fold(f64::INFINITY, f64::min);
        println!("  smallest slack across the grid: {tightest:.4}");
        println!();
    }
    Ok(())
}
