//! Exact spectral time evolution in momentum space.
//!
//! Because `h(p)² = ε(p)² I`, the mode propagator has the closed form
//!
//! ```text
//! e^{i t h(p)} = cos(t ε(p)) I + i t sinc(t ε(p)) h(p),   sinc(w) = sin(w)/w,
//! ```
//!
//! so evolution is one forward transform, a per-voxel 2-term combination,
//! and one inverse transform.  No operator splitting, no time stepping: a
//! single application is exact for any `t` up to rounding.
//!
//! The same data also yield the symmetric combinations
//! `ψ_t + ψ_{-t} = F⁻¹[2 cos(tε) φ]` and `ψ_t - ψ_{-t} = F⁻¹[2it sinc(tε) hφ]`
//! without evolving twice, and the Newton-Wigner-type comparison dynamics
//! `φ ↦ e^{i t η ε(p)} φ` that multiplies every component by the same scalar
//! phase (no spinor mixing, not causal at finite times).

use num_complex::Complex64;

use crate::algebra::{CMat, DiracAlgebra, EnergySign, Representation};
use crate::error::{DiracError, Result};
use crate::field::{Space, SpinorField};
use crate::grid::GridSpec;
use crate::parallel;

/// `sin(w)/w` continued by 1 at the origin; series branch below 1e-4 keeps
/// full precision through the removable singularity.
pub fn sinc(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        let w2 = w * w;
        1.0 - w2 / 6.0 + w2 * w2 / 120.0
    } else {
        w.sin() / w
    }
}

/// Closed-form mode propagator `e^{i t h(p)}`.
pub fn mode_exponential(alg: &DiracAlgebra, p: &[f64; 3], t: f64, m: f64) -> CMat {
    let eps = alg.epsilon(p, m);
    let h = alg.h_matrix(p, m);
    let cos = CMat::identity(alg.n_c).scale(Complex64::new((t * eps).cos(), 0.0));
    cos.add(&h.scale(Complex64::new(0.0, t * sinc(t * eps))))
}

/// Momentum-space evolution engine for one grid, representation, and mass.
/// Caches the dispersion `ε(p)` over the momentum lattice.
pub struct Evolver {
    grid: GridSpec,
    mass: f64,
    algebra: DiracAlgebra,
    eps: Vec<f64>,
}

/// Momentum-space data reused across many evolution times of one state:
/// `φ = Fψ` and `hφ`, stored voxel-major.
pub struct ModeData {
    phi: Vec<[Complex64; 4]>,
    hphi: Vec<[Complex64; 4]>,
}

impl Evolver {
    pub fn new(grid: GridSpec, representation: Representation, mass: f64) -> Result<Self> {
        parallel::init_threads();
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(DiracError::Argument(format!(
                "evolver mass must be positive and finite, got {mass}"
            )));
        }
        let algebra = DiracAlgebra::new(representation, grid.dim())?;
        let eps = (0..grid.volume())
            .map(|v| algebra.epsilon(&grid.momentum_of(v), mass))
            .collect();
        Ok(Evolver { grid, mass, algebra, eps })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn algebra(&self) -> &DiracAlgebra {
        &self.algebra
    }

    fn check_field(&self, psi: &SpinorField) -> Result<()> {
        if psi.grid != self.grid
            || psi.mass != self.mass
            || psi.representation != self.algebra.representation
        {
            return Err(DiracError::Argument(
                "field does not match this evolver's grid, mass, or representation".into(),
            ));
        }
        Ok(())
    }

    /// One-time spectral preparation of a state: transform to momentum space
    /// and apply the symbol `h(p)` voxel by voxel.
    pub fn prepare(&self, psi: &SpinorField) -> Result<ModeData> {
        self.check_field(psi)?;
        let mom = psi.to_space(Space::Momentum);
        let n_c = mom.n_components();
        let volume = self.grid.volume();
        let mut phi = vec![[Complex64::default(); 4]; volume];
        for c in 0..n_c {
            let src = &mom.comps[c];
            for (v, slot) in phi.iter_mut().enumerate() {
                slot[c] = src[v];
            }
        }
        let hphi: Vec<[Complex64; 4]> = parallel::map_indexed(&phi, |v, spinor| {
            let p = self.grid.momentum_of(v);
            self.algebra.h_matrix(&p, self.mass).mul_vec(spinor)
        });
        Ok(ModeData { phi, hphi })
    }

    fn field_from_voxel_major(&self, data: Vec<[Complex64; 4]>, like: &SpinorField) -> SpinorField {
        let n_c = like.n_components();
        let mut out =
            SpinorField::zeros(self.grid, like.representation, Space::Momentum, self.mass)
                .expect("mass already validated");
        for c in 0..n_c {
            let dst = &mut out.comps[c];
            for (v, spinor) in data.iter().enumerate() {
                dst[v] = spinor[c];
            }
        }
        out
    }

    /// `ψ_t` at a single time from prepared mode data; output in position
    /// space.
    pub fn assemble(&self, modes: &ModeData, like: &SpinorField, t: f64) -> SpinorField {
        let combined: Vec<[Complex64; 4]> = parallel::map_indexed(&modes.phi, |v, spinor| {
            let te = t * self.eps[v];
            let c = Complex64::new(te.cos(), 0.0);
            let s = Complex64::new(0.0, t * sinc(te));
            let h = &modes.hphi[v];
            let mut out = [Complex64::default(); 4];
            for k in 0..4 {
                out[k] = c * spinor[k] + s * h[k];
            }
            out
        });
        self.field_from_voxel_major(combined, like).to_space(Space::Position)
    }

    /// Exact evolution `ψ ↦ ψ_t`.  Accepts either space tag; returns a
    /// position-space field on the same grid.
    pub fn evolve(&self, psi: &SpinorField, t: f64) -> Result<SpinorField> {
        let modes = self.prepare(psi)?;
        Ok(self.assemble(&modes, psi, t))
    }

    /// Evolves one prepared state through many times, invoking `f` per
    /// sample.  Shares the forward transform and `hφ` across all times.
    pub fn evolve_each(
        &self,
        psi: &SpinorField,
        times: &[f64],
        mut f: impl FnMut(f64, &SpinorField),
    ) -> Result<()> {
        let modes = self.prepare(psi)?;
        for &t in times {
            let snapshot = self.assemble(&modes, psi, t);
            f(t, &snapshot);
        }
        Ok(())
    }

    /// `(ψ_t + ψ_{-t}, ψ_t - ψ_{-t})` via the even/odd parts of the mode
    /// propagator: `2 cos(tε) φ` and `2 i t sinc(tε) hφ`.
    pub fn evolve_symmetric_pair(
        &self,
        psi: &SpinorField,
        t: f64,
    ) -> Result<(SpinorField, SpinorField)> {
        let modes = self.prepare(psi)?;
        let even: Vec<[Complex64; 4]> = parallel::map_indexed(&modes.phi, |v, spinor| {
            let c = Complex64::new(2.0 * (t * self.eps[v]).cos(), 0.0);
            let mut out = [Complex64::default(); 4];
            for k in 0..4 {
                out[k] = c * spinor[k];
            }
            out
        });
        let odd: Vec<[Complex64; 4]> = parallel::map_indexed(&modes.hphi, |v, h| {
            let s = Complex64::new(0.0, 2.0 * t * sinc(t * self.eps[v]));
            let mut out = [Complex64::default(); 4];
            for k in 0..4 {
                out[k] = s * h[k];
            }
            out
        });
        Ok((
            self.field_from_voxel_major(even, psi).to_space(Space::Position),
            self.field_from_voxel_major(odd, psi).to_space(Space::Position),
        ))
    }

    /// Newton-Wigner-type comparison evolution: every component picks up the
    /// scalar phase `e^{i t η ε(p)}`.
    pub fn evolve_nw(&self, psi: &SpinorField, t: f64, eta: EnergySign) -> Result<SpinorField> {
        self.check_field(psi)?;
        let mut mom = psi.to_space(Space::Momentum);
        let sign = eta.as_f64();
        for c in &mut mom.comps {
            parallel::for_each_indexed(c, |v, val| {
                *val *= Complex64::new(0.0, sign * t * self.eps[v]).exp();
            });
        }
        Ok(mom.to_space(Space::Position))
    }

    /// Projects onto the energy branch `η ε(p)`; returns a momentum-space
    /// field (not renormalized).
    pub fn project_energy(&self, psi: &SpinorField, eta: EnergySign) -> Result<SpinorField> {
        self.check_field(psi)?;
        let mom = psi.to_space(Space::Momentum);
        let n_c = mom.n_components();
        let volume = self.grid.volume();
        let mut voxel_major = vec![[Complex64::default(); 4]; volume];
        for c in 0..n_c {
            for (v, slot) in voxel_major.iter_mut().enumerate() {
                slot[c] = mom.comps[c][v];
            }
        }
        let projected: Vec<[Complex64; 4]> = parallel::map_indexed(&voxel_major, |v, spinor| {
            let p = self.grid.momentum_of(v);
            self.algebra
                .energy_projector(&p, self.mass, eta)
                .expect("mass > 0 validated at construction")
                .mul_vec(spinor)
        });
        Ok(self.field_from_voxel_major(projected, psi))
    }
}

/// Per-mode propagator factors for one evolution time, exposed for
/// diagnostics: `U(p, t) = cos_factor · I + i · odd_factor · h(p)`.
pub struct EvolutionPlan {
    pub t: f64,
    pub cos_factor: Vec<f64>,
    pub odd_factor: Vec<f64>,
}

impl Evolver {
    pub fn plan(&self, t: f64) -> EvolutionPlan {
        let cos_factor = self.eps.iter().map(|&e| (t * e).cos()).collect();
        let odd_factor = self.eps.iter().map(|&e| t * sinc(t * e)).collect();
        EvolutionPlan { t, cos_factor, odd_factor }
    }

    pub fn dispersion(&self) -> &[f64] {
        &self.eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_field(grid: GridSpec, repr: Representation, mass: f64, seed: u64) -> SpinorField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpinorField::zeros(grid, repr, Space::Position, mass).unwrap();
        for c in &mut f.comps {
            for v in c.iter_mut() {
                *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        f.normalized().unwrap()
    }

    /// Taylor series for e^{itH} with scaling and squaring; the scaled norm
    /// stays below 1/16, so 20 terms reach machine precision.
    fn series_exponential(h: &CMat, t: f64) -> CMat {
        let mut frob = 0.0f64;
        for row in &h.a {
            for z in row {
                frob += z.norm_sqr();
            }
        }
        let lg = (frob.sqrt() * t.abs() * 16.0).log2().ceil().max(0.0) as i32;
        let a = h.scale(Complex64::new(0.0, t / f64::powi(2.0, lg)));
        let mut term = CMat::identity(h.n);
        let mut sum = CMat::identity(h.n);
        for k in 1..=20 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
        }
        for _ in 0..lg {
            sum = sum.mul(&sum);
        }
        sum
    }

    /// Independent oracle: exponentiate `i t h(p)` through the scaled Taylor
    /// series and compare against the closed form.
    #[test]
    fn mode_exponential_matches_series_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (repr, dim) in [(Representation::Weyl, 3), (Representation::Dirac, 1)] {
            let alg = DiracAlgebra::new(repr, dim).unwrap();
            for _ in 0..500 {
                let mut p = [0.0; 3];
                for a in p.iter_mut().take(dim) {
                    *a = rng.gen_range(-4.0..4.0);
                }
                let m = rng.gen_range(0.1..2.5);
                let t = rng.gen_range(-3.0..3.0);
                let h = alg.h_matrix(&p, m);
                let oracle = series_exponential(&h, t);
                let closed = mode_exponential(&alg, &p, t, m);
                let worst = oracle.distance(&closed);
                assert!(worst <= 1e-12, "p={p:?} t={t} m={m}: {worst:e}");
            }
        }
    }

    #[test]
    fn mode_exponential_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let alg = DiracAlgebra::new(Representation::Weyl, 3).unwrap();
        for _ in 0..200 {
            let p = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
            let u = mode_exponential(&alg, &p, rng.gen_range(-2.0..2.0), 1.0);
            assert!(u.mul(&u.adjoint()).distance(&CMat::identity(4)) <= 1e-13);
        }
    }

    /// Per-mode invariant cos²(tε) + (t sinc(tε) ε)² = 1.
    #[test]
    fn plan_factors_are_unimodular() {
        let grid = GridSpec::new(1, 64, 8.0).unwrap();
        let ev = Evolver::new(grid, Representation::Dirac, 0.7).unwrap();
        for t in [0.0, 1e-9, 0.37, -2.0, 11.0] {
            let plan = ev.plan(t);
            for ((c, o), e) in plan
                .cos_factor
                .iter()
                .zip(plan.odd_factor.iter())
                .zip(ev.dispersion().iter())
            {
                let s = o * e;
                assert!((c * c + s * s - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn zero_time_is_one_round_trip() {
        let grid = GridSpec::new(3, 16, 4.0).unwrap();
        let ev = Evolver::new(grid, Representation::Weyl, 1.0).unwrap();
        let psi = random_field(grid, Representation::Weyl, 1.0, 31);
        let out = ev.evolve(&psi, 0.0).unwrap();
        assert!(out.distance(&psi).unwrap() <= 1e-12);
    }

    #[test]
    fn unitarity_and_group_law() {
        let grid = GridSpec::new(1, 256, 16.0).unwrap();
        let ev = Evolver::new(grid, Representation::Dirac, 1.0).unwrap();
        for seed in 0..5 {
            let psi = random_field(grid, Representation::Dirac, 1.0, 40 + seed);
            for t in [0.1, -0.5, 1.0] {
                let a = ev.evolve(&psi, t).unwrap();
                assert!((a.norm() - 1.0).abs() <= 1e-12);
                let b = ev.evolve(&a, 0.3).unwrap();
                let c = ev.evolve(&psi, t + 0.3).unwrap();
                assert!(b.distance(&c).unwrap() <= 1e-10, "group law t={t}");
                let back = ev.evolve(&a, -t).unwrap();
                assert!(back.distance(&psi).unwrap() <= 1e-10, "inverse t={t}");
            }
        }
    }

    #[test]
    fn symmetric_pair_matches_two_evolutions() {
        let grid = GridSpec::new(1, 128, 16.0).unwrap();
        let ev = Evolver::new(grid, Representation::Dirac, 0.8).unwrap();
        let psi = random_field(grid, Representation::Dirac, 0.8, 50);
        let t = 0.63;
        let (sum, diff) = ev.evolve_symmetric_pair(&psi, t).unwrap();
        let a = ev.evolve(&psi, t).unwrap();
        let b = ev.evolve(&psi, -t).unwrap();
        assert!(sum.distance(&a.add(&b).unwrap()).unwrap() <= 1e-10);
        assert!(diff.distance(&a.sub(&b).unwrap()).unwrap() <= 1e-10);
        // parallelogram: ‖sum‖² + ‖diff‖² = 2‖ψ_t‖² + 2‖ψ_{-t}‖²
        let lhs = sum.norm_sq() + diff.norm_sq();
        let rhs = 2.0 * (a.norm_sq() + b.norm_sq());
        assert!((lhs - rhs).abs() <= 1e-10);
    }

    /// On a single energy branch the full dynamics reduces to the scalar
    /// phase dynamics.
    #[test]
    fn nw_equals_full_evolution_on_projected_states() {
        for (dim, n, extent) in [(1usize, 128usize, 16.0), (3, 16, 4.0)] {
            let grid = GridSpec::new(dim, n, extent).unwrap();
            let repr = if dim == 3 { Representation::Weyl } else { Representation::Dirac };
            let ev = Evolver::new(grid, repr, 1.0).unwrap();
            let raw = random_field(grid, repr, 1.0, 60);
            for eta in [EnergySign::Plus, EnergySign::Minus] {
                let projected = ev
                    .project_energy(&raw, eta)
                    .unwrap()
                    .normalized()
                    .unwrap();
                let t = 0.4;
                let full = ev.evolve(&projected, t).unwrap();
                let nw = ev.evolve_nw(&projected, t, eta).unwrap();
                assert!(full.distance(&nw).unwrap() <= 1e-10, "dim {dim} eta {eta:?}");
            }
        }
    }

    /// Projection commutes with evolution.
    #[test]
    fn projector_commutes_with_evolution() {
        let grid = GridSpec::new(1, 128, 16.0).unwrap();
        let ev = Evolver::new(grid, Representation::Dirac, 1.2).unwrap();
        let psi = random_field(grid, Representation::Dirac, 1.2, 70);
        let t = 0.9;
        let a = ev
            .project_energy(&ev.evolve(&psi, t).unwrap(), EnergySign::Plus)
            .unwrap()
            .to_space(Space::Position);
        let b = ev
            .evolve(
                &ev.project_energy(&psi, EnergySign::Plus).unwrap(),
                t,
            )
            .unwrap();
        assert!(a.distance(&b).unwrap() <= 1e-10);
    }

    #[test]
    fn mismatched_field_rejected() {
        let grid = GridSpec::new(1, 64, 8.0).unwrap();
        let ev = Evolver::new(grid, Representation::Dirac, 1.0).unwrap();
        let other = random_field(grid, Representation::Dirac, 2.0, 80);
        assert!(ev.evolve(&other, 0.1).is_err());
        let weyl = random_field(grid, Representation::Weyl, 1.0, 81);
        assert!(ev.evolve(&weyl, 0.1).is_err());
    }

    #[test]
    fn sinc_series_branch() {
        assert_eq!(sinc(0.0), 1.0);
        for w in [1e-5f64, 5e-5, 9.9e-5, -1e-5] {
            // oracle: sin via its series; the two evaluation orders can
            // differ by one ulp, hence the 2e-16 budget
            let s = w - w.powi(3) / 6.0 + w.powi(5) / 120.0;
            assert!((sinc(w) - s / w).abs() <= 2e-16);
        }
        assert!((sinc(1.0) - 1.0f64.sin()).abs() <= 1e-15);
    }
}
