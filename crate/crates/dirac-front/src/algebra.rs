//! Dirac matrices and the momentum-space Hamiltonian symbol.
//!
//! In dimension 3 the spinor space is ℂ⁴ and the symbol is
//! `h(p) = Σ_k α_k p_k + β m` with `{α_j, α_k} = 2δ_jk`, `{α_k, β} = 0`,
//! `β² = I`, hence `h(p)² = (p² + m²) I`.  The Weyl (chiral) representation
//! is the default; it is the one in which the antiunitary time reversal is
//! literally `ψ ↦ ω ψ̄` with `ω = -diag(σ₂, σ₂)`.  Dimension 1 uses
//! 2-spinors with a single α.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const C_I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex matrix of order ≤ 4, sized for spinor algebra hot loops.
#[derive(Clone, Copy, Debug)]
pub struct CMat {
    pub n: usize,
    pub a: [[Complex64; 4]; 4],
}

impl CMat {
    pub fn zero(n: usize) -> Self {
        CMat { n, a: [[C_ZERO; 4]; 4] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zero(n);
        for i in 0..n {
            m.a[i][i] = C_ONE;
        }
        m
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let n = rows.len();
        let mut m = CMat::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, &v) in r.iter().enumerate() {
                m.a[i][j] = v;
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] *= s;
            }
        }
        m
    }

    pub fn add(&self, other: &CMat) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] += other.a[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &CMat) -> Self {
        self.add(&other.scale(-C_ONE))
    }

    pub fn mul(&self, other: &CMat) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = CMat::zero(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let s = self.a[i][k];
                if s == C_ZERO {
                    continue;
                }
                for j in 0..self.n {
                    m.a[i][j] += s * other.a[k][j];
                }
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = CMat::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] = self.a[j][i].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        let mut m = *self;
        for i in 0..self.n {
            for j in 0..self.n {
                m.a[i][j] = m.a[i][j].conj();
            }
        }
        m
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &CMat) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn mul_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [C_ZERO; 4];
        for i in 0..self.n {
            let row = &self.a[i];
            let mut acc = C_ZERO;
            for j in 0..self.n {
                acc += row[j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                m = m.max(self.a[i][j].norm());
            }
        }
        m
    }

    /// Largest entry of `self - other` in modulus.
    pub fn distance(&self, other: &CMat) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.a[i][i]).sum()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(k: usize) -> CMat {
    match k {
        1 => CMat::from_rows(&[&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]]),
        2 => CMat::from_rows(&[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]]),
        3 => CMat::from_rows(&[&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(-1.0, 0.0)]]),
        _ => panic!("pauli index must be 1..=3"),
    }
}

/// Embed 2x2 blocks into a 4x4 matrix: `[[a, b], [c, d]]`.
fn block4(a: &CMat, b: &CMat, cc: &CMat, d: &CMat) -> CMat {
    let mut m = CMat::zero(4);
    for i in 0..2 {
        for j in 0..2 {
            m.a[i][j] = a.a[i][j];
            m.a[i][j + 2] = b.a[i][j];
            m.a[i + 2][j] = cc.a[i][j];
            m.a[i + 2][j + 2] = d.a[i][j];
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Weyl,
    Dirac,
}

/// Energy-subspace label: `+` for the upper branch `+ε(p)`, `-` for `-ε(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergySign {
    Plus,
    Minus,
}

impl EnergySign {
    pub fn as_f64(self) -> f64 {
        match self {
            EnergySign::Plus => 1.0,
            EnergySign::Minus => -1.0,
        }
    }
}

/// The α-vector, β, and the time-reversal conjugation matrix ω for one
/// representation and dimension.
#[derive(Clone, Debug)]
pub struct DiracAlgebra {
    pub dim: usize,
    pub n_c: usize,
    pub representation: Representation,
    pub alpha: Vec<CMat>,
    pub beta: CMat,
    /// Conjugation matrix of the antiunitary time reversal `ψ ↦ ω ψ̄`.
    /// Satisfies `ω α_k ω⁻¹ = -ᾱ_k` and `ω β ω⁻¹ = β̄`.
    pub omega: CMat,
}

impl DiracAlgebra {
    pub fn new(representation: Representation, dim: usize) -> Result<Self> {
        let zero2 = CMat::zero(2);
        let id2 = CMat::identity(2);
        match (representation, dim) {
            (Representation::Weyl, 3) => {
                // α_k = diag(-σ_k, σ_k), β = offdiag(I, I), ω = -diag(σ₂, σ₂).
                let alpha = (1..=3)
                    .map(|k| {
                        let s = pauli(k);
                        block4(&s.scale(-C_ONE), &zero2, &zero2, &s)
                    })
                    .collect();
                let beta = block4(&zero2, &id2, &id2, &zero2);
                let s2 = pauli(2);
                let omega = block4(&s2, &zero2, &zero2, &s2).scale(-C_ONE);
                Ok(DiracAlgebra { dim, n_c: 4, representation, alpha, beta, omega })
            }
            (Representation::Dirac, 3) => {
                // α_k = offdiag(σ_k, σ_k), β = diag(I, -I).
                let alpha = (1..=3)
                    .map(|k| {
                        let s = pauli(k);
                        block4(&zero2, &s, &s, &zero2)
                    })
                    .collect();
                let beta = block4(&id2, &zero2, &zero2, &id2.scale(-C_ONE));
                // ω is only used by time reversal, which requires the Weyl
                // representation; keep the Weyl matrix as a placeholder.
                let s2 = pauli(2);
                let omega = block4(&s2, &zero2, &zero2, &s2).scale(-C_ONE);
                Ok(DiracAlgebra { dim, n_c: 4, representation, alpha, beta, omega })
            }
            (Representation::Weyl, 1) => {
                // Chiral 1-d algebra: α = σ₃ diagonal, β = σ₁, ω = σ₁.
                Ok(DiracAlgebra {
                    dim,
                    n_c: 2,
                    representation,
                    alpha: vec![pauli(3)],
                    beta: pauli(1),
                    omega: pauli(1),
                })
            }
            (Representation::Dirac, 1) => {
                // α = σ₁, β = σ₃, ω = σ₃.
                Ok(DiracAlgebra {
                    dim,
                    n_c: 2,
                    representation,
                    alpha: vec![pauli(1)],
                    beta: pauli(3),
                    omega: pauli(3),
                })
            }
            _ => Err(DiracError::Config(format!(
                "unsupported algebra: {representation:?} in dimension {dim}"
            ))),
        }
    }

    /// Momentum-space Hamiltonian symbol `h(p) = Σ_k α_k p_k + β m`.
    pub fn h_matrix(&self, p: &[f64; 3], m: f64) -> CMat {
        let mut h = self.beta.scale(c(m, 0.0));
        for (k, alpha) in self.alpha.iter().enumerate() {
            if p[k] != 0.0 {
                h = h.add(&alpha.scale(c(p[k], 0.0)));
            }
        }
        h
    }

    /// Relativistic dispersion `ε(p) = sqrt(p² + m²)`.
    pub fn epsilon(&self, p: &[f64; 3], m: f64) -> f64 {
        (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + m * m).sqrt()
    }

    /// Spectral projector `π^η(p) = ½ (I + η h(p)/ε(p))` onto the energy
    /// branch `η ε(p)`.  Requires `m > 0` so that `ε > 0` everywhere.
    pub fn energy_projector(&self, p: &[f64; 3], m: f64, eta: EnergySign) -> Result<CMat> {
        if !(m > 0.0) {
            return Err(DiracError::Argument(format!(
                "energy projector requires m > 0, got {m}"
            )));
        }
        let eps = self.epsilon(p, m);
        let h = self.h_matrix(p, m);
        Ok(CMat::identity(self.n_c).add(&h.scale(c(eta.as_f64() / eps, 0.0))).scale(c(0.5, 0.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_p(rng: &mut ChaCha8Rng, dim: usize) -> [f64; 3] {
        let mut p = [0.0; 3];
        for a in p.iter_mut().take(dim) {
            *a = rng.gen_range(-5.0..5.0);
        }
        p
    }

    #[test]
    fn weyl_anticommutators() {
        let alg = DiracAlgebra::new(Representation::Weyl, 3).unwrap();
        let id2 = CMat::identity(4).scale(c(2.0, 0.0));
        for j in 0..3 {
            for k in 0..3 {
                let want = if j == k { id2 } else { CMat::zero(4) };
                let got = alg.alpha[j].anticommutator(&alg.alpha[k]);
                assert!(got.distance(&want) <= 1e-14, "alpha anticommutator {j}{k}");
            }
            let got = alg.alpha[j].anticommutator(&alg.beta);
            assert!(got.distance(&CMat::zero(4)) <= 1e-14, "alpha-beta {j}");
        }
        assert!(alg.beta.mul(&alg.beta).distance(&CMat::identity(4)) <= 1e-14);
    }

    #[test]
    fn dirac_one_dim_squares() {
        for repr in [Representation::Dirac, Representation::Weyl] {
            let alg = DiracAlgebra::new(repr, 1).unwrap();
            assert_eq!(alg.n_c, 2);
            assert!(alg.beta.mul(&alg.beta).distance(&CMat::identity(2)) <= 1e-15);
            assert!(alg.alpha[0].mul(&alg.alpha[0]).distance(&CMat::identity(2)) <= 1e-15);
            assert!(
                alg.alpha[0].anticommutator(&alg.beta).distance(&CMat::zero(2)) <= 1e-15
            );
        }
    }

    #[test]
    fn unsupported_combination_rejected() {
        assert!(DiracAlgebra::new(Representation::Weyl, 2).is_err());
    }

    /// ω must conjugate the algebra the way the antiunitary time reversal
    /// requires: ω α_k ω⁻¹ = -ᾱ_k, ω β ω⁻¹ = β̄, and for 4-spinors ω ω̄ = -I.
    #[test]
    fn omega_conjugation_relations() {
        for (repr, dim) in [
            (Representation::Weyl, 3),
            (Representation::Weyl, 1),
            (Representation::Dirac, 1),
        ] {
            let alg = DiracAlgebra::new(repr, dim).unwrap();
            let om = alg.omega;
            // ω is unitary with ω⁻¹ = ω† here; verify via ω ω† = I.
            assert!(om.mul(&om.adjoint()).distance(&CMat::identity(alg.n_c)) <= 1e-15);
            let om_inv = om.adjoint();
            for a in &alg.alpha {
                let lhs = om.mul(a).mul(&om_inv);
                assert!(lhs.distance(&a.conj().scale(-C_ONE)) <= 1e-15);
            }
            let lhs = om.mul(&alg.beta).mul(&om_inv);
            assert!(lhs.distance(&alg.beta.conj()) <= 1e-15);
        }
        let alg = DiracAlgebra::new(Representation::Weyl, 3).unwrap();
        let square = alg.omega.mul(&alg.omega.conj());
        assert!(square.distance(&CMat::identity(4).scale(-C_ONE)) <= 1e-15);
    }

    #[test]
    fn h_squares_to_dispersion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (repr, dim) in [
            (Representation::Weyl, 3),
            (Representation::Dirac, 3),
            (Representation::Dirac, 1),
        ] {
            let alg = DiracAlgebra::new(repr, dim).unwrap();
            for _ in 0..1000 {
                let p = random_p(&mut rng, dim);
                let m = rng.gen_range(0.1..3.0);
                let h = alg.h_matrix(&p, m);
                let eps2 = alg.epsilon(&p, m).powi(2);
                let want = CMat::identity(alg.n_c).scale(c(eps2, 0.0));
                assert!(h.mul(&h).distance(&want) <= 1e-12 * eps2.max(1.0));
            }
        }
    }

    /// Spectrum oracle via Newton power sums: tr h = tr h³ = 0 together with
    /// tr h² = n_c ε² and tr h⁴ = n_c ε⁴ force the characteristic polynomial
    /// (x² - ε²)^{n_c/2}, i.e. eigenvalues ±ε each with multiplicity n_c/2.
    #[test]
    fn h_spectrum_is_plus_minus_dispersion() {
        let trace = |m: &CMat| (0..m.n).map(|i| m.a[i][i]).sum::<Complex64>();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let alg = DiracAlgebra::new(Representation::Weyl, 3).unwrap();
        let mut ps = vec![[0.0; 3]];
        for _ in 0..50 {
            ps.push(random_p(&mut rng, 3));
        }
        for p in ps {
            let m = 1.3;
            let eps2 = alg.epsilon(&p, m).powi(2);
            let h = alg.h_matrix(&p, m);
            let h2 = h.mul(&h);
            let nc = alg.n_c as f64;
            assert!(trace(&h).norm() <= 1e-12 * eps2.max(1.0), "p={p:?}");
            assert!((trace(&h2) - c(nc * eps2, 0.0)).norm() <= 1e-11 * eps2.max(1.0));
            assert!(trace(&h2.mul(&h)).norm() <= 1e-11 * eps2.powf(1.5).max(1.0));
            let t4 = trace(&h2.mul(&h2));
            assert!((t4 - c(nc * eps2 * eps2, 0.0)).norm() <= 1e-11 * (eps2 * eps2).max(1.0));
        }
    }

    /// Projector laws plus a rank oracle via eigenvalues of π^η.
    #[test]
    fn energy_projectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (repr, dim) in [(Representation::Weyl, 3), (Representation::Dirac, 1)] {
            let alg = DiracAlgebra::new(repr, dim).unwrap();
            for _ in 0..100 {
                let p = random_p(&mut rng, dim);
                let m = rng.gen_range(0.2..2.0);
                let eps = alg.epsilon(&p, m);
                let plus = alg.energy_projector(&p, m, EnergySign::Plus).unwrap();
                let minus = alg.energy_projector(&p, m, EnergySign::Minus).unwrap();
                assert!(plus.mul(&plus).distance(&plus) <= 1e-13);
                assert!(minus.mul(&minus).distance(&minus) <= 1e-13);
                assert!(plus.add(&minus).distance(&CMat::identity(alg.n_c)) <= 1e-13);
                assert!(plus.mul(&minus).distance(&CMat::zero(alg.n_c)) <= 1e-13);
                // Intertwining: h π^η = η ε π^η.
                let h = alg.h_matrix(&p, m);
                assert!(h.mul(&plus).distance(&plus.scale(c(eps, 0.0))) <= 1e-12 * eps.max(1.0));
                assert!(
                    h.mul(&minus).distance(&minus.scale(c(-eps, 0.0))) <= 1e-12 * eps.max(1.0)
                );
                // Rank oracle: idempotency pins eigenvalues to 0/1, so the
                // trace equals the rank.
                let rank: f64 = (0..alg.n_c).map(|i| plus.a[i][i].re).sum();
                assert!((rank - (alg.n_c / 2) as f64).abs() <= 1e-10);
            }
        }
        let alg = DiracAlgebra::new(Representation::Weyl, 3).unwrap();
        assert!(alg.energy_projector(&[0.0; 3], 0.0, EnergySign::Plus).is_err());
    }
}
