//! Uniform periodic position lattices and their dual momentum lattices.
//!
//! A grid covers the cube `[-L/2, L/2)^d` with `N` voxels per axis,
//! `Δx = L/N`, voxel centers at `x_j = (j - N/2) Δx`.  The dual momentum
//! lattice is `(2π/L)·{-N/2, …, N/2-1}`, stored in FFT bin order (bin `b`
//! holds the signed frequency `b` for `b < N/2`, else `b - N`).
//!
//! All geometric quantities use fixed `[f64; 3]` vectors; axes beyond `dim`
//! are zero.  Supported dimensions are 1 (2-spinors) and 3 (4-spinors).

use serde::{Deserialize, Serialize};

use crate::error::{DiracError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    dim: usize,
    n: usize,
    extent: f64,
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, extent: f64) -> Result<Self> {
        if dim != 1 && dim != 3 {
            return Err(DiracError::Config(format!(
                "grid dimension must be 1 or 3, got {dim}"
            )));
        }
        if !n.is_power_of_two() || n < 8 {
            return Err(DiracError::Config(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if !(extent > 0.0) || !extent.is_finite() {
            return Err(DiracError::Config(format!(
                "grid extent must be positive and finite, got {extent}"
            )));
        }
        Ok(GridSpec { dim, n, extent })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn dx(&self) -> f64 {
        self.extent / self.n as f64
    }

    pub fn dp(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.extent
    }

    /// Number of voxels, `N^d`.
    pub fn volume(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Spinor components per voxel: 4 in dimension 3, 2 in dimension 1.
    pub fn spinor_components(&self) -> usize {
        if self.dim == 3 {
            4
        } else {
            2
        }
    }

    pub fn cell_volume_position(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    pub fn cell_volume_momentum(&self) -> f64 {
        self.dp().powi(self.dim as i32)
    }

    /// Position coordinate of lattice index `i` along one axis.
    pub fn axis_coord(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.dx()
    }

    /// Momentum coordinate of FFT bin `b` along one axis.
    pub fn momentum_coord(&self, b: usize) -> f64 {
        let k = if b < self.n / 2 {
            b as isize
        } else {
            b as isize - self.n as isize
        };
        k as f64 * self.dp()
    }

    /// Per-axis lattice indices of linear voxel index `v` (row-major, last
    /// axis contiguous).  Unused axes are zero.
    pub fn decompose(&self, v: usize) -> [usize; 3] {
        match self.dim {
            1 => [v, 0, 0],
            _ => {
                let n = self.n;
                [v / (n * n), (v / n) % n, v % n]
            }
        }
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn compose(&self, idx: [usize; 3]) -> usize {
        match self.dim {
            1 => idx[0],
            _ => (idx[0] * self.n + idx[1]) * self.n + idx[2],
        }
    }

    pub fn position_of(&self, v: usize) -> [f64; 3] {
        let idx = self.decompose(v);
        let mut x = [0.0; 3];
        for a in 0..self.dim {
            x[a] = self.axis_coord(idx[a]);
        }
        x
    }

    pub fn momentum_of(&self, v: usize) -> [f64; 3] {
        let idx = self.decompose(v);
        let mut p = [0.0; 3];
        for a in 0..self.dim {
            p[a] = self.momentum_coord(idx[a]);
        }
        p
    }

    /// Validates a direction-like vector: correct length support, finite,
    /// nonzero.  Returns the normalized unit vector.
    pub fn unit_direction(&self, e: &[f64; 3]) -> Result<[f64; 3]> {
        for a in self.dim..3 {
            if e[a] != 0.0 {
                return Err(DiracError::Argument(format!(
                    "direction component {a} must be zero on a {}-d grid",
                    self.dim
                )));
            }
        }
        let norm = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(DiracError::Argument(
                "direction must be finite and nonzero".into(),
            ));
        }
        Ok([e[0] / norm, e[1] / norm, e[2] / norm])
    }

    /// Wrap-around safety: carriers of radius `r0` evolved for `|t| <= t_max`
    /// must not touch the periodic boundary.
    pub fn horizon_ok(&self, r0: f64, t_max: f64) -> bool {
        self.extent >= 2.0 * (r0 + t_max) + 4.0 * self.dx()
    }
}

/// `n` evenly spaced samples covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n).map(|i| a + step * i as f64).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dim_grid_samples() {
        let g = GridSpec::new(1, 8, 8.0).unwrap();
        assert_eq!(g.dx(), 1.0);
        let xs: Vec<f64> = (0..8).map(|i| g.axis_coord(i)).collect();
        assert_eq!(xs, vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        let dp = g.dp();
        let ps: Vec<f64> = (0..8).map(|b| g.momentum_coord(b) / dp).collect();
        assert_eq!(ps, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn three_dim_shapes() {
        let g = GridSpec::new(3, 16, 4.0).unwrap();
        assert_eq!(g.volume(), 16 * 16 * 16);
        assert_eq!(g.spinor_components(), 4);
        assert!((g.cell_volume_position() - 0.25f64.powi(3)).abs() < 1e-15);
        // decompose/compose round trip on a few voxels
        for v in [0usize, 1, 17, 4095, 255] {
            let [i, j, k] = g.decompose(v);
            assert_eq!((i * 16 + j) * 16 + k, v);
            assert_eq!(g.compose([i, j, k]), v);
        }
    }

    #[test]
    fn invalid_grids_rejected() {
        assert!(GridSpec::new(2, 16, 4.0).is_err());
        assert!(GridSpec::new(3, 48, 4.0).is_err());
        assert!(GridSpec::new(3, 4, 4.0).is_err());
        assert!(GridSpec::new(3, 16, 0.0).is_err());
        assert!(GridSpec::new(3, 16, -1.0).is_err());
    }

    #[test]
    fn unit_direction_normalizes_and_validates() {
        let g = GridSpec::new(3, 16, 4.0).unwrap();
        let e = g.unit_direction(&[0.0, 0.0, 2.0]).unwrap();
        assert_eq!(e, [0.0, 0.0, 1.0]);
        assert!(g.unit_direction(&[0.0, 0.0, 0.0]).is_err());
        let g1 = GridSpec::new(1, 16, 4.0).unwrap();
        assert!(g1.unit_direction(&[0.0, 1.0, 0.0]).is_err());
        assert_eq!(g1.unit_direction(&[-3.0, 0.0, 0.0]).unwrap(), [-1.0, 0.0, 0.0]);
    }

    #[test]
    fn horizon_bound() {
        let g = GridSpec::new(3, 64, 8.0).unwrap();
        assert!(g.horizon_ok(0.5, 1.0));
        assert!(!g.horizon_ok(0.5, 3.5));
    }
}
