//! Periodic Fourier collocation on a rectangular box.
//!
//! Fields live on an `nx × ny` grid covering `[0, lx) × [0, ly)`, stored
//! row-major with `y` as the outer index. Spectral coefficients use the same
//! layout; see [`fft`] for the transform normalization.

mod fft;
mod field;
pub(crate) mod ops;

pub use field::{ScalarField, Spectrum, VectorField2};
pub use ops::{
    antideriv_x, apply_boussinesq_elliptic, dealias, deriv, hs_norm, invert_boussinesq_elliptic,
    l2_norm, linf_norm, norm, xmu_norm, Norm,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Relative size below which kx=0 coefficients are treated as roundoff and
/// silently projected out by the x-antiderivative.
pub const ZERO_X_MEAN_TOL: f64 = 1e-10;

/// Default side of the periodic box, `32π`.
pub const DEFAULT_BOX: f64 = 32.0 * PI;

/// Spatial axis selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Periodic rectangular collocation grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    pub dealias_fraction: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self> {
        Self::with_dealias(nx, ny, lx, ly, 2.0 / 3.0)
    }

    pub fn with_dealias(nx: usize, ny: usize, lx: f64, ly: f64, fraction: f64) -> Result<Self> {
        if nx < 16 || ny < 16 || nx % 2 != 0 || ny % 2 != 0 {
            return Err(Error::InvalidGrid(format!(
                "node counts must be even and >= 16, got {nx}x{ny}"
            )));
        }
        if !(lx > 0.0 && ly > 0.0 && lx.is_finite() && ly.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "box sides must be positive, got {lx}x{ly}"
            )));
        }
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(Error::InvalidGrid(format!(
                "dealias fraction must lie in (0,1], got {fraction}"
            )));
        }
        Ok(Self {
            nx,
            ny,
            lx,
            ly,
            dealias_fraction: fraction,
        })
    }

    /// Square `n × n` grid on `[0, l)²`.
    pub fn square(n: usize, l: f64) -> Result<Self> {
        Self::new(n, n, l, l)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        self.lx / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.ly / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    pub fn x(&self, ix: usize) -> f64 {
        ix as f64 * self.dx()
    }

    pub fn y(&self, iy: usize) -> f64 {
        iy as f64 * self.dy()
    }

    /// Signed mode number for FFT index `i` on an axis with `n` nodes:
    /// `0, 1, …, n/2-1, -n/2, …, -1`.
    pub fn mode_number(i: usize, n: usize) -> isize {
        if i < n / 2 {
            i as isize
        } else {
            i as isize - n as isize
        }
    }

    pub fn kx(&self, ix: usize) -> f64 {
        2.0 * PI * Self::mode_number(ix, self.nx) as f64 / self.lx
    }

    pub fn ky(&self, iy: usize) -> f64 {
        2.0 * PI * Self::mode_number(iy, self.ny) as f64 / self.ly
    }

    pub fn kx_values(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.kx(i)).collect()
    }

    pub fn ky_values(&self) -> Vec<f64> {
        (0..self.ny).map(|i| self.ky(i)).collect()
    }

    pub fn is_nyquist_x(&self, ix: usize) -> bool {
        ix == self.nx / 2
    }

    pub fn is_nyquist_y(&self, iy: usize) -> bool {
        iy == self.ny / 2
    }

    /// Whether mode `(ix, iy)` survives the dealiasing projection.
    pub fn keeps_mode(&self, ix: usize, iy: usize) -> bool {
        let jx = Self::mode_number(ix, self.nx).unsigned_abs() as f64;
        let jy = Self::mode_number(iy, self.ny).unsigned_abs() as f64;
        jx <= self.dealias_fraction * self.nx as f64 / 2.0
            && jy <= self.dealias_fraction * self.ny as f64 / 2.0
    }

    /// Largest |kx|, |ky| retained by the dealiasing projection.
    pub fn dealiased_kmax(&self) -> (f64, f64) {
        let jx = (self.dealias_fraction * self.nx as f64 / 2.0).floor();
        let jy = (self.dealias_fraction * self.ny as f64 / 2.0).floor();
        (2.0 * PI * jx / self.lx, 2.0 * PI * jy / self.ly)
    }

    /// Index of the mode carrying wavenumbers `(-kx, -ky)`.
    pub fn conjugate_index(&self, ix: usize, iy: usize) -> (usize, usize) {
        ((self.nx - ix) % self.nx, (self.ny - iy) % self.ny)
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(Grid::new(15, 16, 1.0, 1.0).is_err());
        assert!(Grid::new(8, 16, 1.0, 1.0).is_err());
        assert!(Grid::new(16, 16, 0.0, 1.0).is_err());
        assert!(Grid::with_dealias(16, 16, 1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn wavenumber_layout() {
        let g = Grid::new(16, 32, 2.0 * PI, 4.0 * PI).unwrap();
        assert_eq!(g.kx(0), 0.0);
        assert_eq!(g.kx(1), 1.0);
        assert_eq!(g.kx(8), -8.0);
        assert_eq!(g.kx(15), -1.0);
        assert_eq!(g.ky(1), 0.5);
        assert_eq!(g.conjugate_index(3, 0), (13, 0));
        assert_eq!(g.conjugate_index(0, 5), (0, 27));
    }

    #[test]
    fn dealias_band() {
        let g = Grid::square(96, 2.0 * PI).unwrap();
        // n/3 = 32 kept, 33 dropped
        assert!(g.keeps_mode(32, 0));
        assert!(!g.keeps_mode(33, 0));
        assert!(!g.keeps_mode(48, 0));
        assert_eq!(g.dealiased_kmax(), (32.0, 32.0));
    }
}
