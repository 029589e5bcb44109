use super::{fft, Grid};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Real samples of a scalar function on a [`Grid`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
    zero_x_mean: bool,
}

impl ScalarField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("scalar field"));
        }
        Ok(Self {
            grid,
            values,
            zero_x_mean: false,
        })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            zero_x_mean: true,
        }
    }

    /// Sample `f(x, y)` at the grid nodes.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for iy in 0..grid.ny {
            let y = grid.y(iy);
            for ix in 0..grid.nx {
                values.push(f(grid.x(ix), y));
            }
        }
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.nx + ix]
    }

    /// Whether the field is flagged as lying in the range of ∂ₓ.
    pub fn is_zero_x_mean(&self) -> bool {
        self.zero_x_mean
    }

    /// Largest relative kx=0 coefficient over all ky rows, and the row.
    pub fn zero_x_mean_defect(&self) -> (usize, f64) {
        Spectrum::forward(self).zero_x_mean_defect()
    }

    /// Set the zero-x-mean flag after checking the kx=0 coefficients
    /// against `tol` (relative to the ℓ² norm of all coefficients).
    pub fn checked_zero_x_mean(mut self, tol: f64) -> Result<Self> {
        let (row, ratio) = self.zero_x_mean_defect();
        if ratio > tol {
            return Err(Error::NotInRangeOfDx { row, ratio });
        }
        self.zero_x_mean = true;
        Ok(self)
    }

    pub(crate) fn set_zero_x_mean(&mut self, flag: bool) {
        self.zero_x_mean = flag;
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|v| a * v).collect(),
            zero_x_mean: self.zero_x_mean,
        }
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: f64, other: &ScalarField) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| x + a * y)
                .collect(),
            zero_x_mean: self.zero_x_mean && other.zero_x_mean,
        })
    }

    pub fn sub(&self, other: &ScalarField) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Domain integral by the (spectrally exact) rectangle rule.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_area()
    }

    pub fn to_spectrum(&self) -> Spectrum {
        Spectrum::forward(self)
    }
}

/// A pair of scalar fields on one grid, e.g. the depth-averaged velocity.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField2 {
    pub u: ScalarField,
    pub v: ScalarField,
}

impl VectorField2 {
    pub fn new(u: ScalarField, v: ScalarField) -> Result<Self> {
        u.grid().check_same(v.grid())?;
        Ok(Self { u, v })
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            u: ScalarField::zeros(grid),
            v: ScalarField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.u.grid()
    }
}

/// Fourier coefficients of a field, unnormalized forward convention.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_coeffs(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(Self { grid, coeffs })
    }

    pub fn forward(field: &ScalarField) -> Self {
        let grid = *field.grid();
        let mut coeffs: Vec<Complex64> = field
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        fft::forward(&mut coeffs, grid.nx, grid.ny);
        Self { grid, coeffs }
    }

    /// Forward transform of raw nodal values; no finiteness check.
    pub(crate) fn from_real(grid: Grid, values: &[f64]) -> Self {
        let mut coeffs: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft::forward(&mut coeffs, grid.nx, grid.ny);
        Self { grid, coeffs }
    }

    /// Spectrum of the pointwise product of two fields (not dealiased).
    pub(crate) fn product(a: &Spectrum, b: &Spectrum) -> Self {
        assert_eq!(a.grid, b.grid, "spectrum grid mismatch");
        let va = a.real_values();
        let vb = b.real_values();
        let p: Vec<f64> = va.iter().zip(&vb).map(|(x, y)| x * y).collect();
        Self::from_real(a.grid, &p)
    }

    /// Real part of the inverse transform.
    pub fn to_field(&self) -> ScalarField {
        let values = self.real_values();
        ScalarField {
            grid: self.grid,
            values,
            zero_x_mean: false,
        }
    }

    pub(crate) fn real_values(&self) -> Vec<f64> {
        let mut data = self.coeffs.clone();
        fft::inverse(&mut data, self.grid.nx, self.grid.ny);
        data.into_iter().map(|c| c.re).collect()
    }

    /// Inverse transform, checking that the result is finite.
    pub fn to_field_checked(&self) -> Result<ScalarField> {
        let values = self.real_values();
        ScalarField::new(self.grid, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn at(&self, ix: usize, iy: usize) -> Complex64 {
        self.coeffs[iy * self.grid.nx + ix]
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Multiply every mode by `symbol(kx, ky)`.
    pub fn apply(&self, symbol: impl Fn(f64, f64) -> Complex64) -> Self {
        let kx = self.grid.kx_values();
        let mut out = self.clone();
        for iy in 0..self.grid.ny {
            let ky = self.grid.ky(iy);
            let row = &mut out.coeffs[iy * self.grid.nx..(iy + 1) * self.grid.nx];
            for (c, &kx) in row.iter_mut().zip(&kx) {
                *c *= symbol(kx, ky);
            }
        }
        out
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= a);
        out
    }

    /// `self + a·other`; panics on grid mismatch (internal use).
    pub fn axpy(&self, a: f64, other: &Spectrum) -> Self {
        assert_eq!(self.grid, other.grid, "spectrum grid mismatch");
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c += a * o;
        }
        out
    }

    pub fn add_assign_scaled(&mut self, a: f64, other: &Spectrum) {
        assert_eq!(self.grid, other.grid, "spectrum grid mismatch");
        for (c, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *c += a * o;
        }
    }

    /// Zero every mode outside the dealiasing band.
    pub fn dealiased(&self) -> Self {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        let g = self.grid;
        for iy in 0..g.ny {
            for ix in 0..g.nx {
                if !g.keeps_mode(ix, iy) {
                    self.coeffs[iy * g.nx + ix] = Complex64::default();
                }
            }
        }
    }

    /// Zero the kx=0 column (every ky row).
    pub fn project_zero_x_mean(&mut self) {
        let nx = self.grid.nx;
        for iy in 0..self.grid.ny {
            self.coeffs[iy * nx] = Complex64::default();
        }
    }

    /// Largest kx=0 coefficient relative to the total ℓ² norm.
    pub fn zero_x_mean_defect(&self) -> (usize, f64) {
        let total = self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if total == 0.0 {
            return (0, 0.0);
        }
        let nx = self.grid.nx;
        (0..self.grid.ny)
            .map(|iy| (iy, self.coeffs[iy * nx].norm() / total))
            .fold(
                (0, 0.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            )
    }

    /// Translate in x: returns the spectrum of `f(x - dist, y)`.
    pub fn shifted_x(&self, dist: f64) -> Self {
        self.apply(|kx, _| Complex64::from_polar(1.0, -kx * dist))
    }

    /// Squared ℓ² norm of the coefficients.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()))
    }
}
